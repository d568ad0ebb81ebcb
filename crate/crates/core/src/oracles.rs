//! Brute-force reference implementations for small spaces.
//!
//! Everything here works from the raw definitions: balls `dN1(x)` are built by
//! sorting distances, paths are enumerated by depth-first search, permutations
//! and cut sequences are listed exhaustively. None of it shares code with the
//! production routines it is compared against. Inputs beyond the budget are
//! rejected rather than truncated.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_points: usize,
    pub max_permutations: usize,
    pub max_geodesics: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_points: 12,
            max_permutations: 40_320,
            max_geodesics: 10_000,
        }
    }
}

impl OracleBudget {
    fn check_points(&self, n: usize) -> Result<()> {
        if n > self.max_points {
            return Err(Error::BudgetExceeded(format!(
                "{n} points, budget allows {}",
                self.max_points
            )));
        }
        Ok(())
    }
}

/// `dN1(x)`: the smallest closed ball around `x` holding at least two points.
pub fn ball(space: &MetricSpace, x: usize) -> Vec<usize> {
    let mut d: Vec<f64> = (0..space.len()).map(|y| space.distance(x, y)).collect();
    d.sort_by(f64::total_cmp);
    let radius = d[1];
    (0..space.len())
        .filter(|&y| space.distance(x, y) <= radius * (1.0 + TOL))
        .collect()
}

/// `x` and `y` are distinct and each lies in the other's ball.
fn mutual(balls: &[Vec<usize>], x: usize, y: usize) -> bool {
    x != y && balls[x].contains(&y) && balls[y].contains(&x)
}

fn balls(space: &MetricSpace) -> Vec<Vec<usize>> {
    (0..space.len()).map(|x| ball(space, x)).collect()
}

/// Path-connected components by transitive closure of the ball relation,
/// each sorted, listed by smallest member.
pub fn brute_components(space: &MetricSpace, budget: &OracleBudget) -> Result<Vec<Vec<usize>>> {
    let n = space.len();
    budget.check_points(n)?;
    if n < 2 {
        return Err(Error::DegenerateSpace(n));
    }
    let b = balls(space);
    let mut reach = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            reach[x][y] = x == y || mutual(&b, x, y);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if out.iter().any(|c| c.contains(&x)) {
            continue;
        }
        out.push((0..n).filter(|&y| reach[x][y]).collect());
    }
    Ok(out)
}

/// Every continuous path of minimal length from `x` to `y`, found by trying
/// lengths 0, 1, 2, ... and enumerating all walks of that length.
pub fn brute_geodesics(space: &MetricSpace, x: usize, y: usize, budget: &OracleBudget) -> Result<Vec<Vec<usize>>> {
    let n = space.len();
    budget.check_points(n)?;
    let b = balls(space);
    fn extend(
        b: &[Vec<usize>],
        target: usize,
        remaining: usize,
        walk: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        let last = *walk.last().unwrap();
        if remaining == 0 {
            if last == target {
                out.push(walk.clone());
                if out.len() > cap {
                    return false;
                }
            }
            return true;
        }
        for next in 0..b.len() {
            if mutual(b, last, next) {
                walk.push(next);
                let ok = extend(b, target, remaining - 1, walk, out, cap);
                walk.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    for len in 0..n {
        let mut out = Vec::new();
        let mut walk = vec![x];
        if !extend(&b, y, len, &mut walk, &mut out, budget.max_geodesics) {
            return Err(Error::BudgetExceeded(format!(
                "more than {} geodesics between {:?} and {:?}",
                budget.max_geodesics,
                space.id(x).0,
                space.id(y).0
            )));
        }
        if !out.is_empty() {
            out.sort();
            return Ok(out);
        }
    }
    Err(Error::NotConnected(space.id(x).0.clone(), space.id(y).0.clone()))
}

/// All strictly increasing cut sequences `0 = t_0 < ... < t_s = n`.
pub fn cut_sequences(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(from: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if *cur.last().unwrap() == n {
                out.push(cur.clone());
            }
            return;
        }
        for t in from..=n {
            cur.push(t);
            rec(t + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, s, &mut vec![0], &mut out);
    out
}

/// Metric edge set of the component `points` (which must be in normal form),
/// by literal enumeration of pairs, geodesics and cut sequences.
pub fn brute_edge_set(space: &MetricSpace, points: &[usize], budget: &OracleBudget) -> Result<BTreeSet<(usize, usize)>> {
    budget.check_points(space.len())?;
    for &x in points {
        let mut d: Vec<f64> = (0..space.len()).map(|y| space.distance(x, y)).collect();
        d.sort_by(f64::total_cmp);
        if (d[1] - 1.0).abs() > TOL {
            return Err(Error::NotNormalForm {
                representative: space.id(x).0.clone(),
                step: d[1],
            });
        }
    }
    let mut edges = BTreeSet::new();
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            let d = space.distance(x, y);
            let s = (d + TOL * d).floor() as usize;
            for path in brute_geodesics(space, x, y, budget)? {
                let n = path.len() - 1;
                for cuts in cut_sequences(n, s.min(n)) {
                    for w in cuts.windows(2) {
                        let (u, v) = (path[w[0]], path[w[1]]);
                        edges.insert((u.min(v), u.max(v)));
                    }
                }
            }
        }
    }
    Ok(edges)
}

/// `max over permutations α of min_x d(x, α(x))`, enumerating every permutation.
pub fn brute_displacement(space: &MetricSpace, points: &[usize], budget: &OracleBudget) -> Result<f64> {
    let m = points.len();
    let count: usize = (1..=m).product();
    if count > budget.max_permutations {
        return Err(Error::BudgetExceeded(format!(
            "{m}! = {count} permutations, budget allows {}",
            budget.max_permutations
        )));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let value = |perm: &[usize]| {
        (0..m)
            .map(|i| space.distance(points[i], points[perm[i]]))
            .fold(f64::INFINITY, f64::min)
    };
    let mut best = value(&perm);
    // Heap's algorithm.
    let mut c = vec![0usize; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.max(value(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// `min_α Σ |f(x) − α|ᵖ` by golden-section search (or a scan of data points for p = 1).
fn shifted_moment(f: &[f64], p: f64) -> f64 {
    let moment = |a: f64| f.iter().map(|x| (x - a).abs().powf(p)).sum::<f64>();
    if p == 1.0 {
        return f.iter().map(|&a| moment(a)).fold(f64::INFINITY, f64::min);
    }
    let (mut lo, mut hi) = f
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - r * (hi - lo);
        let b = lo + r * (hi - lo);
        if moment(a) < moment(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    moment(0.5 * (lo + hi))
}

/// The quotient for one function, `None` if `f` is constant.
pub fn brute_quotient(pairs: &[(usize, usize)], f: &[f64], p: f64) -> Option<f64> {
    let first = f[0];
    if f.iter().all(|&x| x == first) {
        return None;
    }
    let num: f64 = pairs.iter().map(|&(u, v)| (f[u] - f[v]).abs().powf(p)).sum();
    Some(num / shifted_moment(f, p))
}

/// Smallest quotient over all nonconstant ±1 functions (when `m <= 12`) and
/// `samples` random functions. An upper bound on the spectral gap.
pub fn brute_rayleigh(m: usize, pairs: &[(usize, usize)], p: f64, samples: usize, seed: u64) -> f64 {
    let mut best = f64::INFINITY;
    if m <= 12 {
        for mask in 1u32..(1 << m) - 1 {
            let f: Vec<f64> = (0..m)
                .map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 })
                .collect();
            if let Some(q) = brute_quotient(pairs, &f, p) {
                best = best.min(q);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let f: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if let Some(q) = brute_quotient(pairs, &f, p) {
            best = best.min(q);
        }
    }
    best
}
