//! Displacement: the largest value of `min_x d(x, α(x))` over permutations α.
//!
//! This is a bottleneck assignment. A threshold `δ` is achievable exactly when
//! the bipartite graph `{(x, y) : d(x, y) >= δ}` has a perfect matching, so the
//! optimum is found by binary search over the distinct distances.

use crate::error::{Error, Result};
use crate::metric::MetricSpace;

use super::matching::max_matching;

pub fn displacement(space: &MetricSpace, points: &[usize]) -> Result<f64> {
    let m = points.len();
    if m < 2 {
        let name = points.first().map(|&p| space.id(p).0.clone()).unwrap_or_default();
        return Err(Error::DegenerateComponent(name));
    }
    let mut values: Vec<f64> = points
        .iter()
        .flat_map(|&x| points.iter().map(move |&y| space.distance(x, y)))
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup();

    let feasible = |delta: f64| {
        let adj: Vec<Vec<usize>> = points
            .iter()
            .map(|&x| {
                (0..m)
                    .filter(|&j| space.distance(x, points[j]) >= delta)
                    .collect()
            })
            .collect();
        max_matching(&adj, m) == m
    };

    // values[0] = 0 is always feasible (identity).
    let (mut lo, mut hi) = (0, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if feasible(values[mid]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(values[lo])
}
