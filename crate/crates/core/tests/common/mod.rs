//! Random instance generators shared by the integration suites and the
//! acceptance harness.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use discreta::metric::Metric;
use discreta::{GridCircuit, GridPoint, MetricSpace};
use rand::seq::SliceRandom;
use rand::Rng;

/// Identifiers that sort in index order, so point `i` keeps index `i`.
pub fn id(i: usize) -> String {
    format!("v{i:03}")
}

/// Shortest-path metric of a connected graph with unit edges.
pub fn graph_metric(n: usize, edges: &[(usize, usize)]) -> MetricSpace {
    MetricSpace::from_matrix((0..n).map(id).collect(), hop_matrix(n, edges)).unwrap()
}

pub fn hop_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(a, b) in edges {
        d[a][b] = 1.0;
        d[b][a] = 1.0;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Random tree on `n` vertices plus each remaining pair with probability `extra`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: f64) -> Vec<(usize, usize)> {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert((j, i));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(extra) {
                edges.insert((i, j));
            }
        }
    }
    edges.into_iter().collect()
}

pub fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

pub fn path(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

/// `min(d, cap)`: still a metric, same continuity graph when `cap >= 1`.
pub fn truncated(space: &MetricSpace, cap: f64) -> MetricSpace {
    let m = space
        .matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|d| d.min(cap)).collect())
        .collect();
    MetricSpace::from_matrix(space.ids().to_vec(), m).unwrap()
}

/// Points of a `w × h` lattice kept independently with probability `keep`,
/// under the Euclidean metric. `None` when fewer than two points survive.
pub fn lattice_subset<R: Rng>(rng: &mut R, w: i64, h: i64, keep: f64) -> Option<MetricSpace> {
    let mut pts = Vec::new();
    for x in 0..w {
        for y in 0..h {
            if rng.gen_bool(keep) {
                pts.push((id(pts.len()), vec![x as f64, y as f64]));
            }
        }
    }
    if pts.len() < 2 {
        return None;
    }
    Some(MetricSpace::from_coords(pts, Metric::Euclidean).unwrap())
}

/// Random points on a line with integer gaps, some of them equal.
pub fn random_line<R: Rng>(rng: &mut R, n: usize) -> MetricSpace {
    let mut x = 0.0;
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push((id(i), vec![x]));
        x += rng.gen_range(1..=3) as f64;
    }
    MetricSpace::from_coords(pts, Metric::Euclidean).unwrap()
}

/// A mix of the small instance families above, all with `2 <= n <= max_n`.
pub fn random_space<R: Rng>(rng: &mut R, max_n: usize) -> MetricSpace {
    loop {
        let n = rng.gen_range(2..=max_n);
        let space = match rng.gen_range(0..5) {
            0 | 1 => graph_metric(n, &random_connected_graph(rng, n, 0.25)),
            2 => {
                let g = graph_metric(n, &random_connected_graph(rng, n, 0.2));
                truncated(&g, rng.gen_range(1.0..3.5))
            }
            3 => match lattice_subset(rng, 3, 3, 0.75) {
                Some(s) if s.len() <= max_n => s,
                _ => continue,
            },
            _ => random_line(rng, n),
        };
        return space;
    }
}

/// Unit cells `(i, j)` standing for `[i, i+1] × [j, j+1]`.
pub type Cells = BTreeSet<(i64, i64)>;

/// Boundary of a polyomino as a counter-clockwise lattice circuit. `None` if
/// the boundary is not a single closed curve (holes or corner pinches).
pub fn polyomino_boundary(cells: &Cells) -> Option<GridCircuit> {
    let mut next: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    let mut count = 0;
    let mut add = |a: (i64, i64), b: (i64, i64)| {
        count += 1;
        next.insert(a, b).is_none()
    };
    for &(i, j) in cells {
        let sides = [
            ((i, j - 1), (i, j), (i + 1, j)),
            ((i + 1, j), (i + 1, j), (i + 1, j + 1)),
            ((i, j + 1), (i + 1, j + 1), (i, j + 1)),
            ((i - 1, j), (i, j + 1), (i, j)),
        ];
        for (neighbour, a, b) in sides {
            if !cells.contains(&neighbour) && !add(a, b) {
                return None;
            }
        }
    }
    let start = *next.keys().next()?;
    let mut walk = vec![start];
    let mut at = start;
    loop {
        at = next[&at];
        walk.push(at);
        if at == start {
            break;
        }
        if walk.len() > count + 1 {
            return None;
        }
    }
    if walk.len() != count + 1 {
        return None;
    }
    GridCircuit::new(walk.into_iter().map(GridPoint::from).collect()).ok()
}

/// Grows a random polyomino on a `side × side` coarse grid and blows every
/// coarse cell up into a `scale × scale` block of unit cells.
pub fn random_polyomino<R: Rng>(rng: &mut R, side: i64, scale: i64) -> Cells {
    let mut coarse: BTreeSet<(i64, i64)> = BTreeSet::new();
    coarse.insert((rng.gen_range(0..side), rng.gen_range(0..side)));
    let target = rng.gen_range(1..=(side * side / 2).max(1));
    let mut frontier: Vec<(i64, i64)> = Vec::new();
    while (coarse.len() as i64) < target {
        frontier.clear();
        for &(i, j) in &coarse {
            for (a, b) in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if (0..side).contains(&a) && (0..side).contains(&b) && !coarse.contains(&(a, b)) {
                    frontier.push((a, b));
                }
            }
        }
        match frontier.choose(rng) {
            Some(&c) => {
                coarse.insert(c);
            }
            None => break,
        }
    }
    let mut cells = Cells::new();
    for &(i, j) in &coarse {
        for di in 0..scale {
            for dj in 0..scale {
                cells.insert((i * scale + di, j * scale + dj));
            }
        }
    }
    cells
}

/// Lattice points strictly inside a hole-free polyomino: all four incident cells present.
pub fn polyomino_interior(cells: &Cells) -> BTreeSet<GridPoint> {
    let mut out = BTreeSet::new();
    for &(i, j) in cells {
        for (x, y) in [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)] {
            if [(x - 1, y - 1), (x, y - 1), (x - 1, y), (x, y)].iter().all(|c| cells.contains(c)) {
                out.insert(GridPoint::new(x, y));
            }
        }
    }
    out
}

/// Random circuit from a polyomino on a grid of at most 30 × 30 unit cells,
/// together with the cells it bounds.
pub fn random_polyomino_circuit<R: Rng>(rng: &mut R) -> Option<(GridCircuit, Cells)> {
    let scale = rng.gen_range(2..=3);
    let side = rng.gen_range(1..=30 / scale);
    let cells = random_polyomino(rng, side, scale);
    polyomino_boundary(&cells).map(|c| (c, cells))
}
