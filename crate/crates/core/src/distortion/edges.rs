//! The metric edge set of a normalized component.
//!
//! For a pair `x, y` at hop distance `n` and metric distance `d`, take a
//! minimal continuous path `x_0 .. x_n` and cut it at `0 = t_0 < t_1 < ... <
//! t_s = n` with `s = floor(d)`. Each part contributes the unordered pair
//! `{x_{t_(i-1)}, x_{t_i}}`. Collecting these over all pairs, all minimal paths
//! and all cut sequences gives the edge set. For shortest-path metrics of graphs
//! it is the graph's own edge set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::continuity::{ComponentId, ContinuityGraph};
use crate::error::{Error, Result};
use crate::metric::{approx_eq, tolerant_floor, PointId, TAU_ADJ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeSetMode {
    /// Every minimal continuous path of every pair contributes.
    #[default]
    AllGeodesics,
    /// Only the deterministic path from [`ContinuityGraph::shortest_path`].
    Canonical,
}

/// Unordered pair of point indices `a < b` with its distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricEdge {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricEdgeSet {
    pub component: ComponentId,
    pub representative: PointId,
    /// Point indices of the component, ascending.
    pub points: Vec<usize>,
    /// Sorted by `(a, b)`.
    pub edges: Vec<MetricEdge>,
}

impl MetricEdgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    /// Edges as positions into [`points`](Self::points).
    pub fn local_pairs(&self) -> Vec<(usize, usize)> {
        let pos = |i: usize| self.points.binary_search(&i).expect("edge endpoint in component");
        self.edges.iter().map(|e| (pos(e.a), pos(e.b))).collect()
    }
}

/// Whether cut positions `a < b` can be consecutive cuts of a strictly
/// increasing `s`-part cut sequence of `0..=n`.
pub fn covering_admits(a: usize, b: usize, s: usize, n: usize) -> bool {
    debug_assert!(a < b && b <= n && s >= 1 && s <= n);
    (1..=s).any(|i| {
        let left = if i == 1 { a == 0 } else { a >= i - 1 };
        let right = if i == s { b == n } else { n - b >= s - i };
        left && right
    })
}

/// Hop distances between all points of a component, indexed locally.
pub(crate) fn component_hops(g: &ContinuityGraph<'_>, points: &[usize]) -> Vec<Vec<usize>> {
    points
        .iter()
        .map(|&x| {
            let d = g.hop_distances(x);
            points.iter().map(|&y| d[y].expect("same component")).collect()
        })
        .collect()
}

fn require_normal_form(g: &ContinuityGraph<'_>, comp: ComponentId) -> Result<()> {
    let c = g.component(comp);
    if !approx_eq(c.step, 1.0, TAU_ADJ) {
        return Err(Error::NotNormalForm {
            representative: g.space().id(c.representative()).0.clone(),
            step: c.step,
        });
    }
    Ok(())
}

pub fn metric_edge_set(g: &ContinuityGraph<'_>, comp: ComponentId, mode: EdgeSetMode) -> Result<MetricEdgeSet> {
    require_normal_form(g, comp)?;
    let space = g.space();
    let points = g.component(comp).points.clone();
    let m = points.len();
    let mut found: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |u: usize, v: usize| {
        found.insert((u.min(v), u.max(v)));
    };

    match mode {
        EdgeSetMode::AllGeodesics => {
            let hop = component_hops(g, &points);
            for x in 0..m {
                for y in (x + 1)..m {
                    let n = hop[x][y];
                    let s = parts(space.distance(points[x], points[y]), n);
                    // Points on some minimal path, keyed by hop distance from x.
                    let interval: Vec<usize> = (0..m).filter(|&u| hop[x][u] + hop[u][y] == n).collect();
                    for &u in &interval {
                        let a = hop[x][u];
                        for &v in &interval {
                            let b = hop[x][v];
                            if b > a && hop[u][v] == b - a && covering_admits(a, b, s, n) {
                                add(points[u], points[v]);
                            }
                        }
                    }
                }
            }
        }
        EdgeSetMode::Canonical => {
            for (i, &x) in points.iter().enumerate() {
                for &y in &points[i + 1..] {
                    let path = g.shortest_path(x, y)?;
                    let n = path.length();
                    let s = parts(space.distance(x, y), n);
                    for a in 0..n {
                        for b in (a + 1)..=n {
                            if covering_admits(a, b, s, n) {
                                add(path.vertices[a], path.vertices[b]);
                            }
                        }
                    }
                }
            }
        }
    }

    let edges = found
        .into_iter()
        .map(|(a, b)| MetricEdge {
            a,
            b,
            distance: space.distance(a, b),
        })
        .collect();
    Ok(MetricEdgeSet {
        component: comp,
        representative: space.id(points[0]).clone(),
        points,
        edges,
    })
}

/// Number of covering parts for a pair at distance `d` joined by `n` steps.
fn parts(d: f64, n: usize) -> usize {
    (tolerant_floor(d) as usize).clamp(1, n)
}

/// Largest distance spanned by an edge; 1 exactly for shortest-path metrics.
pub fn graph_deviation(e: &MetricEdgeSet) -> Result<f64> {
    e.edges
        .iter()
        .map(|e| e.distance)
        .reduce(f64::max)
        .ok_or_else(|| Error::DegenerateComponent(e.representative.0.clone()))
}

/// Both characterizations of a graph-like component, computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphLikeness {
    /// The edge set spans distance 1 only.
    pub by_deviation: bool,
    /// Every distance equals the hop count of a minimal continuous path.
    pub by_geodesics: bool,
}

pub fn graph_likeness(g: &ContinuityGraph<'_>, comp: ComponentId) -> Result<GraphLikeness> {
    let e = metric_edge_set(g, comp, EdgeSetMode::AllGeodesics)?;
    let by_deviation = approx_eq(graph_deviation(&e)?, 1.0, TAU_ADJ);
    let points = &g.component(comp).points;
    let hop = component_hops(g, points);
    let space = g.space();
    let by_geodesics = points.iter().enumerate().all(|(i, &x)| {
        points
            .iter()
            .enumerate()
            .all(|(j, &y)| approx_eq(space.distance(x, y), hop[i][j] as f64, TAU_ADJ))
    });
    Ok(GraphLikeness {
        by_deviation,
        by_geodesics,
    })
}

/// Whether the component's metric is the shortest-path metric of its
/// continuity graph. Errors if the two characterizations disagree.
pub fn is_graph_like(g: &ContinuityGraph<'_>, comp: ComponentId) -> Result<bool> {
    let l = graph_likeness(g, comp)?;
    if l.by_deviation != l.by_geodesics {
        return Err(Error::Inconsistent(format!(
            "component {:?}: deviation test says {}, geodesic test says {}",
            g.space().id(g.component(comp).representative()).0,
            l.by_deviation,
            l.by_geodesics
        )));
    }
    Ok(l.by_deviation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Metric, MetricSpace};

    fn cycle(n: usize) -> MetricSpace {
        let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = i.abs_diff(j);
                        k.min(n - k) as f64
                    })
                    .collect()
            })
            .collect();
        MetricSpace::from_matrix(ids, m).unwrap()
    }

    fn punctured_square() -> MetricSpace {
        let mut pts = Vec::new();
        for x in -1i64..=1 {
            for y in -1i64..=1 {
                if (x, y) != (0, 0) {
                    pts.push((format!("{x},{y}"), vec![x as f64, y as f64]));
                }
            }
        }
        MetricSpace::from_coords(pts, Metric::Euclidean).unwrap()
    }

    #[test]
    fn covering_admits_small_cases() {
        // s = 1: only the whole path.
        assert!(covering_admits(0, 3, 1, 3));
        assert!(!covering_admits(0, 2, 1, 3));
        // s = n: only single steps.
        assert!(covering_admits(1, 2, 3, 3));
        assert!(!covering_admits(0, 2, 3, 3));
        // n = 4, s = 2: cuts 0 < t < 4.
        assert!(covering_admits(0, 3, 2, 4));
        assert!(covering_admits(1, 4, 2, 4));
        assert!(!covering_admits(1, 3, 2, 4));
        assert!(!covering_admits(0, 4, 2, 4));
    }

    #[test]
    fn c4_edges_are_graph_edges() {
        let s = cycle(4);
        let g = ContinuityGraph::build(&s).unwrap();
        let e = metric_edge_set(&g, ComponentId(0), EdgeSetMode::AllGeodesics).unwrap();
        assert_eq!(e.pairs(), [(0, 1), (0, 3), (1, 2), (2, 3)].into_iter().collect());
        assert_eq!(graph_deviation(&e).unwrap(), 1.0);
        assert!(is_graph_like(&g, ComponentId(0)).unwrap());
        let c = metric_edge_set(&g, ComponentId(0), EdgeSetMode::Canonical).unwrap();
        assert_eq!(c.pairs(), e.pairs());
    }

    #[test]
    fn two_points() {
        let s = MetricSpace::from_matrix(vec!["a", "b"], vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let g = ContinuityGraph::build(&s).unwrap();
        let e = metric_edge_set(&g, ComponentId(0), EdgeSetMode::AllGeodesics).unwrap();
        assert_eq!(e.pairs(), [(0, 1)].into_iter().collect());
        assert_eq!(graph_deviation(&e).unwrap(), 1.0);
        assert!(is_graph_like(&g, ComponentId(0)).unwrap());
    }

    #[test]
    fn punctured_square_is_not_a_graph() {
        let s = punctured_square();
        let g = ContinuityGraph::build(&s).unwrap();
        assert_eq!(g.components().len(), 1);
        let e = metric_edge_set(&g, ComponentId(0), EdgeSetMode::AllGeodesics).unwrap();
        let (p, q) = (s.require("1,0").unwrap(), s.require("0,1").unwrap());
        assert!(e.pairs().contains(&(p.min(q), p.max(q))));
        assert!((graph_deviation(&e).unwrap() - 5f64.sqrt()).abs() < 1e-12);
        assert!(!is_graph_like(&g, ComponentId(0)).unwrap());
    }

    #[test]
    fn requires_normal_form() {
        let s = cycle(4).scaled(2.0);
        let g = ContinuityGraph::build(&s).unwrap();
        assert!(matches!(
            metric_edge_set(&g, ComponentId(0), EdgeSetMode::AllGeodesics),
            Err(Error::NotNormalForm { .. })
        ));
    }
}
