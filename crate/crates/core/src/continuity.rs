//! Continuity structure of a finite metric space.
//!
//! Every point `x` has a nearest-neighbour radius `R_x`; the smallest closed
//! ball around `x` holding a second point is `dN1(x) = B(x, R_x)`. Two points
//! are adjacent when each lies in the other's ball, which for distinct points
//! is the same as `d(x,y) = R_x = R_y`. Continuous paths walk along this
//! adjacency and its connected components carry a constant radius, the step.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{approx_eq, MetricSpace, TAU_ADJ};

/// Default cap on the number of geodesics [`ContinuityGraph::all_geodesics`] will enumerate.
pub const DEFAULT_GEODESIC_CAP: usize = 10_000;

/// Ordinal of a path-connected component. Components are numbered in order of
/// their smallest point identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ComponentId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub id: ComponentId,
    /// Point indices, ascending. The first one is the representative.
    pub points: Vec<usize>,
    pub step: f64,
}

impl Component {
    pub fn representative(&self) -> usize {
        self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }
}

/// A sequence of points with consecutive entries adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContinuousPath {
    pub vertices: Vec<usize>,
}

impl ContinuousPath {
    /// Number of steps, one less than the number of vertices.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

#[derive(Debug, Clone)]
pub struct ContinuityGraph<'a> {
    space: &'a MetricSpace,
    radius: Vec<f64>,
    adjacency: Vec<Vec<usize>>,
    label: Vec<ComponentId>,
    components: Vec<Component>,
}

impl<'a> ContinuityGraph<'a> {
    pub fn build(space: &'a MetricSpace) -> Result<Self> {
        let n = space.len();
        if n < 2 {
            return Err(Error::DegenerateSpace(n));
        }
        let radius: Vec<f64> = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| y != x)
                    .map(|y| space.distance(x, y))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();

        let mut adjacency = vec![Vec::new(); n];
        for x in 0..n {
            for y in (x + 1)..n {
                let d = space.distance(x, y);
                if approx_eq(d, radius[x], TAU_ADJ) && approx_eq(d, radius[y], TAU_ADJ) {
                    adjacency[x].push(y);
                    adjacency[y].push(x);
                }
            }
        }

        // Scanning points in ascending order means each new component is
        // discovered from its smallest member.
        let mut label = vec![ComponentId(usize::MAX); n];
        let mut components = Vec::new();
        for start in 0..n {
            if label[start].0 != usize::MAX {
                continue;
            }
            let id = ComponentId(components.len());
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &adjacency[u] {
                    if label[v].0 == usize::MAX {
                        label[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            components.push(Component {
                id,
                points: members,
                step: radius[start],
            });
        }

        Ok(ContinuityGraph {
            space,
            radius,
            adjacency,
            label,
            components,
        })
    }

    pub fn space(&self) -> &'a MetricSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.radius.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radius.is_empty()
    }

    /// `R_x`, the radius of `dN1(x)`.
    pub fn neighbor_radius(&self, x: usize) -> f64 {
        self.radius[x]
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].binary_search(&y).is_ok()
    }

    pub fn component_of(&self, x: usize) -> ComponentId {
        self.label[x]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> &Component {
        &self.components[id.0]
    }

    pub fn step(&self, id: ComponentId) -> f64 {
        self.components[id.0].step
    }

    /// Whether every path-connected component has step 1.
    pub fn is_normal_form(&self) -> bool {
        self.components
            .iter()
            .all(|c| approx_eq(c.step, 1.0, TAU_ADJ))
    }

    /// Hop distances from `source`; `None` for points in other components.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn connected_or_err(&self, x: usize, y: usize) -> Result<()> {
        if self.label[x] != self.label[y] {
            return Err(Error::NotConnected(
                self.space.id(x).0.clone(),
                self.space.id(y).0.clone(),
            ));
        }
        Ok(())
    }

    /// A minimal-length continuous path from `x` to `y`. Among minimal paths,
    /// each vertex is preceded by its smallest-index admissible predecessor.
    pub fn shortest_path(&self, x: usize, y: usize) -> Result<ContinuousPath> {
        self.connected_or_err(x, y)?;
        let dist = self.hop_distances(x);
        let mut rev = vec![y];
        let mut cur = y;
        while cur != x {
            let dc = dist[cur].unwrap();
            cur = *self.adjacency[cur]
                .iter()
                .find(|&&u| dist[u] == Some(dc - 1))
                .expect("BFS layer has a predecessor");
            rev.push(cur);
        }
        rev.reverse();
        Ok(ContinuousPath { vertices: rev })
    }

    /// Every minimal-length continuous path from `x` to `y`, in lexicographic
    /// order of vertex indices.
    pub fn all_geodesics(&self, x: usize, y: usize, cap: usize) -> Result<Vec<ContinuousPath>> {
        self.connected_or_err(x, y)?;
        let from_x = self.hop_distances(x);
        let from_y = self.hop_distances(y);
        let n = from_x[y].unwrap();
        let (from_x, from_y) = (&from_x, &from_y);
        let on_dag = move |u: usize| matches!((from_x[u], from_y[u]), (Some(a), Some(b)) if a + b == n);
        let next = |u: usize| {
            let du = from_x[u].unwrap();
            self.adjacency[u]
                .iter()
                .copied()
                .filter(move |&v| on_dag(v) && from_x[v] == Some(du + 1))
        };

        // Count paths to y before enumerating them.
        let mut layers: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for u in 0..self.len() {
            if on_dag(u) {
                layers[from_x[u].unwrap()].push(u);
            }
        }
        let mut count = vec![0u128; self.len()];
        count[y] = 1;
        for layer in layers.iter().rev().skip(1) {
            for &u in layer {
                count[u] = next(u).map(|v| count[v]).fold(0u128, u128::saturating_add);
            }
        }
        if count[x] > cap as u128 {
            return Err(Error::GeodesicExplosion {
                from: self.space.id(x).0.clone(),
                to: self.space.id(y).0.clone(),
                cap,
            });
        }

        let mut out = Vec::with_capacity(count[x] as usize);
        let mut stack = vec![x];
        fn walk<F, I>(u: usize, y: usize, next: &F, stack: &mut Vec<usize>, out: &mut Vec<ContinuousPath>)
        where
            F: Fn(usize) -> I,
            I: Iterator<Item = usize>,
        {
            if u == y {
                out.push(ContinuousPath {
                    vertices: stack.clone(),
                });
                return;
            }
            for v in next(u) {
                stack.push(v);
                walk(v, y, next, stack, out);
                stack.pop();
            }
        }
        walk(x, y, &next, &mut stack, &mut out);
        Ok(out)
    }
}

/// Rescales each path-connected component so its step becomes 1.
///
/// Distances between different components are replaced by a single constant
/// larger than every rescaled diameter, which keeps the result a metric space
/// with the same components. Downstream code never reads those distances.
pub fn normalize(space: &MetricSpace) -> Result<MetricSpace> {
    let graph = ContinuityGraph::build(space)?;
    if let Some(c) = graph.components().iter().find(|c| c.is_singleton()) {
        return Err(Error::DegenerateComponent(space.id(c.representative()).0.clone()));
    }
    let n = space.len();
    let scale: Vec<f64> = (0..n)
        .map(|x| {
            let step = graph.step(graph.component_of(x));
            if approx_eq(step, 1.0, TAU_ADJ) {
                1.0
            } else {
                1.0 / step
            }
        })
        .collect();

    let mut dist = vec![0.0; n * n];
    let mut diameter: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            if x != y && graph.component_of(x) == graph.component_of(y) {
                let d = space.distance(x, y) * scale[x];
                dist[x * n + y] = d;
                diameter = diameter.max(d);
            }
        }
    }
    let glue = diameter.floor() + 1.0;
    for x in 0..n {
        for y in 0..n {
            if graph.component_of(x) != graph.component_of(y) {
                dist[x * n + y] = glue;
            }
        }
    }
    MetricSpace::from_validated_parts(space.ids().to_vec(), dist)
}
