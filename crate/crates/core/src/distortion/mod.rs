//! Lower bounds on the ℓ^p-distortion of finite metric spaces.
//!
//! For a path-connected component `X` in normal form,
//!
//! ```text
//! c_p(X) >= D(X) / (2 d(X)) · ( |X| / (|E(X)| λ₁⁽ᵖ⁾) )^(1/p)
//! ```
//!
//! where `E(X)` is the metric edge set, `d(X)` the largest distance it spans,
//! `D(X)` the displacement and `λ₁⁽ᵖ⁾` the p-spectral gap. A space splits into
//! components and its distortion is at least the best per-component bound.

mod displacement;
mod edges;
pub mod eigen;
mod embedding;
mod matching;
mod spectral;

pub use displacement::displacement;
pub use edges::{
    covering_admits, graph_deviation, graph_likeness, is_graph_like, metric_edge_set, EdgeSetMode,
    GraphLikeness, MetricEdge, MetricEdgeSet,
};
pub use embedding::{embedding_distortion, lp_distance, lp_norm, Embedding};
pub use matching::max_matching;
pub use spectral::{
    laplacian, optimal_shift, rayleigh_quotient, spectral_gap, spectral_gap_descent,
    spectral_gap_exact, DescentConfig, GapMethod, SpectralGapResult, TAU_EIG,
};

use serde_json::{json, Value};

use crate::continuity::{ComponentId, ContinuityGraph};
use crate::error::{Error, Result};
use crate::metric::{approx_eq, MetricSpace, PointId, TAU_ADJ};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConfig {
    pub p: f64,
    pub edge_set: EdgeSetMode,
    pub descent: DescentConfig,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            p: 2.0,
            edge_set: EdgeSetMode::AllGeodesics,
            descent: DescentConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentBound {
    pub component: ComponentId,
    pub representative: PointId,
    pub size_x: usize,
    pub size_e: usize,
    pub d_x: f64,
    pub big_d: f64,
    pub lambda: SpectralGapResult,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistortionBoundReport {
    pub p: f64,
    pub components: Vec<ComponentBound>,
    /// Representatives of singleton components, which carry no bound.
    pub skipped: Vec<PointId>,
    pub sup_bound: f64,
}

/// `D / (2 d) · (|X| / (|E| λ))^(1/p)`.
pub fn bound_formula(big_d: f64, d_x: f64, size_x: usize, size_e: usize, lambda: f64, p: f64) -> f64 {
    big_d / (2.0 * d_x) * (size_x as f64 / (size_e as f64 * lambda)).powf(1.0 / p)
}

/// The component on `points` as a space of its own, rescaled to step 1.
pub fn component_space(space: &MetricSpace, points: &[usize]) -> Result<MetricSpace> {
    let sub = space.restrict(points)?;
    let graph = ContinuityGraph::build(&sub)?;
    if graph.components().len() != 1 {
        return Err(Error::Inconsistent(format!(
            "component of {:?} splits into {} pieces when isolated",
            sub.id(0).0,
            graph.components().len()
        )));
    }
    let step = graph.step(ComponentId(0));
    Ok(if approx_eq(step, 1.0, TAU_ADJ) {
        sub
    } else {
        sub.scaled(1.0 / step)
    })
}

/// Bound for one component of `space`, after rescaling it to normal form.
pub fn component_bound(space: &MetricSpace, points: &[usize], component: ComponentId, cfg: &BoundConfig) -> Result<ComponentBound> {
    let normal = component_space(space, points)?;
    let graph = ContinuityGraph::build(&normal)?;
    let e = metric_edge_set(&graph, ComponentId(0), cfg.edge_set)?;
    let d_x = graph_deviation(&e)?;
    let all: Vec<usize> = (0..normal.len()).collect();
    let big_d = displacement(&normal, &all)?;
    let lambda = spectral_gap(&e, cfg.p, &cfg.descent)?;
    let bound = bound_formula(big_d, d_x, normal.len(), e.len(), lambda.value, cfg.p);
    Ok(ComponentBound {
        component,
        representative: normal.id(0).clone(),
        size_x: normal.len(),
        size_e: e.len(),
        d_x,
        big_d,
        lambda,
        bound,
    })
}

pub fn distortion_bound(space: &MetricSpace, cfg: &BoundConfig) -> Result<DistortionBoundReport> {
    if !(cfg.p >= 1.0 && cfg.p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must be a finite value >= 1, got {}", cfg.p)));
    }
    let graph = ContinuityGraph::build(space)?;
    let mut components = Vec::new();
    let mut skipped = Vec::new();
    for c in graph.components() {
        if c.is_singleton() {
            skipped.push(space.id(c.representative()).clone());
            continue;
        }
        components.push(component_bound(space, &c.points, c.id, cfg)?);
    }
    let sup_bound = components
        .iter()
        .map(|c| c.bound)
        .reduce(f64::max)
        .ok_or(Error::DegenerateSpace(space.len()))?;
    Ok(DistortionBoundReport {
        p: cfg.p,
        components,
        skipped,
        sup_bound,
    })
}

/// Rounds to 12 significant digits, the precision used in reports.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

impl DistortionBoundReport {
    pub fn to_json(&self) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "component": c.component.0,
                    "representative": c.representative.as_str(),
                    "size_x": c.size_x,
                    "size_e": c.size_e,
                    "d_x": round_sig(c.d_x),
                    "big_d": round_sig(c.big_d),
                    "lambda": {
                        "p": round_sig(c.lambda.p),
                        "value": round_sig(c.lambda.value),
                        "method": c.lambda.method,
                        "certified": c.lambda.certified_upper_bound_on_gap,
                    },
                    "bound": round_sig(c.bound),
                })
            })
            .collect();
        json!({
            "p": round_sig(self.p),
            "sup_bound": round_sig(self.sup_bound),
            "components": components,
            "skipped": self.skipped.iter().map(PointId::as_str).collect::<Vec<_>>(),
        })
    }
}

/// `max_{x≠y} |f(x) − f(y)| / d(x, y)` over the given points; `f` is indexed by point.
pub fn lipschitz_constant(space: &MetricSpace, points: &[usize], f: &[f64]) -> f64 {
    let mut best = 0.0f64;
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            best = best.max((f[x] - f[y]).abs() / space.distance(x, y));
        }
    }
    best
}

/// `max_{e ∈ E} |f(e⁺) − f(e⁻)|`; `f` is indexed by point.
pub fn max_edge_variation(e: &MetricEdgeSet, f: &[f64]) -> f64 {
    e.edges
        .iter()
        .map(|e| (f[e.a] - f[e.b]).abs())
        .fold(0.0, f64::max)
}
