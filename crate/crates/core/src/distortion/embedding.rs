//! Bi-Lipschitz embeddings into ℓ^p and their distortion.

use crate::error::{Error, Result};
use crate::metric::MetricSpace;

/// Images of the space's points (by index) in a finite-dimensional ℓ^p.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub vectors: Vec<Vec<f64>>,
    pub p: f64,
}

pub fn lp_norm(v: &[f64], p: f64) -> f64 {
    v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn lp_distance(a: &[f64], b: &[f64], p: f64) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// `‖F‖_Lip · ‖F⁻¹‖_Lip` over all pairs of distinct points.
pub fn embedding_distortion(f: &Embedding, space: &MetricSpace) -> Result<f64> {
    let n = space.len();
    if n < 2 {
        return Err(Error::DegenerateSpace(n));
    }
    if f.vectors.len() != n {
        return Err(Error::InvalidParameter(format!(
            "embedding has {} vectors for {n} points",
            f.vectors.len()
        )));
    }
    let (mut expansion, mut contraction) = (0.0f64, f64::INFINITY);
    for x in 0..n {
        for y in (x + 1)..n {
            let image = lp_distance(&f.vectors[x], &f.vectors[y], f.p);
            if image == 0.0 {
                return Err(Error::NotEmbedding(space.id(x).0.clone(), space.id(y).0.clone()));
            }
            let ratio = image / space.distance(x, y);
            expansion = expansion.max(ratio);
            contraction = contraction.min(ratio);
        }
    }
    Ok(expansion / contraction)
}
