//! Finite metric spaces with validated distance matrices.
//!
//! Points are kept sorted by identifier; every index-based API in the crate
//! refers to positions in that order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for deciding that two distances are equal.
pub const TAU_ADJ: f64 = 1e-9;
/// Relative tolerance for symmetry and triangle-inequality validation.
pub const TAU_METRIC: f64 = 1e-9;

/// `a == b` up to relative tolerance `tau`.
pub fn approx_eq(a: f64, b: f64, tau: f64) -> bool {
    (a - b).abs() <= tau * a.abs().max(b.abs())
}

/// Floor that treats values within `TAU_ADJ` below an integer as that integer.
pub fn tolerant_floor(d: f64) -> f64 {
    (d * (1.0 + TAU_ADJ)).floor()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub String);

impl PointId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PointId {
    fn from(s: &str) -> Self {
        PointId(s.to_owned())
    }
}

impl From<String> for PointId {
    fn from(s: String) -> Self {
        PointId(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "euclidean" | "l2" => Ok(Metric::Euclidean),
            "manhattan" | "l1" | "taxicab" => Ok(Metric::Manhattan),
            "chebyshev" | "linf" | "maximum" => Ok(Metric::Chebyshev),
            _ => Err(Error::UnknownMetric(name.to_owned())),
        }
    }

    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Metric::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Metric::Manhattan => diffs.sum(),
            Metric::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// Where the distances of a [`MetricSpace`] came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Matrix,
    Coordinates { metric: Metric, coords: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    ids: Vec<PointId>,
    dist: Vec<f64>,
    source: Source,
}

impl MetricSpace {
    /// Builds a space from an explicit distance matrix whose rows follow `ids`.
    pub fn from_matrix<I: Into<PointId>>(ids: Vec<I>, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let ids: Vec<PointId> = ids.into_iter().map(Into::into).collect();
        let n = ids.len();
        if matrix.len() != n {
            return Err(Error::NotSquare {
                row: matrix.len().min(n),
                expected: n,
                found: matrix.len(),
            });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let order = sorted_order(&ids)?;
        let mut dist = vec![0.0; n * n];
        for (i, &oi) in order.iter().enumerate() {
            for (j, &oj) in order.iter().enumerate() {
                dist[i * n + j] = matrix[oi][oj];
            }
        }
        let ids = order.iter().map(|&o| ids[o].clone()).collect();
        let space = MetricSpace {
            ids,
            dist,
            source: Source::Matrix,
        };
        space.validate()?;
        Ok(space.symmetrized())
    }

    /// Builds a space from coordinates under a named metric.
    pub fn from_coords<I: Into<PointId>>(points: Vec<(I, Vec<f64>)>, metric: Metric) -> Result<Self> {
        let (ids, coords): (Vec<PointId>, Vec<Vec<f64>>) =
            points.into_iter().map(|(id, c)| (id.into(), c)).unzip();
        if let Some(first) = coords.first() {
            let dim = first.len();
            for (id, c) in ids.iter().zip(&coords) {
                if c.len() != dim {
                    return Err(Error::DimensionMismatch {
                        id: id.0.clone(),
                        expected: dim,
                        found: c.len(),
                    });
                }
                if c.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFinite(id.0.clone(), id.0.clone()));
                }
            }
        }
        let order = sorted_order(&ids)?;
        let ids: Vec<PointId> = order.iter().map(|&o| ids[o].clone()).collect();
        let coords: Vec<Vec<f64>> = order.iter().map(|&o| coords[o].clone()).collect();
        let n = ids.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = metric.distance(&coords[i], &coords[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let space = MetricSpace {
            ids,
            dist,
            source: Source::Coordinates { metric, coords },
        };
        space.validate()?;
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[PointId] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &PointId {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|p| p.0.as_str().cmp(id)).ok()
    }

    /// Like [`index_of`](Self::index_of) but reports unknown identifiers as errors.
    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownPoint(id.to_owned()))
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.ids.len() + j]
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        match &self.source {
            Source::Coordinates { coords, .. } => Some(coords),
            Source::Matrix => None,
        }
    }

    /// Dense row-major copy of the distance matrix.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n)
            .map(|i| self.dist[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// Sub-space on the given point indices. Coordinates are carried over when present.
    pub fn restrict(&self, points: &[usize]) -> Result<MetricSpace> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let ids: Vec<PointId> = sorted.iter().map(|&i| self.ids[i].clone()).collect();
        let m = sorted.len();
        let mut dist = vec![0.0; m * m];
        for (a, &i) in sorted.iter().enumerate() {
            for (b, &j) in sorted.iter().enumerate() {
                dist[a * m + b] = self.distance(i, j);
            }
        }
        let source = match &self.source {
            Source::Matrix => Source::Matrix,
            Source::Coordinates { metric, coords } => Source::Coordinates {
                metric: *metric,
                coords: sorted.iter().map(|&i| coords[i].clone()).collect(),
            },
        };
        Ok(MetricSpace { ids, dist, source })
    }

    /// Same points with every distance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> MetricSpace {
        MetricSpace {
            ids: self.ids.clone(),
            dist: self.dist.iter().map(|d| d * factor).collect(),
            source: Source::Matrix,
        }
    }

    pub(crate) fn from_validated_parts(ids: Vec<PointId>, dist: Vec<f64>) -> Result<MetricSpace> {
        let space = MetricSpace {
            ids,
            dist,
            source: Source::Matrix,
        };
        space.validate()?;
        Ok(space)
    }

    fn symmetrized(mut self) -> Self {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.dist[i * n + j] + self.dist[j * n + i]);
                self.dist[i * n + j] = avg;
                self.dist[j * n + i] = avg;
            }
        }
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let name = |i: usize| self.ids[i].0.clone();
        for i in 0..n {
            for j in 0..n {
                let d = self.distance(i, j);
                if !d.is_finite() {
                    return Err(Error::NonFinite(name(i), name(j)));
                }
                if i == j {
                    if d != 0.0 {
                        return Err(Error::NonZeroDiagonal(name(i), d));
                    }
                } else if d <= 0.0 {
                    return Err(Error::NonPositive(name(i), name(j), d));
                } else if j > i && !approx_eq(d, self.distance(j, i), TAU_METRIC) {
                    return Err(Error::Asymmetric(name(i), name(j), d, self.distance(j, i)));
                }
            }
        }
        for x in 0..n {
            for z in (x + 1)..n {
                let direct = self.distance(x, z);
                for y in 0..n {
                    if y == x || y == z {
                        continue;
                    }
                    let via = self.distance(x, y) + self.distance(y, z);
                    if direct > via * (1.0 + TAU_METRIC) {
                        return Err(Error::TriangleViolation {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                            direct,
                            via,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn sorted_order(ids: &[PointId]) -> Result<Vec<usize>> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId(id.0.clone()));
        }
    }
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
    Ok(order)
}

// ---- JSON input --------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
}

/// Wire form of a metric space: either coordinates plus a metric name, or an
/// explicit matrix whose rows follow `points`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDocument {
    pub points: Vec<PointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

impl MetricDocument {
    pub fn into_space(self) -> Result<MetricSpace> {
        match (self.metric, self.matrix) {
            (Some(_), Some(_)) => Err(Error::Malformed(
                "document has both \"metric\" and \"matrix\"".into(),
            )),
            (None, None) => Err(Error::Malformed(
                "document needs either \"metric\" or \"matrix\"".into(),
            )),
            (Some(name), None) => {
                let metric = Metric::parse(&name)?;
                let points = self
                    .points
                    .into_iter()
                    .map(|p| match p.coords {
                        Some(c) => Ok((p.id, c)),
                        None => Err(Error::Malformed(format!("point {:?} has no coords", p.id))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                MetricSpace::from_coords(points, metric)
            }
            (None, Some(matrix)) => {
                let ids = self.points.into_iter().map(|p| p.id).collect();
                MetricSpace::from_matrix(ids, matrix)
            }
        }
    }
}

impl MetricSpace {
    pub fn from_json(text: &str) -> Result<MetricSpace> {
        let doc: MetricDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        doc.into_space()
    }
}
