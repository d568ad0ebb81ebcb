//! Continuity for finite metric spaces and two of its applications.
//!
//! * [`continuity`]: nearest-neighbour balls, continuous paths, path-connected
//!   components, steps and normal form.
//! * [`jordan`]: simple circuits in Z² and their interior/exterior
//!   decomposition with boundary reconstruction by ray casting.
//! * [`distortion`]: metric edge sets, the p-spectral gap, displacement, and a
//!   certified lower bound on the ℓ^p-distortion of a finite metric space.
//! * [`oracles`]: brute-force reference implementations for small inputs.

pub mod continuity;
pub mod distortion;
pub mod error;
pub mod jordan;
pub mod metric;
pub mod oracles;

pub use continuity::{normalize, Component, ComponentId, ContinuityGraph, ContinuousPath};
pub use error::{Error, ErrorKind, Result};
pub use jordan::{GridCircuit, GridPoint, JordanDecomposition, Side};
pub use metric::{Metric, MetricSpace, PointId};
