use thiserror::Error;

use crate::jordan::{GridPoint, Witness};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // ---- input validation -------------------------------------------------
    #[error("duplicate point identifier {0:?}")]
    DuplicateId(String),

    #[error("distance matrix is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite distance between {0:?} and {1:?}")]
    NonFinite(String, String),

    #[error("distance from {0:?} to itself is {1}, expected 0")]
    NonZeroDiagonal(String, f64),

    #[error("distance between distinct points {0:?} and {1:?} is {2}, expected a positive value")]
    NonPositive(String, String, f64),

    #[error("distance matrix is not symmetric at ({0:?}, {1:?}): {2} vs {3}")]
    Asymmetric(String, String, f64, f64),

    #[error("triangle inequality fails for ({x:?}, {y:?}, {z:?}): d(x,z) = {direct} > {via}")]
    TriangleViolation {
        x: String,
        y: String,
        z: String,
        direct: f64,
        via: f64,
    },

    #[error("point {id:?} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        id: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown metric {0:?}")]
    UnknownMetric(String),

    #[error("unknown point identifier {0:?}")]
    UnknownPoint(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("not a circuit: {0}")]
    NotACircuit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    // ---- mathematical preconditions --------------------------------------
    #[error("space has {0} point(s); every nearest-neighbour ball needs at least 2")]
    DegenerateSpace(usize),

    #[error("component containing {0:?} is a single point")]
    DegenerateComponent(String),

    #[error("{0:?} and {1:?} lie in different path-connected components")]
    NotConnected(String, String),

    #[error("component containing {representative:?} has step {step}, expected 1 (normalize first)")]
    NotNormalForm { representative: String, step: f64 },

    #[error("edge set over component containing {0:?} is disconnected; spectral gap is 0")]
    DisconnectedComponent(String),

    #[error("circuit is not simple: {0:?}")]
    NotSimple(Vec<Witness>),

    #[error("circuit contains unit squares with lower-left corners {0:?}")]
    ContainsSquare(Vec<GridPoint>),

    #[error("map is not injective: points {0:?} and {1:?} share an image")]
    NotEmbedding(String, String),

    // ---- internal alarms / budgets ---------------------------------------
    #[error("more than {cap} geodesics between {from:?} and {to:?}")]
    GeodesicExplosion { from: String, to: String, cap: usize },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("flood fill found {count} components of the complement, expected 2")]
    TheoremViolation { count: usize },

    #[error("two common neighbours of {0:?} and {1:?} lie on the circuit")]
    SimplicityBroken(GridPoint, GridPoint),

    #[error("eigensolver residual {0:e} exceeds tolerance")]
    EigenResidual(f64),

    #[error("independent checks disagree: {0}")]
    Inconsistent(String),
}

/// Coarse classification used by the command-line front end to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            DuplicateId(_)
            | NotSquare { .. }
            | NonFinite(..)
            | NonZeroDiagonal(..)
            | NonPositive(..)
            | Asymmetric(..)
            | TriangleViolation { .. }
            | DimensionMismatch { .. }
            | UnknownMetric(_)
            | UnknownPoint(_)
            | Malformed(_)
            | NotACircuit(_)
            | InvalidParameter(_) => ErrorKind::Input,
            DegenerateSpace(_)
            | DegenerateComponent(_)
            | NotConnected(..)
            | NotNormalForm { .. }
            | DisconnectedComponent(_)
            | NotSimple(_)
            | ContainsSquare(_)
            | NotEmbedding(..)
            | GeodesicExplosion { .. } => ErrorKind::Precondition,
            BudgetExceeded(_)
            | TheoremViolation { .. }
            | SimplicityBroken(..)
            | EigenResidual(_)
            | Inconsistent(_) => ErrorKind::Internal,
        }
    }
}
