//! Exact scalar, matrix and polynomial arithmetic.

mod matrix;
mod poly;
mod rational;
mod ring;

pub use matrix::{determinant, pfaffian, Matrix, SkewMatrix};
pub use poly::{Monomial, MultiPoly};
pub use rational::{format_rational, parse_rational, rat, rat_frac};
pub use ring::{Field, Ring, Scalar, FLOAT_RANK_TOLERANCE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("polynomial variables differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
}
