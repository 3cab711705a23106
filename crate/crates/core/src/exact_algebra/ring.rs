use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::poly::MultiPoly;
use super::rational::format_rational;

/// Commutative ring with unit. Method names avoid clashing with `std::ops`.
pub trait Ring: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

/// A field in which orbit computations can be carried out: either exact
/// rationals or `f64` with tolerance-based rank decisions.
pub trait Scalar: Field {
    fn from_rational(q: &BigRational) -> Self;
    fn abs_value(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Basis of `{v : M v = 0}`.
    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>>;
    fn rank(m: &Matrix<Self>) -> usize;
    /// Like [`Scalar::nullspace`], with floating cut-offs relative to
    /// `max(σ_max, scale)` instead of `σ_max` alone.
    fn nullspace_scaled(m: &Matrix<Self>, scale: f64) -> Vec<Vec<Self>>;
    fn rank_scaled(m: &Matrix<Self>, scale: f64) -> usize;
    /// A basis of the span of `vectors` (all of the same length).
    fn span_basis(vectors: &[Vec<Self>], len: usize) -> Vec<Vec<Self>>;
    /// True when the scalar should be treated as zero in rank decisions.
    fn negligible(&self, scale: f64) -> bool;
    fn eval_poly(p: &MultiPoly, point: &[Self]) -> Self;
    /// Exact values as `"p/q"` strings, floats as JSON numbers.
    fn to_json(&self) -> serde_json::Value;
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        m.exact_nullspace()
    }
    fn rank(m: &Matrix<Self>) -> usize {
        m.exact_rank()
    }
    fn nullspace_scaled(m: &Matrix<Self>, _scale: f64) -> Vec<Vec<Self>> {
        m.exact_nullspace()
    }
    fn rank_scaled(m: &Matrix<Self>, _scale: f64) -> usize {
        m.exact_rank()
    }
    fn span_basis(vectors: &[Vec<Self>], len: usize) -> Vec<Vec<Self>> {
        let rows = Matrix::from_rows(vectors.to_vec(), len);
        rows.rref().0.into_nonzero_rows()
    }
    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
    fn eval_poly(p: &MultiPoly, point: &[Self]) -> Self {
        p.eval(point).expect("point matches polynomial variables")
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

/// Relative singular-value cut-off for floating rank decisions.
pub const FLOAT_RANK_TOLERANCE: f64 = 1e-10;

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl Field for f64 {
    fn inverse(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        m.float_nullspace()
    }
    fn rank(m: &Matrix<Self>) -> usize {
        m.float_rank()
    }
    fn nullspace_scaled(m: &Matrix<Self>, scale: f64) -> Vec<Vec<Self>> {
        m.float_nullspace_scaled(scale)
    }
    fn rank_scaled(m: &Matrix<Self>, scale: f64) -> usize {
        m.float_rank_scaled(scale)
    }
    fn span_basis(vectors: &[Vec<Self>], len: usize) -> Vec<Vec<Self>> {
        Matrix::from_rows(vectors.to_vec(), len).float_row_space()
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_RANK_TOLERANCE * scale.max(f64::MIN_POSITIVE)
    }
    fn eval_poly(p: &MultiPoly, point: &[Self]) -> Self {
        p.eval_f64(point).expect("point matches polynomial variables")
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self).map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null)
    }
}
