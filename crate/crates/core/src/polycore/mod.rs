//! Exact-rational sparse multivariate polynomial arithmetic.
//!
//! Polynomials are finite maps from exponent vectors to nonzero rational
//! coefficients, ordered graded-lexicographically. All values are immutable
//! after construction and every operation is a pure function.

mod diff;
mod linear;
pub mod linalg;
mod monomial;
mod parse;
mod poly;

pub use diff::{
    dehomogenize, hessian_rank_at, jacobian_at, multiplicity_at, translate, ts_components,
    TsBlock, TsDecomposition,
};
pub use linear::{LinearChange, Point};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use poly::{substitute_linear, Polynomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} out of range for {num_vars} variables (at byte {pos})")]
    VarOutOfRange {
        index: usize,
        num_vars: usize,
        pos: usize,
    },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("point must be affine here; dehomogenize first")]
    ProjectivePoint,
    #[error("projective point must have a nonzero coordinate")]
    ZeroProjectivePoint,
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
