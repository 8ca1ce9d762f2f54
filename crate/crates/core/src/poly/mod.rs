//! Scalar fields, sparse multivariate polynomials, polynomial matrices and
//! their determinants.

pub mod matrix;
pub mod multipoly;
pub mod scalar;
pub mod text;
pub mod univariate;

pub use matrix::{column_subsets, DenseMatrix, PolyMatrix};
pub use multipoly::{Monomial, MultiPoly};
pub use scalar::{exact_complex, int, parse_rational, rat, Coeff, ExactComplex, Rational};
pub use text::default_names;
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VarIndex { index: usize, nvars: usize },
    #[error("target degree {target} is below polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix side {side} exceeds the supported maximum {max}")]
    TooLarge { side: usize, max: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
