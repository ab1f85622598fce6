//! Univariate, bivariate and ternary polynomials over a ring object.

pub mod bivar;
mod modgcd;
pub mod parse;
pub mod ratfunc;
pub mod ternary;
pub mod uni;

use thiserror::Error;

pub use bivar::BiPoly;
pub use ratfunc::{RationalFunction, RationalFunctionField};
pub use ternary::TernaryForm;
pub use uni::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeadingCoefficient,
    #[error("degree {0} exceeds the supported cap")]
    DegreeCap(usize),
    #[error("coordinate change matrix is singular")]
    SingularMatrix,
    #[error("repeated interpolation node")]
    RepeatedNode,
    #[error("exponents of a ternary form must sum to its degree")]
    Inhomogeneous,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
