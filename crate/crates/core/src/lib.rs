//! Exact computation of the quadratic Welschinger invariant of nodal rational
//! plane curves and of the quadratically enriched count of rational curves
//! through point configurations in degrees at most three.

pub mod field;
pub mod scalars;

pub use field::{Field, SquareTest};
pub mod linalg;
pub mod poly;
pub mod etale;
pub mod gwforms;
pub mod curvesing;
pub mod enumerate;
pub mod suites;
