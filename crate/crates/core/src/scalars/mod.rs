//! Coefficient rings under the Grassmann layer.

mod poly;
mod scalar;

pub use poly::{CoeffRing, Monomial, Poly, PolyDisplay, PolyValue, Relation};
pub(crate) use poly::{same_ring, write_sum};
pub use scalar::{GaussRat, RadicalNum, Scalar, ScalarKind};
