//! Exact super commutative algebra.

pub mod error;
pub mod json;
pub mod landi;
pub mod multiindex;
pub mod par;
pub mod parse;
pub mod random;
pub mod report;
pub mod spheres;
pub mod suites;
pub mod superanalysis;
pub mod scalars;
pub mod supermodule;
pub mod superring;

pub use error::{AlgebraError, Result};
pub use multiindex::{MultiIndex, Parity, Sign};
pub use scalars::{CoeffRing, Poly, PolyValue, Scalar, ScalarKind};
pub use superring::{InvolutionConvention, SuperElement, SuperRing, SuperRingExt};
