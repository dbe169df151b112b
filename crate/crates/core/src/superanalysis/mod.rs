//! Truncated-jet analysis on Grassmann-valued points.

mod circle;
mod jet;
mod sqrt;
mod trig;

pub use circle::{chart_forward, chart_inverse, circle_tangent, on_circle, supercircle_chart, Branch, Chart};
pub use jet::{continue_analytically, continue_at_soul, eval_g_infinity, Jet, SuperSmoothFn};
pub use sqrt::{sqrt_by_series, sqrt_even};
pub use trig::{cos_jet, is_trig_ring, sin_jet, super_cos, super_sin, superderivation_check, trig_coeffs, trig_ring};

use crate::error::{AlgebraError, Result};
use crate::multiindex::Parity;
use crate::scalars::Scalar;
use crate::superring::SuperElement;

/// A point `(x, ξ)` of `R_S^{m,n}`: `m` even and `n` odd coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPoint {
    even: Vec<SuperElement>,
    odd: Vec<SuperElement>,
}

impl SuperPoint {
    pub fn new(even: Vec<SuperElement>, odd: Vec<SuperElement>) -> Result<SuperPoint> {
        for (k, x) in even.iter().enumerate() {
            if !x.is_homogeneous_of(Parity::Even) {
                return Err(AlgebraError::NotHomogeneous(format!("even coordinate {k} is not even")));
            }
        }
        for (k, x) in odd.iter().enumerate() {
            if !x.is_homogeneous_of(Parity::Odd) {
                return Err(AlgebraError::NotHomogeneous(format!("odd coordinate {k} is not odd")));
            }
        }
        let mut all = even.iter().chain(&odd);
        if let Some(first) = all.next() {
            if !all.all(|x| x.same_ring(first)) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(SuperPoint { even, odd })
    }

    pub fn even(&self) -> &[SuperElement] {
        &self.even
    }

    pub fn odd(&self) -> &[SuperElement] {
        &self.odd
    }

    /// `(m, n)`.
    pub fn dimension(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }
}

/// Componentwise body of the even coordinates; the odd ones are dropped.
pub fn body_point(p: &SuperPoint) -> Result<Vec<Scalar>> {
    p.even.iter().map(|x| x.body()).collect()
}

