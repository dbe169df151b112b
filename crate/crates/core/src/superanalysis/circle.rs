use crate::error::{AlgebraError, Result};
use crate::scalars::Scalar;
use crate::superring::{SuperElement, SuperRingExt};

use super::sqrt::sqrt_even;
use super::SuperPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// The four charts of the supercircle. `XPlus` covers points with positive
/// `x`-body and is parametrised by `y`; `YPlus` covers positive `y`-body and
/// is parametrised by `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::XPlus, Chart::XMinus, Chart::YPlus, Chart::YMinus];

    fn branch(self) -> Branch {
        match self {
            Chart::XPlus | Chart::YPlus => Branch::Plus,
            Chart::XMinus | Chart::YMinus => Branch::Minus,
        }
    }
}

/// `±√(1 − t²)` for an even `t` whose body lies in `(−1, 1)` and has a rational complement.
fn complement(t: &SuperElement, branch: Branch) -> Result<SuperElement> {
    let ring = t.ring();
    let body = t.body()?;
    let q = body
        .as_rational()
        .ok_or_else(|| AlgebraError::Precondition(format!("body {body} is not rational")))?;
    let one = num_rational::BigRational::from_integer(1.into());
    if q.clone() * q.clone() >= one {
        return Err(AlgebraError::Precondition(format!("body {body} outside (-1, 1)")));
    }
    let rest = Scalar::one(ring.scalar_kind()).sub(&body.mul(&body));
    let mut root0 = rest
        .rational_sqrt()
        .ok_or_else(|| AlgebraError::Precondition(format!("1 - ({body})^2 is not a rational square")))?;
    if branch == Branch::Minus {
        root0 = root0.neg();
    }
    let z = &ring.one() - &(t * t);
    sqrt_even(&z, &root0)
}

/// `(±√(1 − y²), y)` on `x² + y² = 1`.
pub fn supercircle_chart(y: &SuperElement, branch: Branch) -> Result<SuperPoint> {
    let x = complement(y, branch)?;
    SuperPoint::new(vec![x, y.clone()], Vec::new())
}

/// The point of the circle with chart coordinate `t`, as `(x, y)`.
pub fn chart_inverse(chart: Chart, t: &SuperElement) -> Result<(SuperElement, SuperElement)> {
    let other = complement(t, chart.branch())?;
    Ok(match chart {
        Chart::XPlus | Chart::XMinus => (other, t.clone()),
        Chart::YPlus | Chart::YMinus => (t.clone(), other),
    })
}

pub fn on_circle(x: &SuperElement, y: &SuperElement) -> bool {
    (&(x * x) + &(y * y)).is_one()
}

/// Chart coordinate of `(x, y)`; fails outside the chart's domain.
pub fn chart_forward(chart: Chart, x: &SuperElement, y: &SuperElement) -> Result<SuperElement> {
    if !on_circle(x, y) {
        return Err(AlgebraError::Precondition("point is not on the circle".into()));
    }
    let (sign_of, coordinate) = match chart {
        Chart::XPlus | Chart::XMinus => (x, y),
        Chart::YPlus | Chart::YMinus => (y, x),
    };
    let body = sign_of.body()?;
    let q = body
        .as_rational()
        .ok_or_else(|| AlgebraError::Precondition(format!("body {body} is not rational")))?;
    let zero = num_rational::BigRational::from_integer(0.into());
    let inside = match chart.branch() {
        Branch::Plus => q > zero,
        Branch::Minus => q < zero,
    };
    if !inside {
        return Err(AlgebraError::Precondition(format!("point outside chart {chart:?}")));
    }
    Ok(coordinate.clone())
}

/// Tangent vector `(−λy, λx)` at `(x, y)`.
pub fn circle_tangent(x: &SuperElement, y: &SuperElement, lambda: &SuperElement) -> Result<(SuperElement, SuperElement)> {
    if !on_circle(x, y) {
        return Err(AlgebraError::Precondition("point is not on the circle".into()));
    }
    Ok((-&(lambda * y), lambda * x))
}
