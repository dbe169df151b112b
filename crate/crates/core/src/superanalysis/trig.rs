use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::multiindex::{MultiIndex, Parity};
use crate::report::{Clause, Report};
use crate::scalars::{CoeffRing, Scalar, ScalarKind};
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

use super::jet::{continue_at_soul, Jet};

/// `ℚ[S, C]/(S² + C² − 1)`, with `S²` rewritten as `1 − C²`.
pub fn trig_coeffs() -> CoeffRing {
    let ring = CoeffRing::polynomial(ScalarKind::Rational, &["S", "C"]).expect("trig variables");
    let mut rhs = ring.one();
    rhs.add_term(smallvec::smallvec![0, 2], Scalar::from_i64(ScalarKind::Rational, -1));
    ring.with_relation(smallvec::smallvec![2, 0], rhs).expect("trig relation")
}

/// The trig coefficient ring with odd generators `b1..bL`.
pub fn trig_ring(generators: usize) -> Arc<SuperRing> {
    let names: Vec<String> = (1..=generators).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Arc::new(SuperRing::new(trig_coeffs(), &refs).expect("trig ring"))
}

pub fn is_trig_ring(ring: &SuperRing) -> bool {
    ring.coeffs() == &trig_coeffs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wave {
    Sin,
    Cos,
}

impl Wave {
    /// Position of `f` in the derivative cycle `sin → cos → −sin → −cos`.
    fn phase(self) -> usize {
        match self {
            Wave::Sin => 0,
            Wave::Cos => 1,
        }
    }
}

fn symbolic_jet(wave: Wave, order: usize) -> Jet {
    let coeffs = trig_coeffs();
    let s = coeffs.var(0);
    let c = coeffs.var(1);
    let cycle = [s.clone(), c.clone(), s.neg(), c.neg()];
    let table = (0..=order).map(|k| (vec![k as u32], cycle[(k + wave.phase()) % 4].clone()));
    Jet::new(coeffs, 1, order, None, table).expect("trig jet")
}

fn zero_jet(wave: Wave, kind: ScalarKind, order: usize) -> Result<Jet> {
    let coeffs = CoeffRing::scalar(kind)?;
    let cycle = [0, 1, 0, -1];
    let table: Vec<_> =
        (0..=order).map(|k| (vec![k as u32], coeffs.from_i64(cycle[(k + wave.phase()) % 4]))).collect();
    Jet::new(coeffs, 1, order, Some(vec![Scalar::zero(kind)]), table)
}

/// Symbolic sine jet with table `S, C, −S, −C, …`.
pub fn sin_jet(order: usize) -> Jet {
    symbolic_jet(Wave::Sin, order)
}

/// Symbolic cosine jet with table `C, −S, −C, S, …`.
pub fn cos_jet(order: usize) -> Jet {
    symbolic_jet(Wave::Cos, order)
}

fn order_for(ring: &SuperRing) -> usize {
    ring.odd_count().max(1)
}

fn evaluate(wave: Wave, theta: &SuperElement) -> Result<SuperElement> {
    if !theta.is_homogeneous_of(Parity::Even) {
        return Err(AlgebraError::NotHomogeneous("trig argument must be even".into()));
    }
    let ring = theta.ring();
    let order = order_for(ring);
    if is_trig_ring(ring) {
        if !theta.coefficient(MultiIndex::EMPTY).is_zero() {
            return Err(AlgebraError::Precondition(
                "over the trig ring the argument is the soul added to the symbolic base point".into(),
            ));
        }
        return continue_at_soul(&symbolic_jet(wave, order), std::slice::from_ref(theta), ring);
    }
    if !theta.body()?.is_zero() {
        return Err(AlgebraError::Precondition("exact trig values need a zero body or the trig ring".into()));
    }
    continue_at_soul(&zero_jet(wave, ring.scalar_kind(), order)?, std::slice::from_ref(theta), ring)
}

/// `sin θ`. Over the trig ring `θ` is the soul and the base point is symbolic;
/// otherwise `θ` must have zero body.
pub fn super_sin(theta: &SuperElement) -> Result<SuperElement> {
    evaluate(Wave::Sin, theta)
}

pub fn super_cos(theta: &SuperElement) -> Result<SuperElement> {
    evaluate(Wave::Cos, theta)
}

fn residual_clause(name: &str, residual: Result<SuperElement>) -> Clause {
    match residual {
        Ok(r) => Clause::with_witness(name, r.is_zero(), r.to_string()),
        Err(e) => Clause::with_witness(name, false, e.to_string()),
    }
}

/// Checks `D sin = cos`, `D cos = −sin`, `sin² + cos² = 1` and `D(sin² + cos²) = 0`
/// at the soul `theta` over the trig ring.
pub fn superderivation_check(theta: &SuperElement) -> Result<Report> {
    let ring = theta.ring();
    if !is_trig_ring(ring) {
        return Err(AlgebraError::Precondition("superderivation check needs the trig ring".into()));
    }
    let order = order_for(ring) + 1;
    let sin = sin_jet(order);
    let cos = cos_jet(order);
    let at = |j: &Jet| continue_at_soul(j, std::slice::from_ref(theta), ring);
    let s = super_sin(theta)?;
    let c = super_cos(theta)?;
    let mut report = Report::new("trig").param("generators", ring.odd_count()).param("soul", theta.to_string());
    report.push(residual_clause("D sin = cos", sin.derivative(0).and_then(|d| at(&d)).map(|d| &d - &c)));
    report.push(residual_clause("D cos = -sin", cos.derivative(0).and_then(|d| at(&d)).map(|d| &d + &s)));
    report.push(residual_clause("sin^2 + cos^2 = 1", Ok(&(&(&s * &s) + &(&c * &c)) - &ring.one())));
    let pythagoras = sin.mul(&sin).and_then(|a| a.add(&cos.mul(&cos)?))?;
    report.push(residual_clause("D(sin^2 + cos^2) = 0", pythagoras.derivative(0).and_then(|d| at(&d))));
    let constant = pythagoras.table().len() == 1 && pythagoras.get(&[0]) == trig_coeffs().one();
    report.push(Clause::new("sin^2 + cos^2 jet is constant 1", constant));
    Ok(report)
}
