use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::multiindex::{MultiIndex, Parity};
use crate::scalars::Scalar;
use crate::superring::{SuperElement, SuperRingExt};

/// Even square root of `z` with body `root0`, built coefficient by coefficient:
/// `x_λ = (z_λ − Σ ± x_μ x_ν) / 2x₀` over ordered splits `λ = μ ⊔ ν` into
/// non-empty even parts, in order of increasing length.
pub fn sqrt_even(z: &SuperElement, root0: &Scalar) -> Result<SuperElement> {
    if !z.is_homogeneous_of(Parity::Even) {
        return Err(AlgebraError::NotHomogeneous("square root argument must be even".into()));
    }
    let ring = z.ring();
    let body = z.body()?;
    if root0.kind() != ring.scalar_kind() {
        return Err(AlgebraError::RingMismatch);
    }
    if root0.mul(root0) != body {
        return Err(AlgebraError::Precondition(format!("({root0})^2 is not the body {body}")));
    }
    let inv = root0
        .add(root0)
        .inverse()
        .ok_or_else(|| AlgebraError::NotInvertible(format!("2*({root0})")))?;

    let mut order: Vec<MultiIndex> = z.odd_support().subsets().filter(|m| m.parity() == Parity::Even).collect();
    order.sort();
    let mut x: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    x.insert(MultiIndex::EMPTY, root0.clone());
    for &lambda in order.iter().filter(|m| !m.is_empty()) {
        let mut acc = z.scalar_coefficient(lambda);
        for mu in lambda.subsets() {
            if mu.is_empty() || mu == lambda || mu.parity() != Parity::Even {
                continue;
            }
            let nu = lambda.difference(mu);
            let (Some(a), Some(b)) = (x.get(&mu), x.get(&nu)) else { continue };
            let (_, sign) = mu.merge_sign(nu).expect("disjoint split");
            let prod = a.mul(b);
            acc = if sign.is_negative() { acc.add(&prod) } else { acc.sub(&prod) };
        }
        let c = acc.mul(&inv);
        if !c.is_zero() {
            x.insert(lambda, c);
        }
    }
    let mut out = ring.zero();
    for (m, c) in x {
        out = &out + &ring.from_poly(m, ring.coeffs().constant(c));
    }
    if &(&out * &out) != z {
        return Err(AlgebraError::Invariant("square root does not square back".into()));
    }
    Ok(out)
}

/// Square root by the terminating binomial series `r·Σ C(1/2, k)(s/r²)^k`,
/// where `z = r² + s` and `s` is nilpotent. Needs `r²` invertible.
pub fn sqrt_by_series(z: &SuperElement, root0: &Scalar) -> Result<SuperElement> {
    let ring = z.ring();
    let r2 = root0.mul(root0);
    let inv = r2.inverse().ok_or_else(|| AlgebraError::NotInvertible(format!("({root0})^2")))?;
    let s = (z - &ring.constant(r2)).scale(&inv);
    if !s.coefficient(MultiIndex::EMPTY).is_zero() {
        return Err(AlgebraError::Precondition(format!("({root0})^2 is not the body of the argument")));
    }
    let kind = ring.scalar_kind();
    let half = Scalar::ratio(kind, 1, 2)?;
    let mut coeff = Scalar::one(kind);
    let mut power = ring.one();
    let mut out = ring.zero();
    let mut k: i64 = 0;
    while !power.is_zero() {
        out = &out + &power.scale(&coeff);
        coeff = coeff.mul(&half.sub(&Scalar::from_i64(kind, k))).mul(&Scalar::ratio(kind, 1, k + 1)?);
        power = &power * &s;
        k += 1;
    }
    Ok(out.scale(root0))
}
