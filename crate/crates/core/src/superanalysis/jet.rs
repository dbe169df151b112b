use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::multiindex::{MultiIndex, Parity};
use crate::scalars::{CoeffRing, Poly, Scalar};
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

use super::SuperPoint;

/// Derivatives `∂^i f` at a base point, for all multi-degrees `|i| ≤ order`.
/// Missing table entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    arity: usize,
    order: usize,
    coeffs: CoeffRing,
    table: BTreeMap<Vec<u32>, Poly>,
    base: Option<Vec<Scalar>>,
}

fn degree(i: &[u32]) -> usize {
    i.iter().map(|&k| k as usize).sum()
}

/// Every multi-degree of the given arity with total degree at most `order`.
fn multi_degrees(arity: usize, order: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            for k in 0..=(order - degree(prefix)) {
                let mut v = prefix.clone();
                v.push(k as u32);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl Jet {
    /// Builds a jet from explicit table entries. `base` is the body point the
    /// derivatives were taken at, or `None` for a symbolic base point.
    pub fn new(
        coeffs: CoeffRing,
        arity: usize,
        order: usize,
        base: Option<Vec<Scalar>>,
        table: impl IntoIterator<Item = (Vec<u32>, Poly)>,
    ) -> Result<Jet> {
        if let Some(b) = &base {
            if b.len() != arity {
                return Err(AlgebraError::ShapeMismatch(format!("base point has {} coordinates, arity {arity}", b.len())));
            }
            if b.iter().any(|s| s.kind() != coeffs.scalar_kind()) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let mut out = BTreeMap::new();
        for (i, p) in table {
            if i.len() != arity {
                return Err(AlgebraError::ShapeMismatch(format!("multi-degree {i:?} for arity {arity}")));
            }
            if degree(&i) > order {
                return Err(AlgebraError::ShapeMismatch(format!("multi-degree {i:?} exceeds order {order}")));
            }
            let p = coeffs.normal_form(&p);
            if !p.is_zero() {
                out.insert(i, p);
            }
        }
        Ok(Jet { arity, order, coeffs, table: out, base })
    }

    pub fn constant(coeffs: CoeffRing, arity: usize, order: usize, value: Poly) -> Jet {
        let zero = vec![0; arity];
        Jet::new(coeffs, arity, order, None, [(zero, value)]).expect("constant jet")
    }

    /// Jet of the polynomial `Σ c_e t^e` at `base`; exponents are keyed by multi-degree.
    pub fn polynomial(
        coeffs: CoeffRing,
        base: Vec<Scalar>,
        order: usize,
        poly: &BTreeMap<Vec<u32>, Scalar>,
    ) -> Result<Jet> {
        let arity = base.len();
        let kind = coeffs.scalar_kind();
        let mut table = Vec::new();
        for i in multi_degrees(arity, order) {
            let mut acc = Scalar::zero(kind);
            for (e, c) in poly {
                if e.len() != arity {
                    return Err(AlgebraError::ShapeMismatch(format!("exponent {e:?} for arity {arity}")));
                }
                if e.iter().zip(&i).any(|(a, b)| a < b) {
                    continue;
                }
                let mut term = c.clone();
                for k in 0..arity {
                    let falling = factorial(e[k]) / factorial(e[k] - i[k]);
                    term = term.mul(&Scalar::from_rational(kind, &BigRational::from_integer(falling))?);
                    for _ in 0..(e[k] - i[k]) {
                        term = term.mul(&base[k]);
                    }
                }
                acc = acc.add(&term);
            }
            table.push((i, coeffs.constant(acc)));
        }
        Jet::new(coeffs, arity, order, Some(base), table)
    }

    /// The identity function `t ↦ t` in one variable at `base`.
    pub fn identity(coeffs: CoeffRing, base: Scalar, order: usize) -> Jet {
        let one = Scalar::one(coeffs.scalar_kind());
        let poly = BTreeMap::from([(vec![1], one)]);
        Jet::polynomial(coeffs, vec![base], order, &poly).expect("identity jet")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &CoeffRing {
        &self.coeffs
    }

    pub fn base(&self) -> Option<&[Scalar]> {
        self.base.as_deref()
    }

    pub fn table(&self) -> &BTreeMap<Vec<u32>, Poly> {
        &self.table
    }

    pub fn get(&self, i: &[u32]) -> Poly {
        self.table.get(i).cloned().unwrap_or_else(|| self.coeffs.zero())
    }

    fn compatible(&self, other: &Jet) -> Result<()> {
        if self.arity != other.arity || self.coeffs != other.coeffs || self.base != other.base {
            return Err(AlgebraError::ShapeMismatch("jets at different points or over different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let order = self.order.min(other.order);
        let entries = multi_degrees(self.arity, order)
            .into_iter()
            .map(|i| {
                let p = self.coeffs.add(&self.get(&i), &other.get(&i));
                (i, p)
            });
        Jet::new(self.coeffs.clone(), self.arity, order, self.base.clone(), entries)
    }

    pub fn neg(&self) -> Jet {
        let mut out = self.clone();
        for p in out.table.values_mut() {
            *p = p.neg();
        }
        out
    }

    /// Product jet by the Leibniz rule `∂^i(fg) = Σ_{j≤i} C(i,j) ∂^j f ∂^{i−j} g`.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let order = self.order.min(other.order);
        let kind = self.coeffs.scalar_kind();
        let mut entries = Vec::new();
        for i in multi_degrees(self.arity, order) {
            let mut acc = self.coeffs.zero();
            for (j, f) in &self.table {
                if j.iter().zip(&i).any(|(a, b)| a > b) {
                    continue;
                }
                let rest: Vec<u32> = i.iter().zip(j).map(|(a, b)| a - b).collect();
                let Some(g) = other.table.get(&rest) else { continue };
                let c = i.iter().zip(j).fold(BigInt::from(1), |acc, (&a, &b)| acc * binomial(a, b));
                let c = Scalar::from_rational(kind, &BigRational::from_integer(c))?;
                acc = self.coeffs.add(&acc, &self.coeffs.mul(f, g).scale(&c));
            }
            entries.push((i, acc));
        }
        Jet::new(self.coeffs.clone(), self.arity, order, self.base.clone(), entries)
    }

    /// `∂_k f`: the table shifted by one in direction `k`, one order lower.
    pub fn derivative(&self, k: usize) -> Result<Jet> {
        if k >= self.arity {
            return Err(AlgebraError::ShapeMismatch(format!("no variable {k} in arity {}", self.arity)));
        }
        if self.order == 0 {
            return Err(AlgebraError::Precondition("cannot differentiate an order-0 jet".into()));
        }
        let entries = self.table.iter().filter(|(i, _)| i[k] > 0).map(|(i, p)| {
            let mut j = i.clone();
            j[k] -= 1;
            (j, p.clone())
        });
        Jet::new(self.coeffs.clone(), self.arity, self.order - 1, self.base.clone(), entries)
    }
}

/// `Σ_i ∂^i f / i! · σ₁^{i₁}⋯σ_m^{i_m}` for given even souls `σ_k` (zero body).
/// The jet order must be at least half the odd generator count so that no
/// nonzero soul power is dropped.
pub fn continue_at_soul(jet: &Jet, souls: &[SuperElement], ring: &Arc<SuperRing>) -> Result<SuperElement> {
    if souls.len() != jet.arity {
        return Err(AlgebraError::ShapeMismatch(format!("{} arguments for arity {}", souls.len(), jet.arity)));
    }
    if ring.coeffs() != &jet.coeffs {
        return Err(AlgebraError::RingMismatch);
    }
    let needed = ring.odd_count() / 2;
    if jet.order < needed {
        return Err(AlgebraError::Precondition(format!(
            "jet order {} below {needed}, truncation would not be exact",
            jet.order
        )));
    }
    for s in souls {
        if !Arc::ptr_eq(s.ring(), ring) && s.ring().as_ref() != ring.as_ref() {
            return Err(AlgebraError::RingMismatch);
        }
        if !s.is_homogeneous_of(Parity::Even) {
            return Err(AlgebraError::NotHomogeneous("continuation argument must be even".into()));
        }
        if !s.coefficient(MultiIndex::EMPTY).is_zero() {
            return Err(AlgebraError::Precondition("continuation argument must be a soul".into()));
        }
    }
    let kind = jet.coeffs.scalar_kind();
    let powers: Vec<Vec<SuperElement>> = souls
        .iter()
        .map(|s| {
            let mut v = vec![ring.one()];
            for p in 1..=jet.order {
                let next = &v[p - 1] * s;
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = ring.zero();
    for (i, value) in &jet.table {
        let mut term = ring.from_poly(MultiIndex::EMPTY, value.clone());
        let mut denom = BigInt::from(1);
        for (k, &e) in i.iter().enumerate() {
            denom *= factorial(e);
            term = &term * &powers[k][e as usize];
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        let inv = Scalar::from_rational(kind, &BigRational::new(1.into(), denom))?;
        out = &out + &term.scale(&inv);
    }
    Ok(out)
}

/// Grassmann analytic continuation at `x`; the body of `x` must be the jet's base point.
pub fn continue_analytically(jet: &Jet, x: &[SuperElement]) -> Result<SuperElement> {
    let base = jet
        .base
        .as_ref()
        .ok_or_else(|| AlgebraError::Precondition("jet has a symbolic base point; use continue_at_soul".into()))?;
    let ring = x
        .first()
        .map(|e| e.ring().clone())
        .ok_or_else(|| AlgebraError::ShapeMismatch("no arguments".into()))?;
    if x.len() != jet.arity {
        return Err(AlgebraError::ShapeMismatch(format!("{} arguments for arity {}", x.len(), jet.arity)));
    }
    let mut souls = Vec::with_capacity(x.len());
    for (k, xk) in x.iter().enumerate() {
        if xk.body()? != base[k] {
            return Err(AlgebraError::Precondition(format!(
                "body of argument {k} is {}, jet taken at {}",
                xk.body()?,
                base[k]
            )));
        }
        souls.push(xk.soul()?);
    }
    continue_at_soul(jet, &souls, &ring)
}

/// `f(x, ξ) = Σ_μ f̂_μ(x) ξ_μ`, one jet per odd multi-index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperSmoothFn {
    even_arity: usize,
    odd_arity: usize,
    jets: BTreeMap<MultiIndex, Jet>,
}

impl SuperSmoothFn {
    pub fn new(even_arity: usize, odd_arity: usize, jets: impl IntoIterator<Item = (MultiIndex, Jet)>) -> Result<SuperSmoothFn> {
        let mut map = BTreeMap::new();
        for (mu, jet) in jets {
            if jet.arity != even_arity {
                return Err(AlgebraError::ShapeMismatch(format!("jet arity {} for {even_arity} even variables", jet.arity)));
            }
            if mu.max_index() > odd_arity {
                return Err(AlgebraError::ShapeMismatch(format!("multi-index {mu} beyond {odd_arity} odd variables")));
            }
            map.insert(mu, jet);
        }
        Ok(SuperSmoothFn { even_arity, odd_arity, jets: map })
    }

    pub fn jets(&self) -> &BTreeMap<MultiIndex, Jet> {
        &self.jets
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.even_arity, self.odd_arity)
    }
}

pub fn eval_g_infinity(f: &SuperSmoothFn, p: &SuperPoint) -> Result<SuperElement> {
    if p.dimension() != f.arity() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "function of arity {:?} at a point of dimension {:?}",
            f.arity(),
            p.dimension()
        )));
    }
    let ring = p
        .even()
        .iter()
        .chain(p.odd())
        .next()
        .map(|e| e.ring().clone())
        .ok_or_else(|| AlgebraError::ShapeMismatch("point has no coordinates".into()))?;
    let mut out = ring.zero();
    for (mu, jet) in &f.jets {
        let mut term = continue_analytically(jet, p.even())?;
        for k in mu.indices() {
            term = &term * &p.odd()[k - 1];
        }
        out = &out + &term;
    }
    Ok(out)
}
