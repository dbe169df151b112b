//! Super commutative rings: a coefficient ring of commuting (even) variables
//! tensored with a Grassmann algebra on named odd generators.
//!
//! The same value type covers pure Grassmann algebras, `Z6[ξ1, ξ2]`, the sphere
//! rings `Λn` over a Grassmann base, the trigonometric ring and the Landi
//! coordinate ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::multiindex::{MultiIndex, Parity, Sign, MAX_GENERATORS};
use crate::scalars::{same_ring, write_sum, CoeffRing, Poly, Scalar, ScalarKind};

/// How the involution squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionConvention {
    /// `(x◇)◇ = (−1)^{|x|} x`.
    #[default]
    Graded,
    /// `(x◇)◇ = x`.
    Plain,
}

/// Pairing of generators `g ↔ g◇`. Each pair is oriented: the first name is
/// sent to the second with sign `+1`; the reverse direction carries the
/// double-involution sign for odd generators.
#[derive(Debug, Clone)]
pub struct Involution {
    pairs: Vec<(String, String)>,
    convention: InvolutionConvention,
    even_perm: Vec<usize>,
    odd_map: Vec<(usize, Sign)>,
}

impl PartialEq for Involution {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs && self.convention == other.convention
    }
}

impl Eq for Involution {}

impl Involution {
    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn convention(&self) -> InvolutionConvention {
        self.convention
    }
}

/// Descriptor of a super commutative ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperRing {
    coeffs: CoeffRing,
    odd: Vec<String>,
    involution: Option<Involution>,
}

impl SuperRing {
    pub fn new(coeffs: CoeffRing, odd: &[&str]) -> Result<SuperRing> {
        if odd.len() > MAX_GENERATORS {
            return Err(AlgebraError::Capacity(format!(
                "{} odd generators, at most {MAX_GENERATORS}",
                odd.len()
            )));
        }
        let odd: Vec<String> = odd.iter().map(|s| s.to_string()).collect();
        for (i, g) in odd.iter().enumerate() {
            if odd[..i].contains(g) || coeffs.var_index(g).is_some() {
                return Err(AlgebraError::InvalidRing(format!("duplicate generator `{g}`")));
            }
            if !is_identifier(g) {
                return Err(AlgebraError::InvalidRing(format!("bad generator name `{g}`")));
            }
        }
        for v in coeffs.vars() {
            if !is_identifier(v) {
                return Err(AlgebraError::InvalidRing(format!("bad variable name `{v}`")));
            }
        }
        Ok(SuperRing { coeffs, odd, involution: None })
    }

    /// Grassmann algebra on `b1, …, bL` over a scalar kind.
    pub fn grassmann(kind: ScalarKind, generators: usize) -> Result<SuperRing> {
        let names: Vec<String> = (1..=generators).map(|i| format!("b{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        SuperRing::new(CoeffRing::scalar(kind)?, &refs)
    }

    /// Installs an involution given as oriented pairs `(g, g◇)`.
    pub fn with_involution(
        mut self,
        pairs: &[(&str, &str)],
        convention: InvolutionConvention,
    ) -> Result<SuperRing> {
        let nv = self.coeffs.vars().len();
        let mut even_perm: Vec<usize> = (0..nv).collect();
        let mut odd_map: Vec<(usize, Sign)> = (0..self.odd.len()).map(|i| (i, Sign::Plus)).collect();
        let mut seen: Vec<&str> = Vec::new();
        for &(g, h) in pairs {
            if seen.contains(&g) || (g != h && seen.contains(&h)) {
                return Err(AlgebraError::InvalidRing(format!("generator in two involution pairs: {g}/{h}")));
            }
            seen.push(g);
            seen.push(h);
            match (self.coeffs.var_index(g), self.coeffs.var_index(h)) {
                (Some(i), Some(j)) => {
                    even_perm[i] = j;
                    even_perm[j] = i;
                    continue;
                }
                (None, None) => {}
                _ => {
                    return Err(AlgebraError::InvalidRing(format!(
                        "involution pairs `{g}` with `{h}` of a different parity"
                    )))
                }
            }
            let i = self.odd_index(g).ok_or_else(|| AlgebraError::UnknownGenerator(g.into()))?;
            let j = self.odd_index(h).ok_or_else(|| AlgebraError::UnknownGenerator(h.into()))?;
            if i == j && convention == InvolutionConvention::Graded {
                return Err(AlgebraError::InvalidRing(format!(
                    "odd generator `{g}` cannot be self-conjugate under the graded convention"
                )));
            }
            let back = match convention {
                InvolutionConvention::Graded => Sign::Minus,
                InvolutionConvention::Plain => Sign::Plus,
            };
            odd_map[i] = (j, Sign::Plus);
            odd_map[j] = (i, back);
        }
        if convention == InvolutionConvention::Graded {
            if let Some(g) = self.odd.iter().find(|g| !seen.contains(&g.as_str())) {
                return Err(AlgebraError::InvalidRing(format!(
                    "odd generator `{g}` has no involution partner"
                )));
            }
        }
        if let Some(rel) = self.coeffs.relation() {
            // the relation must be stable under the variable swap
            let lead_swapped = permute_monomial(rel.lead(), &even_perm);
            if lead_swapped != *rel.lead() || rel.rhs().permute_vars(&even_perm) != *rel.rhs() {
                return Err(AlgebraError::InvalidRing("involution does not preserve the relation".into()));
            }
        }
        self.involution = Some(Involution {
            pairs: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            convention,
            even_perm,
            odd_map,
        });
        Ok(self)
    }

    pub fn coeffs(&self) -> &CoeffRing {
        &self.coeffs
    }

    pub fn odd_generators(&self) -> &[String] {
        &self.odd
    }

    pub fn odd_count(&self) -> usize {
        self.odd.len()
    }

    pub fn involution(&self) -> Option<&Involution> {
        self.involution.as_ref()
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        self.coeffs.scalar_kind()
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|g| g == name)
    }

    /// No even polynomial variables: a Grassmann algebra over scalars.
    pub fn is_pure_grassmann(&self) -> bool {
        self.coeffs.vars().is_empty()
    }

    /// Text of an odd monomial, e.g. `b1*b3`.
    pub fn odd_monomial_text(&self, m: MultiIndex) -> String {
        m.indices().map(|i| self.odd[i - 1].as_str()).collect::<Vec<_>>().join("*")
    }
}

fn permute_monomial(m: &crate::scalars::Monomial, perm: &[usize]) -> crate::scalars::Monomial {
    let mut out = m.clone();
    for (i, &e) in m.iter().enumerate() {
        out[perm[i]] = e;
    }
    out
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "I"
        && s != "sqrt"
}

/// Constructors that need a shared handle on the ring.
pub trait SuperRingExt {
    fn zero(&self) -> SuperElement;
    fn one(&self) -> SuperElement;
    fn constant(&self, c: Scalar) -> SuperElement;
    fn from_i64(&self, v: i64) -> SuperElement;
    fn rational(&self, num: i64, den: i64) -> SuperElement;
    /// Even variable by position.
    fn var(&self, i: usize) -> SuperElement;
    /// Odd generator by 1-based index.
    fn odd(&self, i: usize) -> SuperElement;
    /// Any generator by name.
    fn generator(&self, name: &str) -> Result<SuperElement>;
    fn from_poly(&self, odd: MultiIndex, p: Poly) -> SuperElement;
}

impl SuperRingExt for Arc<SuperRing> {
    fn zero(&self) -> SuperElement {
        SuperElement { ring: self.clone(), terms: BTreeMap::new() }
    }

    fn one(&self) -> SuperElement {
        self.from_i64(1)
    }

    fn constant(&self, c: Scalar) -> SuperElement {
        assert_eq!(c.kind(), self.scalar_kind(), "scalar kind mismatch");
        self.from_poly(MultiIndex::EMPTY, self.coeffs.constant(c))
    }

    fn from_i64(&self, v: i64) -> SuperElement {
        self.constant(Scalar::from_i64(self.scalar_kind(), v))
    }

    fn rational(&self, num: i64, den: i64) -> SuperElement {
        let q = num_rational::BigRational::new(num.into(), den.into());
        self.constant(Scalar::from_rational(self.scalar_kind(), &q).expect("denominator not invertible"))
    }

    fn var(&self, i: usize) -> SuperElement {
        self.from_poly(MultiIndex::EMPTY, self.coeffs.var(i))
    }

    fn odd(&self, i: usize) -> SuperElement {
        assert!(i >= 1 && i <= self.odd.len(), "odd generator {i} out of range");
        self.from_poly(MultiIndex::single(i), self.coeffs.one())
    }

    fn generator(&self, name: &str) -> Result<SuperElement> {
        if let Some(i) = self.coeffs.var_index(name) {
            Ok(self.var(i))
        } else if let Some(i) = self.odd_index(name) {
            Ok(self.odd(i + 1))
        } else {
            Err(AlgebraError::UnknownGenerator(name.to_string()))
        }
    }

    fn from_poly(&self, odd: MultiIndex, p: Poly) -> SuperElement {
        let mut e = self.zero();
        e.add_poly(odd, self.coeffs.normal_form(&p));
        e
    }
}

/// Finite sum `Σ_μ p_μ ξ_μ` with `p_μ` normal-form polynomials.
#[derive(Debug, Clone)]
pub struct SuperElement {
    ring: Arc<SuperRing>,
    terms: BTreeMap<MultiIndex, Poly>,
}

impl PartialEq for SuperElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for SuperElement {}

impl SuperElement {
    pub fn ring(&self) -> &Arc<SuperRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// Adds an already-normalised polynomial at `odd`.
    pub(crate) fn add_poly(&mut self, odd: MultiIndex, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(odd) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient polynomial of the odd monomial `μ`.
    pub fn coefficient(&self, odd: MultiIndex) -> Poly {
        self.terms.get(&odd).cloned().unwrap_or_default()
    }

    /// Scalar coefficient of `ξ_μ` in a pure Grassmann ring.
    pub fn scalar_coefficient(&self, odd: MultiIndex) -> Scalar {
        self.terms
            .get(&odd)
            .and_then(|p| p.constant_term().cloned())
            .unwrap_or_else(|| Scalar::zero(self.ring.scalar_kind()))
    }

    pub fn same_ring(&self, other: &SuperElement) -> bool {
        same_ring(&self.ring, &other.ring)
    }

    fn check(&self, other: &SuperElement) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &SuperElement) -> Result<SuperElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_poly(*m, p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SuperElement) -> Result<SuperElement> {
        self.try_add(&-other)
    }

    /// Super product: odd monomials merge with their reordering sign.
    pub fn try_mul(&self, other: &SuperElement) -> Result<SuperElement> {
        self.check(other)?;
        let coeffs = &self.ring.coeffs;
        let mut acc: BTreeMap<MultiIndex, Poly> = BTreeMap::new();
        for (mu, p) in &self.terms {
            for (nu, q) in &other.terms {
                let Some((lambda, sign)) = mu.merge_sign(*nu) else {
                    continue;
                };
                let mut prod = coeffs.mul_unreduced(p, q);
                if sign.is_negative() {
                    prod = prod.neg();
                }
                acc.entry(lambda).or_default().add_assign(&prod);
            }
        }
        let mut out = self.ring.zero();
        for (m, p) in acc {
            out.add_poly(m, coeffs.normal_form(&p));
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> SuperElement {
        let mut out = self.ring.zero();
        for (m, p) in &self.terms {
            out.add_poly(*m, p.scale(s));
        }
        out
    }

    pub fn pow(&self, n: u32) -> SuperElement {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree of a homogeneous element; `None` for mixed elements. Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(|m| m.parity());
        match parities.next() {
            None => Some(Parity::Even),
            Some(first) => parities.all(|p| p == first).then_some(first),
        }
    }

    /// `true` when the element is zero or homogeneous of the given parity.
    pub fn is_homogeneous_of(&self, parity: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == parity)
    }

    /// Component of a single parity.
    pub fn part(&self, parity: Parity) -> SuperElement {
        SuperElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == parity)
                .map(|(m, p)| (*m, p.clone()))
                .collect(),
        }
    }

    /// `(x₀, x₁)` with `x₀ + x₁ = x`.
    pub fn grade_split(&self) -> (SuperElement, SuperElement) {
        (self.part(Parity::Even), self.part(Parity::Odd))
    }

    fn require_pure(&self, what: &str) -> Result<()> {
        if self.ring.is_pure_grassmann() {
            Ok(())
        } else {
            Err(AlgebraError::Unsupported(format!(
                "{what} is only defined on Grassmann algebras without even variables"
            )))
        }
    }

    /// Body `ε(x)`: the coefficient of the empty multi-index.
    pub fn body(&self) -> Result<Scalar> {
        self.require_pure("body")?;
        Ok(self.scalar_coefficient(MultiIndex::EMPTY))
    }

    /// Soul `σ(x) = x − ε(x)`.
    pub fn soul(&self) -> Result<SuperElement> {
        self.require_pure("soul")?;
        Ok(self.soul_part())
    }

    /// Terms with a non-empty odd monomial; defined on every ring.
    pub fn soul_part(&self) -> SuperElement {
        let mut out = self.clone();
        out.terms.remove(&MultiIndex::EMPTY);
        out
    }

    /// Nilpotent iff the body is nilpotent in the scalar ring (zero over a field).
    pub fn is_nilpotent(&self) -> Result<bool> {
        let body = self.body()?;
        Ok(match body {
            Scalar::Modular { value, modulus } => {
                // c is nilpotent mod n iff every prime factor of n divides c
                let mut n = modulus;
                let mut p = 2;
                let mut ok = true;
                while p * p <= n {
                    if n % p == 0 {
                        ok &= value % p == 0;
                        while n % p == 0 {
                            n /= p;
                        }
                    }
                    p += 1;
                }
                if n > 1 {
                    ok &= value % n == 0;
                }
                ok
            }
            other => other.is_zero(),
        })
    }

    /// Union of all odd generators occurring in the element.
    pub fn odd_support(&self) -> MultiIndex {
        self.terms.keys().fold(MultiIndex::EMPTY, |acc, m| acc.union(*m))
    }

    /// Graded involution: conjugate-linear, swaps paired generators, and
    /// reverses products with `(xy)◇ = (−1)^{|x||y|} y◇ x◇`.
    pub fn involute(&self) -> Result<SuperElement> {
        let inv = self
            .ring
            .involution
            .as_ref()
            .ok_or_else(|| AlgebraError::Unsupported("ring has no involution table".into()))?;
        let coeffs = &self.ring.coeffs;
        let mut out = self.ring.zero();
        for (mu, p) in &self.terms {
            let even = coeffs.normal_form(&p.permute_vars(&inv.even_perm).map_coeffs(Scalar::conj));
            let k = mu.len();
            let mut sign = Sign::from_negative((k * (k.saturating_sub(1)) / 2) % 2 == 1);
            let mut acc = MultiIndex::EMPTY;
            let idx: Vec<usize> = mu.indices().collect();
            for &i in idx.iter().rev() {
                let (j, s) = inv.odd_map[i - 1];
                let (m, t) = acc
                    .merge_sign(MultiIndex::single(j + 1))
                    .expect("involution is a bijection on generators");
                acc = m;
                sign = sign * s * t;
            }
            out.add_poly(acc, if sign.is_negative() { even.neg() } else { even });
        }
        Ok(out)
    }

    /// Writes the element in another ring with the same generator names and
    /// scalar kind (used to move between a ring and an extension of it).
    pub fn embed_into(&self, target: &Arc<SuperRing>) -> Result<SuperElement> {
        if target.scalar_kind() != self.ring.scalar_kind() {
            return Err(AlgebraError::RingMismatch);
        }
        let var_map: Vec<usize> = self
            .ring
            .coeffs
            .vars()
            .iter()
            .map(|v| target.coeffs.var_index(v).ok_or_else(|| AlgebraError::UnknownGenerator(v.clone())))
            .collect::<Result<_>>()?;
        let odd_map: Vec<usize> = self
            .ring
            .odd
            .iter()
            .map(|g| target.odd_index(g).ok_or_else(|| AlgebraError::UnknownGenerator(g.clone())))
            .collect::<Result<_>>()?;
        let mut out = target.zero();
        for (mu, p) in &self.terms {
            let mut lambda = MultiIndex::EMPTY;
            let mut sign = Sign::Plus;
            for i in mu.indices() {
                let (m, s) = lambda
                    .merge_sign(MultiIndex::single(odd_map[i - 1] + 1))
                    .expect("generator map is injective");
                lambda = m;
                sign = sign * s;
            }
            let mut q = Poly::default();
            for (m, c) in p.terms() {
                let mut mm = target.coeffs.unit_monomial();
                for (i, &e) in m.iter().enumerate() {
                    mm[var_map[i]] = e;
                }
                q.add_term(mm, c.clone());
            }
            let q = target.coeffs.normal_form(&q);
            out.add_poly(lambda, if sign.is_negative() { q.neg() } else { q });
        }
        Ok(out)
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Scalar, String)> = Vec::new();
        for (mu, p) in &self.terms {
            let odd = self.ring.odd_monomial_text(*mu);
            for (m, c) in p.sorted_terms() {
                let even = self.ring.coeffs.monomial_text(m);
                let mono = match (even.is_empty(), odd.is_empty()) {
                    (true, _) => odd.clone(),
                    (false, true) => even,
                    (false, false) => format!("{even}*{odd}"),
                };
                terms.push((c.clone(), mono));
            }
        }
        write_sum(f, &terms)
    }
}

impl Add for &SuperElement {
    type Output = SuperElement;

    /// Panics on ring mismatch; use [`SuperElement::try_add`] for a checked sum.
    fn add(self, rhs: &SuperElement) -> SuperElement {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &SuperElement {
    type Output = SuperElement;

    fn sub(self, rhs: &SuperElement) -> SuperElement {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &SuperElement {
    type Output = SuperElement;

    fn mul(self, rhs: &SuperElement) -> SuperElement {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;

    fn neg(self) -> SuperElement {
        SuperElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, p)| (*m, p.neg())).collect(),
        }
    }
}

impl Add for SuperElement {
    type Output = SuperElement;

    fn add(self, rhs: SuperElement) -> SuperElement {
        &self + &rhs
    }
}

impl Sub for SuperElement {
    type Output = SuperElement;

    fn sub(self, rhs: SuperElement) -> SuperElement {
        &self - &rhs
    }
}

impl Mul for SuperElement {
    type Output = SuperElement;

    fn mul(self, rhs: SuperElement) -> SuperElement {
        &self * &rhs
    }
}

impl Neg for SuperElement {
    type Output = SuperElement;

    fn neg(self) -> SuperElement {
        -&self
    }
}
