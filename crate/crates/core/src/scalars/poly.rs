//! Commutative polynomials over a scalar kind, optionally modulo one relation
//! `lead = rhs` whose right-hand side avoids every variable of `lead`.
//!
//! Reduction replaces the largest power `lead^k` dividing a monomial by
//! `rhs^k` in a single step, so the normal form is reached immediately and is
//! canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::scalar::{Scalar, ScalarKind};
use crate::error::{AlgebraError, Result};

/// Exponent vector, one slot per ring variable.
pub type Monomial = SmallVec<[u16; 6]>;

/// Quadratic-style relation `lead = rhs`.
#[derive(Debug, Clone)]
pub struct Relation {
    lead: Monomial,
    rhs: Poly,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.lead == other.lead && self.rhs == other.rhs
    }
}

impl Eq for Relation {}

impl Relation {
    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }
}

/// Coefficient ring: a scalar kind, optional commuting variables, optional relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRing {
    scalar: ScalarKind,
    vars: Vec<String>,
    relation: Option<Relation>,
}

impl CoeffRing {
    pub fn scalar(kind: ScalarKind) -> Result<CoeffRing> {
        kind.validate()?;
        Ok(CoeffRing { scalar: kind, vars: Vec::new(), relation: None })
    }

    pub fn polynomial(kind: ScalarKind, vars: &[&str]) -> Result<CoeffRing> {
        kind.validate()?;
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(CoeffRing { scalar: kind, vars, relation: None })
    }

    /// Adds the relation `lead = rhs`. `rhs` must be a polynomial of this ring
    /// not involving any variable that occurs in `lead`.
    pub fn with_relation(mut self, lead: Monomial, rhs: Poly) -> Result<CoeffRing> {
        if self.relation.is_some() {
            return Err(AlgebraError::InvalidRing("only one relation is supported".into()));
        }
        if lead.len() != self.vars.len() || lead.iter().all(|&e| e == 0) {
            return Err(AlgebraError::InvalidRing("relation lead must be a non-constant monomial".into()));
        }
        for m in rhs.terms.keys() {
            if m.len() != self.vars.len() {
                return Err(AlgebraError::InvalidRing("relation rhs has wrong arity".into()));
            }
            if m.iter().zip(&lead).any(|(&e, &l)| e > 0 && l > 0) {
                return Err(AlgebraError::InvalidRing(
                    "relation rhs must not mention a variable of the lead monomial".into(),
                ));
            }
        }
        if rhs.terms.values().any(|c| c.kind() != self.scalar) {
            return Err(AlgebraError::RingMismatch);
        }
        self.relation = Some(Relation { lead, rhs });
        Ok(self)
    }

    /// `Q[v0..vn]/(v0² + … + vn² − 1)` with `v0` as the rewritten variable.
    pub fn sphere(kind: ScalarKind, vars: &[&str]) -> Result<CoeffRing> {
        if vars.is_empty() {
            return Err(AlgebraError::InvalidRing("sphere ring needs a variable".into()));
        }
        let ring = CoeffRing::polynomial(kind, vars)?;
        let mut rhs = ring.constant(Scalar::one(kind));
        for i in 1..vars.len() {
            let mut m = ring.unit_monomial();
            m[i] = 2;
            rhs.add_term(m, Scalar::from_i64(kind, -1));
        }
        let mut lead = ring.unit_monomial();
        lead[0] = 2;
        ring.with_relation(lead, rhs)
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        self.scalar
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relation(&self) -> Option<&Relation> {
        self.relation.as_ref()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn unit_monomial(&self) -> Monomial {
        SmallVec::from_elem(0, self.vars.len())
    }

    pub fn zero(&self) -> Poly {
        Poly::default()
    }

    pub fn one(&self) -> Poly {
        self.constant(Scalar::one(self.scalar))
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        let mut p = Poly::default();
        p.add_term(self.unit_monomial(), c);
        p
    }

    pub fn from_i64(&self, v: i64) -> Poly {
        self.constant(Scalar::from_i64(self.scalar, v))
    }

    /// The variable at position `i`, in normal form.
    pub fn var(&self, i: usize) -> Poly {
        let mut m = self.unit_monomial();
        m[i] = 1;
        let mut p = Poly::default();
        p.add_term(m, Scalar::one(self.scalar));
        self.normal_form(&p)
    }

    /// Rewrites every monomial divisible by the relation's lead.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let Some(rel) = &self.relation else {
            return p.clone();
        };
        if p.terms.keys().all(|m| reducible_power(m, &rel.lead) == 0) {
            return p.clone();
        }
        let mut out = Poly::default();
        let mut powers: Vec<Poly> = vec![self.one()];
        for (m, c) in &p.terms {
            let k = reducible_power(m, &rel.lead);
            if k == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while powers.len() <= k {
                let next = raw_mul(powers.last().unwrap(), &rel.rhs);
                powers.push(next);
            }
            let rest: Monomial = m.iter().zip(&rel.lead).map(|(&e, &l)| e - l * k as u16).collect();
            for (rm, rc) in &powers[k].terms {
                let mono: Monomial = rest.iter().zip(rm).map(|(a, b)| a + b).collect();
                out.add_term(mono, c.mul(rc));
            }
        }
        out
    }

    pub fn is_normal(&self, p: &Poly) -> bool {
        match &self.relation {
            None => true,
            Some(rel) => p.terms.keys().all(|m| reducible_power(m, &rel.lead) == 0),
        }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        out.add_assign(b);
        out
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &b.neg())
    }

    /// Product of two normal forms, returned in normal form.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normal_form(&raw_mul(a, b))
    }

    /// Product without reduction; callers normalise after accumulating.
    pub(crate) fn mul_unreduced(&self, a: &Poly, b: &Poly) -> Poly {
        raw_mul(a, b)
    }

    pub fn pow(&self, a: &Poly, n: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Renders a polynomial with this ring's variable names.
    pub fn display<'a>(&'a self, p: &'a Poly) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: p }
    }

    pub fn monomial_text(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in self.vars.iter().zip(m.iter()) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Largest `k` with `lead^k | m`.
fn reducible_power(m: &Monomial, lead: &Monomial) -> usize {
    m.iter()
        .zip(lead)
        .filter(|(_, &l)| l > 0)
        .map(|(&e, &l)| (e / l) as usize)
        .min()
        .unwrap_or(0)
}

fn raw_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::default();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            out.add_term(m, ca.mul(cb));
        }
    }
    out
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut p = Poly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.mul(s))))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.iter().find(|(m, _)| m.iter().all(|&e| e == 0)).map(|(_, c)| c)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&e| e as u32).sum()).max().unwrap_or(0)
    }

    /// Terms in printing order: by total degree, then descending exponents.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|&e| e as u32).sum();
            let db: u32 = b.iter().map(|&e| e as u32).sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut out: Monomial = SmallVec::from_elem(0, m.len());
            for (i, &e) in m.iter().enumerate() {
                out[perm[i]] = e;
            }
            (out, c.clone())
        }))
    }
}

pub struct PolyDisplay<'a> {
    ring: &'a CoeffRing,
    poly: &'a Poly,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Scalar, String)> = self
            .poly
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (c.clone(), self.ring.monomial_text(m)))
            .collect();
        write_sum(f, &terms)
    }
}

/// Writes `Σ cᵢ·monoᵢ` with signs folded into the separators.
pub(crate) fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[(Scalar, String)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (c, mono)) in terms.iter().enumerate() {
        let negative = c.is_negative_simple();
        let shown = if negative { c.neg() } else { c.clone() };
        if i == 0 {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        if mono.is_empty() {
            if shown.is_compound() && terms.len() > 1 {
                write!(f, "({shown})")?;
            } else {
                write!(f, "{shown}")?;
            }
        } else if shown.is_one() {
            f.write_str(mono)?;
        } else if shown.is_compound() {
            write!(f, "({shown})*{mono}")?;
        } else {
            write!(f, "{shown}*{mono}")?;
        }
    }
    Ok(())
}

/// A polynomial tagged with its ring, for checked arithmetic.
#[derive(Debug, Clone)]
pub struct PolyValue {
    ring: Arc<CoeffRing>,
    poly: Poly,
}

impl PartialEq for PolyValue {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.poly == other.poly
    }
}

impl Eq for PolyValue {}

pub(crate) fn same_ring<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PolyValue {
    /// Wraps `poly`, bringing it to normal form.
    pub fn new(ring: Arc<CoeffRing>, poly: Poly) -> Result<PolyValue> {
        if poly.terms.keys().any(|m| m.len() != ring.vars.len())
            || poly.terms.values().any(|c| c.kind() != ring.scalar)
        {
            return Err(AlgebraError::RingMismatch);
        }
        let poly = ring.normal_form(&poly);
        Ok(PolyValue { ring, poly })
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    fn check(&self, other: &PolyValue) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn add(&self, other: &PolyValue) -> Result<PolyValue> {
        self.check(other)?;
        Ok(PolyValue { ring: self.ring.clone(), poly: self.ring.add(&self.poly, &other.poly) })
    }

    pub fn sub(&self, other: &PolyValue) -> Result<PolyValue> {
        self.check(other)?;
        Ok(PolyValue { ring: self.ring.clone(), poly: self.ring.sub(&self.poly, &other.poly) })
    }

    pub fn mul(&self, other: &PolyValue) -> Result<PolyValue> {
        self.check(other)?;
        Ok(PolyValue { ring: self.ring.clone(), poly: self.ring.mul(&self.poly, &other.poly) })
    }

    pub fn neg(&self) -> PolyValue {
        PolyValue { ring: self.ring.clone(), poly: self.poly.neg() }
    }

    pub fn pow(&self, n: u32) -> PolyValue {
        PolyValue { ring: self.ring.clone(), poly: self.ring.pow(&self.poly, n) }
    }
}

impl fmt::Display for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ring.display(&self.poly).fmt(f)
    }
}
