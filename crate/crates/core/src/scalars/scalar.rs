//! Exact scalar fields and rings underneath the polynomial layer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

pub type GaussRat = Complex<BigRational>;

/// Which scalar ring a coefficient lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarKind {
    Rational,
    GaussianRational,
    /// Gaussian rationals with formal square roots `√d` of positive integers adjoined.
    Radical,
    IntegerMod { n: u64 },
}

impl ScalarKind {
    pub fn validate(self) -> Result<()> {
        match self {
            ScalarKind::IntegerMod { n } if n < 2 => {
                Err(AlgebraError::InvalidRing(format!("integer_mod requires n >= 2, got {n}")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_field(self) -> bool {
        match self {
            ScalarKind::IntegerMod { n } => is_prime(n),
            _ => true,
        }
    }

    pub fn has_conjugation(self) -> bool {
        matches!(self, ScalarKind::GaussianRational | ScalarKind::Radical)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Element of `Q(i)(√2, √3, …)` stored as `Σ c_d √d` over squarefree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalNum(BTreeMap<u64, GaussRat>);

impl RadicalNum {
    pub fn terms(&self) -> impl Iterator<Item = (&u64, &GaussRat)> {
        self.0.iter()
    }

    fn from_gauss(c: GaussRat) -> RadicalNum {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(1, c);
        }
        RadicalNum(m)
    }

    /// `√k` for a positive integer `k`, reduced to `s√d` with `d` squarefree.
    pub fn sqrt_of(k: u64) -> Result<RadicalNum> {
        if k == 0 {
            return Ok(RadicalNum::default());
        }
        let (s, d) = split_square(k);
        let mut m = BTreeMap::new();
        m.insert(d, gauss_int(s as i64));
        Ok(RadicalNum(m))
    }

    fn accumulate(map: &mut BTreeMap<u64, GaussRat>, d: u64, c: GaussRat) {
        let entry = map.entry(d).or_insert_with(GaussRat::zero);
        *entry += c;
        if entry.is_zero() {
            map.remove(&d);
        }
    }

    fn add(&self, other: &RadicalNum) -> RadicalNum {
        let mut m = self.0.clone();
        for (d, c) in &other.0 {
            Self::accumulate(&mut m, *d, c.clone());
        }
        RadicalNum(m)
    }

    fn mul(&self, other: &RadicalNum) -> RadicalNum {
        let mut m = BTreeMap::new();
        for (d1, c1) in &self.0 {
            for (d2, c2) in &other.0 {
                let g = d1.gcd(d2);
                let d = (d1 / g) * (d2 / g);
                let c = c1 * c2 * gauss_int(g as i64);
                Self::accumulate(&mut m, d, c);
            }
        }
        RadicalNum(m)
    }

    fn neg(&self) -> RadicalNum {
        RadicalNum(self.0.iter().map(|(d, c)| (*d, -c.clone())).collect())
    }

    fn conj(&self) -> RadicalNum {
        RadicalNum(self.0.iter().map(|(d, c)| (*d, c.conj())).collect())
    }
}

/// `k = s² d` with `d` squarefree.
fn split_square(mut k: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= k {
        let mut e = 0;
        while k.is_multiple_of(p) {
            k /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= k;
    (s, d)
}

fn gauss_int(v: i64) -> GaussRat {
    Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
}

fn gauss_rat(q: BigRational) -> GaussRat {
    Complex::new(q, BigRational::zero())
}

/// An exact scalar. Arithmetic between different kinds is an internal logic
/// error and panics; the ring-aware layers check kinds before calling in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(GaussRat),
    Radical(RadicalNum),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Gaussian(_) => ScalarKind::GaussianRational,
            Scalar::Radical(_) => ScalarKind::Radical,
            Scalar::Modular { modulus, .. } => ScalarKind::IntegerMod { n: *modulus },
        }
    }

    pub fn zero(kind: ScalarKind) -> Scalar {
        Scalar::from_i64(kind, 0)
    }

    pub fn one(kind: ScalarKind) -> Scalar {
        Scalar::from_i64(kind, 1)
    }

    pub fn from_i64(kind: ScalarKind, v: i64) -> Scalar {
        match kind {
            ScalarKind::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            ScalarKind::GaussianRational => Scalar::Gaussian(gauss_int(v)),
            ScalarKind::Radical => Scalar::Radical(RadicalNum::from_gauss(gauss_int(v))),
            ScalarKind::IntegerMod { n } => Scalar::Modular {
                value: v.rem_euclid(n as i64) as u64,
                modulus: n,
            },
        }
    }

    /// Embeds a rational; modular rings need the denominator to be a unit.
    pub fn from_rational(kind: ScalarKind, q: &BigRational) -> Result<Scalar> {
        match kind {
            ScalarKind::Rational => Ok(Scalar::Rational(q.clone())),
            ScalarKind::GaussianRational => Ok(Scalar::Gaussian(gauss_rat(q.clone()))),
            ScalarKind::Radical => Ok(Scalar::Radical(RadicalNum::from_gauss(gauss_rat(q.clone())))),
            ScalarKind::IntegerMod { n } => {
                let m = BigInt::from(n);
                let num = q.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&m).to_u64().unwrap_or(0);
                let inv = mod_inverse(den, n).ok_or_else(|| {
                    AlgebraError::NotInvertible(format!("denominator {} modulo {n}", q.denom()))
                })?;
                Ok(Scalar::Modular {
                    value: ((num as u128 * inv as u128) % n as u128) as u64,
                    modulus: n,
                })
            }
        }
    }

    /// `num/den`; fails when `den` is zero or not a unit of the kind.
    pub fn ratio(kind: ScalarKind, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(AlgebraError::NotInvertible("zero denominator".into()));
        }
        Scalar::from_rational(kind, &BigRational::new(num.into(), den.into()))
    }

    /// The imaginary unit, when the kind has one.
    pub fn imaginary_unit(kind: ScalarKind) -> Result<Scalar> {
        let i = Complex::new(BigRational::zero(), BigRational::one());
        match kind {
            ScalarKind::GaussianRational => Ok(Scalar::Gaussian(i)),
            ScalarKind::Radical => Ok(Scalar::Radical(RadicalNum::from_gauss(i))),
            _ => Err(AlgebraError::Unsupported(format!("no imaginary unit in {kind:?}"))),
        }
    }

    /// Formal `√k`; only in the radical kind (or when `k` is a perfect square).
    pub fn sqrt_int(kind: ScalarKind, k: u64) -> Result<Scalar> {
        let (s, d) = split_square(k.max(1));
        if k == 0 {
            return Ok(Scalar::zero(kind));
        }
        if d == 1 {
            return Ok(Scalar::from_i64(kind, s as i64));
        }
        match kind {
            ScalarKind::Radical => Ok(Scalar::Radical(RadicalNum::sqrt_of(k)?)),
            _ => Err(AlgebraError::Unsupported(format!(
                "sqrt({k}) is not representable in {kind:?}"
            ))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(c) => c.is_zero(),
            Scalar::Radical(r) => r.0.is_empty(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.kind())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a + b),
            (Scalar::Radical(a), Scalar::Radical(b)) => Scalar::Radical(a.add(b)),
            (Scalar::Modular { value: a, modulus: n }, Scalar::Modular { value: b, modulus: m })
                if n == m =>
            {
                Scalar::Modular { value: ((*a as u128 + *b as u128) % *n as u128) as u64, modulus: *n }
            }
            _ => panic!("scalar kind mismatch: {:?} + {:?}", self.kind(), other.kind()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a * b),
            (Scalar::Radical(a), Scalar::Radical(b)) => Scalar::Radical(a.mul(b)),
            (Scalar::Modular { value: a, modulus: n }, Scalar::Modular { value: b, modulus: m })
                if n == m =>
            {
                Scalar::Modular { value: ((*a as u128 * *b as u128) % *n as u128) as u64, modulus: *n }
            }
            _ => panic!("scalar kind mismatch: {:?} * {:?}", self.kind(), other.kind()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian(a) => Scalar::Gaussian(-a),
            Scalar::Radical(a) => Scalar::Radical(a.neg()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// Complex conjugation; the identity on real kinds.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Gaussian(a) => Scalar::Gaussian(a.conj()),
            Scalar::Radical(a) => Scalar::Radical(a.conj()),
            other => other.clone(),
        }
    }

    /// Multiplicative inverse when it exists. Radical numbers are inverted
    /// only when they are a single term `c√d`.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(a) if !a.is_zero() => Some(Scalar::Rational(a.recip())),
            Scalar::Gaussian(a) if !a.is_zero() => Some(Scalar::Gaussian(a.inv())),
            Scalar::Radical(r) if r.0.len() == 1 => {
                let (d, c) = r.0.iter().next().unwrap();
                // (c√d)⁻¹ = √d / (c d)
                let inv = (c * gauss_int(*d as i64)).inv();
                let mut m = BTreeMap::new();
                m.insert(*d, inv);
                Some(Scalar::Radical(RadicalNum(m)))
            }
            Scalar::Modular { value, modulus } => {
                mod_inverse(*value, *modulus).map(|v| Scalar::Modular { value: v, modulus: *modulus })
            }
            _ => None,
        }
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(a) => Some(a.clone()),
            Scalar::Gaussian(a) if a.im.is_zero() => Some(a.re.clone()),
            Scalar::Radical(r) => match r.0.len() {
                0 => Some(BigRational::zero()),
                1 => r.0.get(&1).filter(|c| c.im.is_zero()).map(|c| c.re.clone()),
                _ => None,
            },
            _ => None,
        }
    }

    /// Exact square root of a rational scalar, if it is a rational square.
    pub fn rational_sqrt(&self) -> Option<Scalar> {
        let q = self.as_rational()?;
        if q.is_negative() {
            return None;
        }
        let n = int_sqrt(q.numer())?;
        let d = int_sqrt(q.denom())?;
        Scalar::from_rational(self.kind(), &BigRational::new(n, d)).ok()
    }

    /// `true` when the scalar's printed form needs brackets inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Scalar::Gaussian(c) => !c.re.is_zero() && !c.im.is_zero(),
            Scalar::Radical(r) => {
                r.0.len() > 1 || r.0.values().any(|c| !c.re.is_zero() && !c.im.is_zero())
            }
            _ => false,
        }
    }

    /// `true` when the printed form starts with a minus sign and is a single term.
    pub(crate) fn is_negative_simple(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Gaussian(c) if !self.is_compound() => {
                if c.im.is_zero() {
                    c.re.is_negative()
                } else {
                    c.im.is_negative()
                }
            }
            Scalar::Radical(r) if !self.is_compound() => r
                .0
                .values()
                .next()
                .map(|c| if c.im.is_zero() { c.re.is_negative() } else { c.im.is_negative() })
                .unwrap_or(false),
            _ => false,
        }
    }
}

fn int_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(n as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n as i128) as u64)
}

fn fmt_rat(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn fmt_gauss(c: &GaussRat, unit: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut wrote = false;
    if !unit.is_empty() && c.im.is_zero() && c.re.abs().is_one() {
        if c.re.is_negative() {
            f.write_str("-")?;
        }
        return f.write_str(unit);
    }
    if !c.re.is_zero() {
        fmt_rat(&c.re, f)?;
        if !unit.is_empty() {
            write!(f, "*{unit}")?;
        }
        wrote = true;
    }
    if !c.im.is_zero() {
        if wrote {
            f.write_str(if c.im.is_negative() { " - " } else { " + " })?;
            fmt_rat(&c.im.abs(), f)?;
        } else {
            fmt_rat(&c.im, f)?;
        }
        write!(f, "*I")?;
        if !unit.is_empty() {
            write!(f, "*{unit}")?;
        }
        wrote = true;
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => fmt_rat(q, f),
            Scalar::Gaussian(c) => fmt_gauss(c, "", f),
            Scalar::Radical(r) => {
                if r.0.is_empty() {
                    return f.write_str("0");
                }
                for (k, (d, c)) in r.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    let unit = if *d == 1 { String::new() } else { format!("sqrt({d})") };
                    fmt_gauss(c, &unit, f)?;
                }
                Ok(())
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
