//! Seeded random elements for the property suites.
//!
//! Every draw is keyed by `(seed, stream)`, so parallel and sequential runs
//! produce the same samples.

use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multiindex::{MultiIndex, Parity};
use crate::scalars::{Poly, Scalar, ScalarKind};
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

/// Deterministic generator for sample `stream` of a run seeded with `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Shape of random elements.
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    pub max_terms: usize,
    pub coeff_bound: i64,
    pub max_exponent: u16,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler { max_terms: 4, coeff_bound: 5, max_exponent: 2 }
    }
}

impl Sampler {
    pub fn scalar<R: Rng>(&self, kind: ScalarKind, rng: &mut R) -> Scalar {
        let b = self.coeff_bound;
        let int = |rng: &mut R| rng.gen_range(-b..=b);
        match kind {
            ScalarKind::Rational => {
                let den = rng.gen_range(1..=3);
                Scalar::Rational(BigRational::new(int(rng).into(), den.into()))
            }
            ScalarKind::GaussianRational => {
                let re = Scalar::from_i64(kind, int(rng));
                let im = Scalar::imaginary_unit(kind).unwrap().mul(&Scalar::from_i64(kind, int(rng)));
                re.add(&im)
            }
            ScalarKind::Radical => {
                let re = Scalar::from_i64(kind, int(rng));
                let d = *[1u64, 2, 3].choose(rng).unwrap();
                re.mul(&Scalar::sqrt_int(kind, d).unwrap())
            }
            ScalarKind::IntegerMod { n } => Scalar::from_i64(kind, rng.gen_range(0..n as i64)),
        }
    }

    /// Random odd multi-index of the requested parity (or any parity).
    pub fn odd_index<R: Rng>(&self, ring: &SuperRing, parity: Option<Parity>, rng: &mut R) -> Option<MultiIndex> {
        let l = ring.odd_count();
        for _ in 0..64 {
            let mut mask = 0u64;
            for i in 0..l {
                if rng.gen_bool(0.5) {
                    mask |= 1 << i;
                }
            }
            let m = MultiIndex::from_mask(mask);
            if parity.is_none_or(|p| m.parity() == p) {
                return Some(m);
            }
        }
        None
    }

    /// Random element; homogeneous of `parity` when given.
    pub fn element<R: Rng>(&self, ring: &Arc<SuperRing>, parity: Option<Parity>, rng: &mut R) -> SuperElement {
        let kind = ring.scalar_kind();
        let nvars = ring.coeffs().vars().len();
        let mut out = ring.zero();
        let terms = rng.gen_range(1..=self.max_terms);
        for _ in 0..terms {
            let Some(mu) = self.odd_index(ring, parity, rng) else {
                continue;
            };
            let mut m = ring.coeffs().unit_monomial();
            for e in m.iter_mut().take(nvars) {
                *e = rng.gen_range(0..=self.max_exponent);
            }
            let c = self.scalar(kind, rng);
            out = &out + &ring.from_poly(mu, Poly::from_terms([(m, c)]));
        }
        out
    }

    /// Random element with zero body (a soul), any parity mix.
    pub fn soul<R: Rng>(&self, ring: &Arc<SuperRing>, rng: &mut R) -> SuperElement {
        self.element(ring, None, rng).soul_part()
    }

    /// Random even soul.
    pub fn even_soul<R: Rng>(&self, ring: &Arc<SuperRing>, rng: &mut R) -> SuperElement {
        self.element(ring, Some(Parity::Even), rng).soul_part()
    }
}
