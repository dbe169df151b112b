//! The rank-one projectors `pₙ = |ψₙ⟩⟨ψₙ|` over the coordinate superring of UOSP(1,2).

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::multiindex::Parity;
use crate::report::{Clause, Report};
use crate::scalars::{CoeffRing, Scalar, ScalarKind};
use crate::supermodule::{is_idempotent, FreeType, ModElement, SuperMorphism};
use crate::superring::{InvolutionConvention, SuperElement, SuperRing, SuperRingExt};

/// `ℚ(i, √·)[a, ad, b, bd]/(a·ad + b·bd − 1)` with odd `eta, etad` and the
/// involution `a ↔ ad`, `b ↔ bd`, `eta ↔ etad`.
pub fn landi_ring(convention: InvolutionConvention) -> Arc<SuperRing> {
    let kind = ScalarKind::Radical;
    let coeffs = CoeffRing::polynomial(kind, &["a", "ad", "b", "bd"]).expect("variables");
    let mut rhs = coeffs.one();
    rhs.add_term(smallvec::smallvec![0, 0, 1, 1], Scalar::from_i64(kind, -1));
    let coeffs = coeffs.with_relation(smallvec::smallvec![1, 1, 0, 0], rhs).expect("relation");
    let ring = SuperRing::new(coeffs, &["eta", "etad"]).expect("odd generators");
    let ring = ring
        .with_involution(&[("a", "ad"), ("b", "bd"), ("eta", "etad")], convention)
        .expect("involution");
    Arc::new(ring)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `⟨ψₙ|`: `n + 1` even components followed by `n` odd ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraVector {
    n: usize,
    ring: Arc<SuperRing>,
    even: Vec<SuperElement>,
    odd: Vec<SuperElement>,
}

pub fn make_bra(ring: &Arc<SuperRing>, n: usize) -> Result<BraVector> {
    if n == 0 {
        return Err(AlgebraError::Precondition("bra vector needs n >= 1".into()));
    }
    let kind = ring.scalar_kind();
    let (a_d, b_d) = (ring.generator("ad")?, ring.generator("bd")?);
    let (eta, eta_d) = (ring.generator("eta")?, ring.generator("etad")?);
    let prefactor = &ring.one() - &(&eta * &eta_d).scale(&Scalar::ratio(kind, 1, 8)?);
    let half_eta_d = eta_d.scale(&Scalar::ratio(kind, 1, 2)?);
    let monomial = |m: usize, k: usize| -> Result<SuperElement> {
        let root = ring.constant(Scalar::sqrt_int(kind, binomial(m, k))?);
        Ok(&(&root * &a_d.pow((m - k) as u32)) * &b_d.pow(k as u32))
    };
    let even = (0..=n).map(|k| Ok(&prefactor * &monomial(n, k)?)).collect::<Result<Vec<_>>>()?;
    let odd = (0..n).map(|k| Ok(&half_eta_d * &monomial(n - 1, k)?)).collect::<Result<Vec<_>>>()?;
    Ok(BraVector { n, ring: ring.clone(), even, odd })
}

impl BraVector {
    /// A bra with `n + 1` even and `n` odd components.
    pub fn from_components(ring: &Arc<SuperRing>, even: Vec<SuperElement>, odd: Vec<SuperElement>) -> Result<BraVector> {
        let n = odd.len();
        if n == 0 || even.len() != n + 1 {
            return Err(AlgebraError::ShapeMismatch(format!("{} even and {} odd components", even.len(), n)));
        }
        if even.iter().chain(&odd).any(|c| !Arc::ptr_eq(c.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(BraVector { n, ring: ring.clone(), even, odd })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<SuperRing> {
        &self.ring
    }

    pub fn even(&self) -> &[SuperElement] {
        &self.even
    }

    pub fn odd(&self) -> &[SuperElement] {
        &self.odd
    }

    pub fn module_type(&self) -> FreeType {
        FreeType::new(self.n + 1, self.n)
    }

    /// Components in module order: even block, then odd block.
    pub fn components(&self) -> impl Iterator<Item = &SuperElement> {
        self.even.iter().chain(&self.odd)
    }

    /// `|ψₙ⟩`: the involute of each component.
    pub fn ket(&self) -> Result<ModElement> {
        let coords = self.components().map(|c| c.involute()).collect::<Result<Vec<_>>>()?;
        ModElement::from_coords(self.module_type(), coords)
    }

    /// `⟨ψₙ|v⟩ = Σₖ ψₖ vₖ`.
    pub fn pair(&self, v: &ModElement) -> Result<SuperElement> {
        if v.ty() != self.module_type() {
            return Err(AlgebraError::ShapeMismatch(format!("vector of type {} for bra of type {}", v.ty(), self.module_type())));
        }
        self.components().zip(v.coords()).try_fold(self.ring.zero(), |acc, (b, x)| acc.try_add(&b.try_mul(x)?))
    }
}

/// `⟨ψₙ|ψₙ⟩`.
pub fn inner(bra: &BraVector, ket: &ModElement) -> Result<SuperElement> {
    bra.pair(ket)
}

/// The matrix `(pₙ)ᵢⱼ = |ψₙ⟩ᵢ ⟨ψₙ|ⱼ` on the free module of type `(n+1, n)`.
pub fn projector_p(bra: &BraVector) -> Result<SuperMorphism> {
    let ket = bra.ket()?;
    let rows = ket.coords().iter().map(|k| bra.components().map(|b| k * b).collect()).collect();
    SuperMorphism::new(&bra.ring, bra.module_type(), bra.module_type(), rows)
}

/// `πₙ(v) = |ψₙ⟩⟨ψₙ|v⟩`.
pub fn pi_apply(bra: &BraVector, v: &ModElement) -> Result<ModElement> {
    let lambda = bra.pair(v)?;
    bra.ket()?.mul_right(&lambda)
}

/// Super-adjoint `(M†)ᵢⱼ = (−1)^{|j| + |i||j|} (Mⱼᵢ)◇`.
pub fn super_adjoint(m: &SuperMorphism) -> Result<SuperMorphism> {
    let (s, t) = (m.source(), m.target());
    let mut rows = Vec::with_capacity(s.rank());
    for i in 0..s.rank() {
        let mut row = Vec::with_capacity(t.rank());
        for j in 0..t.rank() {
            let (pi, pj) = (s.basis_parity(i), t.basis_parity(j));
            let v = m.entry(j, i).involute()?;
            let negative = (pj == Parity::Odd) ^ pi.koszul(pj);
            row.push(if negative { -&v } else { v });
        }
        rows.push(row);
    }
    SuperMorphism::new(m.ring(), t, s, rows)
}

/// Even-even and odd-odd blocks even, mixed blocks odd.
pub fn has_even_block_structure(m: &SuperMorphism) -> bool {
    (0..m.target().rank()).all(|i| {
        (0..m.source().rank()).all(|j| {
            let want = m.target().basis_parity(i) + m.source().basis_parity(j);
            m.entry(i, j).is_homogeneous_of(want)
        })
    })
}

fn residual_clause(name: &str, r: Result<SuperElement>) -> Clause {
    match r {
        Ok(v) => Clause::with_witness(name, v.is_zero(), v.to_string()),
        Err(e) => Clause::with_witness(name, false, e.to_string()),
    }
}

/// Residual `p² − p` as the list of its nonzero entries.
pub fn idempotence_residual(p: &SuperMorphism) -> Result<Vec<(usize, usize, SuperElement)>> {
    let d = p.compose(p)?.sub(p)?;
    let mut out = Vec::new();
    for i in 0..d.target().rank() {
        for j in 0..d.source().rank() {
            if !d.entry(i, j).is_zero() {
                out.push((i, j, d.entry(i, j).clone()));
            }
        }
    }
    Ok(out)
}

/// Full check for one `n`: inner product, idempotence, self-adjointness,
/// block parities, and `πₙ² = πₙ` with rank-one image on the given vectors.
pub fn landi_report(n: usize, convention: InvolutionConvention, vectors: &[ModElement]) -> Result<Report> {
    let ring = landi_ring(convention);
    let bra = make_bra(&ring, n)?;
    let ket = bra.ket()?;
    let mut report = Report::new("landi").param("n", n).param(
        "convention",
        match convention {
            InvolutionConvention::Graded => "graded",
            InvolutionConvention::Plain => "plain",
        },
    );
    report.push(residual_clause("<psi|psi> = 1", inner(&bra, &ket).map(|v| &v - &ring.one())));
    let p = projector_p(&bra)?;
    let residual = idempotence_residual(&p)?;
    let witness = if residual.is_empty() {
        "0".to_string()
    } else {
        residual.iter().map(|(i, j, v)| format!("({i},{j}): {v}")).collect::<Vec<_>>().join("; ")
    };
    report.push(Clause::with_witness("p^2 = p", residual.is_empty(), witness));
    report.push(match super_adjoint(&p) {
        Ok(adj) => Clause::new("p self-adjoint", adj == p),
        Err(e) => Clause::with_witness("p self-adjoint", false, e.to_string()),
    });
    report.push(Clause::new("p block parities", has_even_block_structure(&p)));
    let mut idempotent = true;
    let mut rank_one = true;
    for v in vectors {
        let v = if v.ring().is_none_or(|r| r.as_ref() == ring.as_ref()) {
            v.clone()
        } else {
            return Err(AlgebraError::RingMismatch);
        };
        let once = pi_apply(&bra, &v)?;
        idempotent &= pi_apply(&bra, &once)? == once;
        idempotent &= p.apply(&v)? == once;
        let lambda = bra.pair(&once)?;
        rank_one &= ket.mul_right(&lambda)? == once;
    }
    report.push(Clause::with_witness("pi^2 = pi", idempotent, format!("{} vectors", vectors.len())));
    report.push(Clause::with_witness("pi image is a multiple of |psi>", rank_one, format!("{} vectors", vectors.len())));
    report.push(Clause::new("p idempotent (matrix)", is_idempotent(&p)?));
    Ok(report)
}
