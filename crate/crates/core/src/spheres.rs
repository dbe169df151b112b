//! The tangent projector over `Λₙ = R[x0..xn]/(Σ xᵢ² − 1)` and the ℤ₆ idempotent.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::report::{Clause, Report};
use crate::scalars::{CoeffRing, ScalarKind};
use crate::supermodule::{
    end_projector, is_idempotent, split_idempotent, FreeType, ModElement, SectionSplitting, SuperMorphism,
};
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

/// `Λₙ` over `base`: the odd generators of `base` plus even `x0..xn` on the unit sphere.
pub fn sphere_ring(base: &SuperRing, n: usize) -> Result<Arc<SuperRing>> {
    if !base.coeffs().vars().is_empty() {
        return Err(AlgebraError::Unsupported("sphere ring over a base with even variables".into()));
    }
    let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let coeffs = CoeffRing::sphere(base.scalar_kind(), &vars)?;
    let odd: Vec<&str> = base.odd_generators().iter().map(|s| s.as_str()).collect();
    Ok(Arc::new(SuperRing::new(coeffs, &odd)?))
}

/// `g` with `g(sᵢ) = Σⱼ x̄ᵢx̄ⱼ sⱼ` on the even free module `F = Λₙ^{n+1}`, and `α = Σ x̄ⱼsⱼ`.
#[derive(Debug, Clone)]
pub struct SphereProjectorBundle {
    n: usize,
    ring: Arc<SuperRing>,
    g: SuperMorphism,
    alpha: ModElement,
}

pub fn make_sphere_projector(base: &SuperRing, n: usize) -> Result<SphereProjectorBundle> {
    if n == 0 {
        return Err(AlgebraError::Precondition("sphere projector needs n >= 1".into()));
    }
    let ring = sphere_ring(base, n)?;
    let ty = FreeType::new(n + 1, 0);
    let xbar: Vec<SuperElement> = (0..=n).map(|i| ring.var(i)).collect();
    let rows = (0..=n).map(|j| (0..=n).map(|i| &xbar[i] * &xbar[j]).collect()).collect();
    let g = SuperMorphism::new(&ring, ty, ty, rows)?;
    let alpha = ModElement::from_coords(ty, xbar)?;
    let bundle = SphereProjectorBundle { n, ring, g, alpha };
    if !is_idempotent(&bundle.g)? {
        return Err(AlgebraError::Invariant("g is not idempotent".into()));
    }
    if bundle.g.apply(&bundle.alpha)? != bundle.alpha {
        return Err(AlgebraError::Invariant("g(alpha) != alpha".into()));
    }
    for (i, m) in bundle.multipliers()?.iter().enumerate() {
        if m != &bundle.xbar(i) {
            return Err(AlgebraError::Invariant(format!("g(s{i}) is not x{i}*alpha")));
        }
    }
    Ok(bundle)
}

impl SphereProjectorBundle {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<SuperRing> {
        &self.ring
    }

    pub fn g(&self) -> &SuperMorphism {
        &self.g
    }

    pub fn alpha(&self) -> &ModElement {
        &self.alpha
    }

    pub fn module_type(&self) -> FreeType {
        self.g.source()
    }

    pub fn xbar(&self, i: usize) -> SuperElement {
        self.ring.var(i)
    }

    pub fn basis_vector(&self, i: usize) -> ModElement {
        ModElement::basis(&self.ring, self.module_type(), i)
    }

    /// `λ ↦ αλ` as a map `Λ → F`.
    pub fn alpha_column(&self) -> SuperMorphism {
        let rows = self.alpha.coords().iter().map(|c| vec![c.clone()]).collect();
        SuperMorphism::new(&self.ring, FreeType::new(1, 0), self.module_type(), rows).expect("column shape")
    }

    /// Pairing with `α`: `F → Λ`, `(vⱼ) ↦ Σ x̄ⱼvⱼ`.
    pub fn alpha_row(&self) -> SuperMorphism {
        let row = self.alpha.coords().to_vec();
        SuperMorphism::new(&self.ring, self.module_type(), FreeType::new(1, 0), vec![row]).expect("row shape")
    }

    /// The coefficient `mᵢ` with `g(sᵢ) = α·mᵢ`, read off by pairing `g(sᵢ)` with `α`.
    /// Fails if the candidate does not reproduce `g(sᵢ)`.
    pub fn multipliers(&self) -> Result<Vec<SuperElement>> {
        let row = self.alpha_row();
        (0..=self.n)
            .map(|i| {
                let image = self.g.apply(&self.basis_vector(i))?;
                let m = row.apply(&image)?.coords()[0].clone();
                if self.alpha.mul_right(&m)? != image {
                    return Err(AlgebraError::Invariant(format!("g(s{i}) is not a multiple of alpha")));
                }
                Ok(m)
            })
            .collect()
    }

    /// `x̄₁s₀ − x̄₀s₁`, which spans `Ker g` when `n = 1`.
    pub fn kernel_generator(&self) -> Option<ModElement> {
        if self.n != 1 {
            return None;
        }
        let v = self.basis_vector(0).mul_right(&self.xbar(1)).ok()?;
        v.sub(&self.basis_vector(1).mul_right(&self.xbar(0)).ok()?).ok()
    }

    pub fn trace(&self) -> SuperElement {
        (0..=self.n).fold(self.ring.zero(), |acc, i| &acc + self.g.entry(i, i))
    }
}

fn check(name: &str, r: Result<bool>) -> Clause {
    match r {
        Ok(pass) => Clause::new(name, pass),
        Err(e) => Clause::with_witness(name, false, e.to_string()),
    }
}

/// Clause-by-clause certificate that `Ker g ⊕ Λ ≅ F`.
pub fn stably_free_certificate(bundle: &SphereProjectorBundle) -> Report {
    let g = bundle.g();
    let mut report = Report::new("sphere").param("n", bundle.n()).param(
        "base_odd_generators",
        bundle.ring().odd_count(),
    );
    report.note(format!("basis s0..s{} all even, module type {}", bundle.n(), bundle.module_type()));

    report.push(check("idempotent", is_idempotent(g)));
    report.push(check("g(alpha) = alpha", g.apply(bundle.alpha()).map(|y| &y == bundle.alpha())));
    report.push(match bundle.multipliers() {
        Ok(ms) => {
            let text: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
            let pass = ms.iter().enumerate().all(|(i, m)| m == &bundle.xbar(i));
            Clause::with_witness("image generated by alpha", pass, format!("multipliers ({})", text.join(", ")))
        }
        Err(e) => Clause::with_witness("image generated by alpha", false, e.to_string()),
    });
    report.push(check(
        "ker g + im g round trip",
        split_idempotent(g).and_then(|s| Ok(s.verify_round_trip()? && s.verify_orthogonal()?)),
    ));
    let row = bundle.alpha_row();
    let col = bundle.alpha_column();
    report.push(check(
        "alpha spans a free rank-1 summand",
        row.compose(&col).map(|id| id == SuperMorphism::identity(bundle.ring(), FreeType::new(1, 0))),
    ));
    report.push(check("g factors through alpha", col.compose(&row).map(|c| &c == g)));
    report.push(check(
        "ker g + free rank 1 = free rank n+1",
        SectionSplitting::new(&row, &col).and_then(|s| s.verify()),
    ));
    let trace = bundle.trace();
    report.push(Clause::with_witness("trace = 1", trace.is_one(), trace.to_string()));
    if let Some(k) = bundle.kernel_generator() {
        let clause = match g.apply(&k) {
            Ok(y) => Clause::with_witness("g(x1 s0 - x0 s1) = 0", y.is_zero() && !k.is_zero(), y.to_string()),
            Err(e) => Clause::with_witness("g(x1 s0 - x0 s1) = 0", false, e.to_string()),
        };
        report.push(clause);
    }
    report.note("non-freeness of ker g for n not in {0, 1, 3, 7}: cited, not machine-checked");
    report
}

/// The endomorphism-module projector of `g` is idempotent.
pub fn end_projector_check(bundle: &SphereProjectorBundle) -> Result<bool> {
    is_idempotent(end_projector(bundle.g())?.matrix())
}

/// Every element of `ℤ_n[ξ₁..ξ_L]`; `n^(2^L)` of them.
pub fn enumerate_finite(ring: &Arc<SuperRing>) -> Result<Vec<SuperElement>> {
    let ScalarKind::IntegerMod { n } = ring.scalar_kind() else {
        return Err(AlgebraError::Unsupported("enumeration needs a finite coefficient ring".into()));
    };
    if !ring.is_pure_grassmann() || ring.odd_count() > 3 {
        return Err(AlgebraError::Unsupported("enumeration needs a small pure Grassmann ring".into()));
    }
    let basis: Vec<SuperElement> = crate::multiindex::enumerate(ring.odd_count())?
        .into_iter()
        .map(|m| ring.from_poly(m, ring.coeffs().one()))
        .collect();
    let total = (n as usize).pow(basis.len() as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut c = code;
        let mut v = ring.zero();
        for b in &basis {
            let digit = (c % n as usize) as i64;
            c /= n as usize;
            if digit != 0 {
                v = &v + &b.scale(&crate::scalars::Scalar::from_i64(ring.scalar_kind(), digit));
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// `ℤ₆[ξ₁,ξ₂]` with `e` = multiplication by 3.
pub fn z6_ring() -> Arc<SuperRing> {
    let coeffs = CoeffRing::scalar(ScalarKind::IntegerMod { n: 6 }).expect("Z6");
    Arc::new(SuperRing::new(coeffs, &["xi1", "xi2"]).expect("Z6 ring"))
}

pub fn z6_example() -> Report {
    let ring = z6_ring();
    let ty = FreeType::new(1, 0);
    let e = SuperMorphism::scalar(&ring, ty, &ring.from_i64(3));
    let f = SuperMorphism::identity(&ring, ty).sub(&e).expect("same shape");
    let mut report = Report::new("z6");
    report.push(check("e idempotent", is_idempotent(&e)));
    report.push(check("e(1-e) = 0", e.compose(&f).map(|m| m.is_zero())));
    let elements = match enumerate_finite(&ring) {
        Ok(v) => v,
        Err(err) => {
            report.push(Clause::with_witness("enumeration", false, err.to_string()));
            return report;
        }
    };
    let mut image = HashSet::new();
    let mut kernel = HashSet::new();
    let mut decomposes = true;
    for x in &elements {
        let v = ModElement::from_coords(ty, vec![x.clone()]).expect("rank 1");
        let p = e.apply(&v).expect("shape");
        let h = f.apply(&v).expect("shape");
        decomposes &= p.add(&h).expect("shape") == v;
        image.insert(p.coords()[0].to_string());
        kernel.insert(h.coords()[0].to_string());
    }
    let common: Vec<&String> = image.intersection(&kernel).collect();
    report.push(Clause::with_witness("elements enumerated", elements.len() == 1296, elements.len().to_string()));
    report.push(Clause::with_witness("|Im e| = 16", image.len() == 16, image.len().to_string()));
    report.push(Clause::with_witness("|Im(1-e)| = 81", kernel.len() == 81, kernel.len().to_string()));
    report.push(Clause::with_witness(
        "Im e and Im(1-e) meet in 0",
        common.len() == 1 && common[0] == "0",
        format!("{common:?}"),
    ));
    report.push(Clause::new("x = e(x) + (1-e)(x)", decomposes));
    report
}
