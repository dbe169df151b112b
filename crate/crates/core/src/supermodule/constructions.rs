//! Direct sums, tensor products and the endomorphism projector.

use std::sync::Arc;

use super::{is_idempotent, FreeType, ModElement, SuperMorphism};
use crate::error::{AlgebraError, Result};
use crate::multiindex::Parity;
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

/// Position of local basis vector `i` of summand `c` inside `⊕ types`.
/// Even vectors of every summand come first, in summand order.
pub(crate) fn sum_index(types: &[FreeType], c: usize, i: usize) -> usize {
    let total_p: usize = types.iter().map(|t| t.p).sum();
    if i < types[c].p {
        types[..c].iter().map(|t| t.p).sum::<usize>() + i
    } else {
        total_p + types[..c].iter().map(|t| t.q).sum::<usize>() + (i - types[c].p)
    }
}

fn sum_type(types: &[FreeType]) -> FreeType {
    types.iter().fold(FreeType::new(0, 0), |acc, t| acc.direct_sum(*t))
}

/// Assembles a map `⊕ sources → ⊕ targets` from blocks; `blocks[r][c]`
/// maps `sources[c]` to `targets[r]`, `None` is the zero block.
pub fn block_morphism(
    ring: &Arc<SuperRing>,
    sources: &[FreeType],
    targets: &[FreeType],
    blocks: &[Vec<Option<SuperMorphism>>],
) -> Result<SuperMorphism> {
    let mut m = SuperMorphism::zero(ring, sum_type(sources), sum_type(targets));
    if blocks.len() != targets.len() {
        return Err(AlgebraError::ShapeMismatch("block rows".into()));
    }
    for (r, row) in blocks.iter().enumerate() {
        if row.len() != sources.len() {
            return Err(AlgebraError::ShapeMismatch("block columns".into()));
        }
        for (c, block) in row.iter().enumerate() {
            let Some(b) = block else { continue };
            if b.source() != sources[c] || b.target() != targets[r] {
                return Err(AlgebraError::ShapeMismatch(format!("block ({r}, {c})")));
            }
            for i in 0..targets[r].rank() {
                for j in 0..sources[c].rank() {
                    m.set_entry(sum_index(targets, r, i), sum_index(sources, c, j), b.entry(i, j).clone());
                }
            }
        }
    }
    Ok(m)
}

/// `x₁ ⊕ x₂ ⊕ …`.
pub fn direct_sum_elements(parts: &[ModElement], ring: &Arc<SuperRing>) -> Result<ModElement> {
    let types: Vec<FreeType> = parts.iter().map(|p| p.ty()).collect();
    let ty = sum_type(&types);
    let mut coords = vec![ring.zero(); ty.rank()];
    for (c, part) in parts.iter().enumerate() {
        for (i, v) in part.coords().iter().enumerate() {
            if !v.same_ring(&coords[0]) {
                return Err(AlgebraError::RingMismatch);
            }
            coords[sum_index(&types, c, i)] = v.clone();
        }
    }
    Ok(ModElement { ty, coords })
}

/// Inverse of [`direct_sum_elements`].
pub fn split_direct_sum(y: &ModElement, types: &[FreeType]) -> Result<Vec<ModElement>> {
    if y.ty() != sum_type(types) {
        return Err(AlgebraError::ShapeMismatch(format!("{} is not a sum of the given types", y.ty())));
    }
    Ok(types
        .iter()
        .enumerate()
        .map(|(c, t)| ModElement {
            ty: *t,
            coords: (0..t.rank()).map(|i| y.coords()[sum_index(types, c, i)].clone()).collect(),
        })
        .collect())
}

/// Block-diagonal `φ ⊕ ψ`.
pub fn direct_sum_morphisms(phi: &SuperMorphism, psi: &SuperMorphism) -> Result<SuperMorphism> {
    block_morphism(
        phi.ring(),
        &[phi.source(), psi.source()],
        &[phi.target(), psi.target()],
        &[vec![Some(phi.clone()), None], vec![None, Some(psi.clone())]],
    )
}

/// Basis of `F₁ ⊗ F₂` as pairs `(i, j)` meaning `bᵢ ⊗ b′ⱼ`, ordered with the
/// even pairs first and lexicographically within each parity.
pub fn tensor_basis(t1: FreeType, t2: FreeType) -> Vec<(usize, usize)> {
    let pairs: Vec<(usize, usize)> =
        (0..t1.rank()).flat_map(|i| (0..t2.rank()).map(move |j| (i, j))).collect();
    let parity = |&(i, j): &(usize, usize)| t1.basis_parity(i) + t2.basis_parity(j);
    let mut out: Vec<(usize, usize)> = pairs.iter().copied().filter(|p| parity(p) == Parity::Even).collect();
    out.extend(pairs.iter().copied().filter(|p| parity(p) == Parity::Odd));
    out
}

/// `x ⊗ y`, moving each coefficient of `x` past the basis vectors of `y`
/// with the Koszul sign.
pub fn tensor_elements(x: &ModElement, y: &ModElement, ring: &Arc<SuperRing>) -> Result<ModElement> {
    let (t1, t2) = (x.ty(), y.ty());
    let basis = tensor_basis(t1, t2);
    let mut coords = Vec::with_capacity(basis.len());
    for &(i, j) in &basis {
        let a = &x.coords()[i];
        let c = &y.coords()[j];
        let (a0, a1) = a.grade_split();
        let a1 = if t2.basis_parity(j) == Parity::Odd { -&a1 } else { a1 };
        coords.push((&a0 + &a1).try_mul(c)?);
    }
    if coords.iter().any(|c| !crate::scalars::same_ring(c.ring(), ring)) {
        return Err(AlgebraError::RingMismatch);
    }
    Ok(ModElement { ty: t1.tensor(t2), coords })
}

/// `φ ⊗ ψ` with `(φ ⊗ ψ)(x ⊗ y) = (−1)^{|ψ||x|} φ(x) ⊗ ψ(y)`.
pub fn tensor_morphisms(phi: &SuperMorphism, psi: &SuperMorphism) -> Result<SuperMorphism> {
    let ring = phi.ring().clone();
    let source = phi.source().tensor(psi.source());
    let target = phi.target().tensor(psi.target());
    let src_basis = tensor_basis(phi.source(), psi.source());
    let (phi0, phi1) = phi.grade_split();
    let (psi0, psi1) = psi.grade_split();
    let mut total = SuperMorphism::zero(&ring, source, target);
    for (f, _) in [(&phi0, Parity::Even), (&phi1, Parity::Odd)] {
        for (g, dg) in [(&psi0, Parity::Even), (&psi1, Parity::Odd)] {
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let mut images = Vec::with_capacity(src_basis.len());
            for &(i, j) in &src_basis {
                let fi = f.apply(&ModElement::basis(&ring, phi.source(), i))?;
                let gj = g.apply(&ModElement::basis(&ring, psi.source(), j))?;
                let mut img = tensor_elements(&fi, &gj, &ring)?;
                if dg.koszul(phi.source().basis_parity(i)) {
                    img = img.neg();
                }
                images.push(img);
            }
            total = total.add(&SuperMorphism::extend_basis_map(&ring, source, target, &images)?)?;
        }
    }
    Ok(total)
}

/// The projector `E(φ) = e ∘ φ ∘ e` on `Hom(F, F)`, realised as a free
/// supermodule on the matrix units.
///
/// `Hom(F, F)` is a right module through `(φ·a)(x) = φ(a·x)`; in matrix terms
/// the unit `E_kl` times `c` has entry `(−1)^{|c||b_l|} c`. Coordinates are
/// therefore matrix entries with the odd part negated in odd columns.
#[derive(Debug, Clone)]
pub struct EndProjector {
    base: FreeType,
    units: Vec<(usize, usize)>,
    matrix: SuperMorphism,
}

impl EndProjector {
    pub fn hom_type(&self) -> FreeType {
        self.base.endomorphisms()
    }

    /// Matrix units in basis order.
    pub fn units(&self) -> &[(usize, usize)] {
        &self.units
    }

    pub fn matrix(&self) -> &SuperMorphism {
        &self.matrix
    }

    fn koszul_entry(&self, l: usize, v: &SuperElement) -> SuperElement {
        if self.base.basis_parity(l) == Parity::Odd {
            let (e, o) = v.grade_split();
            &e - &o
        } else {
            v.clone()
        }
    }

    /// Coordinates of an endomorphism in the matrix-unit basis.
    pub fn coords_of(&self, phi: &SuperMorphism) -> Result<ModElement> {
        if phi.source() != self.base || phi.target() != self.base {
            return Err(AlgebraError::ShapeMismatch("endomorphism of the wrong module".into()));
        }
        let coords = self.units.iter().map(|&(k, l)| self.koszul_entry(l, phi.entry(k, l))).collect();
        ModElement::from_coords(self.hom_type(), coords)
    }

    /// Endomorphism with the given coordinates.
    pub fn morphism_of(&self, coords: &ModElement) -> Result<SuperMorphism> {
        if coords.ty() != self.hom_type() {
            return Err(AlgebraError::ShapeMismatch("coordinate vector of the wrong type".into()));
        }
        let ring = self.matrix.ring();
        let mut m = SuperMorphism::zero(ring, self.base, self.base);
        for (pos, &(k, l)) in self.units.iter().enumerate() {
            m.set_entry(k, l, self.koszul_entry(l, &coords.coords()[pos]));
        }
        Ok(m)
    }
}

/// Builds `E` for an even idempotent `e`.
pub fn end_projector(e: &SuperMorphism) -> Result<EndProjector> {
    if !is_idempotent(e)? {
        return Err(AlgebraError::NotIdempotent);
    }
    if e.degree() != Some(Parity::Even) {
        return Err(AlgebraError::NotHomogeneous("end_projector needs an even idempotent".into()));
    }
    let base = e.source();
    let ring = e.ring().clone();
    let units = tensor_basis(base, base);
    let mut proj = EndProjector {
        base,
        units: units.clone(),
        matrix: SuperMorphism::zero(&ring, base.endomorphisms(), base.endomorphisms()),
    };
    let mut images = Vec::with_capacity(units.len());
    for &(k, l) in &units {
        let mut unit = SuperMorphism::zero(&ring, base, base);
        unit.set_entry(k, l, ring.one());
        let image = e.compose(&unit)?.compose(e)?;
        images.push(proj.coords_of(&image)?);
    }
    proj.matrix = SuperMorphism::extend_basis_map(&ring, proj.hom_type(), proj.hom_type(), &images)?;
    Ok(proj)
}
