//! Idempotent splittings `F ≅ Im g ⊕ Ker g` and split surjections.
//!
//! Kernels are never solved for: `Ker g` is represented by the complementary
//! projector `1 − g`, and a split surjection by its section.

use std::sync::Arc;

use super::constructions::{block_morphism, direct_sum_elements, split_direct_sum};
use super::{FreeType, ModElement, SuperMorphism};
use crate::error::{AlgebraError, Result};
use crate::superring::SuperRing;

/// Exact test `g ∘ g = g`.
pub fn is_idempotent(g: &SuperMorphism) -> Result<bool> {
    if !g.is_square() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "idempotents must be square, got {} -> {}",
            g.source(),
            g.target()
        )));
    }
    Ok(g.compose(g)? == *g)
}

/// Decomposition data for an idempotent `g` on `F`.
#[derive(Debug, Clone)]
pub struct SplitData {
    pub image_projector: SuperMorphism,
    pub kernel_projector: SuperMorphism,
}

/// Splits an idempotent into image and kernel projectors.
pub fn split_idempotent(g: &SuperMorphism) -> Result<SplitData> {
    if !is_idempotent(g)? {
        return Err(AlgebraError::NotIdempotent);
    }
    let id = SuperMorphism::identity(g.ring(), g.source());
    Ok(SplitData { image_projector: g.clone(), kernel_projector: id.sub(g)? })
}

impl SplitData {
    fn ring(&self) -> &Arc<SuperRing> {
        self.image_projector.ring()
    }

    pub fn module_type(&self) -> FreeType {
        self.image_projector.source()
    }

    /// `x ↦ (g(x), x − g(x))`.
    pub fn iso(&self, x: &ModElement) -> Result<(ModElement, ModElement)> {
        Ok((self.image_projector.apply(x)?, self.kernel_projector.apply(x)?))
    }

    /// `(p, h) ↦ p + h`.
    pub fn iso_inv(&self, p: &ModElement, h: &ModElement) -> Result<ModElement> {
        p.add(h)
    }

    /// `F → F ⊕ F`, the stacked map `[g; 1 − g]`.
    pub fn iso_matrix(&self) -> Result<SuperMorphism> {
        let t = self.module_type();
        block_morphism(
            self.ring(),
            &[t],
            &[t, t],
            &[vec![Some(self.image_projector.clone())], vec![Some(self.kernel_projector.clone())]],
        )
    }

    /// `F ⊕ F → F`, the row `[1, 1]`.
    pub fn iso_inv_matrix(&self) -> Result<SuperMorphism> {
        let t = self.module_type();
        let id = SuperMorphism::identity(self.ring(), t);
        block_morphism(self.ring(), &[t, t], &[t], &[vec![Some(id.clone()), Some(id)]])
    }

    /// `diag(g, 1 − g)`: the projector of `F ⊕ F` onto `Im g ⊕ Ker g`.
    pub fn summand_projector(&self) -> Result<SuperMorphism> {
        let t = self.module_type();
        block_morphism(
            self.ring(),
            &[t, t],
            &[t, t],
            &[
                vec![Some(self.image_projector.clone()), None],
                vec![None, Some(self.kernel_projector.clone())],
            ],
        )
    }

    /// Checks `iso⁻¹ ∘ iso = id_F` and `iso ∘ iso⁻¹ = id` on `Im g ⊕ Ker g`.
    pub fn verify_round_trip(&self) -> Result<bool> {
        let iso = self.iso_matrix()?;
        let inv = self.iso_inv_matrix()?;
        let d = self.summand_projector()?;
        let left = inv.compose(&iso)? == SuperMorphism::identity(self.ring(), self.module_type());
        let right = iso.compose(&inv)?.compose(&d)? == d;
        Ok(left && right)
    }

    /// Checks `g(1 − g) = 0`, so the images meet only in zero.
    pub fn verify_orthogonal(&self) -> Result<bool> {
        Ok(self.image_projector.compose(&self.kernel_projector)?.is_zero()
            && self.kernel_projector.compose(&self.image_projector)?.is_zero())
    }

    /// Round trip on a single element, via the element-level maps.
    pub fn round_trip(&self, x: &ModElement) -> Result<ModElement> {
        let (p, h) = self.iso(x)?;
        self.iso_inv(&p, &h)
    }
}

/// A surjection `g: M → N` together with a section `s` (`g ∘ s = id_N`),
/// giving `M ≅ N ⊕ Ker g` through `x ↦ (g(x), x − s(g(x)))`.
#[derive(Debug, Clone)]
pub struct SectionSplitting {
    g: SuperMorphism,
    s: SuperMorphism,
}

impl SectionSplitting {
    pub fn new(g: &SuperMorphism, s: &SuperMorphism) -> Result<SectionSplitting> {
        if s.target() != g.source() || s.source() != g.target() {
            return Err(AlgebraError::ShapeMismatch("section has the wrong shape".into()));
        }
        if g.compose(s)? != SuperMorphism::identity(g.ring(), g.target()) {
            return Err(AlgebraError::SectionViolated);
        }
        Ok(SectionSplitting { g: g.clone(), s: s.clone() })
    }

    fn ring(&self) -> &Arc<SuperRing> {
        self.g.ring()
    }

    /// `1 − s ∘ g`, the projector onto `Ker g`.
    pub fn kernel_projector(&self) -> Result<SuperMorphism> {
        SuperMorphism::identity(self.ring(), self.g.source()).sub(&self.s.compose(&self.g)?)
    }

    pub fn forward(&self, x: &ModElement) -> Result<ModElement> {
        let p = self.g.apply(x)?;
        let h = x.sub(&self.s.apply(&p)?)?;
        direct_sum_elements(&[p, h], self.ring())
    }

    pub fn inverse(&self, y: &ModElement) -> Result<ModElement> {
        let parts = split_direct_sum(y, &[self.g.target(), self.g.source()])?;
        self.s.apply(&parts[0])?.add(&parts[1])
    }

    /// `M → N ⊕ M`, the stacked map `[g; 1 − s g]`.
    pub fn forward_matrix(&self) -> Result<SuperMorphism> {
        block_morphism(
            self.ring(),
            &[self.g.source()],
            &[self.g.target(), self.g.source()],
            &[vec![Some(self.g.clone())], vec![Some(self.kernel_projector()?)]],
        )
    }

    /// `N ⊕ M → M`, the row `[s, 1]`.
    pub fn inverse_matrix(&self) -> Result<SuperMorphism> {
        let id = SuperMorphism::identity(self.ring(), self.g.source());
        block_morphism(
            self.ring(),
            &[self.g.target(), self.g.source()],
            &[self.g.source()],
            &[vec![Some(self.s.clone()), Some(id)]],
        )
    }

    /// Both composites are identities (the second on `N ⊕ Ker g`).
    pub fn verify(&self) -> Result<bool> {
        let fwd = self.forward_matrix()?;
        let inv = self.inverse_matrix()?;
        let n = self.g.target();
        let d = block_morphism(
            self.ring(),
            &[n, self.g.source()],
            &[n, self.g.source()],
            &[
                vec![Some(SuperMorphism::identity(self.ring(), n)), None],
                vec![None, Some(self.kernel_projector()?)],
            ],
        )?;
        let left = inv.compose(&fwd)? == SuperMorphism::identity(self.ring(), self.g.source());
        let right = fwd.compose(&inv)?.compose(&d)? == d;
        Ok(left && right)
    }
}

/// Lifts `h: P → N` through a split surjection `g: M → N` with section `s`:
/// returns `h̃ = s ∘ h`, which satisfies `g ∘ h̃ = h`.
pub fn lift_through_split_surjection(
    h: &SuperMorphism,
    g: &SuperMorphism,
    s: &SuperMorphism,
) -> Result<SuperMorphism> {
    let splitting = SectionSplitting::new(g, s)?;
    let lifted = splitting.s.compose(h)?;
    if g.compose(&lifted)? != *h {
        return Err(AlgebraError::Invariant("g o lift differs from h".into()));
    }
    Ok(lifted)
}
