//! Finite free supermodules over a super commutative ring and the right-linear
//! maps between them.
//!
//! Elements carry their coefficients on the right of the basis vectors, and a
//! morphism `φ` with matrix `M` acts by `φ(Σ bⱼcⱼ) = Σᵢ bᵢ (Σⱼ Mᵢⱼcⱼ)`, so the
//! columns of `M` are the images of the basis vectors.

mod constructions;
mod split;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::multiindex::Parity;
use crate::scalars::same_ring;
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

pub use constructions::{
    block_morphism, direct_sum_elements, direct_sum_morphisms, end_projector, split_direct_sum, tensor_basis, tensor_elements,
    tensor_morphisms, EndProjector,
};
pub use split::{
    is_idempotent, lift_through_split_surjection, split_idempotent, SectionSplitting, SplitData,
};

/// Type `(p, q)` of a free supermodule: `p` even and `q` odd basis vectors,
/// even ones first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeType {
    pub p: usize,
    pub q: usize,
}

impl FreeType {
    pub fn new(p: usize, q: usize) -> FreeType {
        FreeType { p, q }
    }

    pub fn rank(self) -> usize {
        self.p + self.q
    }

    pub fn basis_parity(self, i: usize) -> Parity {
        debug_assert!(i < self.rank());
        if i < self.p {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(p₁ + p₂, q₁ + q₂)`.
    pub fn direct_sum(self, other: FreeType) -> FreeType {
        FreeType::new(self.p + other.p, self.q + other.q)
    }

    /// `(p₁p₂ + q₁q₂, p₁q₂ + q₁p₂)`.
    pub fn tensor(self, other: FreeType) -> FreeType {
        FreeType::new(self.p * other.p + self.q * other.q, self.p * other.q + self.q * other.p)
    }

    /// Type of `Hom(F, F)` with the matrix-unit basis.
    pub fn endomorphisms(self) -> FreeType {
        FreeType::new(self.p * self.p + self.q * self.q, 2 * self.p * self.q)
    }
}

impl fmt::Display for FreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Element `Σ bᵢ cᵢ` of a free supermodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElement {
    ty: FreeType,
    coords: Vec<SuperElement>,
}

impl ModElement {
    pub fn zero(ring: &Arc<SuperRing>, ty: FreeType) -> ModElement {
        ModElement { ty, coords: vec![ring.zero(); ty.rank()] }
    }

    /// The `k`-th basis vector.
    pub fn basis(ring: &Arc<SuperRing>, ty: FreeType, k: usize) -> ModElement {
        let mut e = ModElement::zero(ring, ty);
        e.coords[k] = ring.one();
        e
    }

    pub fn from_coords(ty: FreeType, coords: Vec<SuperElement>) -> Result<ModElement> {
        if coords.len() != ty.rank() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} coordinates for a module of type {ty}",
                coords.len()
            )));
        }
        if coords.windows(2).any(|w| !w[0].same_ring(&w[1])) {
            return Err(AlgebraError::RingMismatch);
        }
        if coords.is_empty() {
            return Err(AlgebraError::ShapeMismatch("rank-zero elements need a ring; use zero()".into()));
        }
        Ok(ModElement { ty, coords })
    }

    pub fn ty(&self) -> FreeType {
        self.ty
    }

    pub fn coords(&self) -> &[SuperElement] {
        &self.coords
    }

    pub fn ring(&self) -> Option<&Arc<SuperRing>> {
        self.coords.first().map(|c| c.ring())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &ModElement) -> Result<()> {
        if self.ty != other.ty {
            return Err(AlgebraError::ShapeMismatch(format!("{} vs {}", self.ty, other.ty)));
        }
        match (self.ring(), other.ring()) {
            (Some(a), Some(b)) if !same_ring(a, b) => Err(AlgebraError::RingMismatch),
            _ => Ok(()),
        }
    }

    pub fn add(&self, other: &ModElement) -> Result<ModElement> {
        self.check(other)?;
        Ok(ModElement {
            ty: self.ty,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ModElement) -> Result<ModElement> {
        self.check(other)?;
        Ok(ModElement {
            ty: self.ty,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> ModElement {
        ModElement { ty: self.ty, coords: self.coords.iter().map(|a| -a).collect() }
    }

    /// Right action `x·a`.
    pub fn mul_right(&self, a: &SuperElement) -> Result<ModElement> {
        Ok(ModElement {
            ty: self.ty,
            coords: self.coords.iter().map(|c| c.try_mul(a)).collect::<Result<_>>()?,
        })
    }

    /// Left action `a·x`, defined on homogeneous parts by `a·x = (−1)^{|x||a|} x·a`.
    pub fn mul_left(&self, a: &SuperElement) -> Result<ModElement> {
        let mut out = ModElement::zero(a.ring(), self.ty);
        for pa in [Parity::Even, Parity::Odd] {
            let a_part = a.part(pa);
            if a_part.is_zero() {
                continue;
            }
            for px in [Parity::Even, Parity::Odd] {
                let x_part = self.part(px);
                let mut term = x_part.mul_right(&a_part)?;
                if pa.koszul(px) {
                    term = term.neg();
                }
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    /// Parity projector `P_α`: keeps the slot components of parity `|bᵢ| + α`.
    pub fn part(&self, alpha: Parity) -> ModElement {
        ModElement {
            ty: self.ty,
            coords: self
                .coords
                .iter()
                .enumerate()
                .map(|(i, c)| c.part(self.ty.basis_parity(i) + alpha))
                .collect(),
        }
    }

    /// Degree of a homogeneous element; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        if self.is_zero() {
            return Some(Parity::Even);
        }
        [Parity::Even, Parity::Odd].into_iter().find(|&alpha| {
            self.coords
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_homogeneous_of(self.ty.basis_parity(i) + alpha))
        })
    }
}

impl fmt::Display for ModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i == self.ty.p && self.ty.p > 0 {
                f.write_str("; ")?;
            } else if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Right-linear map between free supermodules, stored as a `target × source` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMorphism {
    ring: Arc<SuperRing>,
    source: FreeType,
    target: FreeType,
    matrix: Vec<Vec<SuperElement>>,
}

impl SuperMorphism {
    pub fn new(
        ring: &Arc<SuperRing>,
        source: FreeType,
        target: FreeType,
        matrix: Vec<Vec<SuperElement>>,
    ) -> Result<SuperMorphism> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "matrix does not match {target} x {source}"
            )));
        }
        if matrix.iter().flatten().any(|e| !same_ring(e.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(SuperMorphism { ring: ring.clone(), source, target, matrix })
    }

    pub fn zero(ring: &Arc<SuperRing>, source: FreeType, target: FreeType) -> SuperMorphism {
        SuperMorphism {
            ring: ring.clone(),
            source,
            target,
            matrix: vec![vec![ring.zero(); source.rank()]; target.rank()],
        }
    }

    pub fn identity(ring: &Arc<SuperRing>, ty: FreeType) -> SuperMorphism {
        SuperMorphism::scalar(ring, ty, &ring.one())
    }

    /// `x ↦ x·c`.
    pub fn scalar(ring: &Arc<SuperRing>, ty: FreeType, c: &SuperElement) -> SuperMorphism {
        let mut m = SuperMorphism::zero(ring, ty, ty);
        for i in 0..ty.rank() {
            m.matrix[i][i] = c.clone();
        }
        m
    }

    /// Extension by linearity: the unique right-linear map sending the
    /// `k`-th source basis vector to `images[k]`.
    pub fn extend_basis_map(
        ring: &Arc<SuperRing>,
        source: FreeType,
        target: FreeType,
        images: &[ModElement],
    ) -> Result<SuperMorphism> {
        if images.len() != source.rank() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        let mut m = SuperMorphism::zero(ring, source, target);
        for (k, img) in images.iter().enumerate() {
            if img.ty() != target {
                return Err(AlgebraError::ShapeMismatch(format!("image {k} has type {}", img.ty())));
            }
            for (i, c) in img.coords().iter().enumerate() {
                if !same_ring(c.ring(), ring) {
                    return Err(AlgebraError::RingMismatch);
                }
                m.matrix[i][k] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<SuperRing> {
        &self.ring
    }

    pub fn source(&self) -> FreeType {
        self.source
    }

    pub fn target(&self) -> FreeType {
        self.target
    }

    pub fn matrix(&self) -> &[Vec<SuperElement>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperElement {
        &self.matrix[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: SuperElement) {
        assert!(same_ring(v.ring(), &self.ring), "ring mismatch");
        self.matrix[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.source == self.target
    }

    pub fn apply(&self, x: &ModElement) -> Result<ModElement> {
        if x.ty() != self.source {
            return Err(AlgebraError::ShapeMismatch(format!(
                "element of type {} given to a map from {}",
                x.ty(),
                self.source
            )));
        }
        if let Some(r) = x.ring() {
            if !same_ring(r, &self.ring) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let coords = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .fold(self.ring.zero(), |acc, (m, c)| &acc + &(m * c))
            })
            .collect();
        Ok(ModElement { ty: self.target, coords })
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &SuperMorphism) -> Result<SuperMorphism> {
        if other.target != self.source {
            return Err(AlgebraError::ShapeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let n = other.source.rank();
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .fold(self.ring.zero(), |acc, (k, m)| &acc + &(m * &other.matrix[k][j]))
                    })
                    .collect()
            })
            .collect();
        Ok(SuperMorphism { ring: self.ring.clone(), source: other.source, target: self.target, matrix })
    }

    fn zip_with(
        &self,
        other: &SuperMorphism,
        f: impl Fn(&SuperElement, &SuperElement) -> SuperElement,
    ) -> Result<SuperMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::ShapeMismatch("morphisms of different shapes".into()));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(SuperMorphism { ring: self.ring.clone(), source: self.source, target: self.target, matrix })
    }

    pub fn add(&self, other: &SuperMorphism) -> Result<SuperMorphism> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SuperMorphism) -> Result<SuperMorphism> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> SuperMorphism {
        self.map_entries(|_, _, e| -e)
    }

    pub(crate) fn map_entries(&self, f: impl Fn(usize, usize, &SuperElement) -> SuperElement) -> SuperMorphism {
        SuperMorphism {
            ring: self.ring.clone(),
            source: self.source,
            target: self.target,
            matrix: self
                .matrix
                .iter()
                .enumerate()
                .map(|(i, r)| r.iter().enumerate().map(|(j, e)| f(i, j, e)).collect())
                .collect(),
        }
    }

    /// Parity required of entry `(i, j)` for a morphism of degree `d`.
    fn entry_parity(&self, i: usize, j: usize, d: Parity) -> Parity {
        self.target.basis_parity(i) + self.source.basis_parity(j) + d
    }

    /// Degree `|φ|` when `φ` is homogeneous; the zero map counts as even.
    pub fn degree(&self) -> Option<Parity> {
        [Parity::Even, Parity::Odd].into_iter().find(|&d| {
            self.matrix.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, e)| e.is_homogeneous_of(self.entry_parity(i, j, d)))
            })
        })
    }

    /// Splits `φ = φ₀ + φ₁` into its even and odd parts.
    pub fn grade_split(&self) -> (SuperMorphism, SuperMorphism) {
        let even = self.map_entries(|i, j, e| e.part(self.entry_parity(i, j, Parity::Even)));
        let odd = self.map_entries(|i, j, e| e.part(self.entry_parity(i, j, Parity::Odd)));
        (even, odd)
    }

    /// `φ(a·x)` for homogeneous `φ` and `a`, evaluated through the right-module
    /// structure. Equals `(−1)^{|φ||a|} a·φ(x)`.
    pub fn left_evaluate(&self, a: &SuperElement, x: &ModElement) -> Result<ModElement> {
        if self.degree().is_none() {
            return Err(AlgebraError::NotHomogeneous("morphism".into()));
        }
        if a.parity().is_none() {
            return Err(AlgebraError::NotHomogeneous(format!("scalar {a}")));
        }
        self.apply(&x.mul_left(a)?)
    }

    /// Transposes the matrix without sign changes.
    pub fn transpose_plain(&self) -> SuperMorphism {
        let matrix = (0..self.source.rank())
            .map(|j| (0..self.target.rank()).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        SuperMorphism { ring: self.ring.clone(), source: self.target, target: self.source, matrix }
    }
}

impl fmt::Display for SuperMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.source, self.target)?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

