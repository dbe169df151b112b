//! Multi-indices labelling Grassmann monomials.
//!
//! A multi-index `(λ₁ < λ₂ < … < λₖ)` is stored as a bitmask where generator
//! `i` (1-based) occupies bit `i - 1`. The empty index labels the unit monomial.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgebraError, Result};

/// Largest supported generator count.
pub const MAX_GENERATORS: usize = 64;

/// Z/2 grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Parity {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Koszul sign `(-1)^{|a||b|}` as `true` when negative.
    pub fn koszul(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// Sign of a reordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_negative(negative: bool) -> Sign {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() != rhs.is_negative())
    }
}

/// Strictly increasing tuple of generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u64);

impl MultiIndex {
    /// The empty multi-index `0̲`.
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_mask(mask: u64) -> MultiIndex {
        MultiIndex(mask)
    }

    /// Builds a multi-index from 1-based indices. Indices must be strictly increasing.
    pub fn new(indices: &[usize]) -> Result<MultiIndex> {
        let mut mask = 0u64;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_GENERATORS {
                return Err(AlgebraError::Capacity(format!(
                    "index {i} outside 1..={MAX_GENERATORS}"
                )));
            }
            if i <= last {
                return Err(AlgebraError::Precondition(format!(
                    "multi-index entries must be strictly increasing, got {indices:?}"
                )));
            }
            last = i;
            mask |= 1 << (i - 1);
        }
        Ok(MultiIndex(mask))
    }

    /// Single generator `β_[i]`.
    pub fn single(i: usize) -> MultiIndex {
        assert!((1..=MAX_GENERATORS).contains(&i), "generator index {i} out of range");
        MultiIndex(1 << (i - 1))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.0.count_ones())
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_GENERATORS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset_of(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn difference(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 & !other.0)
    }

    /// Largest generator index, 0 for the empty index.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let tz = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Product `β_μ β_ν` as a normal-ordered monomial and sign, or `None` when
    /// the index sets overlap and the product vanishes.
    ///
    /// The sign is `(-1)^inv` where `inv` counts pairs `a ∈ μ, b ∈ ν` with `a > b`.
    pub fn merge_sign(self, other: MultiIndex) -> Option<(MultiIndex, Sign)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            // entries of μ strictly above b
            let above = if b >= 63 { 0 } else { self.0 >> (b + 1) };
            inversions += above.count_ones();
        }
        Some((MultiIndex(self.0 | other.0), Sign::from_negative(inversions % 2 == 1)))
    }

    /// Iterates over all subsets of this index (including empty and itself).
    pub fn subsets(self) -> impl Iterator<Item = MultiIndex> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(MultiIndex(cur))
        })
    }
}

/// Graded-lexicographic order: by length, then lexicographically on the index tuple.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = *self;
            let b = *other;
            a.indices().cmp(b.indices())
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `2^L` multi-indices with entries at most `generators`, in graded-lex order.
pub fn enumerate(generators: usize) -> Result<Vec<MultiIndex>> {
    if generators > MAX_GENERATORS {
        return Err(AlgebraError::Capacity(format!(
            "{generators} generators requested, at most {MAX_GENERATORS} supported"
        )));
    }
    if generators > 26 {
        return Err(AlgebraError::Capacity(format!(
            "enumerating 2^{generators} multi-indices is not materialisable"
        )));
    }
    let full = if generators == 64 { u64::MAX } else { (1u64 << generators) - 1 };
    let mut all: Vec<MultiIndex> = MultiIndex(full).subsets().collect();
    all.sort();
    Ok(all)
}

/// Text form `b[1]b[3]`; the empty index prints as `1`.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "b[{i}]")?;
        }
        Ok(())
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        MultiIndex::new(&v).map_err(serde::de::Error::custom)
    }
}
