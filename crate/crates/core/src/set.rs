//! Element identifiers and bitset-backed element sets.

use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

/// Hard cap on ground-set size; sets are stored as one `u64`.
pub const MAX_GROUND: u32 = 64;

/// Label of a ground-set element. Ids are dense in `[0, ground_size)`
/// within one matroid.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ElementId {
    fn from(id: u32) -> Self {
        ElementId(id)
    }
}

/// A set of element ids, stored as a bit mask. Iteration is always in
/// ascending id order, which is what makes every search in this crate
/// deterministic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: u32) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: ElementId) -> Self {
        ElementSet(1u64 << e.0)
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: ElementId) -> bool {
        e.0 < 64 && self.0 & (1u64 << e.0) != 0
    }

    #[inline]
    pub fn with(self, e: ElementId) -> Self {
        ElementSet(self.0 | (1u64 << e.0))
    }

    #[inline]
    pub fn without(self, e: ElementId) -> Self {
        ElementSet(self.0 & !(1u64 << e.0))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn symmetric_difference(self, other: Self) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside the ground `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: u32) -> Self {
        ElementSet(Self::full(n).0 & !self.0)
    }

    pub fn smallest(self) -> Option<ElementId> {
        if self.0 == 0 {
            None
        } else {
            Some(ElementId(self.0.trailing_zeros()))
        }
    }

    /// Ascending iterator over members.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<ElementId> {
        self.iter().collect()
    }

    pub fn from_ids<I: IntoIterator<Item = ElementId>>(ids: I) -> Self {
        let mut bits = 0u64;
        for id in ids {
            debug_assert!(id.0 < 64);
            bits |= 1u64 << id.0;
        }
        ElementSet(bits)
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        Self::from_ids(iter)
    }
}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            None
        } else {
            let id = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(ElementId(id))
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

fn fmt_braced(s: ElementSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, e) in s.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "}}")
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_braced(*self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_braced(*self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|e| e.0))
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids: Vec<u32> = Vec::deserialize(deserializer)?;
        for &id in &ids {
            if id >= MAX_GROUND {
                return Err(serde::de::Error::custom("element id out of range"));
            }
        }
        Ok(ElementSet::from_ids(ids.into_iter().map(ElementId)))
    }
}
