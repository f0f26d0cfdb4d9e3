//! Subsets of the residues `[n] = {0, …, n−1}` stored as bitmasks.

use std::fmt;

/// Largest rank supported by [`ResidueSet`].
pub const MAX_RANK: usize = 63;

/// A set of residues modulo `n`, `n ≤ 63`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSet(u64);

impl ResidueSet {
    pub const fn empty() -> Self {
        Self(0)
    }

    /// All residues `0..n`.
    pub fn full(n: usize) -> Self {
        Self((1u64 << n) - 1)
    }

    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, a: usize) -> bool {
        a < 64 && self.0 >> a & 1 == 1
    }

    pub fn insert(&mut self, a: usize) {
        self.0 |= 1 << a;
    }

    pub fn remove(&mut self, a: usize) {
        self.0 &= !(1 << a);
    }

    pub fn with(mut self, a: usize) -> Self {
        self.insert(a);
        self
    }

    pub fn without(mut self, a: usize) -> Self {
        self.remove(a);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    /// Residues of `0..n` not in the set.
    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & Self::full(n).0)
    }

    /// Residues in increasing integer order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&a| self.contains(a))
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Whether every element is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.0 & !Self::full(n).0 == 0
    }

    /// Every subset of `0..n` of the given size, in increasing bitmask order.
    pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Self> {
        (0u64..1 << n).filter(move |b| b.count_ones() as usize == size).map(Self)
    }
}

impl FromIterator<usize> for ResidueSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
