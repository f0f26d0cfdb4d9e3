//! Partitions, compositions and skew shapes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts and discarding zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Builds a partition from parts that must already be weakly decreasing.
    pub fn from_decreasing(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self::new(parts))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Size `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The part `λ_i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.first();
        let parts = (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Self { parts }
    }

    /// Cellwise containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Whether the partition fits in a box with `rows` rows and `cols` columns.
    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    /// Membership in `𝒫ⁿ`: every part is less than `n`.
    pub fn is_bounded_by(&self, n: usize) -> bool {
        self.first() < n
    }

    /// Parts padded with zeros to length `m`.
    pub fn padded(&self, m: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(m.max(v.len()), 0);
        v
    }

    /// Comma-joined parts; the empty partition renders as the empty string.
    pub fn key(&self) -> String {
        join(&self.parts)
    }

    /// All partitions of `size` with at most `max_len` parts, each at most
    /// `max_part`, in reverse lexicographic order.
    pub fn all(size: usize, max_len: usize, max_part: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(size, max_part, max_len, &mut current, &mut out);
        out
    }

    /// `□_k`: the concatenation of all k-rectangles `(j^{k+1−j})`.
    pub fn staircase_of_rectangles(k: usize) -> Self {
        let mut parts = Vec::new();
        for j in (1..=k).rev() {
            parts.extend(std::iter::repeat_n(j, k + 1 - j));
        }
        Self { parts }
    }
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    slots: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill_partitions(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}

pub(crate) fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if trimmed.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_decreasing(parts)
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Self::new(parts.to_vec())
    }
}

/// A finite sequence of nonnegative integers; zero parts are meaningful.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The partition obtained by sorting the nonzero parts.
    pub fn sorted(&self) -> Partition {
        Partition::new(self.0.clone())
    }

    /// All compositions of `size` into exactly `len` parts, each at most `max_part`.
    pub fn all(size: usize, len: usize, max_part: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        fill_compositions(size, len, max_part, &mut current, &mut out);
        out
    }
}

fn fill_compositions(
    remaining: usize,
    slots: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Composition>,
) {
    if slots == 0 {
        if remaining == 0 {
            out.push(Composition(current.clone()));
        }
        return;
    }
    if remaining > slots * max_part {
        return;
    }
    for p in 0..=max_part.min(remaining) {
        current.push(p);
        fill_compositions(remaining - p, slots - 1, max_part, current, out);
        current.pop();
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Self(p.parts().to_vec())
    }
}

/// A skew shape `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}
