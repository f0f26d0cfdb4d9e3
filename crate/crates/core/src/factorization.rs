//! Cyclically decreasing elements and affine factorizations.
//!
//! A cyclically decreasing element is determined by its content, a proper
//! subset of `[n]`. An affine factorization `w^ℓ ⋯ w^1` of `w` is a tuple of
//! such elements with additive lengths; its weight is `(|w^1|, …, |w^ℓ|)`.

use std::collections::HashMap;
use std::fmt;

use crate::affine_weyl::{AffinePermutation, Composition, ResidueSet};
use crate::error::{Error, Result};

/// The total order `x−1 > x−2 > … > 0 > n−1 > … > x+1` on `[n] ∖ {x}`,
/// realized as integer order on the key `(a − x) mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LetterOrder {
    pub n: usize,
    pub x: usize,
}

impl LetterOrder {
    pub fn new(n: usize, x: usize) -> Self {
        Self { n, x }
    }

    /// Position of `a` in the order: `x+1 ↦ 1`, …, `x−1 ↦ n−1`, `x ↦ 0`.
    pub fn key(&self, a: usize) -> usize {
        (a + self.n - self.x % self.n) % self.n
    }

    /// Inverse of [`LetterOrder::key`].
    pub fn letter(&self, key: usize) -> usize {
        (key + self.x) % self.n
    }

    /// The elements of `set`, decreasing in this order.
    pub fn decreasing(&self, set: ResidueSet) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().collect();
        v.sort_unstable_by_key(|&a| std::cmp::Reverse(self.key(a)));
        v
    }

    pub fn max(&self, set: ResidueSet) -> Option<usize> {
        set.iter().max_by_key(|&a| self.key(a))
    }

    pub fn min(&self, set: ResidueSet) -> Option<usize> {
        set.iter().min_by_key(|&a| self.key(a))
    }

    pub fn pred(&self, a: usize) -> usize {
        (a + self.n - 1) % self.n
    }

    pub fn succ(&self, a: usize) -> usize {
        (a + 1) % self.n
    }
}

/// Whether `word` has no repeated letter, never has `j−1` before `j`
/// (indices mod `n`), and does not use every residue.
pub fn is_cyclically_decreasing(word: &[usize], n: usize) -> Result<bool> {
    let mut position = vec![None; n];
    for (p, &a) in word.iter().enumerate() {
        if a >= n {
            return Err(Error::BadResidue { residue: a, n });
        }
        if position[a].is_some() {
            return Ok(false);
        }
        position[a] = Some(p);
    }
    if word.len() == n {
        return Ok(false);
    }
    Ok((0..n).all(|j| match (position[(j + n - 1) % n], position[j]) {
        (Some(prev), Some(cur)) => prev > cur,
        _ => true,
    }))
}

/// The content arranged decreasingly in the order attached to `x`; this is
/// the unique reduced word of the factor inside `S_x̂`.
pub fn decreasing_word(content: ResidueSet, n: usize, x: usize) -> Result<Vec<usize>> {
    if content.contains(x) {
        return Err(Error::XInContent(x));
    }
    if x >= n || !content.fits(n) {
        return Err(Error::BadResidue { residue: x.max(n), n });
    }
    Ok(LetterOrder::new(n, x).decreasing(content))
}

/// The cyclically decreasing element with the given proper content.
pub fn factor_element(content: ResidueSet, n: usize) -> AffinePermutation {
    let x = content.complement(n).min().expect("content is a proper subset");
    let word = LetterOrder::new(n, x).decreasing(content);
    AffinePermutation::from_reduced_word(&word, n).expect("residues are below n")
}

/// Tuple of factor contents `(w^ℓ, …, w^1)`, leftmost factor first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineFactorization {
    n: usize,
    factors: Vec<ResidueSet>,
}

impl AffineFactorization {
    /// Builds a factorization from contents listed left to right.
    pub fn new(n: usize, factors: Vec<ResidueSet>) -> Result<Self> {
        for f in &factors {
            if !f.fits(n) {
                let residue = f.iter().last().unwrap_or(n);
                return Err(Error::BadResidue { residue, n });
            }
            if f.len() == n {
                return Err(Error::Parse("a factor cannot contain every residue".into()));
            }
        }
        Ok(Self { n, factors })
    }

    pub(crate) fn from_parts(n: usize, factors: Vec<ResidueSet>) -> Self {
        Self { n, factors }
    }

    /// `ℓ` trivial factors.
    pub fn trivial(n: usize, num_factors: usize) -> Self {
        Self { n, factors: vec![ResidueSet::empty(); num_factors] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Contents listed left to right (`w^ℓ` first).
    pub fn factors(&self) -> &[ResidueSet] {
        &self.factors
    }

    /// The content of `w^r`, counting from the right (`w^1` is rightmost).
    pub fn factor(&self, r: usize) -> ResidueSet {
        self.factors[self.factors.len() - r]
    }

    /// `(|w^1|, …, |w^ℓ|)`.
    pub fn weight(&self) -> Composition {
        Composition(self.factors.iter().rev().map(|f| f.len()).collect())
    }

    /// Union of all factor contents.
    pub fn content(&self) -> ResidueSet {
        self.factors.iter().fold(ResidueSet::empty(), |acc, &f| acc.union(f))
    }

    /// The product `w^ℓ ⋯ w^1`.
    pub fn product(&self) -> AffinePermutation {
        self.factors.iter().fold(AffinePermutation::identity(self.n), |acc, &f| acc.compose(&factor_element(f, self.n)))
    }

    /// Whether this is an affine factorization of `w` (product and additive length).
    pub fn is_factorization_of(&self, w: &AffinePermutation) -> bool {
        self.n == w.n() && self.product() == *w && self.weight().size() == w.length()
    }

    /// The same factorization padded on the left with trivial factors.
    pub fn padded(&self, num_factors: usize) -> Self {
        let mut factors = vec![ResidueSet::empty(); num_factors.saturating_sub(self.factors.len())];
        factors.extend_from_slice(&self.factors);
        Self { n: self.n, factors }
    }

    /// Sort key: sorted contents of `w^1`, `w^2`, …, rightmost most significant.
    pub fn canonical_key(&self) -> Vec<Vec<usize>> {
        self.factors.iter().rev().map(|f| f.iter().collect()).collect()
    }

    /// Parses `"(26)(310)(432)"`; comma-separated residues inside a factor
    /// are required when `n > 10`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        let mut factors = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|e| (r, e)))
                .ok_or_else(|| Error::Parse(format!("malformed factorization {text:?}")))?;
            let (inner, end) = body_end;
            let body = &inner[..end];
            let letters: Vec<usize> = if body.contains(',') || n > 10 {
                body.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("{c:?}"))))
                    .collect::<Result<_>>()?
            };
            if !is_cyclically_decreasing(&letters, n)? {
                return Err(Error::Parse(format!("({body}) is not cyclically decreasing")));
            }
            factors.push(letters.into_iter().collect());
            rest = inner[end + 1..].trim_start();
        }
        Self::new(n, factors)
    }

    /// Text form with every factor written decreasingly in the order attached to `x`.
    pub fn text_in_order(&self, x: usize) -> String {
        let order = LetterOrder::new(self.n, x);
        self.render(|_| order)
    }

    fn render(&self, order_for: impl Fn(ResidueSet) -> LetterOrder) -> String {
        let separator = if self.n > 10 { "," } else { "" };
        self.factors
            .iter()
            .map(|&factor| {
                let letters: Vec<String> = order_for(factor).decreasing(factor).iter().map(|a| a.to_string()).collect();
                format!("({})", letters.join(separator))
            })
            .collect()
    }

    fn display_order(&self, f: ResidueSet) -> LetterOrder {
        let x = self.content().complement(self.n).min().or_else(|| f.complement(self.n).min()).unwrap_or(0);
        LetterOrder::new(self.n, x)
    }
}

impl fmt::Display for AffineFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|factor| self.display_order(factor)))
    }
}

/// Enumerates and counts affine factorizations of elements of one rank.
///
/// Holds a table of all cyclically decreasing elements of rank `n` and a
/// memo of factorization counts; each instance is owned by one caller.
#[derive(Debug, Clone)]
pub struct Factorizer {
    n: usize,
    /// Decreasing words in the order of a missing residue, indexed by bitmask.
    words: Vec<Vec<usize>>,
    memo: HashMap<(AffinePermutation, Vec<usize>), u64>,
}

impl Factorizer {
    pub fn new(n: usize) -> Self {
        let words = (0u64..(1 << n) - 1)
            .map(|bits| {
                let set = ResidueSet::from_bits(bits);
                let x = set.complement(n).min().expect("proper subset");
                LetterOrder::new(n, x).decreasing(set)
            })
            .collect();
        Self { n, words, memo: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Returns `w·v⁻¹` when `v` (given by content) is a length-additive right factor of `w`.
    fn peel(&self, w: &AffinePermutation, content: ResidueSet) -> Option<AffinePermutation> {
        let mut current = w.clone();
        for &a in self.words[content.bits() as usize].iter().rev() {
            if !current.has_right_descent(a) {
                return None;
            }
            current = current.times_generator(a);
        }
        Some(current)
    }

    fn proper_subsets(&self, size: usize) -> impl Iterator<Item = ResidueSet> + '_ {
        let n = self.n;
        (size < n).then_some(()).into_iter().flat_map(move |_| ResidueSet::subsets_of_size(n, size))
    }

    /// All factorizations of `w` of weight `α` (`α₁` is the rightmost factor), in canonical order.
    pub fn enumerate(&self, w: &AffinePermutation, alpha: &Composition) -> Vec<AffineFactorization> {
        let mut out = Vec::new();
        if w.n() != self.n || alpha.size() != w.length() {
            return out;
        }
        let mut stack = Vec::with_capacity(alpha.len());
        self.enumerate_rec(w, alpha.parts(), &mut stack, &mut out);
        out.sort_by_key(AffineFactorization::canonical_key);
        out
    }

    fn enumerate_rec(
        &self,
        w: &AffinePermutation,
        alpha: &[usize],
        stack: &mut Vec<ResidueSet>,
        out: &mut Vec<AffineFactorization>,
    ) {
        let Some((&first, rest)) = alpha.split_first() else {
            if w.is_identity() {
                let factors = stack.iter().rev().copied().collect();
                out.push(AffineFactorization::from_parts(self.n, factors));
            }
            return;
        };
        for s in self.proper_subsets(first) {
            if let Some(next) = self.peel(w, s) {
                stack.push(s);
                self.enumerate_rec(&next, rest, stack, out);
                stack.pop();
            }
        }
    }

    /// `𝒦_{w,α}`: the number of factorizations of `w` of weight `α`.
    pub fn count(&mut self, w: &AffinePermutation, alpha: &Composition) -> u64 {
        if w.n() != self.n || alpha.size() != w.length() {
            return 0;
        }
        self.count_rec(w, alpha.parts())
    }

    fn count_rec(&mut self, w: &AffinePermutation, alpha: &[usize]) -> u64 {
        let Some((&first, rest)) = alpha.split_first() else {
            return u64::from(w.is_identity());
        };
        if rest.is_empty() {
            return u64::from(w.length() == first && self.is_single_factor(w));
        }
        let key = (w.clone(), alpha.to_vec());
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let peeled: Vec<AffinePermutation> = self.proper_subsets(first).filter_map(|s| self.peel(w, s)).collect();
        let total = peeled.iter().map(|next| self.count_rec(next, rest)).sum();
        self.memo.insert(key, total);
        total
    }

    fn is_single_factor(&self, w: &AffinePermutation) -> bool {
        let content = w.content();
        content.len() < self.n && content.len() == w.length() && factor_element(content, self.n) == *w
    }

    /// Every factorization of `w` into `num_factors` factors, over all weights.
    pub fn all(&self, w: &AffinePermutation, num_factors: usize) -> Vec<AffineFactorization> {
        let mut out = Vec::new();
        if w.n() != self.n {
            return out;
        }
        let mut stack = Vec::with_capacity(num_factors);
        self.all_rec(w, w.length(), num_factors, &mut stack, &mut out);
        out.sort_by_key(AffineFactorization::canonical_key);
        out
    }

    fn all_rec(
        &self,
        w: &AffinePermutation,
        length: usize,
        slots: usize,
        stack: &mut Vec<ResidueSet>,
        out: &mut Vec<AffineFactorization>,
    ) {
        if slots == 0 {
            if length == 0 {
                let factors = stack.iter().rev().copied().collect();
                out.push(AffineFactorization::from_parts(self.n, factors));
            }
            return;
        }
        if length > slots * (self.n - 1) {
            return;
        }
        for size in 0..=length.min(self.n - 1) {
            for s in self.proper_subsets(size) {
                if let Some(next) = self.peel(w, s) {
                    stack.push(s);
                    self.all_rec(&next, length - size, slots - 1, stack, out);
                    stack.pop();
                }
            }
        }
    }
}

/// All factorizations of `w` of weight `α`, in canonical order.
pub fn enumerate_factorizations(w: &AffinePermutation, alpha: &Composition) -> Vec<AffineFactorization> {
    Factorizer::new(w.n()).enumerate(w, alpha)
}

/// `𝒦_{w,α}`.
pub fn count_factorizations(w: &AffinePermutation, alpha: &Composition) -> u64 {
    Factorizer::new(w.n()).count(w, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> ResidueSet {
        v.iter().copied().collect()
    }

    /// Oracle: all factorizations by brute force over every tuple of proper
    /// subsets, checking the product and total length directly.
    fn brute_factorizations(w: &AffinePermutation, alpha: &[usize]) -> Vec<AffineFactorization> {
        let n = w.n();
        let mut tuples: Vec<Vec<ResidueSet>> = vec![vec![]];
        for &a in alpha.iter().rev() {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    ResidueSet::subsets_of_size(n, a).filter(|s| s.len() < n).map(move |s| {
                        let mut t = t.clone();
                        t.push(s);
                        t
                    })
                })
                .collect();
        }
        let mut out: Vec<_> = tuples
            .into_iter()
            .map(|t| AffineFactorization::new(n, t).unwrap())
            .filter(|f| f.is_factorization_of(w))
            .collect();
        out.sort_by_key(AffineFactorization::canonical_key);
        out
    }

    fn sigma() -> AffinePermutation {
        AffinePermutation::from_reduced_word(&[6, 2, 3, 4, 3, 1, 2, 0], 7).unwrap()
    }

    #[test]
    fn cyclically_decreasing_words() {
        assert!(is_cyclically_decreasing(&[4, 3, 1], 5).unwrap());
        assert!(!is_cyclically_decreasing(&[0, 1], 5).unwrap());
        assert!(!is_cyclically_decreasing(&[0, 1, 2, 3, 4], 5).unwrap());
        assert!(!is_cyclically_decreasing(&[4, 3, 2, 1, 0], 5).unwrap());
        assert!(is_cyclically_decreasing(&[0, 4], 5).unwrap());
        assert!(!is_cyclically_decreasing(&[4, 0], 5).unwrap());
        assert!(!is_cyclically_decreasing(&[1, 1], 5).unwrap());
        assert!(is_cyclically_decreasing(&[7], 5).is_err());
    }

    #[test]
    fn decreasing_words_in_rotated_order() {
        assert_eq!(decreasing_word(set(&[12, 5, 9, 8, 2]), 14, 10).unwrap(), vec![9, 8, 5, 2, 12]);
        assert_eq!(decreasing_word(set(&[2, 12, 9, 8, 5]), 14, 3).unwrap(), vec![2, 12, 9, 8, 5]);
        assert!(decreasing_word(ResidueSet::empty(), 4, 0).unwrap().is_empty());
        assert_eq!(decreasing_word(set(&[1, 2]), 4, 2), Err(Error::XInContent(2)));
    }

    #[test]
    fn factor_elements_are_reduced_and_x_independent() {
        for n in 2..=7 {
            for bits in 0u64..(1 << n) - 1 {
                let s = ResidueSet::from_bits(bits);
                let w = factor_element(s, n);
                assert_eq!(w.length(), s.len());
                assert_eq!(w.content(), s);
                for x in s.complement(n).iter() {
                    let word = decreasing_word(s, n, x).unwrap();
                    assert!(is_cyclically_decreasing(&word, n).unwrap());
                    assert_eq!(AffinePermutation::from_reduced_word(&word, n).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn sigma_weight_332() {
        let found = enumerate_factorizations(&sigma(), &Composition(vec![3, 3, 2]));
        let texts: Vec<String> = found.iter().map(|f| f.to_string()).collect();
        let mut expected = vec!["(26)(431)(420)", "(26)(310)(432)", "(42)(316)(420)", "(21)(436)(420)"];
        let mut sorted = texts.clone();
        sorted.sort();
        expected.sort();
        assert_eq!(sorted, expected);
        assert_eq!(found, brute_factorizations(&sigma(), &[3, 3, 2]));
        let mut factorizer = Factorizer::new(7);
        assert_eq!(factorizer.count(&sigma(), &Composition(vec![3, 3, 2])), 4);
        assert_eq!(factorizer.count(&sigma(), &Composition(vec![2, 3, 3])), 4);
    }

    #[test]
    fn identity_and_running_example_counts() {
        let id = AffinePermutation::identity(4);
        let f = enumerate_factorizations(&id, &Composition(vec![0, 0]));
        assert_eq!(f, vec![AffineFactorization::trivial(4, 2)]);
        let w = AffinePermutation::from_reduced_word(&[3, 4, 1, 2], 5).unwrap();
        let total: usize = Composition::all(4, 3, 4).iter().map(|a| enumerate_factorizations(&w, a).len()).sum();
        assert_eq!(total, 9);
        assert_eq!(Factorizer::new(5).all(&w, 3).len(), 9);
    }

    #[test]
    fn text_round_trip() {
        let f = AffineFactorization::parse("(26)(310)(432)", 7).unwrap();
        assert_eq!(f.to_string(), "(26)(310)(432)");
        assert!(f.is_factorization_of(&sigma()));
        assert_eq!(f.weight().parts(), &[3, 3, 2]);
        let big = AffineFactorization::parse("(9,8,5,2,12)(7,6,4,1,0,13,11)", 14).unwrap();
        assert_eq!(big.to_string(), "(2,12,9,8,5)(1,0,13,11,7,6,4)");
        assert_eq!(big.text_in_order(10), "(9,8,5,2,12)(7,6,4,1,0,13,11)");
        assert!(AffineFactorization::parse("(01)", 5).is_err());
        assert_eq!(AffineFactorization::parse("()()", 3).unwrap(), AffineFactorization::trivial(3, 2));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 3..=4 {
            for word in [vec![0, 1, 2], vec![1, 0, 2, 1], vec![2, 0, 1, 0], vec![0, 2]] {
                let w = AffinePermutation::from_reduced_word(&word, n).unwrap();
                let l = w.length();
                for alpha in Composition::all(l, 3, n - 1) {
                    let fast = enumerate_factorizations(&w, &alpha);
                    assert_eq!(fast, brute_factorizations(&w, alpha.parts()));
                    assert_eq!(count_factorizations(&w, &alpha), fast.len() as u64);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn counts_are_symmetric(
            n in 3usize..6,
            word in proptest::collection::vec(0usize..6, 0..8),
        ) {
            let word: Vec<usize> = word.into_iter().map(|a| a % n).collect();
            let w = AffinePermutation::from_reduced_word(&word, n).unwrap();
            let l = w.length();
            let mut factorizer = Factorizer::new(n);
            for alpha in Composition::all(l, 3, n - 1) {
                let c = factorizer.count(&w, &alpha);
                let mut sorted = alpha.0.clone();
                sorted.sort_unstable();
                prop_assert_eq!(c, factorizer.count(&w, &Composition(sorted)));
                for f in factorizer.enumerate(&w, &alpha) {
                    prop_assert!(f.is_factorization_of(&w));
                    prop_assert_eq!(f.weight(), alpha.clone());
                }
            }
        }
    }
}
