//! Crystal operators on affine factorizations.
//!
//! Adjacent factors `u = w^{r+1}` and `v = w^r` are compared through the
//! pairing attached to a missing residue `x`: each letter of `u`, from the
//! largest down in the order of `x`, is matched with the smallest unpaired
//! larger letter of `v`. Unpaired letters drive `ẽ_r`, `f̃_r` and `s̃_r`.
//!
//! For two factors whose contents cover every residue, a bracketed pair
//! `(b−1, b)` is set aside first and the residue `b` plays the role of `x`.

mod graph;
mod stembridge;

pub use graph::{build_crystal, CrystalGraph, Decorations};
pub use stembridge::{verify_stembridge, Axiom, AxiomReport, AxiomResult, Witness};

use crate::affine_weyl::{AffinePermutation, Composition, Partition, ResidueSet};
use crate::error::{Error, Result};
use crate::factorization::{AffineFactorization, Factorizer, LetterOrder};

/// The outcome of pairing two adjacent factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingResult {
    /// Matched letters `(b, a)` with `b` from the left factor and `a` from the right one.
    pub pairs: Vec<(usize, usize)>,
    /// Unpaired letters of the left factor (`L_r`).
    pub left_unpaired: ResidueSet,
    /// Unpaired letters of the right factor (`R_r`).
    pub right_unpaired: ResidueSet,
}

/// Pairs `u` (left factor) against `v` (right factor) in the order of `x`.
pub fn pair_factors(u: ResidueSet, v: ResidueSet, n: usize, x: usize) -> Result<PairingResult> {
    if u.contains(x) || v.contains(x) {
        return Err(Error::XInContent(x));
    }
    Ok(pair_in_order(u, v, LetterOrder::new(n, x)))
}

fn pair_in_order(u: ResidueSet, v: ResidueSet, order: LetterOrder) -> PairingResult {
    let mut available = v;
    let mut left_unpaired = ResidueSet::empty();
    let mut pairs = Vec::new();
    for b in order.decreasing(u) {
        let key = order.key(b);
        let partner = available.iter().filter(|&a| order.key(a) > key).min_by_key(|&a| order.key(a));
        match partner {
            Some(a) => {
                available.remove(a);
                pairs.push((b, a));
            }
            None => left_unpaired.insert(b),
        }
    }
    PairingResult { pairs, left_unpaired, right_unpaired: available }
}

/// The residue used to pair a two-factor factorization `(u)(v)`.
///
/// When a residue is missing from `con(u) ∪ con(v)` the smallest one is
/// returned. Otherwise every `i ∈ con(u)` with `i+1 ∈ con(v)` is bracketed,
/// and the smallest `b ∉ con(u)`, `b ∈ con(v)` topping a maximal bracketed
/// chain `[b−1 ⋯ b−t]`, `[b ⋯ b−t+1]` with `b−t ∉ con(v)` is returned.
pub fn two_factor_x(u: ResidueSet, v: ResidueSet, n: usize) -> Result<usize> {
    if let Some(x) = u.union(v).complement(n).min() {
        return Ok(x);
    }
    let prev = |a: usize, k: usize| (a + n * (k / n + 1) - k) % n;
    (0..n)
        .find(|&b| {
            if u.contains(b) || !v.contains(b) || !u.contains(prev(b, 1)) {
                return false;
            }
            let mut t = 1;
            while t < n && u.contains(prev(b, t + 1)) && v.contains(prev(b, t)) {
                t += 1;
            }
            !v.contains(prev(b, t))
        })
        .ok_or(Error::NoMissingResidue)
}

/// Which crystal operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    E,
    F,
    S,
}

/// How the residue `x` is chosen for each adjacent pair of factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// The element lies in `S_x̂`; every pair uses this `x`.
    Fixed(usize),
    /// Two factors: `x` is chosen per factorization by [`two_factor_x`].
    TwoFactor,
}

/// Crystal operators on the factorizations of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crystal {
    n: usize,
    normalization: Normalization,
}

/// Adjacent factor contents after setting aside a bracketed pair, if any.
#[derive(Debug, Clone, Copy)]
struct Local {
    u: ResidueSet,
    v: ResidueSet,
    order: LetterOrder,
    set_aside: Option<(usize, usize)>,
}

impl Local {
    fn restore(&self, mut u: ResidueSet, mut v: ResidueSet) -> (ResidueSet, ResidueSet) {
        if let Some((low, high)) = self.set_aside {
            debug_assert!(!u.contains(low) && !v.contains(high));
            u.insert(low);
            v.insert(high);
        }
        (u, v)
    }
}

impl Crystal {
    /// Chooses the normalization for factorizations of `w` into `num_factors`
    /// factors: an explicit `x` must be missing from `w`; otherwise the smallest
    /// missing residue is used, and full-content elements need exactly two factors.
    pub fn for_element(w: &AffinePermutation, num_factors: usize, x: Option<usize>) -> Result<Self> {
        let n = w.n();
        let missing = w.missing_residues();
        let normalization = match x {
            Some(x) if x < n && missing.contains(x) => Normalization::Fixed(x),
            Some(x) => return Err(Error::XInvalid(x)),
            None => match missing.min() {
                Some(x) => Normalization::Fixed(x),
                None if num_factors <= 2 => Normalization::TwoFactor,
                None => return Err(Error::NoMissingResidue),
            },
        };
        Ok(Self { n, normalization })
    }

    /// Operators attached to a fixed missing residue.
    pub fn with_x(n: usize, x: usize) -> Self {
        Self { n, normalization: Normalization::Fixed(x) }
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    fn local(&self, r: usize, fact: &AffineFactorization) -> Local {
        let u = fact.factor(r + 1);
        let v = fact.factor(r);
        match self.normalization {
            Normalization::Fixed(x) => Local { u, v, order: LetterOrder::new(self.n, x), set_aside: None },
            Normalization::TwoFactor => {
                let x = two_factor_x(u, v, self.n).expect("a bracketed chain of the third kind exists");
                let order = LetterOrder::new(self.n, x);
                if u.union(v).len() == self.n {
                    let low = order.pred(x);
                    Local { u: u.without(low), v: v.without(x), order, set_aside: Some((low, x)) }
                } else {
                    Local { u, v, order, set_aside: None }
                }
            }
        }
    }

    fn check_color(&self, r: usize, fact: &AffineFactorization) {
        assert!(r >= 1 && r < fact.num_factors(), "color {r} is out of range for {} factors", fact.num_factors());
    }

    /// The pairing of `w^{r+1}` against `w^r`.
    pub fn pairing(&self, r: usize, fact: &AffineFactorization) -> PairingResult {
        self.check_color(r, fact);
        let local = self.local(r, fact);
        pair_in_order(local.u, local.v, local.order)
    }

    /// `(ε_r, φ_r) = (|L_r|, |R_r|)`.
    pub fn string_lengths(&self, r: usize, fact: &AffineFactorization) -> (usize, usize) {
        let p = self.pairing(r, fact);
        (p.left_unpaired.len(), p.right_unpaired.len())
    }

    pub fn epsilon(&self, r: usize, fact: &AffineFactorization) -> usize {
        self.string_lengths(r, fact).0
    }

    pub fn phi(&self, r: usize, fact: &AffineFactorization) -> usize {
        self.string_lengths(r, fact).1
    }

    fn replace(&self, r: usize, fact: &AffineFactorization, u: ResidueSet, v: ResidueSet) -> AffineFactorization {
        let mut factors = fact.factors().to_vec();
        let len = factors.len();
        factors[len - r - 1] = u;
        factors[len - r] = v;
        AffineFactorization::from_parts(self.n, factors)
    }

    /// `ẽ_r`: moves a letter from `w^{r+1}` to `w^r`; `None` when annihilated.
    pub fn e(&self, r: usize, fact: &AffineFactorization) -> Option<AffineFactorization> {
        self.check_color(r, fact);
        let local = self.local(r, fact);
        let pairing = pair_in_order(local.u, local.v, local.order);
        let b = local.order.min(pairing.left_unpaired)?;
        let mut landing = b;
        while local.u.contains(local.order.pred(landing)) {
            landing = local.order.pred(landing);
        }
        let (u, v) = local.restore(local.u.without(b), local.v.with(landing));
        Some(self.replace(r, fact, u, v))
    }

    /// `f̃_r`: moves a letter from `w^r` to `w^{r+1}`; `None` when annihilated.
    pub fn f(&self, r: usize, fact: &AffineFactorization) -> Option<AffineFactorization> {
        self.check_color(r, fact);
        let local = self.local(r, fact);
        let pairing = pair_in_order(local.u, local.v, local.order);
        let a = local.order.max(pairing.right_unpaired)?;
        let mut landing = a;
        while local.v.contains(local.order.succ(landing)) {
            landing = local.order.succ(landing);
        }
        let (u, v) = local.restore(local.u.with(landing), local.v.without(a));
        Some(self.replace(r, fact, u, v))
    }

    /// `s̃_r`: reflects the `r`-string through its middle.
    pub fn s(&self, r: usize, fact: &AffineFactorization) -> AffineFactorization {
        let (p, q) = self.string_lengths(r, fact);
        let mut current = fact.clone();
        for _ in 0..q.saturating_sub(p) {
            current = self.f(r, &current).expect("string has room");
        }
        for _ in 0..p.saturating_sub(q) {
            current = self.e(r, &current).expect("string has room");
        }
        current
    }

    pub fn apply(&self, op: Op, r: usize, fact: &AffineFactorization) -> Option<AffineFactorization> {
        match op {
            Op::E => self.e(r, fact),
            Op::F => self.f(r, fact),
            Op::S => Some(self.s(r, fact)),
        }
    }

    /// Whether `ε_r = 0` for every color `r`.
    pub fn is_highest_weight(&self, fact: &AffineFactorization) -> bool {
        (1..fact.num_factors()).all(|r| self.epsilon(r, fact) == 0)
    }
}

/// Applies a crystal operator with an explicit missing residue `x`.
pub fn crystal_op(op: Op, r: usize, fact: &AffineFactorization, x: usize) -> Result<Option<AffineFactorization>> {
    if x >= fact.n() || fact.content().contains(x) {
        return Err(Error::XInvalid(x));
    }
    if r == 0 || r >= fact.num_factors() {
        return Err(Error::IndexOutOfRange { index: r, n: fact.num_factors() });
    }
    Ok(Crystal::with_x(fact.n(), x).apply(op, r, fact))
}

/// `(ε_r, φ_r)` with an explicit missing residue `x`.
pub fn string_lengths(r: usize, fact: &AffineFactorization, x: usize) -> Result<(usize, usize)> {
    if x >= fact.n() || fact.content().contains(x) {
        return Err(Error::XInvalid(x));
    }
    if r == 0 || r >= fact.num_factors() {
        return Err(Error::IndexOutOfRange { index: r, n: fact.num_factors() });
    }
    Ok(Crystal::with_x(fact.n(), x).string_lengths(r, fact))
}

/// Highest-weight factorizations of `w` of weight `μ` into `num_factors`
/// factors (at least `ℓ(μ)`; trailing factors are trivial).
pub fn highest_weight_factorizations(
    w: &AffinePermutation,
    mu: &Partition,
    num_factors: usize,
    x: Option<usize>,
) -> Result<Vec<AffineFactorization>> {
    let num_factors = num_factors.max(mu.len());
    if mu.size() != w.length() {
        return Ok(Vec::new());
    }
    let crystal = Crystal::for_element(w, num_factors, x)?;
    let alpha = Composition(mu.padded(num_factors));
    Ok(Factorizer::new(w.n()).enumerate(w, &alpha).into_iter().filter(|f| crystal.is_highest_weight(f)).collect())
}

/// The duality `*`: letters `a ↦ 2x − a` and the factor order reversed.
pub fn dual(fact: &AffineFactorization, x: usize) -> AffineFactorization {
    let n = fact.n();
    let factors = fact.factors().iter().rev().map(|f| f.iter().map(|a| (2 * x + 2 * n - a) % n).collect()).collect();
    AffineFactorization::from_parts(n, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> ResidueSet {
        v.iter().copied().collect()
    }

    fn two(n: usize, u: &[usize], v: &[usize]) -> AffineFactorization {
        AffineFactorization::new(n, vec![set(u), set(v)]).unwrap()
    }

    /// Oracle: every factorization of `w` into `ℓ` factors.
    fn vertices(w: &AffinePermutation, l: usize) -> Vec<AffineFactorization> {
        Factorizer::new(w.n()).all(w, l)
    }

    #[test]
    fn pairing_golden_examples() {
        let u = set(&[12, 5, 9, 8, 2]);
        let v = set(&[7, 6, 4, 1, 0, 13, 11]);
        let p = pair_factors(u, v, 14, 10).unwrap();
        let mut pairs = p.pairs.clone();
        pairs.sort();
        assert_eq!(pairs, vec![(2, 4), (5, 6), (12, 13)]);
        assert_eq!(p.left_unpaired, set(&[9, 8]));
        assert_eq!(p.right_unpaired, set(&[7, 1, 0, 11]));

        let p = pair_factors(u, v, 14, 3).unwrap();
        let mut pairs = p.pairs.clone();
        pairs.sort();
        assert_eq!(pairs, vec![(5, 6), (8, 0), (9, 11), (12, 13)]);
        assert_eq!(p.left_unpaired, set(&[2]));
        assert_eq!(p.right_unpaired, set(&[1, 7, 4]));

        let p = pair_factors(set(&[1, 0]), set(&[4, 3, 1]), 5, 2).unwrap();
        assert_eq!(p.pairs, vec![(0, 1)]);
        assert_eq!(p.left_unpaired, set(&[1]));
        assert_eq!(p.right_unpaired, set(&[4, 3]));

        assert_eq!(pair_factors(u, v, 14, 12), Err(Error::XInContent(12)));
    }

    #[test]
    fn operator_golden_examples() {
        let fact = two(14, &[12, 5, 9, 8, 2], &[7, 6, 4, 1, 0, 13, 11]);
        let e = crystal_op(Op::E, 1, &fact, 10).unwrap().unwrap();
        assert_eq!(e, two(14, &[9, 5, 2, 12], &[8, 7, 6, 4, 1, 0, 13, 11]));
        let f = crystal_op(Op::F, 1, &fact, 10).unwrap().unwrap();
        assert_eq!(f, two(14, &[9, 8, 7, 5, 2, 12], &[6, 4, 1, 0, 13, 11]));
        let s = crystal_op(Op::S, 1, &fact, 10).unwrap().unwrap();
        assert_eq!(s, two(14, &[9, 8, 7, 5, 2, 1, 12], &[6, 4, 0, 13, 11]));
        assert_eq!(string_lengths(1, &fact, 10).unwrap(), (2, 4));

        let e3 = crystal_op(Op::E, 1, &fact, 3).unwrap().unwrap();
        assert_eq!(e3, two(14, &[12, 9, 8, 5], &[7, 6, 4, 2, 1, 0, 13, 11]));

        let small = two(5, &[1, 0], &[4, 3, 1]);
        let e = crystal_op(Op::E, 1, &small, 2).unwrap().unwrap();
        assert_eq!(e, two(5, &[0], &[1, 0, 4, 3]));
        assert_eq!(crystal_op(Op::E, 1, &small, 1), Err(Error::XInvalid(1)));
    }

    #[test]
    fn wrapping_landing_and_inverse() {
        let fact = two(8, &[4, 3, 2, 1, 0, 7], &[5, 2, 1, 0]);
        let p = pair_factors(fact.factor(2), fact.factor(1), 8, 6).unwrap();
        assert_eq!(p.left_unpaired, set(&[3, 2]));
        let e = crystal_op(Op::E, 1, &fact, 6).unwrap().unwrap();
        assert_eq!(e, two(8, &[4, 3, 1, 0, 7], &[7, 5, 2, 1, 0]));
        assert_eq!(crystal_op(Op::F, 1, &e, 6).unwrap().unwrap(), fact);
    }

    #[test]
    fn running_example_highest_weights() {
        let w = AffinePermutation::from_reduced_word(&[3, 4, 1, 2], 5).unwrap();
        let hw = highest_weight_factorizations(&w, &Partition::new(vec![2, 2]), 3, None).unwrap();
        assert_eq!(hw.iter().map(|f| f.to_string()).collect::<Vec<_>>(), vec!["()(31)(42)"]);
        let hw = highest_weight_factorizations(&w, &Partition::new(vec![2, 1, 1]), 3, None).unwrap();
        assert_eq!(hw.iter().map(|f| f.to_string()).collect::<Vec<_>>(), vec!["(1)(3)(42)"]);
        let id = AffinePermutation::identity(3);
        let hw = highest_weight_factorizations(&id, &Partition::empty(), 0, None).unwrap();
        assert_eq!(hw, vec![AffineFactorization::trivial(3, 0)]);
    }

    #[test]
    fn sigma_highest_weight() {
        let sigma = AffinePermutation::from_reduced_word(&[6, 2, 3, 4, 3, 1, 2, 0], 7).unwrap();
        let hw = highest_weight_factorizations(&sigma, &Partition::new(vec![3, 3, 2]), 3, None).unwrap();
        assert_eq!(hw.iter().map(|f| f.to_string()).collect::<Vec<_>>(), vec!["(26)(310)(432)"]);
    }

    /// Checks the local crystal properties on every vertex of `B(w)`.
    fn check_operator_properties(w: &AffinePermutation, l: usize, crystal: Crystal) {
        for fact in vertices(w, l) {
            for r in 1..l {
                let (eps, phi) = crystal.string_lengths(r, &fact);
                let mut count = 0;
                let mut cur = fact.clone();
                while let Some(next) = crystal.e(r, &cur) {
                    assert!(next.is_factorization_of(w), "e breaks the product at {fact}");
                    let mut weight = cur.weight().0;
                    weight[r - 1] += 1;
                    weight[r] -= 1;
                    assert_eq!(next.weight().0, weight);
                    assert_eq!(crystal.f(r, &next).as_ref(), Some(&cur), "f∘e ≠ id at {cur}");
                    cur = next;
                    count += 1;
                    assert!(count <= w.length());
                }
                assert_eq!(count, eps, "ε mismatch at {fact}");
                let mut count = 0;
                let mut cur = fact.clone();
                while let Some(next) = crystal.f(r, &cur) {
                    assert!(next.is_factorization_of(w), "f breaks the product at {fact}");
                    assert_eq!(crystal.e(r, &next).as_ref(), Some(&cur), "e∘f ≠ id at {cur}");
                    cur = next;
                    count += 1;
                    assert!(count <= w.length());
                }
                assert_eq!(count, phi, "φ mismatch at {fact}");
                let s = crystal.s(r, &fact);
                let mut reflected = fact.weight().0;
                reflected.swap(r - 1, r);
                assert_eq!(s.weight().0, reflected);
                assert_eq!(crystal.s(r, &s), fact);
            }
        }
    }

    fn elements_up_to(n: usize, max_len: usize) -> Vec<AffinePermutation> {
        let mut all = std::collections::BTreeSet::new();
        let mut frontier = vec![AffinePermutation::identity(n)];
        all.insert(frontier[0].clone());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..n {
                    let v = w.times_generator(i);
                    if v.length() > w.length() && all.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }

    #[test]
    fn operator_properties_with_missing_residue() {
        for n in 3..=5 {
            for w in elements_up_to(n, 5) {
                let missing = w.missing_residues();
                if missing.is_empty() {
                    continue;
                }
                for x in missing.iter() {
                    check_operator_properties(&w, 3, Crystal::with_x(n, x));
                }
            }
        }
    }

    #[test]
    fn two_factor_full_content_crystals() {
        let mut full = 0;
        for n in 3..=5 {
            for w in elements_up_to(n, 7) {
                let crystal = Crystal::for_element(&w, 2, None).unwrap();
                if w.missing_residues().is_empty() {
                    full += 1;
                    for fact in vertices(&w, 2) {
                        let x = two_factor_x(fact.factor(2), fact.factor(1), n).unwrap();
                        assert!(!fact.factor(2).contains(x) && fact.factor(1).contains(x));
                    }
                }
                check_operator_properties(&w, 2, crystal);
            }
        }
        assert!(full > 0);
    }

    #[test]
    fn small_two_factor_example() {
        let fact = two(3, &[1], &[2, 0]);
        let x = two_factor_x(set(&[1]), set(&[2, 0]), 3).unwrap();
        assert!(!set(&[1]).contains(x) && set(&[2, 0]).contains(x));
        let w = fact.product();
        check_operator_properties(&w, 2, Crystal::for_element(&w, 2, None).unwrap());
        assert_eq!(two_factor_x(set(&[0]), set(&[1]), 3).unwrap(), 2);
    }

    #[test]
    fn duality_intertwines_e_and_f() {
        for n in 4..=5 {
            for w in elements_up_to(n, 5) {
                let Some(x) = w.missing_residues().min() else { continue };
                let crystal = Crystal::with_x(n, x);
                for l in 2..=3 {
                    for fact in vertices(&w, l) {
                        let star = dual(&fact, x);
                        assert!(star.product().missing_residues().contains(x));
                        for r in 1..l {
                            let lhs = crystal.e(r, &fact).map(|g| dual(&g, x));
                            let rhs = crystal.f(l - r, &star);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn two_factor_x_is_valid_on_random_full_contents(n in 3usize..9, seed in any::<u64>()) {
            let u_bits = seed % ((1 << n) - 1);
            let u = ResidueSet::from_bits(u_bits);
            let complement = u.complement(n);
            let extra = ResidueSet::from_bits((seed >> 20) & u.bits());
            let v = complement.union(extra);
            prop_assume!(v.len() < n && !u.is_empty());
            let x = two_factor_x(u, v, n).unwrap();
            prop_assert!(!u.contains(x));
            prop_assert!(v.contains(x));
            prop_assert!(u.contains((x + n - 1) % n));
        }
    }
}
