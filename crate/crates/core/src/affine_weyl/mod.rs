//! The (extended) affine symmetric group in window notation.
//!
//! An element `w` is a bijection of `ℤ` with `w(i + n) = w(i) + n`, stored
//! through its window `[w(1), …, w(n)]`. The shift `r = Σ(w(i) − i)/n` is
//! zero exactly on the affine symmetric group proper; a nonzero shift marks
//! an element `τʳ·v` of the extended group, with `τ(i) = i + 1`.

mod partition;
mod residues;

use std::fmt;
use std::str::FromStr;

pub use partition::{Composition, Partition, SkewShape};
pub use residues::{ResidueSet, MAX_RANK};

use crate::error::{Error, Result};

/// An element of the extended affine symmetric group of rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    /// Validates a window: entries must be pairwise distinct modulo `n`.
    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        if n > MAX_RANK {
            return Err(Error::Parse(format!("rank {n} exceeds the supported maximum {MAX_RANK}")));
        }
        let mut seen: Vec<Option<i64>> = vec![None; n];
        for &v in &window {
            let slot = &mut seen[v.rem_euclid(n as i64) as usize];
            if let Some(prev) = *slot {
                return Err(Error::NotBijection(prev, v));
            }
            *slot = Some(v);
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i64).collect() }
    }

    /// The product `s_{i₁}⋯s_{i_m}`; the word need not be reduced.
    pub fn from_reduced_word(word: &[usize], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        let mut w = Self::identity(n);
        for &i in word {
            if i >= n {
                return Err(Error::BadResidue { residue: i, n });
            }
            w.swap_right(i);
        }
        Ok(w)
    }

    /// The rank `n`.
    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `w(i)` for any integer `i`.
    pub fn value(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        self.window[(i - 1).rem_euclid(n) as usize] + n * (i - 1).div_euclid(n)
    }

    /// The shift `r = Σ(w(i) − i)/n`.
    pub fn shift(&self) -> i64 {
        let n = self.n() as i64;
        let total: i64 = self.window.iter().zip(1..).map(|(w, i)| w - i).sum();
        total / n
    }

    /// Splits an extended element as `τʳ·v` and returns `(r, v)` with `v` of shift 0.
    pub fn tau_decomposition(&self) -> (i64, Self) {
        let r = self.shift();
        let v = Self { window: self.window.iter().map(|w| w - r).collect() };
        (r, v)
    }

    /// `τʳ·self`.
    pub fn tau_shifted(&self, r: i64) -> Self {
        Self { window: self.window.iter().map(|w| w + r).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&w, i)| w == i)
    }

    /// Whether the element is a permutation of `1..=n` (an element of `S_n`).
    pub fn is_finite_permutation(&self) -> bool {
        let n = self.n() as i64;
        self.window.iter().all(|&w| (1..=n).contains(&w))
    }

    /// `(a·b)(i) = a(b(i))`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(self.compose(other))
    }

    pub(crate) fn compose(&self, other: &Self) -> Self {
        Self { window: other.window.iter().map(|&b| self.value(b)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n() as i64;
        let mut window = vec![0; self.n()];
        for (i, &v) in (1..).zip(&self.window) {
            let r = (v - 1).rem_euclid(n);
            let q = (v - 1).div_euclid(n);
            window[r as usize] = i - n * q;
        }
        Self { window }
    }

    /// Right multiplication by `s_i` in place: swaps the values at positions `i` and `i + 1`.
    fn swap_right(&mut self, i: usize) {
        let n = self.n();
        if i == 0 {
            let first = self.window[0];
            let last = self.window[n - 1];
            self.window[0] = last - n as i64;
            self.window[n - 1] = first + n as i64;
        } else {
            self.window.swap(i - 1, i);
        }
    }

    /// `self · s_i`.
    pub fn times_generator(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.swap_right(i);
        w
    }

    /// `s_i · self`: exchanges the values congruent to `i` and `i + 1`.
    pub fn generator_times(&self, i: usize) -> Self {
        let n = self.n() as i64;
        let i = i as i64;
        let window = self
            .window
            .iter()
            .map(|&v| match v.rem_euclid(n) {
                r if r == i => v + 1,
                r if r == (i + 1) % n => v - 1,
                _ => v,
            })
            .collect();
        Self { window }
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w(i) > w(i + 1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.value(i as i64) > self.value(i as i64 + 1)
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `w⁻¹(i) > w⁻¹(i + 1)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// The left inversion vector: `α_i = #{ j < i : w(j) > w(i) }`, `j ∈ ℤ`.
    pub fn left_inversion_vector(&self) -> Composition {
        let n = self.n() as i64;
        let parts = (1..=n)
            .map(|i| {
                let wi = self.window[(i - 1) as usize];
                (1..=n)
                    .map(|j| {
                        // Translates j + nq with j + nq < i and w(j) + nq > w(i).
                        let wj = self.window[(j - 1) as usize];
                        let q_max = (i - j - 1).div_euclid(n);
                        let q_min = (wi - wj).div_euclid(n) + 1;
                        (q_max - q_min + 1).max(0) as usize
                    })
                    .sum()
            })
            .collect();
        Composition(parts)
    }

    /// The Coxeter length `ℓ(w) = |linv(w)|`.
    pub fn length(&self) -> usize {
        self.left_inversion_vector().size()
    }

    /// The canonical reduced word: repeatedly strip the smallest-index left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            let inv = w.inverse();
            for i in 0..w.n() {
                if inv.has_right_descent(i) {
                    word.push(i);
                    w = w.generator_times(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// Residues occurring in any reduced word.
    pub fn content(&self) -> ResidueSet {
        self.reduced_word().into_iter().collect()
    }

    /// Residues `x` with `w ∈ S_x̂`.
    pub fn missing_residues(&self) -> ResidueSet {
        self.content().complement(self.n())
    }

    /// Whether the window is strictly increasing.
    pub fn is_affine_grassmannian(&self) -> bool {
        self.window.windows(2).all(|p| p[0] < p[1])
    }

    /// `LC(w) = linv(w)′` for an affine Grassmannian element (extended allowed).
    pub fn lc(&self) -> Result<Partition> {
        if !self.is_affine_grassmannian() {
            return Err(Error::NotGrassmannian);
        }
        Ok(Partition::new(self.left_inversion_vector().0).conjugate())
    }

    /// The shift-0 affine Grassmannian element `w_λ` with `LC(w_λ) = λ`.
    pub fn w_lambda(lambda: &Partition, n: usize) -> Result<Self> {
        if !lambda.is_bounded_by(n) {
            return Err(Error::PartNotLessThanN { part: lambda.first(), n });
        }
        let alpha = lambda.conjugate().padded(n);
        let mut window = vec![0i64; n];
        let mut used = vec![false; n];
        used[0] = true;
        if !fill_grassmannian_window(&alpha, n, n - 1, &mut window, &mut used) {
            unreachable!("every partition in 𝒫ⁿ has an affine Grassmannian element");
        }
        let w = Self { window };
        let (_, w) = w.tau_decomposition();
        debug_assert_eq!(w.lc().as_ref(), Ok(lambda));
        Ok(w)
    }

    /// Applies `R_i^exponent`: the first `i` window entries move by `−(n−i)` and
    /// the rest by `+i` per unit of exponent.
    pub fn apply_r(&self, i: usize, exponent: i64) -> Result<Self> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let window = self
            .window
            .iter()
            .enumerate()
            .map(|(j, &v)| if j < i { v - (n - i) as i64 * exponent } else { v + i as i64 * exponent })
            .collect();
        Ok(Self { window })
    }

    /// `af(u) = [u(1), u(2) + n, …, u(n) + (n−1)n]` for `u ∈ S_n`.
    pub fn af(&self) -> Result<Self> {
        if !self.is_finite_permutation() {
            return Err(Error::NotFinitePermutation);
        }
        let n = self.n() as i64;
        Ok(Self { window: self.window.iter().zip(0..).map(|(&v, k)| v + k * n).collect() })
    }

    /// `af_d(v) = ∏ R_i^{d_{i−1} + d_{i+1} − 2d_i + 1} · af(v)` with `d₀ = d_n = 0`.
    pub fn af_d(&self, d: &[usize]) -> Result<Self> {
        let n = self.n();
        if d.len() + 1 != n {
            return Err(Error::DegreeMismatch { expected: n - 1, found: d.len() });
        }
        let mut w = self.af()?;
        for (i, exponent) in r_exponents(d, 1).into_iter().enumerate() {
            w = w.apply_r(i + 1, exponent)?;
        }
        Ok(w)
    }

    /// The skew shape `κ(w) = ν/λ` with `ν = LC(ṽ·af(id))`, `λ = LC(af(u⁻¹))`
    /// where `w = ṽ·u` and `u ∈ S_n` sorts the window.
    pub fn kappa(&self) -> SkewShape {
        let n = self.n();
        let mut sorted = self.window.clone();
        sorted.sort_unstable();
        let u_window: Vec<i64> =
            self.window.iter().map(|v| sorted.binary_search(v).expect("value is present") as i64 + 1).collect();
        let u = Self { window: u_window };
        let grassmannian = Self { window: sorted };
        let id_af = Self::identity(n).af().expect("identity is finite");
        let outer = grassmannian.compose(&id_af).lc().expect("increasing window");
        let inner = u.inverse().af().expect("finite").lc().expect("increasing window");
        SkewShape { outer, inner }
    }
}

/// Exponents `d_{i−1} + d_{i+1} − 2d_i + offset` for `i = 1, …, n−1`, with `d₀ = d_n = 0`.
pub fn r_exponents(d: &[usize], offset: i64) -> Vec<i64> {
    let at = |i: usize| -> i64 {
        if i == 0 || i > d.len() {
            0
        } else {
            d[i - 1] as i64
        }
    };
    (1..=d.len()).map(|i| at(i - 1) + at(i + 1) - 2 * at(i) + offset).collect()
}

/// Backtracking reconstruction of an increasing window from its left
/// inversion vector, filling positions from the right with `w(n) = 0`.
fn fill_grassmannian_window(
    alpha: &[usize],
    n: usize,
    filled_from: usize,
    window: &mut [i64],
    used: &mut [bool],
) -> bool {
    if filled_from == 0 {
        return true;
    }
    let i = filled_from - 1;
    let nn = n as i64;
    let inversions = |candidate: i64, window: &[i64]| -> usize {
        window[i + 1..].iter().map(|&wj| (wj - candidate - 1).div_euclid(nn).max(0) as usize).sum()
    };
    let upper = window[i + 1] - 1;
    let lower = window[i + 1] - nn * (alpha[i] as i64 + 1);
    for candidate in (lower..=upper).rev() {
        let count = inversions(candidate, window);
        if count > alpha[i] {
            break;
        }
        let residue = candidate.rem_euclid(nn) as usize;
        if count == alpha[i] && !used[residue] {
            used[residue] = true;
            window[i] = candidate;
            if fill_grassmannian_window(alpha, n, i, window, used) {
                return true;
            }
            used[residue] = false;
        }
    }
    false
}

/// The unique descent position of a permutation of `1..=n`.
pub fn unique_descent(u: &AffinePermutation) -> Result<usize> {
    if !u.is_finite_permutation() {
        return Err(Error::NotFinitePermutation);
    }
    let descents: Vec<usize> = (1..u.n()).filter(|&i| u.window[i - 1] > u.window[i]).collect();
    match descents.as_slice() {
        [r] => Ok(*r),
        _ => Err(Error::NotGrassmannianPermutation),
    }
}

/// The partition `λ(u)` of a Grassmannian permutation with descent at `r`:
/// `λ_i = #{ j > r : u(r+1−i) > u(j) }`.
pub fn grassmannian_shape(u: &AffinePermutation, r: usize) -> Result<Partition> {
    if unique_descent(u)? != r {
        return Err(Error::NotGrassmannianPermutation);
    }
    let w = u.window();
    let parts = (1..=r).map(|i| w[r..].iter().filter(|&&uj| w[r - i] > uj).count()).collect();
    Ok(Partition::new(parts))
}

/// The complement `λ^∨ = (c − λ_r, …, c − λ₁)` inside the `r × c` rectangle.
pub fn rect_complement(lambda: &Partition, rows: usize, cols: usize) -> Result<Partition> {
    if !lambda.fits_in(rows, cols) {
        return Err(Error::ShapeTooBig { rows, cols });
    }
    Ok(Partition::new((1..=rows).rev().map(|i| cols - lambda.part(i)).collect()))
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", items.join(","))
    }
}

impl FromStr for AffinePermutation {
    type Err = Error;

    /// Parses `"[-2,0,1,4,12]"` or a bare list `"3,1,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('[').map_or(body, |b| b.strip_suffix(']').unwrap_or(b));
        let window = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_window(window)
    }
}

/// Parses a comma-separated list of residues.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}")))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn win(v: &[i64]) -> AffinePermutation {
        AffinePermutation::from_window(v.to_vec()).unwrap()
    }

    /// Independent length oracle: count inversions `(i, j)` with `1 ≤ i ≤ n`,
    /// `i < j`, `w(i) > w(j)` by scanning a generous band of `j`.
    fn brute_length(w: &AffinePermutation) -> usize {
        let n = w.n() as i64;
        let spread = w.window().iter().map(|v| v.abs()).max().unwrap() + n;
        let band = 4 * spread + 4 * n;
        let mut count = 0;
        for i in 1..=n {
            for j in i + 1..=i + band {
                if w.value(i) > w.value(j) {
                    count += 1;
                }
            }
        }
        count
    }

    fn arb_element(n: usize, max_len: usize) -> impl Strategy<Value = AffinePermutation> {
        proptest::collection::vec(0..n, 0..=max_len)
            .prop_map(move |word| AffinePermutation::from_reduced_word(&word, n).unwrap())
    }

    #[test]
    fn window_validation() {
        assert_eq!(win(&[-2, 0, 1, 4, 12]).shift(), 0);
        assert!(win(&[1, 2, 3, 4, 5]).is_identity());
        assert!(matches!(AffinePermutation::from_window(vec![1, 1, 3, 4, 6]), Err(Error::NotBijection(..))));
        assert_eq!(AffinePermutation::from_window(vec![]), Err(Error::EmptyWindow));
        assert_eq!(win(&[2, 3, 4, 5, 6]).shift(), 1);
    }

    #[test]
    fn words_to_windows() {
        let w = AffinePermutation::from_reduced_word(&[3, 0, 2, 3], 4).unwrap();
        assert_eq!(w.window(), &[-1, 4, 5, 2]);
        assert!(AffinePermutation::from_reduced_word(&[], 5).unwrap().is_identity());
        assert!(AffinePermutation::from_reduced_word(&[0, 0], 3).unwrap().is_identity());
        assert_eq!(AffinePermutation::from_reduced_word(&[5], 5), Err(Error::BadResidue { residue: 5, n: 5 }));
    }

    #[test]
    fn left_inversions() {
        let w = win(&[-2, 0, 1, 4, 12]);
        assert_eq!(w.left_inversion_vector().parts(), &[3, 2, 2, 1, 0]);
        assert_eq!(w.length(), 8);
        assert_eq!(AffinePermutation::identity(4).length(), 0);
        assert_eq!(AffinePermutation::from_reduced_word(&[0], 3).unwrap().length(), 1);
    }

    #[test]
    fn r4_example_and_product() {
        let v = win(&[4, 2, 5, 7, 1, 3, 6]);
        let w = win(&[3, 1, 5, 4, 2, 6, 7]);
        let rv = v.apply_r(4, 1).unwrap();
        assert_eq!(rv.window(), &[1, -1, 2, 4, 5, 7, 10]);
        let sigma = rv.multiply(&w.inverse()).unwrap();
        assert_eq!(sigma.window(), &[-1, 5, 1, 4, 2, 7, 10]);
        let from_word = AffinePermutation::from_reduced_word(&[6, 2, 3, 4, 3, 1, 2, 0], 7).unwrap();
        assert_eq!(sigma, from_word);
        assert_eq!(sigma.length(), 8);
        assert_eq!(sigma.missing_residues(), ResidueSet::from_iter([5]));
        assert_eq!(sigma.content(), ResidueSet::from_iter([0, 1, 2, 3, 4, 6]));
    }

    #[test]
    fn missing_residues_examples() {
        let w = AffinePermutation::from_reduced_word(&[3, 4, 1, 2], 5).unwrap();
        assert_eq!(w.missing_residues(), ResidueSet::from_iter([0]));
        assert_eq!(AffinePermutation::identity(4).missing_residues(), ResidueSet::full(4));
        assert!(AffinePermutation::identity(4).reduced_word().is_empty());
    }

    #[test]
    fn lc_and_w_lambda() {
        let w = win(&[-2, 0, 1, 4, 12]);
        assert_eq!(w.lc().unwrap().parts(), &[4, 3, 1]);
        assert_eq!(AffinePermutation::w_lambda(&Partition::new(vec![4, 3, 1]), 5).unwrap(), w);
        assert!(AffinePermutation::identity(5).lc().unwrap().is_empty());
        assert_eq!(
            AffinePermutation::w_lambda(&Partition::new(vec![5]), 5),
            Err(Error::PartNotLessThanN { part: 5, n: 5 })
        );
        assert_eq!(win(&[2, 1, 3]).lc(), Err(Error::NotGrassmannian));
    }

    #[test]
    fn lc_round_trip_exhaustive() {
        for n in 2..=5 {
            for size in 0..=8 {
                for lambda in Partition::all(size, size, n - 1) {
                    let w = AffinePermutation::w_lambda(&lambda, n).unwrap();
                    assert!(w.is_affine_grassmannian());
                    assert_eq!(w.shift(), 0);
                    assert_eq!(w.length(), size);
                    assert_eq!(w.lc().unwrap(), lambda);
                }
            }
        }
    }

    #[test]
    fn r_of_identity_is_rectangle() {
        for n in 2..=7 {
            for i in 1..n {
                let r = AffinePermutation::identity(n).apply_r(i, 1).unwrap();
                let rect = Partition::new(vec![i; n - i]);
                assert_eq!(r, AffinePermutation::w_lambda(&rect, n).unwrap());
            }
        }
        assert!(AffinePermutation::identity(4).apply_r(4, 1).is_err());
    }

    #[test]
    fn linv_under_r_for_grassmannian() {
        let n = 5;
        for lambda in Partition::all(5, 5, n - 1) {
            let u = AffinePermutation::w_lambda(&lambda, n).unwrap();
            for i in 1..n {
                let mut expected = u.left_inversion_vector().0;
                for e in expected.iter_mut().take(i) {
                    *e += n - i;
                }
                assert_eq!(u.apply_r(i, 1).unwrap().left_inversion_vector().0, expected);
            }
        }
    }

    #[test]
    fn af_examples() {
        let id = AffinePermutation::identity(4);
        assert_eq!(id.af().unwrap().window(), &[1, 6, 11, 16]);
        assert_eq!(win(&[1, 4, 2, 3]).af().unwrap().window(), &[1, 8, 10, 15]);
        let v = win(&[2, 4, 1, 3]);
        let mut expected = v.af().unwrap();
        for i in 1..4 {
            expected = expected.apply_r(i, 1).unwrap();
        }
        assert_eq!(v.af_d(&[0, 0, 0]).unwrap(), expected);
        assert_eq!(win(&[0, 2, 4]).af(), Err(Error::NotFinitePermutation));
    }

    #[test]
    fn kappa_example() {
        let w = AffinePermutation::from_reduced_word(&[3, 0, 2, 3], 4).unwrap();
        let shape = w.kappa();
        assert_eq!(shape.outer.parts(), &[3, 2, 2, 1, 1, 1, 1, 1]);
        assert_eq!(shape.inner.parts(), &[3, 1, 1, 1, 1, 1]);
        let id = AffinePermutation::identity(4).kappa();
        assert_eq!(id.outer, id.inner);
    }

    #[test]
    fn grassmannian_shapes() {
        let u = win(&[1, 2, 4, 7, 3, 5, 6]);
        let lambda = grassmannian_shape(&u, 4).unwrap();
        assert_eq!(lambda.parts(), &[3, 1]);
        assert_eq!(rect_complement(&lambda, 4, 3).unwrap().parts(), &[3, 3, 2]);
        assert_eq!(grassmannian_shape(&u, 3), Err(Error::NotGrassmannianPermutation));
        assert!(rect_complement(&Partition::new(vec![4]), 2, 3).is_err());
    }

    #[test]
    fn braid_relations() {
        for n in 3..=8 {
            let id = AffinePermutation::identity(n);
            for i in 0..n {
                let j = (i + 1) % n;
                let lhs = AffinePermutation::from_reduced_word(&[i, j, i], n).unwrap();
                let rhs = AffinePermutation::from_reduced_word(&[j, i, j], n).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(id.times_generator(i).times_generator(i), id);
                for k in 0..n {
                    let d = (i as i64 - k as i64).rem_euclid(n as i64);
                    if d != 1 && d != n as i64 - 1 && i != k {
                        let a = AffinePermutation::from_reduced_word(&[i, k], n).unwrap();
                        let b = AffinePermutation::from_reduced_word(&[k, i], n).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn r_operators_commute() {
        for n in 2..=7 {
            let w = AffinePermutation::from_reduced_word(&[0, 1, n - 1, 0, 1], n).unwrap();
            for i in 1..n {
                for j in 1..n {
                    let a = w.apply_r(i, 1).unwrap().apply_r(j, 1).unwrap();
                    let b = w.apply_r(j, 1).unwrap().apply_r(i, 1).unwrap();
                    assert_eq!(a, b);
                }
                assert_eq!(w.apply_r(i, 1).unwrap().apply_r(i, -1).unwrap(), w);
            }
        }
    }

    proptest! {
        #[test]
        fn length_matches_brute_force(w in (2usize..7).prop_flat_map(|n| arb_element(n, 14))) {
            prop_assert_eq!(w.length(), brute_length(&w));
        }

        #[test]
        fn length_changes_by_one(w in (2usize..7).prop_flat_map(|n| arb_element(n, 14))) {
            let l = w.length();
            for i in 0..w.n() {
                let m = w.times_generator(i).length();
                prop_assert!(m == l + 1 || m + 1 == l);
                prop_assert_eq!(m < l, w.has_right_descent(i));
            }
        }

        #[test]
        fn reduced_word_round_trip(w in (2usize..7).prop_flat_map(|n| arb_element(n, 14))) {
            let word = w.reduced_word();
            prop_assert_eq!(word.len(), w.length());
            prop_assert_eq!(AffinePermutation::from_reduced_word(&word, w.n()).unwrap(), w);
        }

        #[test]
        fn inverse_and_identity(w in (2usize..7).prop_flat_map(|n| arb_element(n, 14))) {
            let id = AffinePermutation::identity(w.n());
            prop_assert_eq!(w.multiply(&w.inverse()).unwrap(), id.clone());
            prop_assert_eq!(id.multiply(&w).unwrap(), w.clone());
            prop_assert_eq!(w.inverse().length(), w.length());
        }

        #[test]
        fn kappa_length_identity(w in (3usize..6).prop_flat_map(|n| arb_element(n, 12))) {
            let shape = w.kappa();
            let k = w.n() - 1;
            prop_assert!(Partition::staircase_of_rectangles(k - 1).is_contained_in(&shape.inner));
            prop_assert!(shape.inner.is_contained_in(&Partition::staircase_of_rectangles(k)));
            prop_assert!(Partition::staircase_of_rectangles(k).is_contained_in(&shape.outer));
            prop_assert_eq!(shape.size(), w.length());
        }
    }

    #[test]
    fn kappa_is_injective_on_small_elements() {
        let n = 4;
        let mut seen = std::collections::HashMap::new();
        let mut frontier = vec![AffinePermutation::identity(n)];
        let mut all = std::collections::HashSet::new();
        all.insert(frontier[0].clone());
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..n {
                    let v = w.times_generator(i);
                    if all.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        for w in all {
            let shape = w.kappa();
            assert!(seen.insert(shape, w).is_none());
        }
    }
}
