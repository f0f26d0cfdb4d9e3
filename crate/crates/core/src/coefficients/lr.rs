//! The k-Pieri rule, k-Schur functions in the `h` basis, affine
//! Littlewood–Richardson coefficients and fusion coefficients.

use std::collections::{BTreeMap, HashMap};

use super::{bounded_partitions, inverse_kostka, Basis, Coefficient, Method, SchurExpansion};
use crate::affine_weyl::{AffinePermutation, Composition, Partition, ResidueSet};
use crate::crystal::highest_weight_factorizations;
use crate::error::{Error, Result};
use crate::factorization::{factor_element, Factorizer};

/// Caches shared by the coefficient engines of one rank.
#[derive(Debug, Clone)]
pub struct LrEngine {
    n: usize,
    factorizer: Factorizer,
    pieri: HashMap<(AffinePermutation, usize), Vec<AffinePermutation>>,
    inverse_kostka: HashMap<(Partition, Partition), i64>,
}

/// Strips the rotation from an affine Grassmannian element.
fn grassmannian_part(w: &AffinePermutation) -> Result<AffinePermutation> {
    if !w.is_affine_grassmannian() {
        return Err(Error::NotGrassmannian);
    }
    Ok(w.tau_decomposition().1)
}

/// Whether `μ ⊆ (r^{n−r})` for some `1 ≤ r < n`.
fn fits_some_rectangle(mu: &Partition, n: usize) -> bool {
    mu.is_empty() || mu.first() + mu.len() <= n
}

impl LrEngine {
    pub fn new(n: usize) -> Self {
        Self { n, factorizer: Factorizer::new(n), pieri: HashMap::new(), inverse_kostka: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_rank(&self, w: &AffinePermutation) -> Result<()> {
        if w.n() == self.n {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.n, w.n()))
        }
    }

    /// `h_r · s^{(k)}_u = Σ s^{(k)}_{vu}` over cyclically decreasing `v` of
    /// length `r` with `ℓ(vu) = r + ℓ(u)` and `vu` affine Grassmannian.
    /// The result is sorted by window.
    pub fn k_pieri(&mut self, r: usize, u: &AffinePermutation) -> Result<Vec<AffinePermutation>> {
        self.check_rank(u)?;
        if r == 0 || r >= self.n {
            return Err(Error::IndexOutOfRange { index: r, n: self.n });
        }
        if !u.is_affine_grassmannian() || u.shift() != 0 {
            return Err(Error::NotGrassmannian);
        }
        let key = (u.clone(), r);
        if let Some(hit) = self.pieri.get(&key) {
            return Ok(hit.clone());
        }
        let target = u.length() + r;
        let mut out: Vec<AffinePermutation> = ResidueSet::subsets_of_size(self.n, r)
            .map(|content| factor_element(content, self.n).compose(u))
            .filter(|vu| vu.is_affine_grassmannian() && vu.length() == target)
            .collect();
        out.sort();
        self.pieri.insert(key, out.clone());
        Ok(out)
    }

    /// `h_α · s^{(k)}_u` as multiplicities of affine Grassmannian elements.
    pub fn iterated_pieri(
        &mut self,
        u: &AffinePermutation,
        alpha: &Partition,
    ) -> Result<BTreeMap<AffinePermutation, u64>> {
        let mut current = BTreeMap::from([(u.clone(), 1u64)]);
        for &part in alpha.parts() {
            if part >= self.n {
                return Ok(BTreeMap::new());
            }
            let mut next = BTreeMap::new();
            for (x, count) in current {
                for y in self.k_pieri(part, &x)? {
                    *next.entry(y).or_insert(0) += count;
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Memoized `K̄_{α,μ}`.
    pub fn inverse_kostka(&mut self, alpha: &Partition, mu: &Partition) -> i64 {
        let key = (alpha.clone(), mu.clone());
        if let Some(&hit) = self.inverse_kostka.get(&key) {
            return hit;
        }
        let value = inverse_kostka(&Composition::from(alpha), mu, None).expect("default m is valid");
        self.inverse_kostka.insert(key, value);
        value
    }

    /// `𝒦_{z,α}`.
    pub fn factorization_count(&mut self, z: &AffinePermutation, alpha: &Partition) -> u64 {
        self.factorizer.count(z, &Composition::from(alpha))
    }

    /// Highest-weight factorizations of `z` of weight `μ`.
    pub fn crystal_count(&self, mu: &Partition, z: &AffinePermutation) -> Result<i64> {
        Ok(highest_weight_factorizations(z, mu, mu.len(), None)?.len() as i64)
    }

    /// `Σ_α 𝒦_{z,α} K̄_{α,μ}`.
    pub fn alternating_sum(&mut self, mu: &Partition, z: &AffinePermutation) -> i64 {
        if z.length() != mu.size() {
            return 0;
        }
        let mut total = 0;
        for alpha in bounded_partitions(mu.size(), self.n) {
            let count = self.factorization_count(z, &alpha) as i64;
            if count != 0 {
                total += count * self.inverse_kostka(&alpha, mu);
            }
        }
        total
    }

    /// The coefficient of `s^{(k)}_v` in `s_μ · s^{(k)}_w`, expanding
    /// `s_μ = Σ_α K̄_{α,μ} h_α` and applying the k-Pieri rule part by part.
    pub fn pieri_coefficient(&mut self, mu: &Partition, w: &AffinePermutation, v: &AffinePermutation) -> Result<i64> {
        let (w, v) = (grassmannian_part(w)?, grassmannian_part(v)?);
        if v.length() != w.length() + mu.size() {
            return Ok(0);
        }
        let mut total = 0;
        for alpha in bounded_partitions(mu.size(), self.n) {
            let kbar = self.inverse_kostka(&alpha, mu);
            if kbar != 0 {
                let products = self.iterated_pieri(&w, &alpha)?;
                total += kbar * products.get(&v).copied().unwrap_or(0) as i64;
            }
        }
        Ok(total)
    }

    /// `c_{R·w_μ, w}^{v, k}` where `R = ∏ R_i^{e_i}` is given as `(i, e_i)` pairs.
    ///
    /// Multiplication by `s^{(k)}_R` shifts indices by `R`, so the value is
    /// `c_{w_μ, w}^{R⁻¹v, k}` (and 0 when `R⁻¹v` is not affine Grassmannian).
    /// It vanishes unless `ℓ(R⁻¹v) − ℓ(w) = |μ|`. The crystal count of
    /// `R⁻¹v·w⁻¹` applies when that element misses a residue or `ℓ(μ) ≤ 2`.
    pub fn affine_lr(
        &mut self,
        mu: &Partition,
        w: &AffinePermutation,
        v: &AffinePermutation,
        rectangles: &[(usize, i64)],
        method: Option<Method>,
    ) -> Result<Coefficient> {
        self.check_rank(w)?;
        self.check_rank(v)?;
        if !fits_some_rectangle(mu, self.n) {
            return Err(Error::ShapeOutOfRange);
        }
        let w = grassmannian_part(w)?;
        let mut stripped = grassmannian_part(v)?;
        for &(i, exponent) in rectangles {
            stripped = stripped.apply_r(i, -exponent)?;
        }
        let zero = |method: Option<Method>| Coefficient {
            value: 0,
            method: method.unwrap_or(Method::Crystal),
            hypotheses_met: true,
        };
        if !stripped.is_affine_grassmannian() || stripped.length() != w.length() + mu.size() {
            return Ok(zero(method));
        }
        let z = stripped.compose(&w.inverse());
        let hypotheses = !z.missing_residues().is_empty() || mu.len() <= 2;
        let chosen = Method::resolve(method, hypotheses, "v·w⁻¹ has full content and ℓ(μ) > 2")?;
        let value = match chosen {
            Method::Crystal => self.crystal_count(mu, &z)?,
            Method::Alternating | Method::Enumeration => self.alternating_sum(mu, &z),
            Method::Pieri => self.pieri_coefficient(mu, &w, &stripped)?,
        };
        Ok(Coefficient { value, method: chosen, hypotheses_met: hypotheses })
    }

    /// `s^{(k)}_w = Σ_μ K̄_{μ,w} h_μ`, inverting the unitriangular matrix
    /// `[𝒦_{w_λ,μ}]` over `𝒫ⁿ` in the degree of `w`.
    pub fn kschur_h_expansion(&mut self, w: &AffinePermutation, degree_bound: usize) -> Result<SchurExpansion> {
        self.check_rank(w)?;
        let w = grassmannian_part(w)?;
        let lambda = w.lc()?;
        let degree = lambda.size();
        if degree > degree_bound {
            return Err(Error::DegreeTooLarge { degree, bound: degree_bound });
        }
        // Reverse lexicographic order refines dominance, so the matrix is
        // upper unitriangular in this order.
        let parts = bounded_partitions(degree, self.n);
        let size = parts.len();
        let mut matrix = vec![vec![0i64; size]; size];
        for (i, row_shape) in parts.iter().enumerate() {
            let element = AffinePermutation::w_lambda(row_shape, self.n)?;
            for (j, col_shape) in parts.iter().enumerate() {
                matrix[i][j] = self.factorization_count(&element, col_shape) as i64;
            }
            let unitriangular = matrix[i][i] == 1 && matrix[i][..i].iter().all(|&c| c == 0);
            if !unitriangular {
                return Err(Error::HypothesisNotMet(format!("row {row_shape} of 𝒦 is not unitriangular")));
            }
        }
        let target = parts.iter().position(|p| *p == lambda).expect("λ ∈ 𝒫ⁿ");
        // Solve U·x = e_target by back substitution; x is column `target` of U⁻¹.
        let mut x = vec![0i64; size];
        for i in (0..size).rev() {
            let tail: i64 = (i + 1..size).map(|j| matrix[i][j] * x[j]).sum();
            x[i] = i64::from(i == target) - tail;
        }
        let mut out = SchurExpansion::new(Basis::H, Method::Enumeration, true);
        for (mu, c) in parts.into_iter().zip(x) {
            out.add(mu, c);
        }
        Ok(out)
    }

    /// The coefficient of `s^{(k)}_b` in `s^{(k)}_a · s^{(k)}_w` for arbitrary
    /// affine Grassmannian `a`, via the `h` expansion of `s^{(k)}_a`.
    pub fn kschur_product_coefficient(
        &mut self,
        a: &AffinePermutation,
        w: &AffinePermutation,
        b: &AffinePermutation,
    ) -> Result<i64> {
        let (a, w, b) = (grassmannian_part(a)?, grassmannian_part(w)?, grassmannian_part(b)?);
        if b.length() != a.length() + w.length() {
            return Ok(0);
        }
        let expansion = self.kschur_h_expansion(&a, usize::MAX)?;
        let mut total = 0;
        for (mu, c) in &expansion.terms {
            let products = self.iterated_pieri(&w, mu)?;
            total += c * products.get(&b).copied().unwrap_or(0) as i64;
        }
        Ok(total)
    }

    /// `𝒩_{λ,μ}^ν = c_{w_{λ′}, w_{μ′}}^{w_ν̂, k}` at level `n − ℓ`, with
    /// `ν̂ = (ℓ^{(|λ|+|μ|−|ν|)/ℓ}, ν′)`.
    pub fn fusion_coefficient(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        ell: usize,
        method: Option<Method>,
    ) -> Result<Coefficient> {
        let n = self.n;
        if ell == 0 || ell >= n {
            return Err(Error::ShapeOutOfRange);
        }
        if [lambda, mu, nu].iter().any(|s| !s.fits_in(ell - 1, n - ell)) {
            return Err(Error::ShapeOutOfRange);
        }
        let difference = (lambda.size() + mu.size()) as i64 - nu.size() as i64;
        if difference < 0 || difference % ell as i64 != 0 {
            return Err(Error::NotDivisible(difference, ell));
        }
        let mut hat = vec![ell; difference as usize / ell];
        hat.extend_from_slice(nu.conjugate().parts());
        let nu_hat = Partition::new(hat);
        let w = AffinePermutation::w_lambda(&lambda.conjugate(), n)?;
        let v = AffinePermutation::w_lambda(&nu_hat, n)?;
        self.affine_lr(&mu.conjugate(), &w, &v, &[], method)
    }
}

/// See [`LrEngine::k_pieri`].
pub fn k_pieri(r: usize, u: &AffinePermutation) -> Result<Vec<AffinePermutation>> {
    LrEngine::new(u.n()).k_pieri(r, u)
}

/// See [`LrEngine::kschur_h_expansion`].
pub fn kschur_h_expansion(w: &AffinePermutation, degree_bound: usize) -> Result<SchurExpansion> {
    LrEngine::new(w.n()).kschur_h_expansion(w, degree_bound)
}

/// See [`LrEngine::affine_lr`].
pub fn affine_lr(
    mu: &Partition,
    w: &AffinePermutation,
    v: &AffinePermutation,
    rectangles: &[(usize, i64)],
    method: Option<Method>,
) -> Result<Coefficient> {
    LrEngine::new(w.n()).affine_lr(mu, w, v, rectangles, method)
}

/// See [`LrEngine::fusion_coefficient`].
pub fn fusion_coefficient(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ell: usize,
    n: usize,
    method: Option<Method>,
) -> Result<Coefficient> {
    LrEngine::new(n).fusion_coefficient(lambda, mu, nu, ell, method)
}
