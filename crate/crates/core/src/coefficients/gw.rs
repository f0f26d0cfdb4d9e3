//! Three-point genus-zero Gromov–Witten invariants `⟨u, w, w₀v⟩_d` of the
//! complete flag manifold, for `u` Grassmannian.

use serde_json::{json, Value};

use super::{Coefficient, LrEngine, Method};
use crate::affine_weyl::{
    grassmannian_shape, r_exponents, rect_complement, unique_descent, AffinePermutation, Partition,
};
use crate::error::{Error, Result};

/// The invariant together with the data it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwInvariant {
    pub coefficient: Coefficient,
    /// Descent position of `u`.
    pub r: usize,
    /// The weight `μ` with `μ′ = λ(u)^∨`.
    pub mu: Partition,
    /// `σ = (R·v)·w⁻¹`, when the length and Grassmannian conditions allow it.
    pub sigma: Option<AffinePermutation>,
}

impl GwInvariant {
    pub fn value(&self) -> i64 {
        self.coefficient.value
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.coefficient.to_json();
        out["r"] = json!(self.r);
        out["mu"] = json!(self.mu.key());
        out["sigma"] = match &self.sigma {
            Some(s) => json!(s.to_string()),
            None => Value::Null,
        };
        out
    }
}

/// `⟨u, w, w₀v⟩_d` for `u, w, v ∈ S_n` with `u` having a single descent at `r`.
///
/// With `μ′ = λ(u)^∨` and `R = R_r ∏ R_i^{d_{i−1}+d_{i+1}−2d_i}`, the invariant
/// vanishes unless `ℓ(v) = ℓ(u) + ℓ(w) − 2Σd_i` and `R·af(v)` is affine
/// Grassmannian; otherwise it is the affine LR coefficient counted by the
/// highest-weight factorizations of `σ = (R·v)·w⁻¹` of weight `μ`. The crystal
/// applies when `σ` misses a residue, when `ℓ(μ) = 2`, or when
/// `ℓ(u) ≥ n(n−r−1)`.
pub fn gw_invariant(
    u: &AffinePermutation,
    w: &AffinePermutation,
    v: &AffinePermutation,
    d: &[usize],
    method: Option<Method>,
) -> Result<GwInvariant> {
    let n = u.n();
    for other in [w, v] {
        if other.n() != n {
            return Err(Error::RankMismatch(n, other.n()));
        }
        if !other.is_finite_permutation() {
            return Err(Error::NotFinitePermutation);
        }
    }
    let r = unique_descent(u)?;
    if d.len() + 1 != n {
        return Err(Error::DegreeMismatch { expected: n - 1, found: d.len() });
    }
    let lambda = grassmannian_shape(u, r)?;
    let mu = rect_complement(&lambda, r, n - r)?.conjugate();
    let zero = |sigma: Option<AffinePermutation>| GwInvariant {
        coefficient: Coefficient { value: 0, method: method.unwrap_or(Method::Crystal), hypotheses_met: true },
        r,
        mu: mu.clone(),
        sigma,
    };
    let degree: usize = d.iter().sum();
    if v.length() + 2 * degree != u.length() + w.length() {
        return Ok(zero(None));
    }
    let mut rv = v.apply_r(r, 1)?;
    for (i, exponent) in r_exponents(d, 0).into_iter().enumerate() {
        rv = rv.apply_r(i + 1, exponent)?;
    }
    let id_af = AffinePermutation::identity(n).af()?;
    let r_af_v = rv.compose(&id_af);
    let sigma = rv.compose(&w.inverse());
    if !r_af_v.is_affine_grassmannian() {
        return Ok(zero(Some(sigma)));
    }
    let hypotheses = !sigma.missing_residues().is_empty() || mu.len() == 2 || u.length() >= n * (n - r - 1);
    let chosen = Method::resolve(method, hypotheses, "σ has full content, ℓ(μ) ≠ 2 and ℓ(u) < n(n−r−1)")?;
    let mut engine = LrEngine::new(n);
    let value = match chosen {
        Method::Crystal => engine.crystal_count(&mu, &sigma)?,
        Method::Alternating | Method::Enumeration => engine.alternating_sum(&mu, &sigma),
        Method::Pieri => engine.pieri_coefficient(&mu, &w.af()?, &r_af_v)?,
    };
    Ok(GwInvariant {
        coefficient: Coefficient { value, method: chosen, hypotheses_met: hypotheses },
        r,
        mu,
        sigma: Some(sigma),
    })
}
