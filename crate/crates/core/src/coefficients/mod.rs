//! Coefficient engines: monomial and Schur expansions of affine Stanley
//! symmetric functions, inverse Kostka numbers, the k-Pieri rule, affine
//! Littlewood–Richardson coefficients, Gromov–Witten invariants of flag
//! manifolds, fusion coefficients and positroid Schubert decompositions.
//!
//! Every quantity is an exact integer. Whenever a crystal count is only
//! justified under extra hypotheses, the engines either refuse
//! ([`Error::HypothesisNotMet`]) or fall back to an alternating sum and
//! record that choice in the result.

mod gw;
mod kostka;
mod lr;

pub use gw::{gw_invariant, GwInvariant};
pub use kostka::inverse_kostka;
pub use lr::{affine_lr, fusion_coefficient, k_pieri, kschur_h_expansion, LrEngine};

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::affine_weyl::{AffinePermutation, Composition, Partition};
use crate::crystal::highest_weight_factorizations;
use crate::error::{Error, Result};
use crate::factorization::Factorizer;

/// The basis an expansion is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Schur,
    H,
    M,
    KSchur,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Schur => "schur",
            Basis::H => "h",
            Basis::M => "m",
            Basis::KSchur => "kschur",
        }
    }
}

/// How a coefficient was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Counting highest-weight factorizations.
    Crystal,
    /// Factorization counts contracted with inverse Kostka numbers.
    Alternating,
    /// Iterated k-Pieri products contracted with inverse Kostka numbers.
    Pieri,
    /// Direct enumeration of factorizations by weight.
    Enumeration,
}

impl Method {
    /// `"crystal"` for crystal counts, `"oracle"` for every other engine.
    pub fn family(self) -> &'static str {
        match self {
            Method::Crystal => "crystal",
            _ => "oracle",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Crystal => "crystal",
            Method::Alternating => "alternating",
            Method::Pieri => "pieri",
            Method::Enumeration => "enumeration",
        }
    }

    /// Picks the engine for a query: the crystal when its hypotheses hold,
    /// the alternating sum otherwise; an explicit crystal request with failed
    /// hypotheses is an error.
    pub(crate) fn resolve(requested: Option<Method>, hypotheses_met: bool, why: &str) -> Result<Method> {
        match requested {
            None if hypotheses_met => Ok(Method::Crystal),
            None => Ok(Method::Alternating),
            Some(Method::Crystal) if !hypotheses_met => Err(Error::HypothesisNotMet(why.to_string())),
            Some(method) => Ok(method),
        }
    }
}

/// A sparse expansion in a basis indexed by partitions; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurExpansion {
    pub basis: Basis,
    pub terms: BTreeMap<Partition, i64>,
    pub method: Method,
    pub hypotheses_met: bool,
}

impl SchurExpansion {
    pub fn new(basis: Basis, method: Method, hypotheses_met: bool) -> Self {
        Self { basis, terms: BTreeMap::new(), method, hypotheses_met }
    }

    /// Adds `coefficient` to the term of `lambda`, dropping it if it cancels.
    pub fn add(&mut self, lambda: Partition, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(lambda.clone()).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&lambda);
        }
    }

    pub fn get(&self, lambda: &Partition) -> i64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Coefficients keyed by comma-joined parts.
    pub fn coefficients(&self) -> BTreeMap<String, i64> {
        self.terms.iter().map(|(p, &c)| (p.key(), c)).collect()
    }

    /// `{"basis", "coefficients", "method", "engine", "hypotheses_met"}`.
    pub fn to_json(&self) -> Value {
        let coefficients: Map<String, Value> =
            self.coefficients().into_iter().map(|(k, v)| (k, Value::from(v))).collect();
        json!({
            "basis": self.basis.as_str(),
            "coefficients": coefficients,
            "method": self.method.family(),
            "engine": self.method.as_str(),
            "hypotheses_met": self.hypotheses_met,
        })
    }
}

/// A single structure constant together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coefficient {
    pub value: i64,
    pub method: Method,
    pub hypotheses_met: bool,
}

impl Coefficient {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "method": self.method.family(),
            "engine": self.method.as_str(),
            "hypotheses_met": self.hypotheses_met,
        })
    }
}

/// Partitions of `size` whose parts are all smaller than `n` (the set `𝒫ⁿ`).
pub(crate) fn bounded_partitions(size: usize, n: usize) -> Vec<Partition> {
    Partition::all(size, size, n.saturating_sub(1))
}

/// `F_w = Σ_μ 𝒦_{w,μ} m_μ` over partitions `μ` with at most `num_factors` parts.
pub fn stanley_monomial_expansion(w: &AffinePermutation, num_factors: usize) -> SchurExpansion {
    let mut factorizer = Factorizer::new(w.n());
    let mut out = SchurExpansion::new(Basis::M, Method::Enumeration, true);
    for mu in bounded_partitions(w.length(), w.n()) {
        if mu.len() <= num_factors {
            let count = factorizer.count(w, &Composition::from(&mu));
            out.add(mu, count as i64);
        }
    }
    out
}

/// Whether the crystal computes the whole Schur expansion of `F_w`: `w` must
/// miss a residue, or be short enough that every weight has at most two parts.
pub fn schur_crystal_applies(w: &AffinePermutation) -> bool {
    !w.missing_residues().is_empty() || w.length() <= 2
}

/// `F_w = Σ_λ a_{w,λ} s_λ`.
///
/// The crystal method counts highest-weight factorizations; the alternating
/// method computes `Σ_α 𝒦_{w,α} K̄_{α,λ}` and works for every `w`. With
/// `None`, the crystal is used when it applies and the alternating sum
/// otherwise.
pub fn stanley_schur_expansion(w: &AffinePermutation, method: Option<Method>) -> Result<SchurExpansion> {
    let applies = schur_crystal_applies(w);
    let method = match Method::resolve(method, applies, "element has full content and length above 2") {
        Err(_) => return Err(Error::NoMissingResidue),
        Ok(m) => m,
    };
    let size = w.length();
    let mut out = SchurExpansion::new(Basis::Schur, method, applies);
    match method {
        Method::Crystal => {
            for lambda in bounded_partitions(size, w.n()) {
                let count = highest_weight_factorizations(w, &lambda, lambda.len(), None)?.len();
                out.add(lambda, count as i64);
            }
        }
        Method::Alternating => {
            let mut factorizer = Factorizer::new(w.n());
            let counts: Vec<(Partition, i64)> = bounded_partitions(size, w.n())
                .into_iter()
                .map(|alpha| {
                    let c = factorizer.count(w, &Composition::from(&alpha)) as i64;
                    (alpha, c)
                })
                .filter(|(_, c)| *c != 0)
                .collect();
            for lambda in Partition::all(size, size, size) {
                let mut total = 0;
                for (alpha, c) in &counts {
                    total += c * inverse_kostka(&Composition::from(alpha), &lambda, None)?;
                }
                out.add(lambda, total);
            }
        }
        Method::Pieri | Method::Enumeration => {
            return Err(Error::HypothesisNotMet(format!(
                "the {} engine does not expand a single affine Stanley function",
                method.as_str()
            )))
        }
    }
    Ok(out)
}

/// `[Π_w] = Σ a_{w,λ} [Ω_λ]` for a bounded affine permutation `w ∈ Bound(r, n)`:
/// the Schur expansion of `F_w` with every `λ ⊄ ((n−r)^r)` discarded.
pub fn positroid_schubert_decomposition(
    w: &AffinePermutation,
    r: usize,
    method: Option<Method>,
) -> Result<SchurExpansion> {
    let n = w.n();
    let bounded = w.shift() == r as i64
        && r <= n
        && w.window().iter().zip(1..).all(|(&value, i)| i <= value && value <= i + n as i64);
    if !bounded {
        return Err(Error::NotBounded { r: r as i64, n });
    }
    let (_, v) = w.tau_decomposition();
    let mut expansion = stanley_schur_expansion(&v, method)?;
    expansion.terms.retain(|lambda, _| lambda.fits_in(r, n - r));
    Ok(expansion)
}
