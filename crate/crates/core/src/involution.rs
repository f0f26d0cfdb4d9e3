//! A sign-reversing involution on pairs `(σ, w^β)` with `σ ∈ S_m`,
//! `β = σ(μ+ρ) − ρ` and `w^β` a factorization of `w` of weight `β`. Its
//! fixed points are the pairs `(id, w^μ)` with `w^μ` highest weight, so the
//! signed count of all pairs equals the number of highest-weight
//! factorizations of weight `μ`.

use serde_json::{json, Value};

use crate::affine_weyl::{AffinePermutation, Composition, Partition, ResidueSet};
use crate::crystal::{highest_weight_factorizations, Crystal};
use crate::error::{Error, Result};
use crate::factorization::{AffineFactorization, Factorizer, LetterOrder};

/// Which color acts when several factors carry the largest unpaired letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorChoice {
    /// The largest color `r` with `max(X) ∈ L_r`.
    #[default]
    Max,
    /// The smallest such color.
    Min,
}

/// A permutation `σ ∈ S_m` (one-line, values `1..=m`) with a factorization
/// of weight `σ(μ+ρ) − ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPair {
    pub sigma: Vec<usize>,
    pub factorization: AffineFactorization,
}

impl SignedPair {
    pub fn beta(&self) -> Composition {
        self.factorization.weight()
    }

    /// `(−1)^{inv(σ)}`.
    pub fn sign(&self) -> i64 {
        permutation_sign(&self.sigma)
    }
}

/// `(−1)^{inv(σ)}` for a permutation in one-line notation.
pub fn permutation_sign(sigma: &[usize]) -> i64 {
    let inversions = (0..sigma.len())
        .flat_map(|i| (i + 1..sigma.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sigma[i] > sigma[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `β = σ(μ+ρ) − ρ`: `β_{σ(i)} = μ_i + σ(i) − i`; `None` if a part is negative.
pub fn shifted_weight(sigma: &[usize], mu: &Partition) -> Option<Composition> {
    let m = sigma.len();
    let mu = mu.padded(m);
    let mut beta = vec![0; m];
    for (i, &j) in sigma.iter().enumerate() {
        beta[j - 1] = (mu[i] + j).checked_sub(i + 1)?;
    }
    Some(Composition(beta))
}

/// `θ(σ, w^β)`: with `X = ⋃_r L_r(w^β)` in the order of `x`, returns the pair
/// unchanged when `X = ∅`, and `(s_r σ, s̃_r ẽ_r w^β)` otherwise, where `r`
/// is the extreme color (per `choice`) whose `L_r` holds `max(X)`.
pub fn theta(pair: &SignedPair, mu: &Partition, x: usize, choice: ColorChoice) -> Result<SignedPair> {
    let fact = &pair.factorization;
    let m = pair.sigma.len();
    if fact.num_factors() != m {
        return Err(Error::DegreeMismatch { expected: m, found: fact.num_factors() });
    }
    if m < mu.len() {
        return Err(Error::MTooSmall { m, required: mu.len() });
    }
    if x >= fact.n() || fact.content().contains(x) {
        return Err(Error::XInvalid(x));
    }
    let crystal = Crystal::with_x(fact.n(), x);
    let order = LetterOrder::new(fact.n(), x);
    let unpaired: Vec<_> = (1..m).map(|r| crystal.pairing(r, fact).left_unpaired).collect();
    let all = unpaired.iter().fold(ResidueSet::empty(), |acc, s| acc.union(*s));
    let Some(top) = order.max(all) else {
        return Ok(pair.clone());
    };
    let mut colors = (1..m).filter(|&r| unpaired[r - 1].contains(top));
    let r = match choice {
        ColorChoice::Max => colors.next_back(),
        ColorChoice::Min => colors.next(),
    }
    .expect("max(X) lies in some L_r");
    let raised = crystal.e(r, fact).expect("L_r is nonempty");
    let factorization = crystal.s(r, &raised);
    let sigma = pair
        .sigma
        .iter()
        .map(|&j| {
            if j == r {
                r + 1
            } else if j == r + 1 {
                r
            } else {
                j
            }
        })
        .collect();
    Ok(SignedPair { sigma, factorization })
}

/// The outcome of checking the cancellation identity on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub m: usize,
    pub x: usize,
    /// Number of pairs `(σ, w^β)`.
    pub pairs: usize,
    pub fixed_points: usize,
    /// `Σ (−1)^{inv(σ)}` over all pairs.
    pub signed_sum: i64,
    /// Highest-weight factorizations of weight `μ`.
    pub hw_count: usize,
    /// Pairs on which `θ² ≠ id`, `θ` fails to flip the sign, or a fixed
    /// point is not `(id, highest weight)`, for either color choice.
    pub failures: usize,
}

impl CancellationReport {
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.signed_sum == self.hw_count as i64 && self.fixed_points == self.hw_count
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "x": self.x,
            "pairs": self.pairs,
            "fixed_points": self.fixed_points,
            "signed_sum": self.signed_sum,
            "hw_count": self.hw_count,
            "failures": self.failures,
            "holds": self.holds(),
        })
    }
}

/// Every pair `(σ, w^β)` with `σ ∈ S_m` and `β = σ(μ+ρ) − ρ` nonnegative.
pub fn signed_pairs(w: &AffinePermutation, mu: &Partition, m: usize) -> Vec<SignedPair> {
    let factorizer = Factorizer::new(w.n());
    let mut out = Vec::new();
    for sigma in permutations(m) {
        if let Some(beta) = shifted_weight(&sigma, mu) {
            if beta.parts().iter().all(|&b| b < w.n()) {
                for factorization in factorizer.enumerate(w, &beta) {
                    out.push(SignedPair { sigma: sigma.clone(), factorization });
                }
            }
        }
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 1..=m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Enumerates all pairs, applies `θ` (both color choices) and compares the
/// signed count with the number of highest-weight factorizations.
///
/// `x` defaults to the smallest residue missing from `w`; `m` defaults to
/// `ℓ(μ)` and must be at least that.
pub fn verify_cancellation(
    w: &AffinePermutation,
    mu: &Partition,
    x: Option<usize>,
    m: Option<usize>,
) -> Result<CancellationReport> {
    let missing = w.missing_residues();
    let x = match x {
        Some(x) if x < w.n() && missing.contains(x) => x,
        Some(x) => return Err(Error::XInvalid(x)),
        None => missing.min().ok_or(Error::NoMissingResidue)?,
    };
    let m = m.unwrap_or(mu.len());
    if m < mu.len() {
        return Err(Error::MTooSmall { m, required: mu.len() });
    }
    let identity: Vec<usize> = (1..=m).collect();
    let crystal = Crystal::with_x(w.n(), x);
    let pairs = signed_pairs(w, mu, m);
    let mut signed_sum = 0;
    let mut fixed_points = 0;
    let mut failures = 0;
    for pair in &pairs {
        signed_sum += pair.sign();
        for choice in [ColorChoice::Max, ColorChoice::Min] {
            let image = theta(pair, mu, x, choice)?;
            let ok = if image == *pair {
                if choice == ColorChoice::Max {
                    fixed_points += 1;
                }
                pair.sigma == identity && crystal.is_highest_weight(&pair.factorization)
            } else {
                let back = theta(&image, mu, x, choice)?;
                back == *pair
                    && image.sign() == -pair.sign()
                    && shifted_weight(&image.sigma, mu).as_ref() == Some(&image.beta())
                    && image.factorization.is_factorization_of(w)
            };
            failures += usize::from(!ok);
        }
    }
    let hw_count = if mu.size() == w.length() { highest_weight_factorizations(w, mu, m, Some(x))?.len() } else { 0 };
    Ok(CancellationReport { m, x, pairs: pairs.len(), fixed_points, signed_sum, hw_count, failures })
}
