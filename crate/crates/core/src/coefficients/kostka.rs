//! Inverse Kostka numbers as signed permutation sums.

use crate::affine_weyl::{Composition, Partition};
use crate::error::{Error, Result};

/// `K̄_{α,μ} = Σ sign(σ)` over `σ ∈ S_m` with `σ(μ+ρ) − ρ` a rearrangement of
/// `α`, where `ρ = (m−1, …, 1, 0)` and `(σ·v)_{σ(i)} = v_i`.
///
/// `m` defaults to `max(ℓ(α), ℓ(μ))`; the value does not depend on larger `m`.
pub fn inverse_kostka(alpha: &Composition, mu: &Partition, m: Option<usize>) -> Result<i64> {
    let alpha = alpha.sorted();
    let required = alpha.len().max(mu.len());
    let m = m.unwrap_or(required);
    if m < required {
        return Err(Error::MTooSmall { m, required });
    }
    if alpha.size() != mu.size() {
        return Ok(0);
    }
    let mu = mu.padded(m);
    let top = mu.first().copied().unwrap_or(0).max(alpha.first()) + m;
    let mut remaining = vec![0usize; top + 1];
    for a in alpha.padded(m) {
        remaining[a] += 1;
    }
    let mut used = vec![false; m];
    Ok(signed_count(&mu, 0, &mut used, &mut remaining, 0))
}

/// Assigns `σ(i) = j` for `i = 0, 1, …` so that `β_j = μ_i + j − i` stays
/// inside the remaining multiset of parts of `α`.
fn signed_count(mu: &[usize], i: usize, used: &mut [bool], remaining: &mut [usize], inversions: usize) -> i64 {
    let m = mu.len();
    if i == m {
        return if inversions.is_multiple_of(2) { 1 } else { -1 };
    }
    let mut total = 0;
    for j in 0..m {
        if used[j] {
            continue;
        }
        let Some(b) = (mu[i] + j).checked_sub(i) else {
            continue;
        };
        if b >= remaining.len() || remaining[b] == 0 {
            continue;
        }
        let new_inversions = used[j + 1..].iter().filter(|&&u| u).count();
        used[j] = true;
        remaining[b] -= 1;
        total += signed_count(mu, i + 1, used, remaining, inversions + new_inversions);
        used[j] = false;
        remaining[b] += 1;
    }
    total
}
