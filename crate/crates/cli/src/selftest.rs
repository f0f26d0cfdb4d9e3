//! `--selftest`: each subcommand's invariant suite on small, fixed parameters.

use std::collections::BTreeSet;

use affine_crystal::coefficients::{
    gw_invariant, positroid_schubert_decomposition, schur_crystal_applies, stanley_monomial_expansion,
    stanley_schur_expansion, LrEngine, Method,
};
use affine_crystal::crystal::{build_crystal, highest_weight_factorizations, verify_stembridge, Crystal};
use affine_crystal::involution::verify_cancellation;
use affine_crystal::{AffinePermutation, Composition, Error, Factorizer, Partition};
use serde_json::{json, Value};

/// Failures beyond this many are counted but not listed.
const LISTED_FAILURES: usize = 10;

pub struct SelfTest {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl SelfTest {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "selftest": self.name,
            "checks": self.checks,
            "failed": self.failures.len(),
            "failures": self.failures.iter().take(LISTED_FAILURES).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

pub fn run(name: &'static str) -> SelfTest {
    let mut t = SelfTest::new(name);
    match name {
        "expand-stanley" => expand_stanley(&mut t),
        "crystal-graph" => crystal_graph(&mut t),
        "highest-weights" => highest_weights(&mut t),
        "lr-coeff" => lr_coeff(&mut t),
        "gw-invariant" => gw(&mut t),
        "fusion" => fusion(&mut t),
        "positroid" => positroid(&mut t),
        "verify-stembridge" => stembridge(&mut t),
        "verify-involution" => involution(&mut t),
        "count-factorizations" => count(&mut t),
        other => unreachable!("no selftest for {other}"),
    }
    t
}

/// Every element of `S̃_n` of length at most `max_len`.
fn elements_up_to(n: usize, max_len: usize) -> Vec<AffinePermutation> {
    let mut all = BTreeSet::new();
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

fn with_missing_residue(n: usize, max_len: usize) -> Vec<AffinePermutation> {
    elements_up_to(n, max_len).into_iter().filter(|w| !w.missing_residues().is_empty()).collect()
}

/// All orderings of the parts of `alpha`.
fn rearrangements(alpha: &[usize]) -> BTreeSet<Vec<usize>> {
    if alpha.len() <= 1 {
        return BTreeSet::from([alpha.to_vec()]);
    }
    let mut out = BTreeSet::new();
    for i in 0..alpha.len() {
        let mut rest = alpha.to_vec();
        let first = rest.remove(i);
        for mut tail in rearrangements(&rest) {
            tail.insert(0, first);
            out.insert(tail);
        }
    }
    out
}

/// Schur expansions of elements the crystal covers are nonnegative and agree
/// with the alternating sum; monomial coefficients are symmetric.
fn expand_stanley(t: &mut SelfTest) {
    for n in 3..=4 {
        let mut factorizer = Factorizer::new(n);
        for w in elements_up_to(n, 4) {
            let Ok(alternating) = stanley_schur_expansion(&w, Some(Method::Alternating)) else {
                t.check(false, || format!("{w}: alternating expansion failed"));
                continue;
            };
            // Full-content elements may have negative Schur coefficients.
            if schur_crystal_applies(&w) {
                t.check(alternating.is_nonnegative(), || format!("{w}: negative Schur coefficient"));
                let crystal = stanley_schur_expansion(&w, Some(Method::Crystal));
                t.check(crystal.map(|c| c.terms) == Ok(alternating.terms.clone()), || {
                    format!("{w}: crystal and alternating expansions differ")
                });
            }
            let monomial = stanley_monomial_expansion(&w, w.length());
            for (mu, &c) in &monomial.terms {
                for alpha in rearrangements(&mu.padded(w.length())) {
                    let count = factorizer.count(&w, &Composition(alpha.clone())) as i64;
                    t.check(count == c, || format!("{w}: weight {alpha:?} has {count}, {mu} has {c}"));
                }
            }
        }
    }
}

/// `e` inverts `f` along every edge and edges shift the weight by one letter.
fn crystal_graph(t: &mut SelfTest) {
    for w in with_missing_residue(4, 4) {
        let Ok(g) = build_crystal(&w, 3, None) else {
            t.check(false, || format!("{w}: crystal construction failed"));
            continue;
        };
        let crystal = Crystal::for_element(&w, 3, None).expect("element misses a residue");
        for &(a, r, b) in &g.edges {
            let (source, target) = (&g.vertices[a], &g.vertices[b]);
            t.check(crystal.e(r, target).as_ref() == Some(source), || format!("{w}: e_{r} ∘ f_{r} ≠ id at {source}"));
            let mut weight = source.weight().0;
            weight[r - 1] -= 1;
            weight[r] += 1;
            t.check(target.weight().0 == weight, || format!("{w}: f_{r} moves the weight wrongly at {source}"));
        }
        t.check(g.to_dot().lines().count() == g.vertices.len() + g.edges.len() + 2, || format!("{w}: DOT size"));
    }
}

/// Highest-weight counts are the Schur coefficients.
fn highest_weights(t: &mut SelfTest) {
    for w in with_missing_residue(4, 4) {
        let expansion = stanley_schur_expansion(&w, Some(Method::Alternating)).expect("alternating sum");
        for (lambda, &c) in &expansion.terms {
            let found = highest_weight_factorizations(&w, lambda, lambda.len(), None).map(|v| v.len() as i64);
            t.check(found == Ok(c), || format!("{w}: {found:?} highest weights of weight {lambda}, expected {c}"));
        }
    }
}

/// Crystal, alternating and Pieri engines agree on all small triples.
fn lr_coeff(t: &mut SelfTest) {
    for n in 3..=4 {
        let mut engine = LrEngine::new(n);
        let grassmannian: Vec<AffinePermutation> = (0..=5)
            .flat_map(|size| Partition::all(size, size, n - 1))
            .map(|lambda| AffinePermutation::w_lambda(&lambda, n).expect("bounded partition"))
            .collect();
        for w in &grassmannian {
            for v in grassmannian.iter().filter(|v| v.length() >= w.length()) {
                let size = v.length() - w.length();
                for mu in Partition::all(size, size, size)
                    .into_iter()
                    .filter(|mu| mu.is_empty() || mu.first() + mu.len() <= n)
                {
                    let value = |engine: &mut LrEngine, m| engine.affine_lr(&mu, w, v, &[], Some(m)).map(|c| c.value);
                    let pieri = value(&mut engine, Method::Pieri);
                    let alternating = value(&mut engine, Method::Alternating);
                    t.check(pieri.is_ok() && pieri == alternating, || {
                        format!("μ={mu} w={w} v={v}: {pieri:?} vs {alternating:?}")
                    });
                    match value(&mut engine, Method::Crystal) {
                        Err(Error::HypothesisNotMet(_)) => {}
                        crystal => t.check(crystal == pieri, || format!("μ={mu} w={w} v={v}: crystal {crystal:?}")),
                    }
                }
            }
        }
    }
}

/// Permutations of `1..=n` as windows.
fn permutations(n: usize) -> Vec<AffinePermutation> {
    fn extend(prefix: &mut Vec<i64>, n: usize, out: &mut Vec<AffinePermutation>) {
        if prefix.len() == n {
            out.push(AffinePermutation::from_window(prefix.clone()).expect("permutation"));
            return;
        }
        for v in 1..=n as i64 {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

/// Gromov–Witten invariants in `S₃` and `S₄` agree across engines and are nonnegative.
fn gw(t: &mut SelfTest) {
    for n in 3..=4 {
        let perms = permutations(n);
        let degrees: Vec<Vec<usize>> =
            (0..1usize << (n - 1)).map(|mask| (0..n - 1).map(|i| (mask >> i) & 1).collect()).collect();
        for u in perms.iter().filter(|u| affine_crystal::affine_weyl::unique_descent(u).is_ok()) {
            for w in &perms {
                for v in &perms {
                    for d in &degrees {
                        let value = |m| gw_invariant(u, w, v, d, Some(m)).map(|g| g.value());
                        let pieri = value(Method::Pieri);
                        let alternating = value(Method::Alternating);
                        let ok = matches!(pieri, Ok(p) if p >= 0) && pieri == alternating;
                        t.check(ok, || format!("u={u} w={w} v={v} d={d:?}: {pieri:?} vs {alternating:?}"));
                        if let Ok(crystal) = value(Method::Crystal) {
                            t.check(Ok(crystal) == pieri, || format!("u={u} w={w} v={v} d={d:?}: crystal {crystal}"));
                        }
                    }
                }
            }
        }
    }
}

/// The su(2) fusion rules at levels 1 to 3.
fn fusion(t: &mut SelfTest) {
    for n in 3..=5 {
        let level = n - 2;
        let mut engine = LrEngine::new(n);
        let row = |a: usize| Partition::new(vec![a]);
        for a in 0..=level {
            for b in 0..=level {
                for c in 0..=level {
                    let expected =
                        i64::from((a + b + c) % 2 == 0 && a.abs_diff(b) <= c && c <= (a + b).min(2 * level - a - b));
                    for method in [Method::Crystal, Method::Alternating, Method::Pieri] {
                        let got = match engine.fusion_coefficient(&row(a), &row(b), &row(c), 2, Some(method)) {
                            Err(Error::NotDivisible(..)) => Ok(0),
                            other => other.map(|c| c.value),
                        };
                        t.check(got == Ok(expected), || {
                            format!("level {level}: N_({a}),({b})^({c}) by {method:?} = {got:?}")
                        });
                    }
                }
            }
        }
    }
}

/// All bounded affine permutations `i ≤ w(i) ≤ i + n` of rank `n`.
fn bounded(n: usize) -> Vec<AffinePermutation> {
    fn extend(prefix: &mut Vec<i64>, n: usize, out: &mut Vec<AffinePermutation>) {
        let i = prefix.len() as i64 + 1;
        if prefix.len() == n {
            out.push(AffinePermutation::from_window(prefix.clone()).expect("bijective"));
            return;
        }
        for value in i..=i + n as i64 {
            if prefix.iter().all(|&p| (p - value).rem_euclid(n as i64) != 0) {
                prefix.push(value);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

/// Positroid decompositions are nonnegative, stay in the rectangle and agree across methods.
fn positroid(t: &mut SelfTest) {
    for n in 2..=4 {
        for w in bounded(n) {
            let r = w.shift() as usize;
            let default = positroid_schubert_decomposition(&w, r, None);
            let alternating = positroid_schubert_decomposition(&w, r, Some(Method::Alternating));
            let ok = match (&default, &alternating) {
                (Ok(d), Ok(a)) => {
                    d.terms == a.terms && d.is_nonnegative() && d.terms.keys().all(|lambda| lambda.fits_in(r, n - r))
                }
                _ => false,
            };
            t.check(ok, || format!("{w} in Bound({r}, {n})"));
        }
    }
}

/// The Stembridge axioms hold for small crystals with three factors.
fn stembridge(t: &mut SelfTest) {
    for w in with_missing_residue(4, 5) {
        let passed = build_crystal(&w, 3, None).and_then(|g| verify_stembridge(&g)).map(|r| r.passed());
        t.check(passed == Ok(true), || format!("{w}: {passed:?}"));
    }
}

/// `θ` is a sign-reversing involution whose fixed points are the highest weights.
fn involution(t: &mut SelfTest) {
    for w in with_missing_residue(4, 4) {
        for mu in Partition::all(w.length(), 3, 3) {
            let report = verify_cancellation(&w, &mu, None, None);
            t.check(matches!(&report, Ok(r) if r.holds()), || format!("{w}, μ = {mu}: {report:?}"));
        }
    }
}

/// Counts are symmetric in the weight and sum to the number of factorizations.
fn count(t: &mut SelfTest) {
    for w in elements_up_to(4, 4) {
        let mut factorizer = Factorizer::new(4);
        let all = factorizer.all(&w, 3).len() as u64;
        let mut total = 0;
        for alpha in Composition::all(w.length(), 3, 3) {
            let c = factorizer.count(&w, &alpha);
            let mut reversed = alpha.0.clone();
            reversed.reverse();
            t.check(factorizer.count(&w, &Composition(reversed)) == c, || format!("{w}: asymmetric at {alpha}"));
            total += c;
        }
        t.check(total == all, || format!("{w}: {total} by weight, {all} in total"));
    }
}
