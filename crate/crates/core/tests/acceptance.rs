//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed:
//! `cargo test -p affine-crystal --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use affine_crystal::coefficients::{
    fusion_coefficient, gw_invariant, stanley_monomial_expansion, stanley_schur_expansion, LrEngine, Method,
};
use affine_crystal::crystal::{
    build_crystal, crystal_op, highest_weight_factorizations, pair_factors, verify_stembridge, Crystal, Op,
};
use affine_crystal::eg::eg_map;
use affine_crystal::factorization::count_factorizations;
use affine_crystal::involution::verify_cancellation;
use affine_crystal::{AffineFactorization, AffinePermutation, Composition, Error, Partition, ResidueSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec())
}

fn set(v: &[usize]) -> ResidueSet {
    v.iter().copied().collect()
}

fn two(n: usize, u: &[usize], v: &[usize]) -> AffineFactorization {
    AffineFactorization::new(n, vec![set(u), set(v)]).expect("valid factorization")
}

fn running_example() -> AffinePermutation {
    AffinePermutation::from_reduced_word(&[3, 4, 1, 2], 5).expect("reduced word")
}

/// Every element of `S̃_n` of length at most `max_len`, sorted by window.
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

/// The elements of length ≤ 6 in `S̃₅` that miss a residue.
fn criterion_five_elements() -> Vec<AffinePermutation> {
    elements_up_to(5, 6).into_iter().filter(|w| !w.missing_residues().is_empty()).collect()
}

fn running_example_crystal() -> Outcome {
    let g = build_crystal(&running_example(), 3, None).map_err(|e| e.to_string())?;
    ensure(g.vertices.len() == 9, || format!("{} vertices", g.vertices.len()))?;
    ensure(g.edges.len() == 8, || format!("{} edges", g.edges.len()))?;
    let colors: Vec<(usize, usize)> = g.color_counts().into_iter().collect();
    ensure(colors == vec![(1, 4), (2, 4)], || format!("color counts {colors:?}"))?;
    ensure(g.components().len() == 2, || format!("{} components", g.components().len()))?;
    let weights: Vec<String> = g.highest_weights().into_keys().collect();
    ensure(weights == ["2,1,1", "2,2"], || format!("highest weights {weights:?}"))?;
    Ok("9 vertices, 8 edges (4+4), 2 components, highest weights (2,2) and (2,1,1)".into())
}

fn schur_expansion() -> Outcome {
    let w = running_example();
    for method in [Method::Crystal, Method::Alternating] {
        let expansion = stanley_schur_expansion(&w, Some(method)).map_err(|e| e.to_string())?;
        let nonzero: Vec<(String, i64)> = expansion.coefficients().into_iter().filter(|(_, c)| *c != 0).collect();
        let expected = vec![("2,1,1".to_string(), 1), ("2,2".to_string(), 1)];
        ensure(nonzero == expected, || format!("{method:?}: {nonzero:?}"))?;
    }
    Ok("s(2,2) + s(2,1,1) by crystal and alternating sum".into())
}

fn pairing_golden() -> Outcome {
    let sorted = |mut pairs: Vec<(usize, usize)>| {
        pairs.sort();
        pairs
    };
    let u = set(&[12, 5, 9, 8, 2]);
    let v = set(&[7, 6, 4, 1, 0, 13, 11]);
    let cases = [
        (u, v, 14, 10, vec![(2, 4), (5, 6), (12, 13)], set(&[9, 8]), set(&[7, 1, 0, 11])),
        (u, v, 14, 3, vec![(5, 6), (8, 0), (9, 11), (12, 13)], set(&[2]), set(&[1, 7, 4])),
        (set(&[1, 0]), set(&[4, 3, 1]), 5, 2, vec![(0, 1)], set(&[1]), set(&[4, 3])),
    ];
    for (u, v, n, x, pairs, left, right) in cases {
        let got = pair_factors(u, v, n, x).map_err(|e| e.to_string())?;
        ensure(sorted(got.pairs.clone()) == pairs, || format!("pairs at n={n}, x={x}: {:?}", got.pairs))?;
        ensure(got.left_unpaired == left && got.right_unpaired == right, || format!("unpaired at n={n}, x={x}"))?;
    }
    let fact = two(14, &[12, 5, 9, 8, 2], &[7, 6, 4, 1, 0, 13, 11]);
    let images = [
        (Op::E, two(14, &[9, 5, 2, 12], &[8, 7, 6, 4, 1, 0, 13, 11])),
        (Op::F, two(14, &[9, 8, 7, 5, 2, 12], &[6, 4, 1, 0, 13, 11])),
        (Op::S, two(14, &[9, 8, 7, 5, 2, 1, 12], &[6, 4, 0, 13, 11])),
    ];
    for (op, expected) in images {
        let got = crystal_op(op, 1, &fact, 10).map_err(|e| e.to_string())?;
        ensure(got.as_ref() == Some(&expected), || format!("{op:?}_1 gave {got:?}"))?;
    }
    let fact = two(8, &[4, 3, 2, 1, 0, 7], &[5, 2, 1, 0]);
    let e = crystal_op(Op::E, 1, &fact, 6).map_err(|e| e.to_string())?;
    let expected = two(8, &[4, 3, 1, 0, 7], &[7, 5, 2, 1, 0]);
    ensure(e.as_ref() == Some(&expected), || format!("n=8 e_1 gave {e:?}"))?;
    let back = crystal_op(Op::F, 1, &expected, 6).map_err(|e| e.to_string())?;
    ensure(back.as_ref() == Some(&fact), || "n=8 f_1 does not undo e_1".into())?;
    Ok("3 pairings, e/f/s images and the n=8 inverse example".into())
}

fn gw_example() -> Outcome {
    let perm = |w: &[i64]| AffinePermutation::from_window(w.to_vec()).expect("window");
    let (u, w, v) = (perm(&[1, 2, 4, 7, 3, 5, 6]), perm(&[3, 1, 5, 4, 2, 6, 7]), perm(&[4, 2, 5, 7, 1, 3, 6]));
    let result = gw_invariant(&u, &w, &v, &[0; 6], None).map_err(|e| e.to_string())?;
    ensure(result.value() == 1, || format!("value {}", result.value()))?;
    let sigma = AffinePermutation::from_reduced_word(&[6, 2, 3, 4, 3, 1, 2, 0], 7).expect("reduced word");
    ensure(result.sigma.as_ref() == Some(&sigma), || format!("σ = {:?}", result.sigma))?;
    let mu = p(&[3, 3, 2]);
    let count = count_factorizations(&sigma, &Composition::from(&mu));
    ensure(count == 4, || format!("{count} factorizations of weight (3,3,2)"))?;
    let hw = highest_weight_factorizations(&sigma, &mu, 3, None).map_err(|e| e.to_string())?;
    ensure(hw.len() == 1, || format!("{} highest weights", hw.len()))?;
    Ok(format!("value 1, σ = {sigma}, 4 factorizations, 1 highest weight"))
}

fn stembridge() -> Outcome {
    let mut crystals = 0;
    for w in criterion_five_elements() {
        for l in [3, 4] {
            let g = build_crystal(&w, l, None).map_err(|e| format!("{w}: {e}"))?;
            let report = verify_stembridge(&g).map_err(|e| format!("{w}: {e}"))?;
            ensure(report.passed(), || format!("w = {w}, ℓ = {l}: {} violations", report.total_violations()))?;
            crystals += 1;
        }
    }
    Ok(format!("{crystals} crystals, zero violations"))
}

/// One `(μ, w, v)` instance of the oracle sweep: `z = v·w⁻¹` and whether the
/// crystal hypotheses hold.
struct Instance {
    mu: Partition,
    z: AffinePermutation,
    hypotheses: bool,
}

/// All `(μ, w, v)` with `w, v` affine Grassmannian in `S̃_n`, `ℓ(v) ≤ 8` and
/// `|μ| = ℓ(v) − ℓ(w)`, `μ` inside some rectangle `(r^{n−r})`.
fn oracle_sweep(n: usize, max_degree: usize, engine: &mut LrEngine) -> Result<(usize, Vec<Instance>), String> {
    let grassmannian: Vec<AffinePermutation> = (0..=max_degree)
        .flat_map(|size| Partition::all(size, size, n - 1))
        .map(|lambda| AffinePermutation::w_lambda(&lambda, n).expect("bounded partition"))
        .collect();
    let mut checked = 0;
    let mut instances = Vec::new();
    for w in &grassmannian {
        for v in grassmannian.iter().filter(|v| v.length() >= w.length()) {
            let size = v.length() - w.length();
            for mu in
                Partition::all(size, size, size).into_iter().filter(|mu| mu.is_empty() || mu.first() + mu.len() <= n)
            {
                let pieri = engine.affine_lr(&mu, w, v, &[], Some(Method::Pieri)).map_err(|e| e.to_string())?;
                let alternating =
                    engine.affine_lr(&mu, w, v, &[], Some(Method::Alternating)).map_err(|e| e.to_string())?;
                ensure(pieri.value == alternating.value, || {
                    format!("μ={mu} w={w} v={v}: pieri {} vs alternating {}", pieri.value, alternating.value)
                })?;
                let z = v.multiply(&w.inverse()).map_err(|e| e.to_string())?;
                let hypotheses = !z.missing_residues().is_empty() || mu.len() <= 2;
                if hypotheses {
                    let crystal = engine.affine_lr(&mu, w, v, &[], Some(Method::Crystal)).map_err(|e| e.to_string())?;
                    ensure(crystal.value == pieri.value, || {
                        format!("μ={mu} w={w} v={v}: crystal {} vs pieri {}", crystal.value, pieri.value)
                    })?;
                }
                instances.push(Instance { mu, z, hypotheses });
                checked += 1;
            }
        }
    }
    Ok((checked, instances))
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    for n in 3..=5 {
        let mut engine = LrEngine::new(n);
        total += oracle_sweep(n, 8, &mut engine)?.0;
    }
    Ok(format!("{total} triples for n = 3, 4, 5, zero discrepancies"))
}

fn eg_intertwining() -> Outcome {
    let mut checks = 0;
    for w in criterion_five_elements() {
        let x = w.missing_residues().min().expect("missing residue");
        for l in [3, 4] {
            let crystal = Crystal::for_element(&w, l, None).map_err(|e| e.to_string())?;
            let g = build_crystal(&w, l, None).map_err(|e| e.to_string())?;
            for vertex in &g.vertices {
                let (insertion, recording) = eg_map(vertex, x).map_err(|e| e.to_string())?;
                for r in 1..l {
                    let expected = recording.f(r).map(|q| (insertion.clone(), q));
                    let got = match crystal.f(r, vertex) {
                        Some(image) => Some(eg_map(&image, x).map_err(|e| e.to_string())?),
                        None => None,
                    };
                    ensure(got == expected, || format!("w = {w}, vertex {vertex}, r = {r}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} vertex/color checks, zero failures"))
}

fn stanley_count() -> Outcome {
    let w0 = AffinePermutation::from_window(vec![4, 3, 2, 1]).expect("window");
    let monomial = stanley_monomial_expansion(&w0, 6).get(&p(&[1; 6]));
    let mut words = 0;
    let mut stack = vec![(AffinePermutation::identity(4), 0)];
    while let Some((u, depth)) = stack.pop() {
        if depth == 6 {
            words += u64::from(u == w0);
            continue;
        }
        for i in 1..4 {
            let next = u.times_generator(i);
            if next.length() == depth + 1 {
                stack.push((next, depth + 1));
            }
        }
    }
    // Hook lengths of (3,2,1) are 5,3,1,3,1,1.
    let syt = 720 / (5 * 3 * 3);
    ensure(monomial == 16 && words == 16 && syt == 16, || format!("monomial {monomial}, words {words}, SYT {syt}"))?;
    Ok("16 reduced words = coefficient of m(1^6) = #SYT(3,2,1)".into())
}

fn involution() -> Outcome {
    let mut seen = BTreeSet::new();
    for n in 3..=5 {
        let mut engine = LrEngine::new(n);
        for instance in oracle_sweep(n, 8, &mut engine)?.1 {
            if instance.hypotheses && !instance.z.missing_residues().is_empty() {
                seen.insert((instance.z, instance.mu));
            }
        }
    }
    for (z, mu) in &seen {
        let report = verify_cancellation(z, mu, None, None).map_err(|e| format!("z = {z}, μ = {mu}: {e}"))?;
        ensure(report.holds(), || format!("z = {z}, μ = {mu}: {}", report.to_json()))?;
    }
    Ok(format!("{} distinct (v·w⁻¹, μ) instances, θ² = id and signed sums exact", seen.len()))
}

fn round_trips() -> Outcome {
    let mut shapes = 0;
    for size in 0..=8 {
        for lambda in Partition::all(size, size, 4) {
            let w = AffinePermutation::w_lambda(&lambda, 5).map_err(|e| e.to_string())?;
            let back = w.lc().map_err(|e| e.to_string())?;
            ensure(back == lambda, || format!("lc(w_λ) = {back} for λ = {lambda}"))?;
            shapes += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let n = if trial % 2 == 0 { 4 } else { 5 };
        let mut w = AffinePermutation::identity(n);
        for _ in 0..rng.gen_range(0..=20) {
            w = w.times_generator(rng.gen_range(0..n));
        }
        let kappa = w.kappa();
        ensure(kappa.inner.is_contained_in(&kappa.outer) && kappa.size() == w.length(), || {
            format!("κ({w}) = {kappa} but ℓ = {}", w.length())
        })?;
    }
    Ok(format!("{shapes} shapes round-trip; κ length identity on 1000 random elements"))
}

fn fusion() -> Outcome {
    for nu in [p(&[2]), Partition::empty()] {
        for method in [Method::Crystal, Method::Alternating, Method::Pieri] {
            let c = fusion_coefficient(&p(&[1]), &p(&[1]), &nu, 2, 4, Some(method)).map_err(|e| e.to_string())?;
            ensure(c.value == 1, || format!("N^({nu}) by {method:?} = {}", c.value))?;
        }
    }
    let bad = fusion_coefficient(&p(&[1]), &p(&[1]), &p(&[1]), 2, 4, None);
    ensure(bad == Err(Error::NotDivisible(1, 2)), || format!("parity check gave {bad:?}"))?;
    Ok("N_{(1),(1)}^{(2)} = N_{(1),(1)}^{∅} = 1 by every engine".into())
}

/// A named check with its time budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("running-example crystal", running_example_crystal, Duration::from_secs(1)),
        ("Schur expansion", schur_expansion, Duration::from_secs(1)),
        ("pairing/operator golden", pairing_golden, Duration::MAX),
        ("GW example", gw_example, Duration::from_secs(1)),
        ("Stembridge conformance", stembridge, Duration::from_secs(60)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(300)),
        ("EG intertwining", eg_intertwining, Duration::MAX),
        ("Stanley count", stanley_count, Duration::MAX),
        ("involution", involution, Duration::MAX),
        ("κ/LC round trips", round_trips, Duration::MAX),
        ("fusion spot checks", fusion, Duration::MAX),
    ];
    let mut failures = 0;
    for (index, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over the {budget:?} budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", index + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{elapsed:.2?}]", index + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
