//! Stembridge's local axioms for simply-laced crystals, type `A_{ℓ−1}`.
//!
//! The verifier only looks at the graph: `e_i`/`f_i` are read off the
//! edges, `ε_i`/`φ_i` are string lengths along them, and the stored
//! decorations are checked against those lengths and the weights.

use std::fmt;

use super::CrystalGraph;
use crate::error::{Error, Result};

/// The checks performed by [`verify_stembridge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Monochromatic paths are finite (no monochromatic circuits).
    P1,
    /// At most one incoming and one outgoing edge per color.
    P2,
    /// `Δ_iε_j + Δ_iφ_j = a_ij`.
    P3,
    /// `Δ_iε_j ≤ 0` and `Δ_iφ_j ≤ 0` for `i ≠ j`.
    P4,
    /// `Δ_iε_j = 0` forces a commuting square.
    P5,
    /// `Δ_iε_j = Δ_jε_i = −1` forces an octagon.
    P6,
    /// Dual of P5 with `f` and `∇`.
    P5Dual,
    /// Dual of P6 with `f` and `∇`.
    P6Dual,
    /// Stored `ε`, `φ` and weights agree with the edges.
    Decorations,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::P1,
        Axiom::P2,
        Axiom::P3,
        Axiom::P4,
        Axiom::P5,
        Axiom::P6,
        Axiom::P5Dual,
        Axiom::P6Dual,
        Axiom::Decorations,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::P1 => "P1",
            Axiom::P2 => "P2",
            Axiom::P3 => "P3",
            Axiom::P4 => "P4",
            Axiom::P5 => "P5",
            Axiom::P6 => "P6",
            Axiom::P5Dual => "P5'",
            Axiom::P6Dual => "P6'",
            Axiom::Decorations => "decorations",
        };
        f.write_str(name)
    }
}

/// A vertex and color pair at which an axiom fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub vertex: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub violations: usize,
    pub witness: Option<Witness>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomResult {
        self.results.iter().find(|r| r.axiom == axiom).expect("every axiom is reported")
    }

    pub fn total_violations(&self) -> usize {
        self.results.iter().map(|r| r.violations).sum()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match r.witness {
                None => writeln!(f, "{}: pass", r.axiom)?,
                Some(w) => writeln!(
                    f,
                    "{}: FAIL ({} violations; vertex {}, colors {},{})",
                    r.axiom, r.violations, w.vertex, w.i, w.j
                )?,
            }
        }
        Ok(())
    }
}

struct Tally {
    counts: Vec<(usize, Option<Witness>)>,
}

impl Tally {
    fn new() -> Self {
        Self { counts: vec![(0, None); Axiom::ALL.len()] }
    }

    fn fail(&mut self, axiom: Axiom, vertex: usize, i: usize, j: usize) {
        let slot = &mut self.counts[axiom as usize];
        slot.0 += 1;
        slot.1.get_or_insert(Witness { vertex, i, j });
    }

    fn report(self) -> AxiomReport {
        let results = Axiom::ALL
            .iter()
            .zip(self.counts)
            .map(|(&axiom, (violations, witness))| AxiomResult { axiom, violations, witness })
            .collect();
        AxiomReport { results }
    }
}

/// Edge-derived local structure. Colors are 1-based; index `i − 1`.
struct Local {
    e: Vec<Vec<Option<usize>>>,
    f: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<usize>>,
    phi: Vec<Vec<usize>>,
}

impl Local {
    fn e(&self, v: usize, i: usize) -> Option<usize> {
        self.e[v][i - 1]
    }

    fn f(&self, v: usize, i: usize) -> Option<usize> {
        self.f[v][i - 1]
    }

    fn eps(&self, v: usize, i: usize) -> i64 {
        self.eps[v][i - 1] as i64
    }

    fn phi(&self, v: usize, i: usize) -> i64 {
        self.phi[v][i - 1] as i64
    }

    fn e_path(&self, v: usize, colors: &[usize]) -> Option<usize> {
        colors.iter().try_fold(v, |cur, &c| self.e(cur, c))
    }

    fn f_path(&self, v: usize, colors: &[usize]) -> Option<usize> {
        colors.iter().try_fold(v, |cur, &c| self.f(cur, c))
    }

    /// `Δ_iε_j(x) = ε_j(x) − ε_j(e_i x)`.
    fn delta_eps(&self, x: usize, i: usize, j: usize) -> Option<i64> {
        self.e(x, i).map(|y| self.eps(x, j) - self.eps(y, j))
    }

    /// `Δ_iφ_j(x) = φ_j(e_i x) − φ_j(x)`.
    fn delta_phi(&self, x: usize, i: usize, j: usize) -> Option<i64> {
        self.e(x, i).map(|y| self.phi(y, j) - self.phi(x, j))
    }

    /// `∇_iφ_j(x) = φ_j(x) − φ_j(f_i x)`.
    fn nabla_phi(&self, x: usize, i: usize, j: usize) -> Option<i64> {
        self.f(x, i).map(|y| self.phi(x, j) - self.phi(y, j))
    }
}

fn cartan(i: usize, j: usize) -> i64 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// Checks P1–P6, P5′, P6′ and the consistency of the stored decorations.
pub fn verify_stembridge(g: &CrystalGraph) -> Result<AxiomReport> {
    let decorations = g.decorations.as_ref().ok_or(Error::UndecoratedGraph)?;
    let nv = g.vertices.len();
    let colors = g.num_colors();
    let mut tally = Tally::new();

    let mut e = vec![vec![None; colors]; nv];
    let mut f = vec![vec![None; colors]; nv];
    for &(a, r, b) in &g.edges {
        if r == 0 || r > colors {
            tally.fail(Axiom::P2, a, r, r);
            continue;
        }
        if f[a][r - 1].replace(b).is_some() {
            tally.fail(Axiom::P2, a, r, r);
        }
        if e[b][r - 1].replace(a).is_some() {
            tally.fail(Axiom::P2, b, r, r);
        }
    }

    // P1 and string lengths: follow each monochromatic path, bounded by nv steps.
    let mut eps = vec![vec![0usize; colors]; nv];
    let mut phi = vec![vec![0usize; colors]; nv];
    for v in 0..nv {
        for c in 0..colors {
            for (table, out) in [(&e, &mut eps), (&f, &mut phi)] {
                let mut cur = v;
                let mut steps = 0;
                while let Some(next) = table[cur][c] {
                    cur = next;
                    steps += 1;
                    if steps > nv {
                        tally.fail(Axiom::P1, v, c + 1, c + 1);
                        break;
                    }
                }
                out[v][c] = steps;
            }
        }
    }
    let local = Local { e, f, eps, phi };

    for v in 0..nv {
        for i in 1..=colors {
            let stored_eps = decorations.epsilon.get(v).and_then(|row| row.get(i - 1)).copied();
            let stored_phi = decorations.phi.get(v).and_then(|row| row.get(i - 1)).copied();
            if stored_eps != Some(local.eps[v][i - 1]) || stored_phi != Some(local.phi[v][i - 1]) {
                tally.fail(Axiom::Decorations, v, i, i);
            }
            if let (Some(t), Some(wt)) = (local.f(v, i), decorations.weights.get(v)) {
                let mut expected = wt.0.clone();
                let ok = expected[i - 1] > 0 && {
                    expected[i - 1] -= 1;
                    expected[i] += 1;
                    decorations.weights.get(t).map(|w| &w.0) == Some(&expected)
                };
                if !ok {
                    tally.fail(Axiom::Decorations, v, i, i);
                }
            }
        }
    }

    for x in 0..nv {
        for i in 1..=colors {
            for j in 1..=colors {
                let a = cartan(i, j);
                if let (Some(de), Some(dp)) = (local.delta_eps(x, i, j), local.delta_phi(x, i, j)) {
                    if de + dp != a {
                        tally.fail(Axiom::P3, x, i, j);
                    }
                    if i != j && (de > 0 || dp > 0) {
                        tally.fail(Axiom::P4, x, i, j);
                    }
                }
                if i == j {
                    continue;
                }
                check_p5_p6(&local, x, i, j, &mut tally);
            }
        }
    }
    Ok(tally.report())
}

fn check_p5_p6(local: &Local, x: usize, i: usize, j: usize, tally: &mut Tally) {
    if local.e(x, i).is_some() && local.e(x, j).is_some() {
        let dij = local.delta_eps(x, i, j).expect("e_i x exists");
        let dji = local.delta_eps(x, j, i).expect("e_j x exists");
        if dij == 0 {
            let a = local.e_path(x, &[j, i]);
            let b = local.e_path(x, &[i, j]);
            let ok = matches!((a, b), (Some(a), Some(b)) if a == b && local.nabla_phi(a, j, i) == Some(0));
            if !ok {
                tally.fail(Axiom::P5, x, i, j);
            }
        }
        if dij == -1 && dji == -1 {
            let a = local.e_path(x, &[i, j, j, i]);
            let b = local.e_path(x, &[j, i, i, j]);
            let ok = matches!((a, b), (Some(a), Some(b))
                if a == b && local.nabla_phi(a, i, j) == Some(-1) && local.nabla_phi(a, j, i) == Some(-1));
            if !ok {
                tally.fail(Axiom::P6, x, i, j);
            }
        }
    }
    if local.f(x, i).is_some() && local.f(x, j).is_some() {
        let nij = local.nabla_phi(x, i, j).expect("f_i x exists");
        let nji = local.nabla_phi(x, j, i).expect("f_j x exists");
        if nij == 0 {
            let a = local.f_path(x, &[j, i]);
            let b = local.f_path(x, &[i, j]);
            let ok = matches!((a, b), (Some(a), Some(b)) if a == b && local.delta_eps(a, j, i) == Some(0));
            if !ok {
                tally.fail(Axiom::P5Dual, x, i, j);
            }
        }
        if nij == -1 && nji == -1 {
            let a = local.f_path(x, &[i, j, j, i]);
            let b = local.f_path(x, &[j, i, i, j]);
            let ok = matches!((a, b), (Some(a), Some(b))
                if a == b && local.delta_eps(a, i, j) == Some(-1) && local.delta_eps(a, j, i) == Some(-1));
            if !ok {
                tally.fail(Axiom::P6Dual, x, i, j);
            }
        }
    }
}
