//! The crystal graph `B(w)` on all factorizations of `w` into `ℓ` factors.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::Crystal;
use crate::affine_weyl::{AffinePermutation, Composition};
use crate::error::Result;
use crate::factorization::{AffineFactorization, Factorizer};

/// Per-vertex string lengths and weights; `epsilon[v][r − 1] = ε_r(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decorations {
    pub epsilon: Vec<Vec<usize>>,
    pub phi: Vec<Vec<usize>>,
    pub weights: Vec<Composition>,
}

/// Vertices are factorizations in canonical order; an edge `(v, r, v′)`
/// records `f̃_r(v) = v′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub n: usize,
    pub num_factors: usize,
    pub element: AffinePermutation,
    pub vertices: Vec<AffineFactorization>,
    pub edges: Vec<(usize, usize, usize)>,
    pub decorations: Option<Decorations>,
}

/// Builds `B(w)` with `num_factors` factors; `x` overrides the default
/// (smallest) missing residue.
pub fn build_crystal(w: &AffinePermutation, num_factors: usize, x: Option<usize>) -> Result<CrystalGraph> {
    let crystal = Crystal::for_element(w, num_factors, x)?;
    let vertices = Factorizer::new(w.n()).all(w, num_factors);
    let index: HashMap<&AffineFactorization, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut epsilon = Vec::with_capacity(vertices.len());
    let mut phi = Vec::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        let mut eps_v = Vec::new();
        let mut phi_v = Vec::new();
        for r in 1..num_factors {
            let (e, p) = crystal.string_lengths(r, v);
            eps_v.push(e);
            phi_v.push(p);
            if let Some(target) = crystal.f(r, v) {
                edges.push((i, r, index[&target]));
            }
        }
        epsilon.push(eps_v);
        phi.push(phi_v);
    }
    let weights = vertices.iter().map(AffineFactorization::weight).collect();
    Ok(CrystalGraph {
        n: w.n(),
        num_factors,
        element: w.clone(),
        vertices,
        edges,
        decorations: Some(Decorations { epsilon, phi, weights }),
    })
}

impl CrystalGraph {
    pub fn num_colors(&self) -> usize {
        self.num_factors.saturating_sub(1)
    }

    /// Vertices without incoming edges.
    pub fn highest_weight_vertices(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.vertices.len()];
        for &(_, _, dst) in &self.edges {
            has_in[dst] = true;
        }
        (0..self.vertices.len()).filter(|&v| !has_in[v]).collect()
    }

    /// Highest weights (as partitions) with multiplicities.
    pub fn highest_weights(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for v in self.highest_weight_vertices() {
            *out.entry(self.vertices[v].weight().sorted().key()).or_insert(0) += 1;
        }
        out
    }

    /// Connected components of the underlying undirected graph, each as a
    /// sorted list of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for &(a, _, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Number of edges of each color.
    pub fn color_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &(_, r, _) in &self.edges {
            *out.entry(r).or_insert(0) += 1;
        }
        out
    }

    /// A permutation-invariant summary: sorted vertex weights and sorted
    /// `(source weight, color, target weight)` triples.
    pub fn isomorphism_invariant(&self) -> (Vec<Composition>, Vec<(Composition, usize, Composition)>) {
        let mut weights: Vec<Composition> = self.vertices.iter().map(AffineFactorization::weight).collect();
        weights.sort();
        let mut edges: Vec<_> =
            self.edges.iter().map(|&(a, r, b)| (self.vertices[a].weight(), r, self.vertices[b].weight())).collect();
        edges.sort();
        (weights, edges)
    }

    /// Removes the string-length decorations.
    pub fn without_decorations(mut self) -> Self {
        self.decorations = None;
        self
    }

    /// Deterministic DOT rendering; labels are factorization text and colors.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{v}\"];");
        }
        for &(a, r, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b} [label=\"{r}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// `{"vertices":[...],"edges":[[src,color,dst],...],"highest_weights":{...}}`.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let edges: Vec<[usize; 3]> = self.edges.iter().map(|&(a, r, b)| [a, r, b]).collect();
        json!({
            "vertices": vertices,
            "edges": edges,
            "highest_weights": self.highest_weights(),
        })
    }
}
