//! Undirected graphs and uniform hypergraphs, coloring and homomorphism
//! search.

mod color;
mod hom;

pub use color::{
    chromatic_number, greedy_clique, hyper_chromatic_number, hyper_chromatic_number_direct,
    hyper_k_colorable, k_colorable, max_clique, ChromaticResult, KColoring, DEFAULT_SEARCH_BUDGET,
};
pub use hom::{find_homomorphism, is_homomorphism, HomResult};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// Fixed-size bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Bits {
        Bits {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Bits {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersection_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Simple undirected graph on vertices `0..n`, each carrying an external
/// id and optionally a subspace label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph {
    ids: Vec<u32>,
    adj: Vec<Bits>,
    labels: Option<Vec<Subspace>>,
}

impl UGraph {
    pub fn new(n: usize) -> UGraph {
        UGraph {
            ids: (0..n as u32).collect(),
            adj: vec![Bits::new(n); n],
            labels: None,
        }
    }

    pub fn with_ids(ids: Vec<u32>) -> Result<UGraph> {
        let mut seen = std::collections::HashSet::new();
        if let Some(d) = ids.iter().find(|i| !seen.insert(**i)) {
            return Err(Error::InvalidArgument(format!("duplicate vertex id {d}")));
        }
        let n = ids.len();
        Ok(UGraph {
            ids,
            adj: vec![Bits::new(n); n],
            labels: None,
        })
    }

    pub fn complete(n: usize) -> UGraph {
        let mut g = UGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<Subspace>) -> Result<UGraph> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.len();
        if u >= n || v >= n {
            return Err(Error::InvalidArgument(format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.ids.iter().position(|&i| i == id)
    }

    pub fn labels(&self) -> Option<&[Subspace]> {
        self.labels.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn to_json(&self) -> UGraphJson {
        UGraphJson {
            vertices: self.ids.clone(),
            edges: self.edges().map(|(u, v)| [self.ids[u], self.ids[v]]).collect(),
        }
    }

    pub fn from_json(j: &UGraphJson) -> Result<UGraph> {
        let mut g = UGraph::with_ids(j.vertices.clone())?;
        for &[a, b] in &j.edges {
            let (Some(u), Some(v)) = (g.index_of(a), g.index_of(b)) else {
                return Err(Error::InvalidArgument(format!("edge [{a},{b}] uses an unknown vertex")));
            };
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// DIMACS `p edge` format with 1-based vertex indices.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.len(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for &id in &self.ids {
            let _ = writeln!(out, "  {id};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", self.ids[u], self.ids[v]);
        }
        out.push_str("}\n");
        out
    }
}

/// Interchange form of a [`UGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UGraphJson {
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
}

/// Uniform hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    rank: usize,
    edges: Vec<Vec<usize>>,
    labels: Option<Vec<Subspace>>,
}

impl Hypergraph {
    pub fn new(n: usize, rank: usize) -> Hypergraph {
        Hypergraph {
            n,
            rank,
            edges: Vec::new(),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Subspace>) -> Result<Hypergraph> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn add_edge(&mut self, mut e: Vec<usize>) -> Result<()> {
        e.sort_unstable();
        if e.len() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "hyperedge of size {} in a {}-uniform hypergraph",
                e.len(),
                self.rank
            )));
        }
        if e.windows(2).any(|w| w[0] == w[1]) || e.last().is_some_and(|&v| v >= self.n) {
            return Err(Error::InvalidArgument("hyperedge repeats or misses a vertex".into()));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[Subspace]> {
        self.labels.as_deref()
    }

    /// Two vertices adjacent iff some hyperedge contains both.
    pub fn co_occurrence_graph(&self) -> UGraph {
        let mut g = UGraph::new(self.n);
        for e in &self.edges {
            for (i, &u) in e.iter().enumerate() {
                for &v in &e[i + 1..] {
                    g.add_edge(u, v).expect("hyperedge vertices are distinct");
                }
            }
        }
        g
    }
}

/// Vertex colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_proper(&self, g: &UGraph) -> bool {
        self.colors.len() == g.len() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    /// No hyperedge holds two vertices of the same color.
    pub fn is_proper_hyper(&self, h: &Hypergraph) -> bool {
        self.colors.len() == h.len()
            && h.edges().iter().all(|e| {
                let mut c: Vec<usize> = e.iter().map(|&v| self.colors[v]).collect();
                c.sort_unstable();
                c.windows(2).all(|w| w[0] != w[1])
            })
    }
}
