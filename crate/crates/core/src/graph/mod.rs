//! Undirected simple graphs over a dense symmetric bitset.
//!
//! Vertices are `0..n`. Row `u` of the adjacency bitset holds the neighbours
//! of `u`; the diagonal is always clear.

mod construct;
pub mod cycles;
pub mod graph6;
pub mod planarity;

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

pub use construct::{
    build_extremal, build_path, complete, disjoint_union, empty, forest_join_cl_free, join,
    star, CaseKind, ExtremalParams, PathPartition,
};
pub(crate) use construct::hub_join;
pub use cycles::has_cycle_of_length;
pub use planarity::{check_planarity, is_planar, kuratowski_witness, KuratowskiKind, KuratowskiWitness, Planarity};

/// An undirected simple graph.
///
/// Equality and hashing only look at the order and the edge set; labels are
/// descriptive metadata.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            labels: vec![None; n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!("repeated edge {u}-{v}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: u,
                order: self.n,
            })
        }
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Inserts the edge `uv`.
    ///
    /// # Panics
    /// On a loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "edge {u}-{v} out of range");
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Neighbours of `u` in increasing order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|u| self.neighbors(u).collect()).collect()
    }

    pub fn label(&self, u: usize) -> Option<&str> {
        self.labels[u].as_deref()
    }

    pub fn set_label(&mut self, u: usize, label: impl Into<String>) {
        self.labels[u] = Some(label.into());
    }

    pub(crate) fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Subgraph induced on `keep`, renumbered in the order given.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            g.labels[i] = self.labels[u].clone();
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// `G - S`: deletes the listed vertices, keeping the others in order.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|u| !removed.contains(u)).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels vertex `u` as `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        for (u, &p) in perm.iter().enumerate() {
            g.labels[p] = self.labels[u].clone();
        }
        g
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// `d_G(u, v)`.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True when the graph is a disjoint union of paths.
    pub fn is_linear_forest(&self) -> bool {
        self.max_degree() <= 2
            && self
                .components()
                .iter()
                .all(|c| self.induced_subgraph(c).edge_count() + 1 == c.len())
    }

    /// Path orders of a linear forest, or `None` if the graph is not one.
    pub fn linear_forest_partition(&self) -> Option<PathPartition> {
        if !self.is_linear_forest() {
            return None;
        }
        Some(PathPartition::new(
            self.components().iter().map(Vec::len).collect(),
        ))
    }

    /// Two adjacent vertices adjacent to every other vertex, i.e. a spanning
    /// `K_2 ∨ \bar K_{n-2}`.
    pub fn dominating_edge(&self) -> Option<(usize, usize)> {
        if self.n < 2 {
            return None;
        }
        let full: Vec<usize> = (0..self.n).filter(|&u| self.degree(u) == self.n - 1).collect();
        if full.len() >= 2 {
            Some((full[0], full[1]))
        } else {
            None
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
