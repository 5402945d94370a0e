//! Left-right planarity test with Kuratowski witness extraction.
//!
//! The test orients the graph by DFS, computes lowpoints and nesting depths,
//! then processes back edges through a stack of conflict pairs; a conflict
//! that cannot be resolved by flipping sides means the graph is not planar.

use std::collections::HashSet;

use serde::Serialize;

use super::Graph;

type EdgeId = usize;
const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    adj: &'a [Vec<usize>],
    height: Vec<usize>,
    parent_edge: Vec<Option<EdgeId>>,
    edges: Vec<(usize, usize)>,
    oriented: HashSet<(usize, usize)>,
    out: Vec<Vec<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    reference: Vec<Option<EdgeId>>,
    lowpt_edge: Vec<Option<EdgeId>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl<'a> LrState<'a> {
    fn new(adj: &'a [Vec<usize>], m: usize) -> Self {
        let n = adj.len();
        LrState {
            adj,
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            edges: Vec::with_capacity(m),
            oriented: HashSet::with_capacity(m),
            out: vec![Vec::new(); n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            reference: vec![None; m],
            lowpt_edge: vec![None; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
        }
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if !self.oriented.insert((v.min(w), v.max(w))) {
                continue;
            }
            let vw = self.edges.len();
            self.edges.push((v, w));
            self.out[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting_depth.push(0);
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw];
            if self.lowpt2[vw] < self.height[v] {
                // chordal
                self.nesting_depth[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: EdgeId) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        let low = |i: &Interval| i.low.map_or(NONE, |e| self.lowpt[e]);
        if p.left.is_empty() {
            low(&p.right)
        } else if p.right.is_empty() {
            low(&p.left)
        } else {
            low(&p.left).min(low(&p.right))
        }
    }

    fn set_ref(&mut self, at: Option<EdgeId>, to: Option<EdgeId>) {
        if let Some(at) = at {
            self.reference[at] = to;
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let ordered = self.out[v].clone();
        for (idx, &ei) in ordered.iter().enumerate() {
            let w = self.edges[ei].1;
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("return edges below a root are impossible");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            let u = self.edges[e].0;
            self.trim_back_edges(u);
            if self.lowpt[e] < self.height[u] {
                let top = *self.stack.last().expect("return edge implies a conflict pair");
                let (hl, hr) = (top.left.high, top.right.high);
                let use_left = match (hl, hr) {
                    (Some(_), None) => true,
                    (Some(l), Some(r)) => self.lowpt[l] > self.lowpt[r],
                    _ => false,
                };
                self.reference[e] = if use_left { hl } else { hr };
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("stack holds the pairs of ei");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("non-empty right interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.edges[h].1 != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.set_ref(p.left.low, p.right.low);
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if self.edges[h].1 != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.set_ref(p.right.low, p.left.low);
                p.right.low = None;
            }
            self.stack.push(p);
        }
    }
}

fn lr_planar(g: &Graph) -> bool {
    let n = g.order();
    let m = g.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    let adj = g.adjacency_lists();
    let mut st = LrState::new(&adj, m);
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            roots.push(v);
            st.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut st.out[v]);
        out.sort_by_key(|&e| st.nesting_depth[e]);
        st.out[v] = out;
    }
    roots.into_iter().all(|r| st.test(r))
}

/// True iff `g` is planar. Graphs with `n ≥ 3` and more than `3n − 6` edges
/// are rejected without search.
pub fn is_planar(g: &Graph) -> bool {
    lr_planar(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// An edge-minimal non-planar subgraph: a subdivision of `K_5` or `K_{3,3}`.
#[derive(Clone, Debug)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    /// Vertices of degree ≥ 3 in the subdivision.
    pub branch_vertices: Vec<usize>,
    /// Edges of the subdivision in the original numbering.
    pub edges: Vec<(usize, usize)>,
}

/// Planarity verdict with an optional obstruction.
#[derive(Clone, Debug)]
pub struct Planarity {
    pub planar: bool,
    pub witness: Option<KuratowskiWitness>,
}

/// Runs the planarity test, extracting a Kuratowski subdivision on failure
/// when `want_witness` is set.
pub fn check_planarity(g: &Graph, want_witness: bool) -> Planarity {
    let planar = is_planar(g);
    let witness = if !planar && want_witness {
        kuratowski_witness(g)
    } else {
        None
    };
    Planarity { planar, witness }
}

/// Deletes edges one at a time while the remainder stays non-planar; what is
/// left is a subdivision of `K_5` or `K_{3,3}`. `None` for planar input.
pub fn kuratowski_witness(g: &Graph) -> Option<KuratowskiWitness> {
    if is_planar(g) {
        return None;
    }
    let mut h = g.clone();
    for (u, v) in g.edges().collect::<Vec<_>>() {
        h.remove_edge(u, v);
        // removal keeps planarity monotone: if h becomes planar, the edge is needed
        if is_planar(&h) {
            h.add_edge(u, v);
        }
    }
    let branch_vertices: Vec<usize> = (0..h.order()).filter(|&u| h.degree(u) >= 3).collect();
    let kind = if branch_vertices.len() == 5 && branch_vertices.iter().all(|&u| h.degree(u) == 4) {
        KuratowskiKind::K5
    } else {
        debug_assert!(branch_vertices.len() == 6 && branch_vertices.iter().all(|&u| h.degree(u) == 3));
        KuratowskiKind::K33
    };
    Some(KuratowskiWitness {
        kind,
        branch_vertices,
        edges: h.edges().collect(),
    })
}
