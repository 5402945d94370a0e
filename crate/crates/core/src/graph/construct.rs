//! Paths, unions, joins and the `K_2 ∨ (linear forest)` extremal families.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Edgeless graph `\bar K_m`.
pub fn empty(m: usize) -> Graph {
    Graph::new(m)
}

pub fn complete(m: usize) -> Graph {
    let mut g = Graph::new(m);
    for u in 0..m {
        for v in u + 1..m {
            g.add_edge(u, v);
        }
    }
    g
}

/// Star `K_1 ∨ \bar K_m`, centre first.
pub fn star(m: usize) -> Graph {
    join(&Graph::new(1), &Graph::new(m))
}

/// Path `P_k` on vertices `0..k`. `P_0` is the empty graph.
pub fn build_path(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for u in 1..k {
        g.add_edge(u - 1, u);
    }
    g
}

/// Vertex-disjoint union; the vertices of `gs[i]` follow those of `gs[i-1]`.
pub fn disjoint_union(gs: &[Graph]) -> Graph {
    let n = gs.iter().map(Graph::order).sum();
    let mut out = Graph::new(n);
    let mut offset = 0;
    for g in gs {
        for (u, v) in g.edges() {
            out.add_edge(offset + u, offset + v);
        }
        for u in 0..g.order() {
            out.labels[offset + u] = g.labels()[u].clone();
        }
        offset += g.order();
    }
    out
}

/// Join `G_1 ∨ G_2`: vertices of `g1` first, then those of `g2`, with every
/// cross pair adjacent.
pub fn join(g1: &Graph, g2: &Graph) -> Graph {
    let mut out = disjoint_union(&[g1.clone(), g2.clone()]);
    let n1 = g1.order();
    for u in 0..n1 {
        for v in 0..g2.order() {
            out.add_edge(u, n1 + v);
        }
    }
    out
}

/// Orders `n_1 ≥ n_2 ≥ … ≥ n_t ≥ 0` of the paths of a linear forest.
/// Zero parts stand for `P_0` and contribute no vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathPartition {
    parts: Vec<usize>,
}

impl PathPartition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PathPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Parts with the `P_0` entries dropped.
    pub fn positive_parts(&self) -> Vec<usize> {
        self.parts.iter().copied().filter(|&p| p > 0).collect()
    }

    /// Number of forest vertices.
    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `n_1 + n_2`, padding with zero parts.
    pub fn top_two_sum(&self) -> usize {
        self.parts.iter().take(2).sum()
    }

    /// Same multiset of non-empty paths.
    pub fn same_forest(&self, other: &PathPartition) -> bool {
        self.positive_parts() == other.positive_parts()
    }

    /// Disjoint union of the paths, in partition order, labelled
    /// `path i, position j` (1-based).
    pub fn realize(&self) -> Graph {
        let paths: Vec<Graph> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let mut p = build_path(k);
                for j in 0..k {
                    p.set_label(j, format!("path {}, position {}", i + 1, j + 1));
                }
                p
            })
            .collect();
        disjoint_union(&paths)
    }

    /// All partitions of `total` into positive parts with `n_1 + n_2 ≤
    /// max_top_two` (when given), in colex order on the sorted parts.
    pub fn enumerate(total: usize, max_top_two: Option<usize>) -> Vec<PathPartition> {
        fn rec(
            remaining: usize,
            cap: usize,
            prefix: &mut Vec<usize>,
            limit: Option<usize>,
            out: &mut Vec<PathPartition>,
        ) {
            if remaining == 0 {
                out.push(PathPartition {
                    parts: prefix.clone(),
                });
                return;
            }
            let mut cap = cap.min(remaining);
            if let (Some(limit), 1) = (limit, prefix.len()) {
                cap = cap.min(limit.saturating_sub(prefix[0]));
            }
            for p in (1..=cap).rev() {
                if prefix.is_empty() && limit.is_some_and(|l| p > l) {
                    continue;
                }
                prefix.push(p);
                rec(remaining - p, p, prefix, limit, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, total, &mut Vec::new(), max_top_two, &mut out);
        out.sort_by(|a, b| a.parts.iter().rev().cmp(b.parts.iter().rev()));
        out
    }
}

impl fmt::Display for PathPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Whether `K_2 ∨ (∪ P_{n_i})` avoids cycles of length `ell`, decided by
/// `n_1 + n_2 ≤ ell − 3`.
pub fn forest_join_cl_free(pp: &PathPartition, ell: usize) -> bool {
    ell >= 3 && pp.top_two_sum() <= ell - 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseKind {
    /// `5 ≤ ℓ < (2n+5)/3`
    I,
    /// `(2n+5)/3 ≤ ℓ ≤ n`
    II,
}

/// Parameters of the conjectured-extremal `C_ℓ`-free planar graph of order
/// `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub n: usize,
    pub ell: usize,
    /// `a` and `b` with `n − ℓ + 1 = a·⌊(ℓ−3)/2⌋ + b`, `0 ≤ b < ⌊(ℓ−3)/2⌋`;
    /// only meaningful in case I.
    pub a: usize,
    pub b: usize,
    pub case: CaseKind,
}

impl ExtremalParams {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if ell < 5 {
            return Err(Error::InvalidParameter(format!("ell = {ell} < 5")));
        }
        if ell > n {
            return Err(Error::InvalidParameter(format!("ell = {ell} > n = {n}")));
        }
        let case = if 3 * ell < 2 * n + 5 {
            CaseKind::I
        } else {
            CaseKind::II
        };
        let (a, b) = match case {
            CaseKind::I => {
                let fl = (ell - 3) / 2;
                let rest = n - ell + 1;
                (rest / fl, rest % fl)
            }
            CaseKind::II => (0, 0),
        };
        Ok(ExtremalParams { n, ell, a, b, case })
    }

    /// The linear forest attached to the two hubs.
    pub fn forest(&self) -> PathPartition {
        let (n, ell) = (self.n, self.ell);
        match self.case {
            CaseKind::I => {
                let fl = (ell - 3) / 2;
                let cl = (ell - 2) / 2;
                let mut parts = vec![cl];
                parts.extend(std::iter::repeat_n(fl, self.a + 1));
                parts.push(self.b);
                PathPartition::new(parts)
            }
            CaseKind::II => PathPartition::new(vec![2 * ell - n - 4, n - ell + 1, n - ell + 1]),
        }
    }
}

/// `K_2 ∨ forest` for the given parameters, hubs first.
pub fn build_extremal(p: &ExtremalParams) -> Graph {
    hub_join(&p.forest())
}

/// `K_2 ∨ realize(pp)` with the hubs labelled.
pub(crate) fn hub_join(pp: &PathPartition) -> Graph {
    let mut hubs = complete(2);
    hubs.set_label(0, "hub 1");
    hubs.set_label(1, "hub 2");
    join(&hubs, &pp.realize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths() {
        let p0 = build_path(0);
        assert_eq!((p0.order(), p0.edge_count()), (0, 0));
        let p1 = build_path(1);
        assert_eq!((p1.order(), p1.edge_count()), (1, 0));
        let p4 = build_path(4);
        assert_eq!(p4.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn unions() {
        let g = disjoint_union(&[build_path(4), build_path(1)]);
        assert_eq!((g.order(), g.edge_count()), (5, 3));
        assert_eq!(disjoint_union(&[]).order(), 0);
        let g = disjoint_union(&[build_path(2), build_path(2), build_path(2)]);
        assert_eq!((g.order(), g.edge_count()), (6, 3));
    }

    #[test]
    fn union_keeps_labels() {
        let pp = PathPartition::new(vec![1, 2]);
        let g = disjoint_union(&[build_path(1), pp.realize()]);
        assert_eq!(g.label(0), None);
        assert_eq!(g.label(1), Some("path 1, position 1"));
        assert_eq!(g.label(3), Some("path 2, position 1"));
    }

    #[test]
    fn joins() {
        let k24 = join(&empty(2), &empty(4));
        assert_eq!(k24.edge_count(), 8);
        let g = join(&complete(2), &build_path(3));
        assert_eq!((g.order(), g.edge_count()), (5, 9));
        let mut direct = Graph::new(5);
        direct.add_edge(0, 1);
        direct.add_edge(2, 3);
        direct.add_edge(3, 4);
        for h in 0..2 {
            for v in 2..5 {
                direct.add_edge(h, v);
            }
        }
        assert_eq!(g, direct);
        let s = star(9);
        assert_eq!(s.degree(0), 9);
        assert!((1..10).all(|v| s.degree(v) == 1));
    }

    #[test]
    fn extremal_case_one_small_ell() {
        let p = ExtremalParams::new(20, 7).unwrap();
        assert_eq!((p.case, p.a, p.b), (CaseKind::I, 7, 0));
        let forest = p.forest();
        assert_eq!(forest.parts(), &[2, 2, 2, 2, 2, 2, 2, 2, 2, 0]);
        let g = build_extremal(&p);
        assert_eq!(g.order(), 20);
        assert_eq!(forest.top_two_sum(), 4);
    }

    #[test]
    fn extremal_case_two() {
        let p = ExtremalParams::new(20, 15).unwrap();
        assert_eq!(p.case, CaseKind::II);
        assert_eq!(p.forest().parts(), &[6, 6, 6]);
        assert_eq!(build_extremal(&p).order(), 20);
    }

    #[test]
    fn extremal_ell_five_is_k2_n_minus_2_plus_hub_edge() {
        let p = ExtremalParams::new(10, 5).unwrap();
        assert_eq!(p.case, CaseKind::I);
        assert_eq!(p.forest().positive_parts(), vec![1; 8]);
        let mut expected = join(&empty(2), &empty(8));
        expected.add_edge(0, 1);
        assert_eq!(build_extremal(&p), expected);
    }

    #[test]
    fn extremal_boundary_ell_equals_n() {
        let p = ExtremalParams::new(11, 11).unwrap();
        assert_eq!(p.case, CaseKind::II);
        assert_eq!(p.forest().parts(), &[7, 1, 1]);
    }

    #[test]
    fn extremal_rejects_bad_ell() {
        assert!(ExtremalParams::new(10, 4).is_err());
        assert!(ExtremalParams::new(10, 11).is_err());
    }

    #[test]
    fn extremal_order_and_top_two_across_grid() {
        for n in 5..60 {
            for ell in 5..=n {
                let p = ExtremalParams::new(n, ell).unwrap();
                let f = p.forest();
                assert_eq!(f.order() + 2, n, "order for n={n} ell={ell}");
                assert_eq!(f.top_two_sum(), ell - 3, "n1+n2 for n={n} ell={ell}");
                if p.case == CaseKind::I {
                    assert!(p.b < (ell - 3) / 2);
                }
            }
        }
    }

    #[test]
    fn observation_predicate() {
        assert!(forest_join_cl_free(&PathPartition::new(vec![2, 2]), 7));
        assert!(!forest_join_cl_free(&PathPartition::new(vec![2, 2]), 6));
        assert!(forest_join_cl_free(&PathPartition::new(vec![0, 0]), 5));
        assert!(forest_join_cl_free(&PathPartition::new(vec![2]), 5));
    }

    #[test]
    fn partition_enumeration() {
        let all = PathPartition::enumerate(6, None);
        assert_eq!(all.len(), 11);
        assert!(all.iter().all(|p| p.order() == 6));
        let capped = PathPartition::enumerate(7, Some(3));
        let parts: Vec<_> = capped.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(parts, vec![vec![1; 7], vec![2, 1, 1, 1, 1, 1]]);
        assert_eq!(PathPartition::enumerate(3, Some(2)).len(), 1);
    }
}
