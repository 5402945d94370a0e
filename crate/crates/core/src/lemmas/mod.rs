//! Numerical and exact verification of the structural lemmas behind the
//! extremal construction, one [`LemmaReport`] per parameter tuple.
//!
//! | id                | statement checked                                             |
//! |-------------------|---------------------------------------------------------------|
//! | `binomial_sum`    | `Σ_{i≤ℓ} C(n,i) ≤ (5/4) n^ℓ/ℓ!` for `n ≥ 4ℓ`                   |
//! | `walk_difference` | walk-count difference of a path move equals a crossing count  |
//! | `crossing_series` | `Σ_s W^s_{u,v}(P_n)/x^s` is below its closed-form bound       |
//! | `g_function`      | sign and monotonicity of the two auxiliary `g` functions      |
//! | `path_shift`      | lengthening the longer of two paths increases `ρ`             |
//! | `balance4`        | the four-path rebalancing increases `ρ`                       |
//! | `balance5`        | the five-path rebalancing increases `ρ`                       |

mod identities;
mod path_moves;
mod sweep;

use std::time::Duration;

use serde::Serialize;

use crate::graph::{complete, empty, graph6, Graph, PathPartition};

pub use identities::{
    binomial_sum_holds, check_binomial_sum, check_crossing_series, check_g_function,
    check_walk_difference, g_value, GFunction,
};
pub use path_moves::{
    resolvent, verify_balance4, verify_balance5, verify_path_move, verify_path_shift,
    walk_difference_sign, PathMove, SeriesCertificate, DEFAULT_TOL,
};
pub use sweep::{
    balance4_sweep, balance5_sweep, binomial_sum_sweep, crossing_series_sweep, linspace,
    path_shift_sweep, walk_difference_sweep, BalanceSweep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    BinomialSum,
    WalkDifference,
    CrossingSeries,
    GFunction,
    PathShift,
    Balance4,
    Balance5,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::BinomialSum,
        LemmaId::WalkDifference,
        LemmaId::CrossingSeries,
        LemmaId::GFunction,
        LemmaId::PathShift,
        LemmaId::Balance4,
        LemmaId::Balance5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::BinomialSum => "binomial_sum",
            LemmaId::WalkDifference => "walk_difference",
            LemmaId::CrossingSeries => "crossing_series",
            LemmaId::GFunction => "g_function",
            LemmaId::PathShift => "path_shift",
            LemmaId::Balance4 => "balance4",
            LemmaId::Balance5 => "balance5",
        }
    }
}

impl std::str::FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = match s {
            "wdiff" => "walk_difference",
            "weval" => "crossing_series",
            "gfun" => "g_function",
            other => other,
        };
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = LemmaId::ALL.iter().map(|id| id.as_str()).collect();
                format!("unknown check {s:?}; expected one of {}", names.join(", "))
            })
    }
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    /// Integer or rational arithmetic.
    Exact,
    /// Floating-point evaluation with explicit truncation bounds.
    Bounded,
    /// Disjoint eigenvalue enclosures.
    Eigensolve,
    /// Sign of the exact walk-difference series over an enclosure of `ρ`.
    WalkSeries,
}

/// A graph with a short human-readable name for reports.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        NamedGraph {
            name: name.into(),
            graph,
        }
    }

    pub fn complete(k: usize) -> Self {
        NamedGraph::new(format!("K{k}"), complete(k))
    }

    /// `K̄_m`, written `Kbar{m}`.
    pub fn edgeless(m: usize) -> Self {
        NamedGraph::new(format!("Kbar{m}"), empty(m))
    }

    /// `P_m`; `P0` is the graph with no vertices.
    pub fn path(m: usize) -> Self {
        NamedGraph::new(format!("P{m}"), crate::graph::build_path(m))
    }

    /// Disjoint union of paths, e.g. `P3+P2+P2`.
    pub fn paths(parts: &[usize]) -> Self {
        let pp = PathPartition::new(parts.to_vec());
        let name = if pp.positive_parts().is_empty() {
            "P0".to_string()
        } else {
            pp.positive_parts()
                .iter()
                .map(|p| format!("P{p}"))
                .collect::<Vec<_>>()
                .join("+")
        };
        NamedGraph::new(name, pp.realize())
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn desc(&self) -> GraphDesc {
        GraphDesc {
            name: self.name.clone(),
            order: self.graph.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphDesc {
    pub name: String,
    pub order: usize,
}

/// Parameters of one checked instance; unused fields are omitted from JSON.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub n: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_function: Option<GFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<GraphDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<GraphDesc>,
}

/// Outcome of one check. Field order is the JSON field order.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub params: Params,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Signed slack in the direction of the claim: positive means the claim
    /// holds with room to spare. Its meaning depends on the check.
    pub margin: Option<f64>,
    pub rho1: Option<f64>,
    pub rho2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Present on FAIL and INCONCLUSIVE so the instance can be replayed.
    pub graph6_1: Option<String>,
    pub graph6_2: Option<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl LemmaReport {
    pub(crate) fn new(lemma: LemmaId, params: Params, verdict: Verdict, certificate: Certificate) -> Self {
        LemmaReport {
            lemma,
            params,
            verdict,
            certificate,
            margin: None,
            rho1: None,
            rho2: None,
            detail: None,
            graph6_1: None,
            graph6_2: None,
            runtime: Duration::ZERO,
        }
    }

    pub(crate) fn attach_graphs(&mut self, g1: &Graph, g2: &Graph) {
        self.graph6_1 = Some(graph6::encode(g1));
        self.graph6_2 = Some(graph6::encode(g2));
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Counts of each verdict in a batch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Tally {
    pub fn of(reports: &[LemmaReport]) -> Self {
        let mut t = Tally::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Fail => t.fail += 1,
                Verdict::Inconclusive => t.inconclusive += 1,
            }
        }
        t
    }
}
