//! Exact walk counting and walk-generating series.
//!
//! `w^ℓ(u)` is the number of walks of length `ℓ` (ℓ edges, ℓ+1 vertices)
//! starting at `u`, and `W^ℓ(G) = Σ_u w^ℓ(u)`. A walk *crosses* a vertex if
//! the vertex appears anywhere in its sequence, endpoints included.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Exact walk counts for lengths `1..=max_len`.
#[derive(Clone, Debug)]
pub struct WalkTable {
    totals: Vec<BigUint>,
    per_vertex: Option<Vec<Vec<BigUint>>>,
}

impl WalkTable {
    /// Iterates `w^ℓ = A·w^{ℓ-1}` from the all-ones vector.
    pub fn compute(g: &Graph, max_len: usize, per_vertex: bool) -> Self {
        let adj = g.adjacency_lists();
        let mut current: Vec<BigUint> = vec![BigUint::one(); g.order()];
        let mut totals = Vec::with_capacity(max_len);
        let mut rows = per_vertex.then(|| Vec::with_capacity(max_len));
        for _ in 0..max_len {
            let next: Vec<BigUint> = adj
                .iter()
                .map(|nbrs| nbrs.iter().fold(BigUint::zero(), |acc, &w| acc + &current[w]))
                .collect();
            totals.push(next.iter().sum());
            if let Some(rows) = rows.as_mut() {
                rows.push(next.clone());
            }
            current = next;
        }
        WalkTable {
            totals,
            per_vertex: rows,
        }
    }

    pub fn max_len(&self) -> usize {
        self.totals.len()
    }

    /// `W^ℓ(G)` for `1 ≤ ℓ ≤ max_len`.
    pub fn total(&self, ell: usize) -> &BigUint {
        &self.totals[ell - 1]
    }

    pub fn totals(&self) -> &[BigUint] {
        &self.totals
    }

    /// `w^ℓ(u)`; requires a table built with `per_vertex`.
    pub fn from_vertex(&self, u: usize, ell: usize) -> Option<&BigUint> {
        self.per_vertex.as_ref().map(|rows| &rows[ell - 1][u])
    }
}

fn check_length(ell: usize) -> Result<()> {
    if ell == 0 {
        Err(Error::InvalidParameter("walk length must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `W^ℓ(G)`.
pub fn walk_count_total(g: &Graph, ell: usize) -> Result<BigUint> {
    check_length(ell)?;
    Ok(WalkTable::compute(g, ell, false).total(ell).clone())
}

/// `w^ℓ_G(u)`.
pub fn walk_count_from(g: &Graph, u: usize, ell: usize) -> Result<BigUint> {
    check_length(ell)?;
    g.check_vertex(u)?;
    Ok(WalkTable::compute(g, ell, true)
        .from_vertex(u, ell)
        .expect("per-vertex table")
        .clone())
}

/// `W^ℓ_{u,v}(G)` for `ℓ = 1..=max_len`, by inclusion–exclusion over
/// `G`, `G−u`, `G−v` and `G−u−v`.
pub fn crossing_counts(g: &Graph, u: usize, v: usize, max_len: usize) -> Result<Vec<BigUint>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::EqualVertices(u));
    }
    let all = WalkTable::compute(g, max_len, false);
    let no_u = WalkTable::compute(&g.without_vertices(&[u]), max_len, false);
    let no_v = WalkTable::compute(&g.without_vertices(&[v]), max_len, false);
    let neither = WalkTable::compute(&g.without_vertices(&[u, v]), max_len, false);
    Ok((1..=max_len)
        .map(|l| {
            let count = BigInt::from(all.total(l).clone()) - BigInt::from(no_u.total(l).clone())
                - BigInt::from(no_v.total(l).clone())
                + BigInt::from(neither.total(l).clone());
            count.to_biguint().expect("inclusion-exclusion count is non-negative")
        })
        .collect())
}

/// `W^ℓ_{u,v}(G)`: walks of length `ℓ` visiting both `u` and `v`.
pub fn walk_count_crossing(g: &Graph, u: usize, v: usize, ell: usize) -> Result<BigUint> {
    check_length(ell)?;
    Ok(crossing_counts(g, u, v, ell)?.pop().expect("ell >= 1"))
}

/// Every walk of length `ell` as a vertex sequence. Test oracle; limited to
/// `n ≤ 8` and `ell ≤ 8`.
pub fn enumerate_walks_oracle(g: &Graph, ell: usize) -> Result<Vec<Vec<usize>>> {
    if g.order() > 8 || ell > 8 {
        return Err(Error::ScopeExceeded(format!(
            "walk enumeration limited to n <= 8 and ell <= 8 (got n = {}, ell = {ell})",
            g.order()
        )));
    }
    let mut walks: Vec<Vec<usize>> = (0..g.order()).map(|u| vec![u]).collect();
    for _ in 0..ell {
        walks = walks
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                g.neighbors(last)
                    .map(|x| {
                        let mut next = w.clone();
                        next.push(x);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    Ok(walks)
}

/// A truncated evaluation of `Σ_{k≥1} W^k(G)/x^k`.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesEval<T> {
    pub x: T,
    /// Number of terms summed.
    pub terms: usize,
    pub partial_sum: T,
    /// Bound on the omitted remainder. Rigorous unless `heuristic`.
    pub tail_bound: T,
    pub converged: bool,
    /// Set when `x ≤ Δ(G)` and the tail was estimated from observed decay.
    pub heuristic: bool,
}

impl<T: Scalar> SeriesEval<T> {
    /// Upper end of the enclosure `[partial, partial + tail]`.
    pub fn upper(&self) -> T {
        self.partial_sum + self.tail_bound
    }
}

/// Hard cap on series length.
pub const MAX_SERIES_TERMS: usize = 200_000;
const RATIO_WINDOW: usize = 32;

/// Evaluates `Σ_{k≥1} W^k(G)/x^k` to within `tol`.
///
/// For `x > Δ(G)` the tail is bounded by `n (Δ/x)^{K+1} / (1 − Δ/x)` from
/// `W^k ≤ n Δ^k`. For `x ≤ Δ(G)` the terms are summed until a ratio test over
/// the last window certifies geometric decay; the result is then flagged
/// heuristic, and `converged` is false if decay never sets in.
pub fn walk_series<T: Scalar>(g: &Graph, x: T, tol: T) -> Result<SeriesEval<T>> {
    if !(x > T::zero()) || !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "walk_series needs x > 0 and tol > 0 (x = {x}, tol = {tol})"
        )));
    }
    let n = T::of_usize(g.order());
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(SeriesEval {
            x,
            terms: 0,
            partial_sum: T::zero(),
            tail_bound: T::zero(),
            converged: true,
            heuristic: false,
        });
    }
    let adj = g.adjacency_lists();
    let inv_x = T::one() / x;
    let mut v = vec![T::one(); g.order()];
    let mut step = move || {
        let next: Vec<T> = adj
            .iter()
            .map(|nbrs| nbrs.iter().map(|&w| v[w]).sum::<T>() * inv_x)
            .collect();
        v = next;
        v.iter().copied().sum::<T>()
    };

    let delta_t = T::of_usize(delta);
    if x > delta_t {
        let q = delta_t / x;
        // smallest K with n q^{K+1} / (1 - q) <= tol
        let needed = ((tol * (T::one() - q) / n).ln() / q.ln() - T::one()).ceil();
        let k_max = needed.max(T::one()).to_usize().unwrap_or(usize::MAX);
        if k_max <= MAX_SERIES_TERMS {
            let partial: T = (0..k_max).map(|_| step()).sum();
            let tail = n * q.powi(k_max as i32 + 1) / (T::one() - q);
            return Ok(SeriesEval {
                x,
                terms: k_max,
                partial_sum: partial,
                tail_bound: tail,
                converged: tail <= tol,
                heuristic: false,
            });
        }
    }

    // Ratio-test regime.
    let mut terms: Vec<T> = Vec::new();
    let mut partial = T::zero();
    while terms.len() < MAX_SERIES_TERMS {
        let t = step();
        if !t.is_finite() {
            break;
        }
        partial = partial + t;
        terms.push(t);
        let k = terms.len();
        if k < 2 * RATIO_WINDOW + 2 {
            continue;
        }
        let mut q = T::zero();
        for j in k - RATIO_WINDOW..k {
            if terms[j - 2] > T::zero() {
                q = q.max((terms[j] / terms[j - 2]).sqrt());
            }
        }
        if q >= T::one() {
            if k >= 1024 {
                break;
            }
            continue;
        }
        let q2 = q * q;
        let tail = (terms[k - 1] + terms[k - 2]) * q2 / (T::one() - q2);
        if tail <= tol {
            return Ok(SeriesEval {
                x,
                terms: k,
                partial_sum: partial,
                tail_bound: tail,
                converged: true,
                heuristic: true,
            });
        }
    }
    Ok(SeriesEval {
        x,
        terms: terms.len(),
        partial_sum: partial,
        tail_bound: T::infinity(),
        converged: false,
        heuristic: true,
    })
}
