//! Spectral comparisons of `H ∨ (paths ∪ T)` before and after moving
//! vertices between paths.
//!
//! Both graphs are joins of `H` with forests of equal order, so `ρ_i` is
//! the unique root above `max(ρ(H), ρ(F_i))` of
//!
//! ```text
//! φ_i(x) = 1/(1 + R_H(x)) + 1/(1 + R_{F_i}(x)) − 1,   R_G(x) = 1ᵀ(xI − A_G)⁻¹1,
//! ```
//!
//! and `φ_i` is increasing there. `T` and `H` contribute identically to
//! both, so `φ_1(x) < φ_2(x)` exactly when `D(x) = R_{F_1}(x) − R_{F_2}(x)`
//! is positive, where `D(x) = Σ_k ΔW^k / x^{k+1}` and `ΔW^k` is the exact
//! walk-count difference of the two path systems. The sign of `D` over an
//! enclosure of `ρ_2` therefore orders `ρ_1` and `ρ_2` even when the gap is
//! far below floating-point resolution of an eigensolve.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{Certificate, LemmaId, LemmaReport, NamedGraph, Params, Verdict};
use crate::error::{Error, Result};
use crate::graph::{build_path, disjoint_union, join, Graph, PathPartition};
use crate::spectral::{compare_rho, spectral_radius, Ordering};
use crate::walks::WalkTable;

/// Default solver tolerance for the comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_SERIES_LENGTH: usize = 1024;

/// Replace the paths `before` by `after`; the claim is that
/// `ρ(before) expected ρ(after)`.
#[derive(Clone, Debug)]
pub struct PathMove {
    pub lemma: LemmaId,
    pub before: Vec<usize>,
    pub after: Vec<usize>,
    pub expected: Ordering,
}

/// `D(x)·x^{k0+1}` enclosed over an interval of `x`, where `k0` is the
/// shortest length with a non-zero walk difference.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesCertificate {
    pub ordering: Ordering,
    pub leading_length: usize,
    pub terms: usize,
    pub scaled_lower: f64,
    pub scaled_upper: f64,
}

fn path_totals(parts: &[usize], max_len: usize, cache: &mut HashMap<usize, Vec<BigInt>>) -> Vec<BigInt> {
    let mut sum = vec![BigInt::zero(); max_len];
    for &m in parts.iter().filter(|&&m| m > 0) {
        let row = cache.entry(m).or_insert_with(|| {
            WalkTable::compute(&build_path(m), max_len, false)
                .totals()
                .iter()
                .map(|c| BigInt::from(c.clone()))
                .collect()
        });
        for (s, c) in sum.iter_mut().zip(row.iter()) {
            *s += c;
        }
    }
    sum
}

/// Certifies the sign of `Σ_k (W^k(before) − W^k(after))/x^{k+1}` for every
/// `x` in `[lo, hi]`, with `before` and `after` read as disjoint unions of
/// paths of the given orders.
///
/// Terms past the summed range are bounded with `W^k(P_m) ≤ m 2^k`, which
/// needs `lo > 2`. Returns `None` when the enclosure still contains zero
/// after [`MAX_SERIES_LENGTH`] terms. Identical path multisets give
/// EQUAL_WITHIN_TOL.
///
/// # Errors
/// [`Error::InvalidParameter`] if the two path systems differ in order or
/// the interval is empty.
pub fn walk_difference_sign(
    before: &[usize],
    after: &[usize],
    lo: f64,
    hi: f64,
) -> Result<Option<SeriesCertificate>> {
    let total_b: usize = before.iter().sum();
    let total_a: usize = after.iter().sum();
    if total_a != total_b {
        return Err(Error::InvalidParameter(format!(
            "path systems have different orders {total_b} and {total_a}"
        )));
    }
    if !(lo <= hi) {
        return Err(Error::InvalidParameter(format!("empty interval [{lo}, {hi}]")));
    }
    if PathPartition::new(before.to_vec()).same_forest(&PathPartition::new(after.to_vec())) {
        return Ok(Some(SeriesCertificate {
            ordering: Ordering::EqualWithinTol,
            leading_length: 0,
            terms: 0,
            scaled_lower: 0.0,
            scaled_upper: 0.0,
        }));
    }
    if !(lo > 2.0) {
        return Ok(None);
    }
    let bound_scale = 2.0 * (total_a + total_b) as f64;
    let mut cache_b = HashMap::new();
    let mut cache_a = HashMap::new();
    let mut max_len = 64;
    loop {
        cache_b.clear();
        cache_a.clear();
        let wb = path_totals(before, max_len, &mut cache_b);
        let wa = path_totals(after, max_len, &mut cache_a);
        let diff: Vec<BigInt> = wb.into_iter().zip(wa).map(|(b, a)| b - a).collect();
        if let Some(first) = diff.iter().position(|d| !d.is_zero()) {
            let k0 = first + 1;
            if let Some(cert) = enclose(&diff, k0, lo, hi, bound_scale) {
                return Ok(Some(cert));
            }
        }
        if max_len >= MAX_SERIES_LENGTH {
            return Ok(None);
        }
        max_len *= 2;
    }
}

/// Encloses `Σ_{k ≥ k0} ΔW^k x^{k0−k}` for `x ∈ [lo, hi]`, or `None` if the
/// enclosure contains zero.
fn enclose(diff: &[BigInt], k0: usize, lo: f64, hi: f64, bound_scale: f64) -> Option<SeriesCertificate> {
    let mut lower = 0.0;
    let mut upper = 0.0;
    let mut abs_sum = 0.0;
    let mut last = k0 - 1;
    for k in k0..=diff.len() {
        let d = diff[k - 1].to_f64().unwrap_or(f64::NAN);
        let j = (k - k0) as i32;
        let (near, far) = (lo.powi(-j), hi.powi(-j));
        if !d.is_finite() || far < 1e-290 {
            break;
        }
        let (a, b) = (d * far, d * near);
        lower += a.min(b);
        upper += a.max(b);
        abs_sum += a.abs().max(b.abs());
        last = k;
    }
    let terms = last + 1 - k0;
    if terms == 0 {
        return None;
    }
    // |ΔW^k| ≤ (Σ orders)·2^k, so the scaled tail is at most
    // bound_scale·2^{k0}·q^{last−k0+1}/(1−q) with q = 2/lo
    let q = 2.0 / lo;
    let log_tail = bound_scale.ln() + k0 as f64 * 2f64.ln() + (last + 1 - k0) as f64 * q.ln()
        - (1.0 - q).ln();
    let tail = log_tail.exp();
    let rounding = abs_sum * (terms as f64 + 8.0) * 2.0 * f64::EPSILON;
    let lower = lower - tail - rounding;
    let upper = upper + tail + rounding;
    let ordering = if lower > 0.0 {
        Ordering::Greater
    } else if upper < 0.0 {
        Ordering::Less
    } else {
        return None;
    };
    Some(SeriesCertificate {
        ordering,
        leading_length: k0,
        terms,
        scaled_lower: lower,
        scaled_upper: upper,
    })
}

/// `(R_G(x), R_G'(x))` with `R_G(x) = 1ᵀ(xI − A)⁻¹1`, summed as
/// `Σ_k A^k 1 / x^{k+1}`; `None` if the series does not settle, which
/// happens for `x ≤ ρ(G)`.
pub fn resolvent(g: &Graph, x: f64) -> Option<(f64, f64)> {
    let n = g.order();
    if n == 0 {
        return Some((0.0, 0.0));
    }
    let adj = g.adjacency_lists();
    let mut v = vec![1.0 / x; n];
    let mut y = v.clone();
    for _ in 0..200_000 {
        let next: Vec<f64> = adj.iter().map(|nb| nb.iter().map(|&w| v[w]).sum::<f64>() / x).collect();
        let mass: f64 = next.iter().sum();
        for (yi, ni) in y.iter_mut().zip(&next) {
            *yi += ni;
        }
        v = next;
        let total: f64 = y.iter().sum();
        if !total.is_finite() {
            return None;
        }
        if mass <= 1e-17 * total {
            let r = total;
            let dr = -y.iter().map(|t| t * t).sum::<f64>();
            return Some((r, dr));
        }
    }
    None
}

/// First-order estimate of `ρ_1 − ρ_2` from the series: `D(ρ_2)` divided by
/// `(1 + R_{F_1})² φ_1'(ρ_2)`.
fn series_margin(h: &Graph, f1: &Graph, diff_scaled: f64, k0: usize, x: f64) -> Option<f64> {
    let (rh, drh) = resolvent(h, x)?;
    let (rf, drf) = resolvent(f1, x)?;
    let slope = -drh / ((1.0 + rh) * (1.0 + rh)) - drf / ((1.0 + rf) * (1.0 + rf));
    let log_d = diff_scaled.abs().ln() - (k0 + 1) as f64 * x.ln();
    let log_m = log_d - 2.0 * (1.0 + rf).ln() - slope.ln();
    Some(diff_scaled.signum() * log_m.exp())
}

/// `D(x)·x^{k0+1}` at a single point, for margin estimates.
fn scaled_difference_at(before: &[usize], after: &[usize], k0: usize, terms: usize, x: f64) -> f64 {
    let len = k0 + terms - 1;
    let mut cache = HashMap::new();
    let wb = path_totals(before, len, &mut cache);
    cache.clear();
    let wa = path_totals(after, len, &mut cache);
    (k0..=len)
        .map(|k| (&wb[k - 1] - &wa[k - 1]).to_f64().unwrap_or(0.0) * x.powi(-((k - k0) as i32)))
        .sum()
}

fn forest(paths: &[usize], t: &Graph) -> Graph {
    disjoint_union(&[PathPartition::new(paths.to_vec()).realize(), t.clone()])
}

fn directed(ordering: Ordering, margin: f64) -> f64 {
    if ordering == Ordering::Less {
        -margin
    } else {
        margin
    }
}

/// Compares `ρ(H ∨ (before ∪ T))` with `ρ(H ∨ (after ∪ T))` and reports
/// whether the expected strict ordering holds.
///
/// A certified eigensolve comparison decides first; the walk-difference
/// series is computed as well and a disagreement between the two is a FAIL.
/// When the eigensolve cannot separate the radii, the series alone decides,
/// and the margin is then its first-order estimate. Neither route
/// succeeding gives INCONCLUSIVE.
pub fn verify_path_move(mv: &PathMove, h: &NamedGraph, t: &NamedGraph, tol: f64) -> Result<LemmaReport> {
    let start = Instant::now();
    if h.order() == 0 {
        return Err(Error::InvalidParameter("H must have at least one vertex".into()));
    }
    let f1 = forest(&mv.before, &t.graph);
    let f2 = forest(&mv.after, &t.graph);
    if f1.order() != f2.order() {
        return Err(Error::InvalidParameter("path move must preserve the order".into()));
    }
    let g1 = join(&h.graph, &f1);
    let g2 = join(&h.graph, &f2);
    let cmp = compare_rho(&g1, &g2, tol)?;
    let r2 = spectral_radius(&g2, tol)?;
    let (lo, hi) = r2.enclosure();
    let pad = 1e-12 * hi.max(1.0);
    let series = walk_difference_sign(&mv.before, &mv.after, lo - pad, hi + pad)?;

    let params = Params {
        n: mv.before.clone(),
        h: Some(h.desc()),
        t: Some(t.desc()),
        ..Params::default()
    };
    let eigen_decided = matches!(cmp.ordering, Ordering::Greater | Ordering::Less);
    let series_decided = series
        .as_ref()
        .filter(|c| matches!(c.ordering, Ordering::Greater | Ordering::Less));
    let mut report;
    if eigen_decided {
        let agrees = series_decided.is_none_or(|c| c.ordering == cmp.ordering);
        let verdict = if cmp.ordering == mv.expected && agrees {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        report = LemmaReport::new(mv.lemma, params, verdict, Certificate::Eigensolve);
        report.margin = Some(directed(mv.expected, cmp.margin));
        if !agrees {
            report.detail = Some(format!(
                "eigensolve says {:?} but the walk series says {:?}",
                cmp.ordering,
                series_decided.map(|c| c.ordering)
            ));
        }
    } else if let Some(cert) = series_decided {
        let verdict = if cert.ordering == mv.expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        report = LemmaReport::new(mv.lemma, params, verdict, Certificate::WalkSeries);
        let scaled = scaled_difference_at(&mv.before, &mv.after, cert.leading_length, cert.terms, r2.rho);
        report.margin = series_margin(&h.graph, &f1, scaled, cert.leading_length, r2.rho)
            .map(|m| directed(mv.expected, m));
        report.detail = Some(format!(
            "eigensolve margin {:.3e} is inside its band {:.1e}; walk differences start at length {}",
            cmp.margin, cmp.band, cert.leading_length
        ));
    } else {
        report = LemmaReport::new(mv.lemma, params, Verdict::Inconclusive, Certificate::Eigensolve);
        report.margin = Some(directed(mv.expected, cmp.margin));
        report.detail = Some(format!(
            "eigensolve margin {:.3e} is inside its band {:.1e} and the walk series is undecided",
            cmp.margin, cmp.band
        ));
    }
    report.rho1 = Some(cmp.rho1);
    report.rho2 = Some(cmp.rho2);
    if report.verdict != Verdict::Pass {
        report.attach_graphs(&g1, &g2);
    }
    report.runtime = start.elapsed();
    Ok(report)
}

fn hypothesis(lemma: &'static str, reason: String) -> Error {
    Error::Hypothesis { lemma, reason }
}

/// `ρ(H ∨ (P_{n1} ∪ P_{n2} ∪ T)) > ρ(H ∨ (P_{n1−1} ∪ P_{n2+1} ∪ T))`.
///
/// # Errors
/// [`Error::Hypothesis`] unless `n1 ≥ n2 + 2 ≥ 3` and `|H| ≥ 1`.
pub fn verify_path_shift(n1: usize, n2: usize, h: &NamedGraph, t: &NamedGraph, tol: f64) -> Result<LemmaReport> {
    if n2 + 2 < 3 || n1 < n2 + 2 {
        return Err(hypothesis(
            "path_shift",
            format!("needs n1 >= n2 + 2 >= 3, got n1 = {n1}, n2 = {n2}"),
        ));
    }
    if h.order() == 0 {
        return Err(hypothesis("path_shift", "needs |H| >= 1".into()));
    }
    let mv = PathMove {
        lemma: LemmaId::PathShift,
        before: vec![n1, n2],
        after: vec![n1 - 1, n2 + 1],
        expected: Ordering::Greater,
    };
    verify_path_move(&mv, h, t, tol)
}

fn check_sorted(lemma: &'static str, ns: &[usize]) -> Result<()> {
    if ns.windows(2).any(|w| w[0] < w[1]) || ns.last() == Some(&0) {
        return Err(hypothesis(
            lemma,
            format!("needs non-increasing positive path orders, got {ns:?}"),
        ));
    }
    Ok(())
}

/// `ρ(H ∨ (P_{n1} ∪ … ∪ P_{n4} ∪ T)) < ρ(H ∨ (P_{n1−1} ∪ P_{n2+1} ∪ P_{n3+1} ∪ P_{n4−1} ∪ T))`.
///
/// # Errors
/// [`Error::Hypothesis`] unless `n1 ≥ … ≥ n4 ≥ 1`, `n1 ≥ n2 + 2`,
/// `|H| ≥ 1` and `|T| + Σ n_s ≥ 130`.
pub fn verify_balance4(ns: [usize; 4], h: &NamedGraph, t: &NamedGraph, tol: f64) -> Result<LemmaReport> {
    const LEMMA: &str = "balance4";
    check_sorted(LEMMA, &ns)?;
    let [n1, n2, n3, n4] = ns;
    if n1 < n2 + 2 {
        return Err(hypothesis(LEMMA, format!("needs n1 >= n2 + 2, got {ns:?}")));
    }
    if h.order() == 0 {
        return Err(hypothesis(LEMMA, "needs |H| >= 1".into()));
    }
    let size = t.order() + ns.iter().sum::<usize>();
    if size < 130 {
        return Err(hypothesis(LEMMA, format!("needs |T| + sum >= 130, got {size}")));
    }
    let mv = PathMove {
        lemma: LemmaId::Balance4,
        before: ns.to_vec(),
        after: vec![n1 - 1, n2 + 1, n3 + 1, n4 - 1],
        expected: Ordering::Less,
    };
    verify_path_move(&mv, h, t, tol)
}

/// `ρ(H ∨ (P_{n1} ∪ … ∪ P_{n5} ∪ T)) < ρ(H ∨ (P_{n1−2} ∪ P_{n2+1} ∪ P_{n3+1} ∪ P_{n4+1} ∪ P_{n5−1} ∪ T))`.
///
/// # Errors
/// [`Error::Hypothesis`] unless `n1 ≥ … ≥ n5 ≥ 1`, `n1 ≥ n2 + 3`,
/// `|H| ≥ 1` and `|T| + Σ n_s ≥ 310`.
pub fn verify_balance5(ns: [usize; 5], h: &NamedGraph, t: &NamedGraph, tol: f64) -> Result<LemmaReport> {
    const LEMMA: &str = "balance5";
    check_sorted(LEMMA, &ns)?;
    let [n1, n2, n3, n4, n5] = ns;
    if n1 < n2 + 3 {
        return Err(hypothesis(LEMMA, format!("needs n1 >= n2 + 3, got {ns:?}")));
    }
    if h.order() == 0 {
        return Err(hypothesis(LEMMA, "needs |H| >= 1".into()));
    }
    let size = t.order() + ns.iter().sum::<usize>();
    if size < 310 {
        return Err(hypothesis(LEMMA, format!("needs |T| + sum >= 310, got {size}")));
    }
    let mv = PathMove {
        lemma: LemmaId::Balance5,
        before: ns.to_vec(),
        after: vec![n1 - 2, n2 + 1, n3 + 1, n4 + 1, n5 - 1],
        expected: Ordering::Less,
    };
    verify_path_move(&mv, h, t, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn k(m: usize) -> NamedGraph {
        NamedGraph::complete(m)
    }

    #[test]
    fn path_shift_examples() {
        let r = verify_path_shift(3, 1, &k(1), &NamedGraph::path(0), DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.certificate, Certificate::Eigensolve);
        assert!(r.margin.unwrap() > 0.1);
        let r = verify_path_shift(5, 2, &k(2), &NamedGraph::edgeless(3), DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(verify_path_shift(4, 2, &k(1), &NamedGraph::path(0), DEFAULT_TOL).is_ok());
        assert!(matches!(
            verify_path_shift(3, 2, &k(1), &NamedGraph::path(0), DEFAULT_TOL),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn tiny_margin_is_certified_by_series() {
        // the true gap is about 1e-17
        let r = verify_path_shift(20, 18, &k(1), &NamedGraph::path(0), DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(r.certificate, Certificate::WalkSeries);
        let m = r.margin.unwrap();
        assert!(m > 1e-18 && m < 1e-16, "{m}");
    }

    #[test]
    fn series_sign_matches_eigensolve_when_both_decide() {
        let h = complete(1);
        for (before, after) in [(vec![3, 1], vec![2, 2]), (vec![6, 2, 2, 1], vec![5, 3, 3, 0])] {
            let g1 = join(&h, &PathPartition::new(before.clone()).realize());
            let g2 = join(&h, &PathPartition::new(after.clone()).realize());
            let cmp = compare_rho(&g1, &g2, 1e-12).unwrap();
            let (lo, hi) = spectral_radius::<f64>(&g2, 1e-12).unwrap().enclosure();
            let cert = walk_difference_sign(&before, &after, lo, hi).unwrap().unwrap();
            assert_eq!(cert.ordering, cmp.ordering, "{before:?} -> {after:?}");
        }
    }

    #[test]
    fn identical_systems_are_equal() {
        let c = walk_difference_sign(&[3, 1], &[1, 3], 3.0, 3.0).unwrap().unwrap();
        assert_eq!(c.ordering, Ordering::EqualWithinTol);
        assert!(walk_difference_sign(&[3, 1], &[2, 1], 3.0, 3.0).is_err());
        assert!(walk_difference_sign(&[3, 1], &[2, 2], 1.5, 1.6).unwrap().is_none());
    }

    #[test]
    fn resolvent_of_small_graphs() {
        let (r, dr) = resolvent(&complete(2), 3.0).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
        assert!((dr + 0.5).abs() < 1e-14);
        let (r, _) = resolvent(&crate::graph::empty(4), 2.0).unwrap();
        assert!((r - 2.0).abs() < 1e-15);
        assert!(resolvent(&complete(3), 1.5).is_none());
    }

    #[test]
    fn balance_examples() {
        let r = verify_balance4([3, 1, 1, 1], &k(1), &NamedGraph::edgeless(124), DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.margin.unwrap() > 0.0);
        let r = verify_balance4([10, 3, 3, 2], &k(2), &NamedGraph::edgeless(120), DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(matches!(
            verify_balance4([3, 1, 1, 1], &k(1), &NamedGraph::edgeless(10), DEFAULT_TOL),
            Err(Error::Hypothesis { .. })
        ));
        assert!(verify_balance5([4, 2, 1, 1, 1], &k(1), &NamedGraph::edgeless(302), DEFAULT_TOL).is_err());
    }
}
