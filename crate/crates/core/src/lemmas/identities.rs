use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Certificate, LemmaId, LemmaReport, Params, Verdict};
use crate::error::{Error, Result};
use crate::graph::build_path;
use crate::walks::{crossing_counts, WalkTable};

fn binomials(n: usize, upto: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(upto + 1);
    let mut c = BigUint::one();
    for i in 0..=upto {
        row.push(c.clone());
        c = c * (n - i) / (i + 1);
    }
    row
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(5/4) n^ℓ/ℓ! − Σ_{i≤ℓ} C(n,i)` as an exact rational.
fn binomial_slack(n: usize, ell: usize) -> BigRational {
    let lhs: BigUint = binomials(n, ell).into_iter().sum();
    let rhs = BigRational::new(
        (BigUint::from(5u8) * BigUint::from(n).pow(ell as u32)).into(),
        (BigUint::from(4u8) * factorial(ell)).into(),
    );
    rhs - BigRational::from_integer(lhs.into())
}

fn binomial_hypothesis(n: usize, ell: usize) -> Result<()> {
    if n < 4 * ell {
        return Err(Error::Hypothesis {
            lemma: "binomial_sum",
            reason: format!("needs n >= 4*ell, got n = {n}, ell = {ell}"),
        });
    }
    Ok(())
}

/// Exact test of `Σ_{i≤ℓ} C(n,i) ≤ (5/4) n^ℓ/ℓ!`.
///
/// # Errors
/// [`Error::Hypothesis`] when `n < 4ℓ`.
pub fn binomial_sum_holds(n: usize, ell: usize) -> Result<bool> {
    binomial_hypothesis(n, ell)?;
    Ok(!binomial_slack(n, ell).is_negative())
}

/// [`binomial_sum_holds`] as a report; the margin is the exact slack
/// rounded to `f64`.
pub fn check_binomial_sum(n: usize, ell: usize) -> Result<LemmaReport> {
    let start = Instant::now();
    binomial_hypothesis(n, ell)?;
    let slack = binomial_slack(n, ell);
    let verdict = if slack.is_negative() {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let params = Params {
        n: vec![n],
        ell: Some(ell),
        ..Params::default()
    };
    let mut report = LemmaReport::new(LemmaId::BinomialSum, params, verdict, Certificate::Exact);
    report.margin = slack.to_f64();
    report.runtime = start.elapsed();
    Ok(report)
}

/// Compares `W^ℓ(P_{n1} ∪ P_{n2}) − W^ℓ(P_{n1−1} ∪ P_{n2+1})` with
/// `W^ℓ_{u_1, u_{n2+2}}(P_{n1})` as exact integers for `1 ≤ ℓ ≤ max_len`.
///
/// Besides the usual `n1 ≥ n2 + 2 ≥ 3`, `n2 = 0` is accepted as a probe.
///
/// # Errors
/// [`Error::Hypothesis`] unless `n1 ≥ 3` and `n1 ≥ n2 + 2`.
pub fn check_walk_difference(n1: usize, n2: usize, max_len: usize) -> Result<LemmaReport> {
    let start = Instant::now();
    if n1 < 3 || n1 < n2 + 2 {
        return Err(Error::Hypothesis {
            lemma: "walk_difference",
            reason: format!("needs n1 >= n2 + 2 and n1 >= 3, got n1 = {n1}, n2 = {n2}"),
        });
    }
    let totals = |m: usize| -> Vec<BigUint> {
        if m == 0 {
            vec![BigUint::zero(); max_len]
        } else {
            WalkTable::compute(&build_path(m), max_len, false).totals().to_vec()
        }
    };
    let (a1, a2, b1, b2) = (totals(n1), totals(n2), totals(n1 - 1), totals(n2 + 1));
    let crossing = crossing_counts(&build_path(n1), 0, n2 + 1, max_len)?;
    let mismatch = (0..max_len).find(|&i| &a1[i] + &a2[i] != &b1[i] + &b2[i] + &crossing[i]);
    let verdict = if mismatch.is_some() {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let params = Params {
        n: vec![n1, n2],
        ell: Some(max_len),
        ..Params::default()
    };
    let mut report = LemmaReport::new(LemmaId::WalkDifference, params, verdict, Certificate::Exact);
    if let Some(i) = mismatch {
        report.detail = Some(format!(
            "length {}: difference {} vs crossing count {}",
            i + 1,
            num_bigint::BigInt::from(&a1[i] + &a2[i]) - num_bigint::BigInt::from(&b1[i] + &b2[i]),
            crossing[i]
        ));
    }
    report.runtime = start.elapsed();
    Ok(report)
}

/// Closed-form bound `10x/(x−1)·e^{2d/x²} + 32/(x−4)`, i.e. the bound on
/// the crossing series multiplied by `x^d`.
fn crossing_bound_scaled(x: f64, d: usize) -> f64 {
    10.0 * x / (x - 1.0) * (2.0 * d as f64 / (x * x)).exp() + 32.0 / (x - 4.0)
}

/// Checks `Σ_{s≥1} W^s_{u,v}(P_n)/x^s ≤ x^{−d}(10x/(x−1) e^{2d/x²} + 32/(x−4))`
/// for every pair `u, v` at distance `d` and every `x` in the grid.
///
/// Both sides are scaled by `x^d`. The left side is summed exactly up to a
/// truncation length, then bounded above using `W^s_{u,v}(P_n) ≤ 2^s n`.
/// The margin is the smallest relative slack `(rhs − lhs)/rhs`.
///
/// # Errors
/// [`Error::Hypothesis`] unless `n ≥ 3`, `2 ≤ d ≤ n − 1` and every grid
/// point is at least `max(√n, 5)`.
pub fn check_crossing_series(n: usize, dist: usize, x_grid: &[f64]) -> Result<LemmaReport> {
    let start = Instant::now();
    let hyp = |reason: String| Error::Hypothesis {
        lemma: "crossing_series",
        reason,
    };
    if n < 3 || dist < 2 || dist > n - 1 {
        return Err(hyp(format!("needs n >= 3 and 2 <= d <= n-1, got n = {n}, d = {dist}")));
    }
    let x_min = (n as f64).sqrt().max(5.0);
    if let Some(&x) = x_grid.iter().find(|&&x| !(x >= x_min)) {
        return Err(hyp(format!("grid point {x} is below max(sqrt(n), 5) = {x_min}")));
    }
    if x_grid.is_empty() {
        return Err(Error::InvalidParameter("empty x grid".into()));
    }

    // s − d terms past the distance keep the tail below 1e-12 of the bound
    // at the smallest admissible x = 5: n 2^d (0.4)^j / 0.6
    let nf = n as f64;
    let extra = ((nf * 2f64.powi(dist as i32) / 0.6 / 1e-12).ln() / 2.5f64.ln()).ceil() as usize + 1;
    let max_len = dist + extra;
    let path = build_path(n);
    let mut min_slack = f64::INFINITY;
    let mut worst = None;
    for u in 0..n - dist {
        let v = u + dist;
        let counts = crossing_counts(&path, u, v, max_len)?;
        let counts: Vec<f64> = counts.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        for &x in x_grid {
            // Σ_{s ≤ max_len} W^s / x^{s−d}
            let mut lhs = 0.0;
            let mut abs_sum = 0.0;
            for (i, &c) in counts.iter().enumerate() {
                let s = i + 1;
                let t = if s < dist { c * x.powi((dist - s) as i32) } else { c / x.powi((s - dist) as i32) };
                lhs += t;
                abs_sum += t.abs();
            }
            let q = 2.0 / x;
            let tail = nf * 2f64.powi(dist as i32) * q.powi((max_len - dist + 1) as i32) / (1.0 - q);
            let rounding = abs_sum * (max_len as f64 + 4.0) * f64::EPSILON;
            let lhs_upper = lhs + tail + rounding;
            let rhs = crossing_bound_scaled(x, dist) * (1.0 - 4.0 * f64::EPSILON);
            let slack = (rhs - lhs_upper) / rhs;
            if slack < min_slack {
                min_slack = slack;
                worst = Some((u, v, x, lhs_upper, rhs));
            }
        }
    }
    let verdict = if min_slack >= 0.0 { Verdict::Pass } else { Verdict::Fail };
    let params = Params {
        n: vec![n],
        dist: Some(dist),
        x: x_grid.to_vec(),
        ..Params::default()
    };
    let mut report = LemmaReport::new(LemmaId::CrossingSeries, params, verdict, Certificate::Bounded);
    report.margin = Some(min_slack);
    if verdict == Verdict::Fail {
        let (u, v, x, l, r) = worst.expect("grid is non-empty");
        report.detail = Some(format!("u = {u}, v = {v}, x = {x}: scaled lhs {l} > rhs {r}"));
    }
    report.runtime = start.elapsed();
    Ok(report)
}

/// The two auxiliary functions whose negativity closes the balancing
/// arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GFunction {
    /// `8.5 + 7.5/(x−1) + 16/(x−4) − x`, domain `x ≥ √130`.
    Balance4,
    /// `14 + 15/(x−1) + 32/(x−4) − x`, domain `x ≥ √310`.
    Balance5,
}

impl GFunction {
    pub fn domain_start(self) -> f64 {
        match self {
            GFunction::Balance4 => 130f64.sqrt(),
            GFunction::Balance5 => 310f64.sqrt(),
        }
    }
}

impl std::fmt::Display for GFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GFunction::Balance4 => "balance4",
            GFunction::Balance5 => "balance5",
        })
    }
}

impl std::str::FromStr for GFunction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "balance4" => Ok(GFunction::Balance4),
            "balance5" => Ok(GFunction::Balance5),
            _ => Err(format!("unknown g function {s:?}; expected balance4 or balance5")),
        }
    }
}

pub fn g_value(which: GFunction, x: f64) -> f64 {
    match which {
        GFunction::Balance4 => 8.5 + 7.5 / (x - 1.0) + 16.0 / (x - 4.0) - x,
        GFunction::Balance5 => 14.0 + 15.0 / (x - 1.0) + 32.0 / (x - 4.0) - x,
    }
}

/// PASS iff `g < 0` at every grid point and `g` strictly decreases along the
/// sorted grid. The margin is `−max g`.
///
/// # Errors
/// [`Error::Hypothesis`] for grid points below the domain start.
pub fn check_g_function(which: GFunction, x_grid: &[f64]) -> Result<LemmaReport> {
    let start = Instant::now();
    // the domain starts at an irrational point; allow the rounded endpoint
    let lo = which.domain_start() * (1.0 - 1e-15);
    if let Some(&x) = x_grid.iter().find(|&&x| !(x >= lo)) {
        return Err(Error::Hypothesis {
            lemma: "g_function",
            reason: format!("grid point {x} is below {}", which.domain_start()),
        });
    }
    if x_grid.is_empty() {
        return Err(Error::InvalidParameter("empty x grid".into()));
    }
    let mut xs = x_grid.to_vec();
    xs.sort_by(f64::total_cmp);
    let gs: Vec<f64> = xs.iter().map(|&x| g_value(which, x)).collect();
    let max_g = gs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let decreasing = gs.windows(2).all(|w| w[1] < w[0]);
    let verdict = if max_g < 0.0 && decreasing {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let params = Params {
        x: xs,
        g_function: Some(which),
        ..Params::default()
    };
    let mut report = LemmaReport::new(LemmaId::GFunction, params, verdict, Certificate::Bounded);
    report.margin = Some(-max_g);
    if !decreasing {
        report.detail = Some("g is not strictly decreasing on the grid".into());
    }
    report.runtime = start.elapsed();
    Ok(report)
}
