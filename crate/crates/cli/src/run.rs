use std::io::Read;
use std::path::Path;

use serde::Serialize;
use spexlab::graph::{build_extremal, graph6, ExtremalParams, Graph};
use spexlab::join_series::{f_eval, solve_rho_by_series, MultipartiteSpec, RootSource};
use spexlab::lemmas::{
    balance4_sweep, balance5_sweep, binomial_sum_sweep, check_g_function, crossing_series_sweep,
    linspace, path_shift_sweep, walk_difference_sweep, BalanceSweep, LemmaId, LemmaReport,
    NamedGraph, Tally,
};
use spexlab::spectral::spectral_radius;
use spexlab::spex::{brute_force_spex, restricted_spex_capped, theorem_check_capped, Source, SpexStatus};
use spexlab::walks::{crossing_counts, WalkTable};

use crate::args::{Cli, Command, LemmaSel, RunConfig, SpexArgs, SpexMode, VerifyArgs};
use crate::graphspec::{parse_graph, parse_part};
use crate::report::{emit, Format, ReportError, Stamp};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(spexlab::Error),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<spexlab::Error> for RunError {
    fn from(e: spexlab::Error) -> Self {
        use spexlab::Error as E;
        match e {
            E::InvalidVertex { .. }
            | E::EqualVertices(_)
            | E::Graph6 { .. }
            | E::InvalidParameter(_)
            | E::Hypothesis { .. }
            | E::ScopeExceeded(_)
            | E::InvalidEdit(_)
            | E::EmptyGraph => RunError::Usage(e.to_string()),
            other => RunError::Lib(other),
        }
    }
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Counts that decide the exit status.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub fails: usize,
    pub warnings: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        u8::from(self.fails > 0)
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    stamp: Stamp,
}

impl Ctx<'_> {
    fn emit<R: Serialize>(&self, records: &[R]) -> Result<(), RunError> {
        emit(records, self.cli.global.format, &self.stamp, self.cli.global.out.as_deref())?;
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, RunError> {
    let config = RunConfig {
        global: &cli.global,
        command: &cli.command,
    };
    let ctx = Ctx {
        cli,
        stamp: Stamp::for_config(&config)?,
    };
    match &cli.command {
        Command::Rho { graph6, perron } => rho(&ctx, graph6, *perron),
        Command::Walks {
            graph6,
            max_len,
            from,
            crossing,
        } => walks(&ctx, graph6, *max_len, *from, crossing.as_deref()),
        Command::SeriesRho { parts, x } => series_rho(&ctx, parts, *x),
        Command::Verify(args) => verify(&ctx, args),
        Command::Spex(args) => spex(&ctx, args),
        Command::Construct { n, ell } => {
            let g = build_extremal(&ExtremalParams::new(*n, *ell)?);
            println!("{}", graph6::encode(&g));
            Ok(Outcome::default())
        }
        Command::Manifest => {
            print!("{}", manifest());
            Ok(Outcome::default())
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, RunError> {
    let mut buf = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().lock().read_to_end(&mut buf)?;
    } else {
        buf = std::fs::read(path)?;
    }
    Ok(buf)
}

fn decode(record: &str) -> Result<Graph, RunError> {
    graph6::decode_str(record).map_err(|e| RunError::Usage(format!("{record:?}: {e}")))
}

#[derive(Serialize)]
struct RhoRecord {
    graph6: String,
    order: usize,
    edges: usize,
    rho: f64,
    lower: f64,
    upper: f64,
    residual: f64,
    iterations: usize,
    method: spexlab::spectral::Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    perron: Option<Vec<f64>>,
}

fn rho(ctx: &Ctx, records: &[String], perron: bool) -> Result<Outcome, RunError> {
    let records: Vec<String> = if records.is_empty() {
        String::from_utf8_lossy(&read_input(Path::new("-"))?)
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect()
    } else {
        records.to_vec()
    };
    let mut out = Vec::new();
    for rec in &records {
        let g = decode(rec)?;
        let r = spectral_radius::<f64>(&g, ctx.cli.global.tol)?;
        let (lower, upper) = r.enclosure();
        out.push(RhoRecord {
            graph6: rec.clone(),
            order: g.order(),
            edges: g.edge_count(),
            rho: r.rho,
            lower,
            upper,
            residual: r.residual,
            iterations: r.iterations,
            method: r.method,
            perron: perron.then_some(r.perron),
        });
    }
    ctx.emit(&out)?;
    Ok(Outcome::default())
}

#[derive(Serialize)]
struct WalkRecord {
    length: usize,
    total: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    from: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crossing: Option<String>,
}

fn walks(
    ctx: &Ctx,
    record: &str,
    max_len: usize,
    from: Option<usize>,
    crossing: Option<&[usize]>,
) -> Result<Outcome, RunError> {
    let g = decode(record)?;
    if let Some(u) = from {
        if u >= g.order() {
            return Err(RunError::Usage(format!("vertex {u} out of range for order {}", g.order())));
        }
    }
    let table = WalkTable::compute(&g, max_len, from.is_some());
    let cross = match crossing {
        Some(&[u, v]) => Some(crossing_counts(&g, u, v, max_len)?),
        _ => None,
    };
    let out: Vec<WalkRecord> = (1..=max_len)
        .map(|ell| WalkRecord {
            length: ell,
            total: table.total(ell).to_string(),
            from: from.and_then(|u| table.from_vertex(u, ell)).map(|c| c.to_string()),
            crossing: cross.as_ref().map(|c| c[ell - 1].to_string()),
        })
        .collect();
    ctx.emit(&out)?;
    Ok(Outcome::default())
}

#[derive(Serialize)]
struct SeriesRhoRecord {
    parts: Vec<String>,
    order: usize,
    rho: f64,
    source: RootSource,
    lo: Option<f64>,
    hi: Option<f64>,
    steps: Option<usize>,
    heuristic: bool,
    rho_eigensolve: f64,
}

fn series_rho(ctx: &Ctx, parts: &[String], x: Option<f64>) -> Result<Outcome, RunError> {
    let parsed = parts
        .iter()
        .map(|p| parse_part(p).map_err(RunError::Usage))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = MultipartiteSpec::new(parsed)?;
    let tol = ctx.cli.global.tol;
    if let Some(x) = x {
        ctx.emit(&[f_eval(&spec, x, tol)?])?;
        return Ok(Outcome::default());
    }
    let direct = spectral_radius::<f64>(&spec.realize(), tol)?.rho;
    let record = match solve_rho_by_series(&spec, tol) {
        Ok(root) => SeriesRhoRecord {
            parts: parts.to_vec(),
            order: spec.order(),
            rho: root.rho,
            source: RootSource::Series,
            lo: Some(root.lo),
            hi: Some(root.hi),
            steps: Some(root.steps),
            heuristic: root.heuristic,
            rho_eigensolve: direct,
        },
        Err(spexlab::Error::BracketNotEstablished { .. }) => SeriesRhoRecord {
            parts: parts.to_vec(),
            order: spec.order(),
            rho: direct,
            source: RootSource::Eigensolve,
            lo: None,
            hi: None,
            steps: None,
            heuristic: false,
            rho_eigensolve: direct,
        },
        Err(e) => return Err(e.into()),
    };
    ctx.emit(&[record])?;
    Ok(Outcome::default())
}

fn named(list: &[String]) -> Result<Vec<NamedGraph>, RunError> {
    list.iter().map(|s| parse_graph(s).map_err(RunError::Usage)).collect()
}

pub fn selected_lemmas(sel: &[LemmaSel]) -> Vec<LemmaId> {
    LemmaId::ALL
        .into_iter()
        .filter(|id| sel.iter().any(|s| *s == LemmaSel::All || *s == LemmaSel::One(*id)))
        .collect()
}

pub fn run_lemma(id: LemmaId, args: &VerifyArgs, tol: f64, seed: u64) -> Result<Vec<LemmaReport>, RunError> {
    Ok(match id {
        LemmaId::WalkDifference => walk_difference_sweep(args.n1_max.unwrap_or(12), args.max_len)?,
        LemmaId::BinomialSum => binomial_sum_sweep(args.ell_max, args.n_max)?,
        LemmaId::CrossingSeries => crossing_series_sweep(&args.orders, args.points, args.x_max.unwrap_or(50.0))?,
        LemmaId::GFunction => args
            .which
            .iter()
            .map(|&w| check_g_function(w, &linspace(w.domain_start(), args.x_max.unwrap_or(100.0), args.points)))
            .collect::<Result<_, _>>()?,
        LemmaId::PathShift => path_shift_sweep(args.n1_max.unwrap_or(20), &named(&args.h)?, &named(&args.t)?, tol)?,
        LemmaId::Balance4 => balance4_sweep(&BalanceSweep {
            count: args.count.unwrap_or(50),
            total: args.total.unwrap_or(130),
            seed,
            tol,
        })?,
        LemmaId::Balance5 => balance5_sweep(&BalanceSweep {
            count: args.count.unwrap_or(25),
            total: args.total.unwrap_or(310),
            seed,
            tol,
        })?,
    })
}

fn verify(ctx: &Ctx, args: &VerifyArgs) -> Result<Outcome, RunError> {
    let mut reports = Vec::new();
    for id in selected_lemmas(&args.lemmas) {
        reports.extend(run_lemma(id, args, ctx.cli.global.tol, ctx.cli.global.seed)?);
    }
    ctx.emit(&reports)?;
    let t = Tally::of(&reports);
    eprintln!("verify: {} PASS, {} FAIL, {} INCONCLUSIVE", t.pass, t.fail, t.inconclusive);
    if t.inconclusive > 0 {
        eprintln!("warning: {} inconclusive verdicts", t.inconclusive);
    }
    Ok(Outcome {
        fails: t.fail,
        warnings: t.inconclusive,
    })
}

fn spex(ctx: &Ctx, args: &SpexArgs) -> Result<Outcome, RunError> {
    let report = match (&args.stream, args.mode) {
        (Some(path), _) => {
            let bytes = read_input(path)?;
            brute_force_spex(args.n, args.ell, Source::Graph6Stream(&bytes))?
        }
        (None, SpexMode::Brute) => brute_force_spex(args.n, args.ell, Source::Internal)?,
        (None, SpexMode::Restricted) => restricted_spex_capped(args.n, args.ell, args.max_order)?,
        (None, SpexMode::Theorem) => theorem_check_capped(args.n, args.ell, args.max_order)?,
    };
    match ctx.cli.global.format {
        Format::Json => ctx.emit(&[&report])?,
        Format::Csv if report.leaderboard.is_empty() => {}
        Format::Csv => ctx.emit(&report.leaderboard)?,
    }
    if let Some(path) = &args.leaderboard {
        if !report.leaderboard.is_empty() {
            emit(&report.leaderboard, Format::Csv, &ctx.stamp, Some(path))?;
        }
    }
    eprintln!(
        "spex: {} candidates, {} admissible, {:.3} s",
        report.candidates_examined,
        report.candidates_admissible,
        report.wall_time.as_secs_f64()
    );
    let mut outcome = Outcome::default();
    if report.status == SpexStatus::NoCandidate {
        eprintln!("warning: no admissible candidate");
        outcome.warnings += 1;
    }
    if let Some(m) = report.malformed_records.filter(|&m| m > 0) {
        eprintln!("warning: {m} malformed graph6 records skipped");
        outcome.warnings += 1;
    }
    if report.verification.as_ref().is_some_and(|v| !v.ok()) {
        eprintln!("error: winner failed re-verification");
        outcome.fails += 1;
    }
    Ok(outcome)
}

/// Criterion number, description, CLI command (if any).
pub const MANIFEST: &[(u32, &str, Option<&str>)] = &[
    (1, "walk-difference identity, exact", Some("spexlab verify --lemma walk_difference --n1-max 12 --max-len 12")),
    (2, "binomial-sum bound, exact rationals", Some("spexlab verify --lemma binomial_sum --ell-max 15 --n-max 60")),
    (3, "crossing-walk series bound", Some("spexlab verify --lemma crossing_series --orders 10,25,40 --points 20 --x-max 50")),
    (4, "path-shift sweep", Some("spexlab verify --lemma path_shift --n1-max 20")),
    (5, "four-path balancing at order 130", Some("spexlab verify --lemma balance4 --count 50 --total 130")),
    (6, "five-path balancing at order 310", Some("spexlab verify --lemma balance5 --count 25 --total 310")),
    (7, "series root vs eigensolve on random multipartite joins", Some("spexlab series-rho --part 2 --part 4")),
    (8, "closed-form radii of K_{2,n-2} and stars", Some("spexlab rho --graph6 E]r?")),
    (9, "g-function signs and leading digits", Some("spexlab verify --lemma g_function")),
    (10, "forest-join C_ell test vs generic cycle search", None),
    (11, "brute force contains the restricted search", Some("spexlab spex --mode brute --n 7 --ell 6")),
    (12, "Rayleigh lower bound on single-edge edits", None),
];

pub fn manifest() -> String {
    let mut s = String::new();
    for (k, what, cmd) in MANIFEST {
        s.push_str(&format!("# {k}: {what}\n"));
        if let Some(cmd) = cmd {
            s.push_str(&format!("{cmd}\n"));
        }
        s.push_str(&format!("cargo test --release -p spexlab --test acceptance -- {k}\n"));
    }
    s
}
