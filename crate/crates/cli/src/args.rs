use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spexlab::lemmas::{GFunction, LemmaId};

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "spexlab", version, about = "Spectral radius toolkit for joins with linear forests")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct Global {
    /// Solver tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "SPEXLAB_JOBS")]
    #[serde(skip)]
    pub jobs: Option<usize>,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Report path (default: stdout).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Spectral radius of graph6 records (from --graph6 or stdin).
    Rho {
        #[arg(long)]
        graph6: Vec<String>,
        /// Include the Perron vector.
        #[arg(long)]
        perron: bool,
    },
    /// Exact walk counts of a graph6 record.
    Walks {
        #[arg(long)]
        graph6: String,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Also count walks starting at this vertex.
        #[arg(long)]
        from: Option<usize>,
        /// Also count walks visiting both vertices.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        crossing: Option<Vec<usize>>,
    },
    /// Spectral radius of a complete multipartite join from the series root.
    SeriesRho {
        /// A part: SIZE, GRAPH or SIZE:GRAPH (repeat, at least twice).
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
        /// Evaluate the fixed-point function at x instead of solving.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Run lemma checks; one JSON line per parameter tuple.
    Verify(VerifyArgs),
    /// Search for the spectral extremal C_ell-free planar graph.
    Spex(SpexArgs),
    /// Print the graph6 of the conjectured extremal graph.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Print the commands reproducing every acceptance criterion.
    Manifest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaSel {
    All,
    One(LemmaId),
}

fn parse_lemma(s: &str) -> Result<LemmaSel, String> {
    if s == "all" {
        Ok(LemmaSel::All)
    } else {
        s.parse().map(LemmaSel::One)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Check ids, comma separated, or `all`.
    #[arg(long = "lemma", required = true, value_delimiter = ',', value_parser = parse_lemma)]
    pub lemmas: Vec<LemmaSel>,
    /// Largest n1 (walk_difference: 12, path_shift: 20).
    #[arg(long)]
    pub n1_max: Option<usize>,
    /// Longest walk length for walk_difference.
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,
    #[arg(long, default_value_t = 15)]
    pub ell_max: usize,
    #[arg(long, default_value_t = 60)]
    pub n_max: usize,
    /// Path orders for crossing_series.
    #[arg(long, value_delimiter = ',', default_values_t = [10, 25, 40])]
    pub orders: Vec<usize>,
    /// Grid points for crossing_series and g_function.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Right end of the x grid (crossing_series: 50, g_function: 100).
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [GFunction::Balance4, GFunction::Balance5])]
    pub which: Vec<GFunction>,
    /// Hub graphs for path_shift.
    #[arg(long, value_delimiter = ',', default_values_t = ["K1".to_string(), "K2".to_string()])]
    pub h: Vec<String>,
    /// Filler graphs for path_shift.
    #[arg(long, value_delimiter = ',', default_values_t = ["P0".to_string(), "Kbar5".to_string(), "P5".to_string()])]
    pub t: Vec<String>,
    /// Sampled tuples for the balancing checks (balance4: 50, balance5: 25).
    #[arg(long)]
    pub count: Option<usize>,
    /// |T| + sum of path orders (balance4: 130, balance5: 310).
    #[arg(long)]
    pub total: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpexMode {
    Restricted,
    Brute,
    Theorem,
}

#[derive(Args, Debug, Serialize)]
pub struct SpexArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = SpexMode::Theorem)]
    pub mode: SpexMode,
    /// Brute force over a graph6 stream (`-` for stdin) instead of enumerating.
    #[arg(long)]
    pub stream: Option<PathBuf>,
    /// Largest order for the restricted search.
    #[arg(long, default_value_t = spexlab::spex::RESTRICTED_MAX_ORDER)]
    pub max_order: usize,
    /// Also write the CSV leaderboard here.
    #[arg(long)]
    #[serde(skip)]
    pub leaderboard: Option<PathBuf>,
}

/// Everything that determines a report's content; hashed into each record.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    #[serde(flatten)]
    pub global: &'a Global,
    pub command: &'a Command,
}
