use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiment::Scenario;
use crate::report::Format;

const ENV_HELP: &str = "\
Every flag can also be set through an environment variable named TTILE_ plus
the flag in upper case with dashes as underscores, e.g. TTILE_FORMAT=csv,
TTILE_BUDGET_NODES=100000, TTILE_JOBS=4. Flags on the command line win.

Exit codes: 0 solved or verified, 1 certified infeasible, 2 unknown (budget
exhausted, rejected certificate, failed experiment), 64 usage or input error.";

#[derive(Debug, Parser)]
#[command(name = "ttile", version, about = "Exact and fractional T-tilings of 3-graphs", after_help = ENV_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true, env = "TTILE_OUTPUT")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "TTILE_FORMAT")]
    pub format: Format,
    /// Add wall-clock times to reports (they are then no longer reproducible).
    #[arg(long, global = true, env = "TTILE_TIMING")]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Count or list the copies of T.
    Copies(CopiesArgs),
    /// Perfect or maximum T-tiling; perfect matching of a 5-graph.
    Tile(TileArgs),
    /// Perfect fractional tiling or Farkas certificate; pair-weight minimax.
    Frac(FracArgs),
    /// Verify a Farkas certificate.
    Certify(CertifyArgs),
    /// Search for a sparse ⌊3n/5⌋-subset.
    Extremal(ExtremalArgs),
    /// Good and bad pairs of a subset, or the X / matching pipeline.
    Pairs(PairsArgs),
    /// Count sets linking two vertices.
    Linked(LinkedArgs),
    /// Abundant index vectors and lattice membership.
    Lattice(LatticeArgs),
    /// Perfect rainbow tiling, or a colour covering homomorphism.
    Rainbow(RainbowArgs),
    /// Run named acceptance scenarios.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph text file or JSON instance spec; `-` for standard input.
    #[arg(long, short, env = "TTILE_INPUT")]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    HExt,
    Complete,
    Tripartite,
    RandomCodegree,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, required_unless_present = "spec", conflicts_with = "spec")]
    pub kind: Option<GenKind>,
    /// JSON instance spec, inline or as a file path.
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Part sizes for `tripartite`, e.g. `3,3,3`.
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub delta_floor: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, env = "TTILE_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CopiesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Report only the number of copies.
    #[arg(long)]
    pub count: bool,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Search node limit; exhausting it reports `unknown`.
    #[arg(long, env = "TTILE_BUDGET_NODES")]
    pub budget_nodes: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TileArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, conflicts_with_all = ["max", "five"])]
    pub perfect: bool,
    #[arg(long, conflicts_with = "five")]
    pub max: bool,
    /// The input is a 5-graph; find a perfect matching.
    #[arg(long)]
    pub five: bool,
    /// With `--five`: five vertex classes for the degree test, e.g. `0,1;2,3;...`.
    #[arg(long, requires = "five")]
    pub parts: Option<String>,
    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Debug, Args)]
pub struct FracArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Forbidden pairs, one `u v` per line.
    #[arg(long, env = "TTILE_AVOID", conflicts_with = "minimax")]
    pub avoid: Option<PathBuf>,
    /// Minimise the largest pair weight over perfect fractional tilings.
    #[arg(long)]
    pub minimax: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Certificate JSON, bare or inside a `frac` report.
    #[arg(long, env = "TTILE_CERTIFICATE")]
    pub certificate: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, env = "TTILE_GAMMA")]
    pub gamma: String,
    /// Seeded local search instead of the exhaustive scan.
    #[arg(long, requires = "seed")]
    pub heuristic: bool,
    #[arg(long, env = "TTILE_SEED")]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = ttile_core::structure::HEURISTIC_RESTARTS)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct PairsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// The subset S, e.g. `0,1,2,3,4,5`.
    #[arg(long)]
    pub subset: String,
    #[arg(long, env = "TTILE_GAMMA")]
    pub gamma: String,
    /// Also build X, A, B and the matching.
    #[arg(long)]
    pub pipeline: bool,
    /// Constant c in the threshold c·n² for X (default 1/50).
    #[arg(long, requires = "pipeline")]
    pub constant: Option<String>,
}

#[derive(Debug, Args)]
pub struct LinkedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub u: usize,
    #[arg(long)]
    pub v: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long)]
    pub eta: Option<String>,
    /// Samples drawn when r > 2.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    /// Required when r > 2.
    #[arg(long, env = "TTILE_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Graph whose abundant index vectors generate the lattice.
    #[arg(long, short, env = "TTILE_INPUT", conflicts_with = "generators")]
    pub input: Option<PathBuf>,
    /// Explicit generators instead of a graph, e.g. `3,2;2,3`.
    #[arg(long)]
    pub generators: Option<String>,
    /// Ordered partition, e.g. `0,1,2;3,4,5`.
    #[arg(long, conflicts_with = "split")]
    pub parts: Option<String>,
    /// Partition into the first `k` vertices and the rest.
    #[arg(long)]
    pub split: Option<usize>,
    #[arg(long, env = "TTILE_MU")]
    pub mu: Option<String>,
    /// Also look for a transferral pair of index vectors.
    #[arg(long, env = "TTILE_PSI")]
    pub psi: Option<String>,
    /// Vector to test for membership; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub query: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RainbowArgs {
    /// Colour graphs separated by `---`, or a `rainbow_family` spec.
    #[arg(long, short, env = "TTILE_INPUT", required_unless_present = "covering")]
    pub input: Option<PathBuf>,
    /// Find a colour covering homomorphism of `--first` and `--second`.
    #[arg(long, requires_all = ["first", "second"], conflicts_with = "input")]
    pub covering: bool,
    #[arg(long)]
    pub first: Option<PathBuf>,
    #[arg(long)]
    pub second: Option<PathBuf>,
    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Scenario to run; repeatable, all when omitted.
    #[arg(long, value_enum)]
    pub scenario: Vec<Scenario>,
    /// Offset for every seed in the scenario corpora.
    #[arg(long, env = "TTILE_SEED")]
    pub seed: u64,
    #[arg(long, env = "TTILE_JOBS")]
    pub jobs: Option<usize>,
}
