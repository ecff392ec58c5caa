use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use sdaut::lowweight::{IsdVariant, SearchBudget};

#[derive(Parser, Debug)]
#[command(name = "sdaut", version, about = "Automorphisms of extremal self-dual [120, 60, 24] codes")]
pub struct Cli {
    /// Root directory for run outputs.
    #[arg(long, global = true, env = "SDAUT_OUT", default_value = "sdaut-out")]
    pub out: PathBuf,

    /// Run directory name under --out (defaults to one derived from the command).
    #[arg(long, global = true)]
    pub name: Option<String>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Cycle types p-(c;f) that survive the lemma filters.
    Types(TypesArgs),
    /// Weight enumerator of an extremal doubly-even self-dual code.
    Enumerator(EnumeratorArgs),
    /// List the named codes in the registry.
    Codes,
    /// The 59-(2;2) candidates.
    #[command(subcommand)]
    P59(P59Command),
    /// Fixed-point placement sweeps for 5-(22;10) and 7-(16;8).
    Sweep(SweepArgs),
    /// Mod-7 weight congruence for the Golay code under 7-(16;8).
    Golay7(Golay7Args),
    /// Fixed and even subcodes of a code under a permutation of prime order.
    Decompose(DecomposeArgs),
    /// Randomized search for a light codeword.
    Lowweight(LowweightArgs),
    /// Lemma table plus sampled case runs: the surviving odd primes.
    Theorem(TheoremArgs),
    /// Rerun the command recorded in a run directory and compare the results.
    Replay(ReplayArgs),
}

impl Command {
    pub fn run_name(&self) -> String {
        match self {
            Command::Types(a) => format!("types-{}-{}", a.n, a.preset),
            Command::Enumerator(a) => format!("enumerator-{}", a.n),
            Command::Codes => "codes".into(),
            Command::P59(P59Command::Orbits(_)) => "p59-orbits".into(),
            Command::P59(P59Command::Check(a)) => format!("p59-check-{}", a.k),
            Command::P59(P59Command::Sample(a)) => format!("p59-sample-{}", a.count),
            Command::P59(P59Command::Sweep(a)) => format!("p59-sweep-{}-{}", a.start, a.end.map_or("end".into(), |e| e.to_string())),
            Command::Sweep(a) => format!("sweep-{}-{}", a.case.label(), a.code.replace(['/', '.'], "_")),
            Command::Golay7(_) => "golay7".into(),
            Command::Decompose(_) => "decompose".into(),
            Command::Lowweight(_) => "lowweight".into(),
            Command::Theorem(_) => "theorem".into(),
            Command::Replay(_) => "replay".into(),
        }
    }
}

/// Checkpointing for long jobs; not part of the recorded configuration.
#[derive(Args, Clone, Debug)]
pub struct ExecArgs {
    /// Checkpoint file (default: checkpoint.json in the run directory).
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint if it exists.
    #[arg(long)]
    pub resume: bool,
    /// Tasks between checkpoints.
    #[arg(long, default_value_t = 100)]
    pub chunk: u64,
    /// Stop after this many tasks, leaving a checkpoint.
    #[arg(long)]
    pub stop_after: Option<u64>,
}

impl Default for ExecArgs {
    fn default() -> Self {
        ExecArgs {
            checkpoint: None,
            resume: false,
            chunk: 100,
            stop_after: None,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    LeeBrickell,
    Stern,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct BudgetArgs {
    /// Iterations per attempt.
    #[arg(long, default_value_t = 20_000)]
    pub iterations: u64,
    /// Information-set weight per iteration.
    #[arg(long, default_value_t = 2)]
    pub window: usize,
    #[arg(long, value_enum, default_value_t = Variant::LeeBrickell)]
    pub variant: Variant,
    /// Attempts per task, each with a fresh seed.
    #[arg(long, default_value_t = 2)]
    pub attempts: u32,
}

impl BudgetArgs {
    pub fn budget(&self, seed: u64) -> SearchBudget {
        SearchBudget {
            max_iterations: self.iterations,
            window_size: self.window,
            seed,
            variant: match self.variant {
                Variant::LeeBrickell => IsdVariant::LeeBrickell,
                Variant::Stern => IsdVariant::Stern,
            },
        }
    }
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct TypesArgs {
    #[arg(long, default_value_t = 120)]
    pub n: u64,
    /// Minimum distance (default: the extremal bound for n).
    #[arg(long)]
    pub d: Option<u64>,
    /// Lemma preset: tabulated (alias paper-table), full, none.
    #[arg(long, default_value = "tabulated")]
    pub preset: String,
    /// Also list every excluded type with its reasons.
    #[arg(long)]
    pub reasons: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct EnumeratorArgs {
    #[arg(long, default_value_t = 120)]
    pub n: usize,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum P59Command {
    /// Doubling orbits on Z_9099507 and the order of δ.
    Orbits(OrbitsArgs),
    /// Build and search the candidate for one exponent k.
    Check(CheckArgs),
    /// Search a uniform sample of orbit representatives.
    Sample(SampleArgs),
    /// Search a range of orbit representatives (all of them by default).
    Sweep(RangeArgs),
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct OrbitsArgs {
    /// Write the representatives, one per line, to representatives.txt.
    #[arg(long)]
    pub write_reps: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct AlphaArgs {
    /// Seed for choosing the primitive element α.
    #[arg(long, default_value_t = sdaut::casesearch::p59::DEFAULT_ALPHA_SEED)]
    pub alpha_seed: u64,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct CheckArgs {
    #[arg(long)]
    pub k: u64,
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub exec: ExecArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct RangeArgs {
    /// First index into the ascending representative list.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// End index (exclusive).
    #[arg(long)]
    pub end: Option<usize>,
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub exec: ExecArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum Case {
    /// p = 5, π(F) a [32, 16, 8] code, 10 fixed points.
    #[value(name = "5-22-10")]
    #[serde(rename = "5-22-10")]
    Five,
    /// p = 7, π(F) a [24, 12] code, 8 fixed points, mod-4 obstruction on.
    #[value(name = "7-16-8")]
    #[serde(rename = "7-16-8")]
    Seven,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Five => "5-22-10",
            Case::Seven => "7-16-8",
        }
    }

    /// `(p, c, f, mod4)`.
    pub fn params(self) -> (usize, usize, usize, bool) {
        match self {
            Case::Five => (5, 22, 10, false),
            Case::Seven => (7, 16, 8, true),
        }
    }
}

/// How the fixed-point subsets are chosen.
#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct PlanArgs {
    /// Number of uniformly random subsets (default 1000).
    #[arg(long, conflicts_with_all = ["all", "fixed"])]
    pub sample: Option<u64>,
    /// Every subset, in blocks of --block.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 4096)]
    pub block: u64,
    /// Explicit fixed coordinates, 1-based and comma-separated; repeatable.
    #[arg(long, conflicts_with = "all")]
    pub fixed: Vec<String>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub case: Case,
    /// Registry name or path of a code file.
    #[arg(long)]
    pub code: String,
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Count placements where this expanded weight occurs.
    #[arg(long)]
    pub track_weight: Option<usize>,
    #[command(flatten)]
    #[serde(skip)]
    pub exec: ExecArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct Golay7Args {
    #[command(flatten)]
    pub plan: PlanArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub exec: ExecArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeArgs {
    /// Registry name or path of a code file.
    #[arg(long)]
    pub code: String,
    /// Permutation as cycles "(1 2 3)(4 5)" or a line of 1-based images.
    #[arg(long, conflicts_with = "perm_file")]
    pub perm: Option<String>,
    /// File holding the permutation in either format.
    #[arg(long)]
    pub perm_file: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct LowweightArgs {
    /// Registry name or path of a code file.
    #[arg(long)]
    pub code: String,
    /// Look for a word of weight below this; without it, search for the minimum.
    #[arg(long)]
    pub target: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct TheoremArgs {
    #[arg(long, default_value_t = 20)]
    pub p59_reps: usize,
    /// Sampled placements per code in the subset sweeps.
    #[arg(long, default_value_t = 1000)]
    pub subsets: u64,
    #[arg(long, default_value_t = 1000)]
    pub golay_subsets: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Run directory holding config.json.
    pub dir: PathBuf,
}
