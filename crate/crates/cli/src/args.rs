use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ssent", version, about = "Entropy, overlap and Diophantine computations for self-similar systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Garsia entropy, rate bound and dimension bounds of one system.
    Entropy(EntropyArgs),
    /// Evaluate a (λ, τ) grid and write a CSV table.
    Scan(ScanArgs),
    /// Run a seeded lemma sweep and print a JSON summary.
    Lemmas(LemmasArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Ceiling on merged atoms per level.
    #[arg(long)]
    pub atom_limit: Option<usize>,
    /// Ceiling on raw digit strings m^n.
    #[arg(long)]
    pub raw_limit: Option<u128>,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// System description (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanMode {
    /// Every column.
    All,
    EntropyRate,
    OverlapFlag,
    DimUpper,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Forms and weights (JSON); λ and τ in the file are ignored. Defaults to the
    /// three forms (0,0), (1,0), (0,1) with uniform weights.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub n: usize,
    /// λ0:λ1:steps,τ0:τ1:steps with rational endpoints.
    #[arg(long)]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = ScanMode::All)]
    pub mode: ScanMode,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Separation,
    Jensen,
    ValueBound,
    Dimitrov,
    Turan,
    PowerSum,
    Kv,
    ScaleEntropy,
    MonotoneFf,
    RecursionOracle,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random instances; the separation suite is exhaustive and ignores it.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Degree class n for the separation suite.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}
