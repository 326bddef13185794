use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use attndisco::CkyScoreVariant;

#[derive(Debug, Parser)]
#[command(
    name = "attndisco",
    version,
    about = "Induce discourse trees from transformer attention matrices and evaluate them"
)]
pub struct Cli {
    /// Worker threads for batch commands (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Induce trees from attention documents.
    Parse(ParseArgs),
    /// Score predicted trees against gold trees.
    Eval(EvalArgs),
    /// Score every (layer, head) combination into a CSV grid.
    Sweep(SweepArgs),
    /// Random-matrix baseline scores against a gold file.
    Baseline(BaselineArgs),
    /// Binarize gold trees and/or convert them to dependencies.
    Convert(ConvertArgs),
    /// Structural statistics of dependency trees.
    Stats(StatsArgs),
    /// Certify the parsers against brute-force enumeration oracles.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Cky,
    Eisner,
    Cle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstraintArg {
    None,
    Sentence,
    Paragraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Parseval,
    Uas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportArg {
    Micro,
    Macro,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    DivideAll,
    DivideAverages,
}

impl From<VariantArg> for CkyScoreVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::DivideAll => CkyScoreVariant::DivideAll,
            VariantArg::DivideAverages => CkyScoreVariant::DivideAverages,
        }
    }
}

/// Attention-source selection shared by parse and sweep.
#[derive(Debug, Args)]
pub struct SelectorArgs {
    /// Layer to read (0-based).
    #[arg(long, default_value_t = 0)]
    pub layer: usize,

    /// Single head to read (0-based); mutually exclusive with --avg-heads.
    #[arg(long, conflicts_with = "avg_heads")]
    pub head: Option<usize>,

    /// Average all heads of the layer (the default when --head is absent).
    #[arg(long)]
    pub avg_heads: bool,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    /// Document JSON file or directory of them.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum)]
    pub algo: Algo,

    #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
    pub constraint: ConstraintArg,

    #[command(flatten)]
    pub selector: SelectorArgs,

    /// Scoring variant for the constituency chart.
    #[arg(long, value_enum, default_value_t = VariantArg::DivideAll)]
    pub cky_score_variant: VariantArg,

    /// Output tree file (bracketed for cky, TSV for eisner/cle).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub pred: PathBuf,

    #[arg(long)]
    pub gold: PathBuf,

    #[arg(long, value_enum)]
    pub metric: MetricArg,

    #[arg(long, value_enum, default_value_t = ReportArg::Both)]
    pub report: ReportArg,

    /// Optional per-document CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum)]
    pub algo: Algo,

    #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
    pub constraint: ConstraintArg,

    #[arg(long)]
    pub gold: PathBuf,

    #[arg(long, value_enum)]
    pub metric: MetricArg,

    #[arg(long, value_enum, default_value_t = VariantArg::DivideAll)]
    pub cky_score_variant: VariantArg,

    /// Output CSV (`layer,head,score`).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    /// Gold tree file supplying document sizes and the scoring target.
    #[arg(long)]
    pub gold: PathBuf,

    #[arg(long, value_enum)]
    pub algo: Algo,

    #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
    pub constraint: ConstraintArg,

    /// Documents directory supplying segmentation (required for sentence or
    /// paragraph constraints; gold tree files carry no sentence boundaries).
    #[arg(long)]
    pub docs: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = VariantArg::DivideAll)]
    pub cky_score_variant: VariantArg,

    /// Number of random runs.
    #[arg(long, default_value_t = 10)]
    pub runs: u64,

    #[arg(long, env = "ATTNDISCO_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Right-branching binarization of n-ary trees and forests.
    #[arg(long)]
    pub binarize: bool,

    /// Convert (binary, fully labeled) trees into dependency blocks.
    #[arg(long)]
    pub to_dep: bool,

    #[arg(long)]
    pub input: PathBuf,

    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Dependency tree file to measure.
    #[arg(long)]
    pub trees: PathBuf,

    /// Optional gold dependency file; adds the locality report.
    #[arg(long)]
    pub gold: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Random matrices per size.
    #[arg(long, default_value_t = 200)]
    pub cases: u64,

    /// Largest document size to certify (capped at 8 for the constituency
    /// chart, 7 for the dependency parsers).
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,

    #[arg(long, env = "ATTNDISCO_SEED", default_value_t = 0)]
    pub seed: u64,
}
