use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "trinet", version, about = "Workbench for colored trinet automata")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Option table file replacing the built-in one.
    #[arg(long, global = true, value_name = "FILE")]
    pub option_table: Option<PathBuf>,
    /// Update budget per run.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub budget_steps: u64,
    /// Vertex budget per run.
    #[arg(long, global = true, default_value_t = 500_000)]
    pub budget_vertices: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one rule and write the final graph, series and a summary.
    Simulate(SimulateArgs),
    /// Classify one rule.
    Classify(ClassifyArgs),
    /// Classify every rule of the option table.
    Sweep(SweepArgs),
    /// Compute a metric of a graph file.
    Analyze(AnalyzeArgs),
    /// Run the word-dynamics checks.
    Verify(VerifyArgs),
    /// Convert a graph file to DOT, GraphML or trinet text.
    Export(ExportArgs),
    /// List the named rules.
    Rules,
    /// Print the option table in the format `--option-table` reads.
    Table,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "rule_source")]
pub struct RuleSource {
    /// Rule text, e.g. "0 -> replace move rb; b -> replace move g".
    #[arg(long)]
    pub rule: Option<String>,
    /// Index into the option table.
    #[arg(long)]
    pub rule_id: Option<u32>,
    /// File holding rule text.
    #[arg(long, value_name = "FILE")]
    pub rule_file: Option<PathBuf>,
    /// A rule from `trinet rules`.
    #[arg(long)]
    pub rule_name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Vertices,
    Writer,
    Deviation,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub rule: RuleSource,
    /// `cube`, `k33` or a trinet file.
    #[arg(long, default_value = "cube")]
    pub init: String,
    /// Number of updates; defaults to the step budget.
    #[arg(long)]
    pub steps: Option<u64>,
    /// Output directory for final.trinet, summary.json and series CSVs.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Series to record (needs --out).
    #[arg(long, value_delimiter = ',')]
    pub series: Vec<SeriesKind>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub rule: RuleSource,
    #[arg(long, default_value = "cube")]
    pub init: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Output directory for records.jsonl, manifest.json and summary.json.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    #[arg(long, default_value = "cube")]
    pub init: String,
    /// Id range `a..b` (end exclusive); defaults to the whole table.
    #[arg(long)]
    pub range: Option<String>,
    /// Keep the records of an interrupted sweep and continue it.
    #[arg(long)]
    pub resume: bool,
    /// Classify one rule per red/blue-conjugate pair.
    #[arg(long)]
    pub conjugate_dedup: bool,
    /// Worker threads (default: TRINET_THREADS or all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Delta,
    Diameter,
    Ratio,
    ShellDimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Geodesics {
    All,
    Single,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Trinet file.
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub metric: Metric,
    #[arg(long, value_enum, default_value = "all")]
    pub geodesics: Geodesics,
    /// Largest graph the delta computation accepts.
    #[arg(long, default_value_t = trinet::analysis::DEFAULT_DELTA_LIMIT)]
    pub limit: usize,
    /// Root for the shell dimension; defaults to the writer.
    #[arg(long)]
    pub root: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Global replacement of the simple cyclic rule.
    Theorem1,
    /// Golden-ratio vertex count.
    Theorem2,
    /// Closed-form states of the simple cyclic rule.
    Hstate,
    /// The word-system identities.
    Lemmas,
    /// The three-way last-letter equality.
    Golden,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub which: Which,
    /// Range of n for theorem1 (inclusive).
    #[arg(long)]
    pub n: Option<String>,
    /// Range of t for theorem2, hstate and lemmas (inclusive).
    #[arg(long)]
    pub t: Option<String>,
    /// Range of i for golden (inclusive).
    #[arg(long)]
    pub i: Option<String>,
    /// Seed for the random block sequences of the word-identity suite.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Graphml,
    Trinet,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Trinet file.
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
