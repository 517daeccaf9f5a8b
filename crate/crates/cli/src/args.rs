use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "simpson-cert",
    version,
    about = "Simpson quadrature with certified a-priori error bounds",
    after_help = "Environment: SIMPSON_CERT_SEED is reserved and currently ignored; \
                  every computation is deterministic."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one function with a fixed cell count or to a tolerance.
    Integrate(IntegrateArgs),
    /// Tabulate every bound against the measured error across functions.
    Compare(CompareArgs),
    /// Rerun the worked exp(x^2) example and compare with the published values.
    #[command(name = "paper-example")]
    WorkedExample(OutputArgs),
    /// List the built-in functions.
    ListFns(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FallbackArg {
    Classical,
    Reject,
}

#[derive(Debug, Clone, Args)]
pub struct IntegrateArgs {
    #[arg(long = "fn", value_name = "NAME")]
    pub function: String,
    /// Left endpoint; defaults to the function's default interval.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Right endpoint; defaults to the function's default interval.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Number of uniform cells.
    #[arg(long, conflicts_with = "tol")]
    pub n: Option<usize>,
    /// Refine adaptively until the certified bound is at most this.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated bound families.
    #[arg(long, default_value = "classical,qc", value_parser = parse_bounds)]
    pub bounds: BoundList,
    #[arg(long, default_value_t = simpson_cert::adaptive::DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
    /// What to do when |f''''| fails the quasi-convexity check under --tol.
    #[arg(long, value_enum, default_value_t = FallbackArg::Classical)]
    pub fallback: FallbackArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Comma-separated function names; defaults to the whole corpus.
    #[arg(long, value_delimiter = ',')]
    pub fns: Vec<String>,
    /// Comma-separated uniform cell counts.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub ns: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A bound family as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundChoice {
    Classical,
    Bv(usize),
    Qc,
    QcMonoInc,
    QcMonoDec,
}

impl BoundChoice {
    pub const ALL: [BoundChoice; 8] = [
        BoundChoice::Classical,
        BoundChoice::Bv(0),
        BoundChoice::Bv(1),
        BoundChoice::Bv(2),
        BoundChoice::Bv(3),
        BoundChoice::Qc,
        BoundChoice::QcMonoInc,
        BoundChoice::QcMonoDec,
    ];

    pub fn label(self) -> String {
        match self {
            BoundChoice::Classical => "classical".into(),
            BoundChoice::Bv(n) => format!("bv{n}"),
            BoundChoice::Qc => "qc".into(),
            BoundChoice::QcMonoInc => "qc-mono-inc".into(),
            BoundChoice::QcMonoDec => "qc-mono-dec".into(),
        }
    }
}

impl std::str::FromStr for BoundChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundChoice::ALL
            .into_iter()
            .find(|c| c.label() == s.trim())
            .ok_or_else(|| CliError::UnknownBound(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundList(pub Vec<BoundChoice>);

fn parse_bounds(s: &str) -> Result<BoundList, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse::<BoundChoice>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(BoundList)
}
