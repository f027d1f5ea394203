use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use protometric::InequalityType;

#[derive(Debug, Parser)]
#[command(
    name = "protometric",
    version,
    about = "Classify and transform generalized distance matrices",
    after_help = "Exit codes: 0 success or property holds, 1 property violated or precondition failed, 2 usage or input error."
)]
pub struct Cli {
    #[command(flatten)]
    pub tolerance: ToleranceArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Slack allowed on inequalities (a >= b - eps)
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = nonnegative)]
    pub tolerance_ineq: f64,
    /// Band for equalities (|a - b| <= eps)
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = nonnegative)]
    pub tolerance_eq: f64,
    /// Margin for strict inequalities (a - b > eps)
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = nonnegative)]
    pub tolerance_strict: f64,
    /// Number of violation witnesses kept per check
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_witnesses: u64,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input path, or `-` for standard input
    #[arg(short, long, default_value = "-")]
    pub input: String,
    /// Output path (standard output when omitted)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report membership in every class of the taxonomy
    Classify {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = ReportFormatArg::Json)]
        format: ReportFormatArg,
    },
    /// Run a single checker: triangle:<t>, prequad:<t>, strict:<t>, diagonal:<t>, transition, transition:log
    Check {
        #[arg(value_parser = parse_selector)]
        selector: CheckSelector,
        #[command(flatten)]
        io: Io,
    },
    /// Apply a transform to the input
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        alpha: Option<f64>,
        /// Two-column CSV (label,value) holding the gauge f
        #[arg(long)]
        f_file: Option<PathBuf>,
        #[arg(long)]
        base_label: Option<String>,
        #[arg(long)]
        constant: Option<f64>,
        /// Second operand for `add`
        #[arg(long)]
        other: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Generate a seeded random instance
    Generate {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "type", default_value = "t", value_parser = parse_type)]
        ty: InequalityType,
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 10.0, value_parser = positive)]
        scale: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormatArg {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    Transpose,
    Gauge,
    Add,
    Metrize,
    Compose,
    Decompose,
    Zerocoords,
    Potential,
    Preorder,
    Gromov,
    Farris,
    Minfarris,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Metric,
    Qsm,
    Protometric,
    Zeroproto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckSelector {
    Triangle(InequalityType),
    Prequad(InequalityType),
    Strict(InequalityType),
    Diagonal(InequalityType),
    Transition { log_compatible: bool },
}

fn parse_type(s: &str) -> Result<InequalityType, String> {
    s.parse().map_err(|e: protometric::check::ParseTypeError| e.to_string())
}

fn parse_selector(s: &str) -> Result<CheckSelector, String> {
    match s.split_once(':') {
        None if s == "transition" => Ok(CheckSelector::Transition { log_compatible: false }),
        Some(("transition", "log")) => Ok(CheckSelector::Transition { log_compatible: true }),
        Some((kind, ty)) => {
            let ty = parse_type(ty)?;
            match kind {
                "triangle" => Ok(CheckSelector::Triangle(ty)),
                "prequad" => Ok(CheckSelector::Prequad(ty)),
                "strict" => Ok(CheckSelector::Strict(ty)),
                "diagonal" => Ok(CheckSelector::Diagonal(ty)),
                other => Err(format!("unknown check `{other}`")),
            }
        }
        None => Err(format!("unknown selector `{s}`")),
    }
}

fn nonnegative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("`{s}` is not a finite nonnegative number")),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("`{s}` is not a finite positive number")),
    }
}
