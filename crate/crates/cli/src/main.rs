mod args;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use protometric::generators::{self, GenError, GenSpec};
use protometric::io::{self as pio, Format, ParseError, ReportFormat};
use protometric::transforms::{self, TransformError};
use protometric::{
    check_prequadrangle, check_strict, check_transition, check_triangle, classify, diagonal_bounds, LabelFunction,
    LabeledMatrix, PropertyVerdict, Status, ToleranceConfig, TransitionMode,
};

use args::{CheckSelector, Cli, Command, FormatArg, GenKind, Io, ReportFormatArg, TransformOp};

/// Failure classes of the exit-code contract.
enum Failure {
    /// Exit 1: property violated or precondition failed. Empty when the
    /// verdict already went to standard output.
    Violation(String),
    /// Exit 2: usage or input error.
    Input(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Matrix(_) | TransformError::InvalidAlpha(_) | TransformError::InvalidConstant(_) => {
                Failure::Input(e.to_string())
            }
            TransformError::NotProtometric(ref v) => Failure::Violation(format!("{e}{}", first_witness(v))),
            other => Failure::Violation(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match ToleranceConfig::new(
        cli.tolerance.tolerance_ineq,
        cli.tolerance.tolerance_eq,
        cli.tolerance.tolerance_strict,
    ) {
        Ok(t) => t.with_max_witnesses(cli.tolerance.max_witnesses as usize),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Classify { io, format } => run_classify(&io, format, &tol),
        Command::Check { selector, io } => run_check(selector, &io, &tol),
        Command::Transform {
            op,
            io,
            alpha,
            f_file,
            base_label,
            constant,
            other,
            format,
        } => run_transform(
            op,
            &io,
            &TransformFlags {
                alpha,
                f_file,
                base_label,
                constant,
                other,
            },
            format,
            &tol,
        ),
        Command::Generate {
            kind,
            n,
            seed,
            ty,
            strict,
            scale,
            output,
            format,
        } => {
            let spec = GenSpec::new(n as usize, seed).with_scale(scale);
            run_generate(kind, &spec, ty, strict, output.as_deref(), format)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))?;
    }
    if text.trim().is_empty() {
        return Err(Failure::Input(format!(
            "{}: input is empty",
            if path == "-" { "<stdin>" } else { path }
        )));
    }
    Ok(text)
}

fn format_of(path: &str, text: &str) -> Format {
    match Path::new(path).extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
        Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
        _ => Format::sniff(text),
    }
}

fn read_matrix(path: &str) -> Result<(LabeledMatrix, Format), Failure> {
    let text = read_text(path)?;
    let fmt = format_of(path, &text);
    Ok((pio::parse_matrix(&text, fmt)?, fmt))
}

fn write_output(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("writing {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Input(format!("writing standard output: {e}")))
        }
    }
}

fn first_witness(v: &PropertyVerdict) -> String {
    match v.witnesses.first() {
        Some(w) => format!(
            "\nwitness (x, y, z) = ({}, {}, {}): lhs = {}, rhs = {}, deficit = {}",
            w.x, w.y, w.z, w.lhs, w.rhs, w.deficit
        ),
        None => String::new(),
    }
}

fn run_classify(io: &Io, format: ReportFormatArg, tol: &ToleranceConfig) -> Outcome {
    let (m, _) = read_matrix(&io.input)?;
    let report = classify(&m, tol);
    let fmt = match format {
        ReportFormatArg::Json => ReportFormat::Json,
        ReportFormatArg::Text => ReportFormat::Text,
    };
    write_output(io.output.as_deref(), &pio::serialize_report(&report, fmt))
}

fn selector_name(s: CheckSelector) -> String {
    match s {
        CheckSelector::Triangle(t) => format!("triangle:{t}"),
        CheckSelector::Prequad(t) => format!("prequad:{t}"),
        CheckSelector::Strict(t) => format!("strict:{t}"),
        CheckSelector::Diagonal(t) => format!("diagonal:{t}"),
        CheckSelector::Transition { log_compatible: false } => "transition".into(),
        CheckSelector::Transition { log_compatible: true } => "transition:log".into(),
    }
}

fn run_check(selector: CheckSelector, io: &Io, tol: &ToleranceConfig) -> Outcome {
    let (m, _) = read_matrix(&io.input)?;
    let name = selector_name(selector);
    let verdict = match selector {
        CheckSelector::Triangle(t) => check_triangle(&m, t, tol),
        CheckSelector::Prequad(t) => check_prequadrangle(&m, t, tol),
        CheckSelector::Strict(t) => check_strict(&m, t, tol),
        CheckSelector::Transition { log_compatible } => {
            let mode = if log_compatible {
                TransitionMode::LogCompatible
            } else {
                TransitionMode::Plain
            };
            check_transition(&m, tol, mode)
        }
        CheckSelector::Diagonal(t) => {
            let bounds = diagonal_bounds(&m, t, tol);
            let mut text = String::new();
            for b in &bounds {
                text.push_str(&format!(
                    "{}: {} in [{}, {}]: {}\n",
                    b.label,
                    b.value,
                    b.interval.lo,
                    b.interval.hi,
                    if b.member { "yes" } else { "no" }
                ));
            }
            let all = bounds.iter().all(|b| b.member);
            let status = if all { "PASS" } else { "FAIL" };
            write_output(io.output.as_deref(), &format!("{status} {name}\n{text}"))?;
            return if all {
                Ok(())
            } else {
                Err(Failure::Violation(String::new()))
            };
        }
    };
    let summary = match verdict.status {
        Status::NotApplicable => format!("{} {name}\n", verdict.status),
        _ => format!(
            "{} {name} checked={} violations={} min_slack={}{}\n",
            verdict.status,
            verdict.count_checked,
            verdict.violation_count,
            if verdict.min_slack.is_finite() {
                verdict.min_slack.to_string()
            } else {
                "-".into()
            },
            first_witness(&verdict)
        ),
    };
    write_output(io.output.as_deref(), &summary)?;
    match verdict.status {
        Status::Pass => Ok(()),
        Status::Fail => Err(Failure::Violation(String::new())),
        Status::NotApplicable => Err(Failure::Violation(format!("{name}: matrix has nonpositive entries"))),
    }
}

struct TransformFlags {
    alpha: Option<f64>,
    f_file: Option<PathBuf>,
    base_label: Option<String>,
    constant: Option<f64>,
    other: Option<PathBuf>,
}

fn require<T: Clone>(v: &Option<T>, flag: &str, op: &str) -> Result<T, Failure> {
    v.clone()
        .ok_or_else(|| Failure::Input(format!("`transform {op}` requires --{flag}")))
}

fn read_function(path: &Path) -> Result<LabelFunction, Failure> {
    let p = path.to_string_lossy();
    let text = read_text(&p)?;
    Ok(pio::parse_label_function(&text, format_of(&p, &text))?)
}

fn run_transform(
    op: TransformOp,
    io: &Io,
    flags: &TransformFlags,
    format: Option<FormatArg>,
    tol: &ToleranceConfig,
) -> Outcome {
    use TransformOp::*;
    let name = format!("{op:?}").to_lowercase();
    // Flag validation happens before any input is read.
    match op {
        Gauge => {
            require(&flags.alpha, "alpha", &name)?;
            require(&flags.f_file, "f-file", &name)?;
        }
        Metrize => {
            require(&flags.alpha, "alpha", &name)?;
        }
        Add => {
            require(&flags.other, "other", &name)?;
        }
        Gromov | Minfarris => {
            require(&flags.base_label, "base-label", &name)?;
        }
        Farris => {
            require(&flags.base_label, "base-label", &name)?;
            require(&flags.constant, "constant", &name)?;
        }
        _ => {}
    }

    let text = read_text(&io.input)?;
    let in_fmt = format_of(&io.input, &text);
    let out_fmt = match format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => in_fmt,
    };
    let out = io.output.as_deref();
    let emit = |m: &LabeledMatrix| write_output(out, &pio::serialize_matrix(m, out_fmt));

    if op == Compose {
        let dec = if in_fmt == Format::Json && pio::is_decomposition(&text) {
            pio::parse_decomposition(&text)?
        } else {
            let f_file = require(&flags.f_file, "f-file", &name)?;
            transforms::Decomposition {
                d: pio::parse_matrix(&text, in_fmt)?,
                f: read_function(&f_file)?,
            }
        };
        return emit(&transforms::compose(&dec.d, &dec.f, tol)?);
    }

    let m = pio::parse_matrix(&text, in_fmt)?;
    match op {
        Transpose => emit(&transforms::transpose(&m)),
        Gauge => {
            let f = read_function(flags.f_file.as_deref().expect("validated"))?;
            emit(&transforms::affine_gauge(&m, flags.alpha.expect("validated"), &f)?)
        }
        Add => {
            let (other, _) = read_matrix(&flags.other.as_deref().expect("validated").to_string_lossy())?;
            emit(&transforms::add(&m, &other)?)
        }
        Metrize => emit(&transforms::metrize(&m, flags.alpha.expect("validated"), tol)?),
        Decompose => write_output(out, &pio::serialize_decomposition(&transforms::decompose(&m, tol)?)),
        Zerocoords => write_output(
            out,
            &pio::serialize_zero_coordinates(&transforms::zero_coordinates(&m, tol)?),
        ),
        Potential => write_output(
            out,
            &pio::serialize_label_function(&transforms::potential_of(&m, tol)?, out_fmt),
        ),
        Preorder => write_output(
            out,
            &pio::serialize_preorder(&transforms::specialization_preorder(&m, tol)?),
        ),
        Gromov => emit(&transforms::gromov_product(
            &m,
            flags.base_label.as_deref().expect("validated"),
            tol,
        )?),
        Farris => emit(&transforms::farris_transform(
            &m,
            flags.base_label.as_deref().expect("validated"),
            flags.constant.expect("validated"),
            tol,
        )?),
        Minfarris => {
            let c = transforms::min_farris_constant(&m, flags.base_label.as_deref().expect("validated"), tol)?;
            write_output(out, &format!("{c}\n"))
        }
        Log => emit(&transforms::log_transform(&m)?),
        Compose => unreachable!("handled above"),
    }
}

fn run_generate(
    kind: GenKind,
    spec: &GenSpec,
    ty: protometric::InequalityType,
    strict: bool,
    output: Option<&Path>,
    format: FormatArg,
) -> Outcome {
    let m = match kind {
        GenKind::Metric => generators::gen_metric(spec)?,
        GenKind::Qsm => generators::gen_quasi_semi_metric(spec)?,
        GenKind::Protometric => generators::gen_protometric(spec, ty, strict)?,
        GenKind::Zeroproto => generators::gen_zero_protometric(spec)?,
    };
    let fmt = match format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    write_output(output, &pio::serialize_matrix(&m, fmt))
}
