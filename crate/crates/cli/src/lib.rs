//! Command-line front end for the `benford` library.
//!
//! Verbs: `digits`, `fit`, `wrap`, `entropy`, `sequence`. Exit codes are
//! 0 when the analysis ran (whatever its verdict), 2 for usage errors,
//! 3 for data errors and 4 for numerical failures.

use std::io::Write;
use std::path::PathBuf;

use benford::conformance::sequence_report;
use benford::wrapping::{distance_pdf_to_nb, log_grid_point};
use benford::{
    analyze_entropy, conformance_report, gen_sequence, nb_entropy_closed, wrap_mixture_pdf,
    wrapped_lognormal_pdf, Base, ConformanceReport, NbDistribution, SequenceKind,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod dist;
pub mod error;
pub mod ingest;
pub mod report;

use dist::DistSpec;
use error::CliError;
use ingest::{read_column, IngestOptions, InputFormat};
use report::{render_human, Record, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "benford",
    version,
    about = "Newcomb-Benford significand statistics"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Integer base, at least 2.
    #[arg(long, global = true, default_value_t = 10)]
    pub base: u64,
    /// Absolute tolerance for series truncation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed, echoed in the header for reproducibility bookkeeping.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First-digit probabilities of the NB law.
    Digits,
    /// Conformance of one data column to the NB law.
    Fit {
        path: PathBuf,
        /// Column name, or zero-based index.
        #[arg(long, default_value = "0")]
        column: String,
        #[arg(long)]
        absolute_value: bool,
        #[arg(long, value_enum, default_value_t = InputFormat::Csv)]
        input_format: InputFormat,
    },
    /// Wrapped density against NB on a log-spaced grid.
    Wrap {
        /// lognormal M s | mixture w:M:s,...
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        dist: Vec<String>,
        #[arg(long, default_value_t = 256)]
        grid_points: usize,
    },
    /// Entropy, mean log and Gibbs bound of a density on [1, b).
    Entropy {
        /// nb | uniform | lognormal M s | mixture w:M:s,...
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        dist: Vec<String>,
    },
    /// Conformance of a deterministic sequence.
    Sequence {
        #[arg(value_enum)]
        kind: SequenceName,
        n: usize,
        /// Ratio for `geometric`.
        #[arg(long, required_if_eq("kind", "geometric"))]
        ratio: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceName {
    Pow2,
    Factorial,
    Fibonacci,
    Geometric,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let argv = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, argv) {
        Ok(records) => {
            let text = match cli.common.format {
                Format::Human => render_human(&records),
                Format::Records => records.iter().map(|r| r.to_line() + "\n").collect(),
            };
            match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "benford: {e}");
                    3
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "benford: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, argv: Vec<String>) -> Result<Vec<Record>, CliError> {
    let c = &cli.common;
    let base = Base::new(c.base)?;
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            c.tol
        )));
    }
    let command = match cli.command {
        Command::Digits => "digits",
        Command::Fit { .. } => "fit",
        Command::Wrap { .. } => "wrap",
        Command::Entropy { .. } => "entropy",
        Command::Sequence { .. } => "sequence",
    };
    let mut records = vec![Record::Header {
        schema_version: SCHEMA_VERSION.into(),
        command: command.into(),
        argv,
        base: base.get(),
        tol: c.tol,
        seed: c.seed,
    }];
    match &cli.command {
        Command::Digits => cmd_digits(base, &mut records),
        Command::Fit {
            path,
            column,
            absolute_value,
            input_format,
        } => {
            let opts = IngestOptions {
                path: path.clone(),
                format: *input_format,
                column: column.clone(),
                absolute_value: *absolute_value,
            };
            cmd_fit(&opts, base, &mut records)?
        }
        Command::Wrap { dist, grid_points } => {
            cmd_wrap(dist, *grid_points, base, c.tol, &mut records)?
        }
        Command::Entropy { dist } => cmd_entropy(dist, base, c.tol, &mut records)?,
        Command::Sequence { kind, n, ratio } => {
            cmd_sequence(*kind, *n, *ratio, base, &mut records)?
        }
    }
    Ok(records)
}

fn cmd_digits(base: Base, records: &mut Vec<Record>) {
    let probs = NbDistribution::new(base).digit_probabilities();
    for (i, &p) in probs.iter().enumerate() {
        records.push(Record::Digit {
            digit: i as u32 + 1,
            probability: p,
        });
    }
    records.push(Record::DigitSum {
        sum: probs.iter().sum(),
    });
}

fn push_conformance(report: &ConformanceReport, records: &mut Vec<Record>) {
    let hist = &report.histogram;
    let probs = NbDistribution::new(hist.base()).digit_probabilities();
    for ((i, &count), (freq, expected)) in hist
        .counts()
        .iter()
        .enumerate()
        .zip(hist.frequencies().into_iter().zip(probs))
    {
        records.push(Record::DigitCount {
            digit: i as u32 + 1,
            count,
            observed: freq,
            expected,
        });
    }
    records.push(Record::Conformance {
        n_used: hist.total(),
        skipped_nonpositive: report.skipped.nonpositive,
        skipped_nonfinite: report.skipped.nonfinite,
        chi_square_statistic: report.chi_square.map(|c| c.statistic),
        chi_square_pvalue: report.chi_square.map(|c| c.pvalue),
        chi_square_dof: report.chi_square.map(|c| c.dof),
        ks_stat: report.ks_stat,
        tv_distance: report.tv_distance,
    });
}

fn cmd_fit(opts: &IngestOptions, base: Base, records: &mut Vec<Record>) -> Result<(), CliError> {
    let data = read_column(opts)?;
    let report = conformance_report(&data, base)
        .map_err(|e| CliError::Data(format!("{}: {e}", opts.path.display())))?;
    records.push(Record::Input {
        path: opts.path.display().to_string(),
        input_format: opts.format.name().into(),
        column: opts.column.clone(),
        absolute_value: opts.absolute_value,
    });
    push_conformance(&report, records);
    Ok(())
}

fn cmd_wrap(
    dist: &[String],
    grid_points: usize,
    base: Base,
    tol: f64,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    if grid_points == 0 {
        return Err(CliError::Usage("--grid-points must be at least 1".into()));
    }
    let spec = DistSpec::parse(dist)?;
    let pdf = |x: f64| match &spec {
        DistSpec::LogNormal(p) => wrapped_lognormal_pdf(x, p, base, tol),
        DistSpec::Mixture(m) => wrap_mixture_pdf(x, m, base, tol),
        _ => unreachable!("checked below"),
    };
    if !matches!(spec, DistSpec::LogNormal(_) | DistSpec::Mixture(_)) {
        return Err(CliError::Usage(format!(
            "wrap needs a lognormal or mixture source, got '{}'",
            spec.describe()
        )));
    }
    let nb = NbDistribution::new(base);
    for i in 0..grid_points {
        let x = log_grid_point(i, grid_points, base);
        let (w, n) = (pdf(x)?, nb.pdf(x)?);
        records.push(Record::Curve {
            x,
            wrapped_pdf: w,
            nb_pdf: n,
            difference: w - n,
        });
    }
    let d = distance_pdf_to_nb(pdf, base)?;
    records.push(Record::Distance {
        distribution: spec.describe(),
        sup: d.sup,
        tv: d.tv,
    });
    Ok(())
}

fn cmd_entropy(
    dist: &[String],
    base: Base,
    tol: f64,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let spec = DistSpec::parse(dist)?;
    let nb = NbDistribution::new(base);
    let width = base.as_f64() - 1.0;
    // Evaluation errors are impossible on [1, b) once the spec parsed; any
    // that slipped through would show up as NaN and fail the quadrature.
    let r = match &spec {
        DistSpec::Nb => analyze_entropy(|x| nb.pdf(x).unwrap_or(f64::NAN), base),
        DistSpec::Uniform => analyze_entropy(|_| 1.0 / width, base),
        DistSpec::LogNormal(p) => analyze_entropy(
            |x| wrapped_lognormal_pdf(x, p, base, tol).unwrap_or(f64::NAN),
            base,
        ),
        DistSpec::Mixture(m) => analyze_entropy(
            |x| wrap_mixture_pdf(x, m, base, tol).unwrap_or(f64::NAN),
            base,
        ),
    }?;
    records.push(Record::Entropy {
        distribution: spec.describe(),
        entropy: r.entropy,
        mean_log: r.mean_log,
        gibbs_bound: r.gibbs_bound,
        gibbs_gap: r.gibbs_gap(),
        nb_entropy: nb_entropy_closed(base),
        constraint_met: r.constraint_met,
        quadrature_error_estimate: r.quadrature_error_estimate,
    });
    Ok(())
}

fn cmd_sequence(
    name: SequenceName,
    n: usize,
    ratio: Option<f64>,
    base: Base,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let kind = match name {
        SequenceName::Pow2 => SequenceKind::Pow2,
        SequenceName::Factorial => SequenceKind::Factorial,
        SequenceName::Fibonacci => SequenceKind::Fibonacci,
        SequenceName::Geometric => SequenceKind::Geometric(ratio.expect("clap requires --ratio")),
    };
    let terms = gen_sequence(kind, n, base)?;
    let last = terms
        .last()
        .ok_or_else(|| CliError::Usage("sequence length must be at least 1".into()))?;
    let label = match kind {
        SequenceKind::Geometric(r) => format!("geometric {r}"),
        _ => name
            .to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string(),
    };
    records.push(Record::Sequence {
        kind: label,
        n: terms.len() as u64,
        last_significand: last.significand,
        last_exponent: last.exponent as i64,
    });
    push_conformance(&sequence_report(&terms, base)?, records);
    Ok(())
}
