//! The `fepci` command-line front end.
//!
//! Exit codes: 0 success, 2 some methods inapplicable (the report is still
//! printed for the others), 64 usage or scenario-config error, 65 input
//! data error, 74 output I/O error.

pub mod format;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::datasets::{self, parse_values};
use crate::dist::Distribution;
use crate::mc::{self, CoverageReport};
use crate::moments::Sample;
use crate::normality::{self, jarque_bera};
use crate::onesample::{self, Target};
use crate::twosample::{self, RatioNormalization};

use report::{Row, Section};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Io(m) => m,
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RatioModeArg {
    Theorem,
    TableUnscaled,
}

impl From<RatioModeArg> for RatioNormalization {
    fn from(m: RatioModeArg) -> Self {
        match m {
            RatioModeArg::Theorem => RatioNormalization::TheoremScaled,
            RatioModeArg::TableUnscaled => RatioNormalization::TableUnscaled,
        }
    }
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie strictly between 0 and 1, got {a}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "fepci", version, about = "Exact and asymptotic confidence intervals for one and two samples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct DisplayArgs {
    /// Significant digits in table output
    #[arg(long, short = 'd', default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=17))]
    digits: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mean and variance intervals for one sample
    One {
        /// Sample file, or the name of a bundled dataset
        data: String,
        #[arg(long, default_value_t = 0.05, value_parser = parse_alpha)]
        alpha_mean: f64,
        #[arg(long, default_value_t = 0.1, value_parser = parse_alpha)]
        alpha_var: f64,
        /// Reproduce the arithmetic of the original R implementation
        #[arg(long)]
        compat_rcode: bool,
        #[command(flatten)]
        display: DisplayArgs,
    },
    /// Variance-ratio and mean-difference intervals for two independent samples
    Two {
        /// First sample: file or bundled dataset name
        data1: String,
        /// Second sample
        data2: String,
        #[arg(long, default_value_t = 0.05, value_parser = parse_alpha)]
        alpha_mean: f64,
        #[arg(long, default_value_t = 0.1, value_parser = parse_alpha)]
        alpha_var: f64,
        /// Normalization of the asymptotic ratio interval [default: theorem, or table-unscaled with --compat-rcode]
        #[arg(long, value_enum)]
        ratio_mode: Option<RatioModeArg>,
        #[arg(long)]
        compat_rcode: bool,
        #[command(flatten)]
        display: DisplayArgs,
    },
    /// Jarque-Bera normality test
    Jb {
        /// Sample file, or the name of a bundled dataset
        data: String,
        #[arg(long, default_value_t = normality::DEFAULT_LEVEL, value_parser = parse_alpha)]
        level: f64,
        #[arg(long, short = 'd', default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=17))]
        digits: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Monte-Carlo coverage study driven by a scenario file
    Coverage {
        /// Scenario file
        config: PathBuf,
        /// Seed; a time-derived seed is chosen and printed when absent
        #[arg(long)]
        seed: Option<u64>,
        /// Write the CSV report here
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
        /// Override the replication count of every scenario
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        reps: Option<u64>,
        /// Worker threads [default: all cores]
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        #[arg(long, short = 'd', default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=17))]
        digits: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Normal QQ-plot coordinates as CSV
    Qq {
        /// Sample file, or the name of a bundled dataset
        data: String,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// List bundled datasets
    Datasets,
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::One {
            data,
            alpha_mean,
            alpha_var,
            compat_rcode,
            display,
        } => {
            let sample = load_sample(&data)?;
            let sections = one_sections(&sample, alpha_mean, alpha_var, compat_rcode);
            report::emit(&sections, &[], display.format, display.digits as usize, out)
        }
        Command::Two {
            data1,
            data2,
            alpha_mean,
            alpha_var,
            ratio_mode,
            compat_rcode,
            display,
        } => {
            let x = load_sample(&data1)?;
            let y = load_sample(&data2)?;
            if twosample::is_imbalanced(x.len(), y.len()) {
                writeln!(
                    err,
                    "warning: sample sizes {} and {} differ by more than a factor {}; the general intervals assume balanced sizes",
                    x.len(),
                    y.len(),
                    twosample::IMBALANCE_WARN_RATIO
                )
                .map_err(io_err)?;
            }
            let mode = ratio_mode.map(Into::into).unwrap_or(if compat_rcode {
                RatioNormalization::TableUnscaled
            } else {
                RatioNormalization::TheoremScaled
            });
            let sections = two_sections(&x, &y, alpha_mean, alpha_var, mode, compat_rcode);
            let extras = match twosample::welch_df(&x, &y) {
                Ok(f) => vec![("welch_f", f)],
                Err(_) => vec![],
            };
            report::emit(&sections, &extras, display.format, display.digits as usize, out)
        }
        Command::Jb {
            data,
            level,
            digits,
            format,
        } => {
            let sample = load_sample(&data)?;
            let jb = jarque_bera(&sample).map_err(|e| CliError::Data(e.to_string()))?;
            report::emit_jb(&jb, level, format, digits as usize, out)?;
            Ok(EXIT_OK)
        }
        Command::Coverage {
            config,
            seed,
            out: csv_path,
            reps,
            threads,
            digits,
            format,
        } => cmd_coverage(&config, seed, csv_path.as_deref(), reps, threads, digits, format, out, err),
        Command::Qq { data, out: path } => {
            let sample = load_sample(&data)?;
            let csv = qq_csv(&sample).map_err(|e| CliError::Data(e.to_string()))?;
            match path {
                Some(p) => fs::write(&p, csv).map_err(io_err)?,
                None => out.write_all(csv.as_bytes()).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Datasets => {
            for d in datasets::REGISTRY.iter() {
                writeln!(out, "{:<8} n={:<4} {}", d.name, d.expected_len, d.description)
                    .map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Resolves a bundled dataset name, or reads and parses a sample file.
pub fn load_sample(path_or_name: &str) -> Result<Sample, CliError> {
    if let Some(d) = datasets::lookup(path_or_name) {
        return Ok(d.sample());
    }
    let text = fs::read_to_string(path_or_name).map_err(|e| {
        CliError::Data(format!(
            "{path_or_name}: {e} (not a readable file nor a bundled dataset: {})",
            datasets::names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let values = parse_values(&text).map_err(|e| CliError::Data(format!("{path_or_name}: {e}")))?;
    Sample::new(values).map_err(|e| CliError::Data(format!("{path_or_name}: {e}")))
}

fn one_sections(s: &Sample, alpha_mean: f64, alpha_var: f64, compat: bool) -> Vec<Section> {
    let var_general = if compat {
        // The R code builds this row at the means' level.
        Row::new("General Case", alpha_mean, onesample::ci_var_general_rcode(s, alpha_mean)).compat()
    } else {
        Row::new("General Case", alpha_var, onesample::ci_var_general(s, alpha_var))
    };
    vec![
        Section {
            title: "Estimation of the mean",
            target: Target::Mean,
            rows: vec![
                Row::new("Gaussian Data", alpha_mean, onesample::ci_mean_gaussian(s, alpha_mean)),
                Row::new("General Case", alpha_mean, onesample::ci_mean_general(s, alpha_mean)),
            ],
        },
        Section {
            title: "Estimation of the variance",
            target: Target::Variance,
            rows: vec![
                Row::new("Gaussian Data", alpha_var, onesample::ci_var_gaussian(s, alpha_var)),
                var_general,
            ],
        },
    ]
}

fn two_sections(
    x: &Sample,
    y: &Sample,
    alpha_mean: f64,
    alpha_var: f64,
    mode: RatioNormalization,
    compat: bool,
) -> Vec<Section> {
    let welch_f = twosample::welch_df(x, y).ok();
    let (ratio_gauss, ratio_general, welch) = if compat {
        (
            Row::new("Gaussian Data", alpha_var, twosample::ci_ratio_gaussian_rcode(x, y, alpha_var)).compat(),
            Row::new("General Case", alpha_mean, twosample::ci_ratio_general(x, y, alpha_mean, mode)).compat(),
            Row::new(
                "Gaussian Data (unequal variances)",
                alpha_mean,
                twosample::ci_dm_welch_rcode(x, y, alpha_mean),
            )
            .compat()
            .with_df((x.len() + y.len()) as f64 - 2.0),
        )
    } else {
        let mut welch = Row::new(
            "Gaussian Data (unequal variances)",
            alpha_mean,
            twosample::ci_dm_welch(x, y, alpha_mean),
        );
        if let Some(f) = welch_f {
            welch = welch.with_df(f);
        }
        (
            Row::new("Gaussian Data", alpha_var, twosample::ci_ratio_gaussian(x, y, alpha_var)),
            Row::new("General Case", alpha_var, twosample::ci_ratio_general(x, y, alpha_var, mode)),
            welch,
        )
    };
    vec![
        Section {
            title: "Estimation of the ratio of variances",
            target: Target::VarRatio,
            rows: vec![ratio_gauss, ratio_general],
        },
        Section {
            title: "Estimation of the mean difference",
            target: Target::MeanDiff,
            rows: vec![
                Row::new(
                    "Gaussian Data (equal variances)",
                    alpha_mean,
                    twosample::ci_dm_pooled(x, y, alpha_mean),
                )
                .with_df((x.len() + y.len()) as f64 - 2.0),
                welch,
                Row::new("General Case", alpha_mean, twosample::ci_dm_general(x, y, alpha_mean)),
            ],
        },
    ]
}

/// Sorted sample against standard-normal quantiles at (i − 0.5)/n.
pub fn qq_points(s: &Sample) -> crate::Result<Vec<(f64, f64)>> {
    let n = s.len();
    if n < 2 {
        return Err(crate::Error::TooFewObservations {
            required: 2,
            actual: n,
        });
    }
    let mut sorted = s.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let p = (i as f64 + 0.5) / n as f64;
            Ok((Distribution::Normal.quantile(p)?, v))
        })
        .collect()
}

fn qq_csv(s: &Sample) -> crate::Result<String> {
    let mut csv = String::from("theoretical,empirical\n");
    for (t, e) in qq_points(s)? {
        csv.push_str(&format!("{},{}\n", format::full(t), format::full(e)));
    }
    Ok(csv)
}

#[allow(clippy::too_many_arguments)]
fn cmd_coverage(
    config: &Path,
    seed: Option<u64>,
    csv_path: Option<&Path>,
    reps: Option<u64>,
    threads: Option<u64>,
    digits: u32,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let text = fs::read_to_string(config)
        .map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
    let mut scenarios = mc::parse_scenarios(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
    if let Some(r) = reps {
        for s in &mut scenarios {
            s.replications = r as usize;
        }
    }
    let seed = seed.unwrap_or_else(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0)
    });
    writeln!(err, "seed: {seed}").map_err(io_err)?;

    let reports = scenarios
        .iter()
        .map(|cfg| match threads {
            Some(t) => mc::run_scenario_with_threads(cfg, seed, t as usize),
            None => mc::run_scenario(cfg, seed),
        })
        .collect::<crate::Result<Vec<CoverageReport>>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let csv = report::coverage_csv(&reports);
    if let Some(p) = csv_path {
        fs::write(p, &csv).map_err(io_err)?;
    }
    match format {
        OutputFormat::Csv => out.write_all(csv.as_bytes()).map_err(io_err)?,
        OutputFormat::Json => report::coverage_json(&reports, out)?,
        OutputFormat::Table => report::coverage_table(&reports, digits as usize, out)?,
    }
    Ok(EXIT_OK)
}
