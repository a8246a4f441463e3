//! Seeded Monte-Carlo harness measuring the empirical coverage and width of
//! every interval constructor.
//!
//! Replication `r` draws all of its variates from `RngStream::new(seed, r)`,
//! and per-replication outcomes are reduced in replication order, so a
//! report is bit-identical whatever the thread count.

mod config;
mod rng;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use config::{parse_scenarios, ConfigError};
pub use rng::{normal_variate, RngStream};

use crate::datasets;
use crate::error::{domain, Error, Result};
use crate::moments::Sample;
use crate::onesample::{self, ConfidenceInterval, Target};
use crate::twosample::{self, RatioNormalization};

/// Data source for one sample of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// N(mean, sd²); parameterized like R's `rnorm`.
    Normal { mean: f64, sd: f64 },
    /// exp(N(mu, sigma²)).
    LogNormal { mu: f64, sigma: f64 },
    Gamma { shape: f64, scale: f64 },
    /// A bundled dataset; the first n values are used.
    FixedDataset(String),
}

impl Generator {
    pub fn validate(&self) -> Result<()> {
        let ok = |cond: bool, what: &str| {
            if cond {
                Ok(())
            } else {
                Err(domain(format!("invalid generator {self}: {what}")))
            }
        };
        match self {
            Generator::Normal { mean, sd } => {
                ok(mean.is_finite() && sd.is_finite() && *sd > 0.0, "need sd > 0")
            }
            Generator::LogNormal { mu, sigma } => ok(
                mu.is_finite() && sigma.is_finite() && *sigma > 0.0,
                "need sigma > 0",
            ),
            Generator::Gamma { shape, scale } => ok(
                shape.is_finite() && scale.is_finite() && *shape > 0.0 && *scale > 0.0,
                "need shape > 0 and scale > 0",
            ),
            Generator::FixedDataset(name) => {
                if datasets::lookup(name).is_some() {
                    Ok(())
                } else {
                    Err(domain(format!("unknown dataset {name:?}")))
                }
            }
        }
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, Generator::FixedDataset(_))
    }

    pub fn true_mean(&self) -> Option<f64> {
        match *self {
            Generator::Normal { mean, .. } => Some(mean),
            Generator::LogNormal { mu, sigma } => Some((mu + 0.5 * sigma * sigma).exp()),
            Generator::Gamma { shape, scale } => Some(shape * scale),
            Generator::FixedDataset(_) => None,
        }
    }

    pub fn true_variance(&self) -> Option<f64> {
        match *self {
            Generator::Normal { sd, .. } => Some(sd * sd),
            Generator::LogNormal { mu, sigma } => {
                let s2 = sigma * sigma;
                Some(s2.exp_m1() * (2.0 * mu + s2).exp())
            }
            Generator::Gamma { shape, scale } => Some(shape * scale * scale),
            Generator::FixedDataset(_) => None,
        }
    }

    fn draw(&self, rng: &mut RngStream, n: usize) -> Result<Sample> {
        let values = match *self {
            Generator::Normal { mean, sd } => (0..n)
                .map(|_| normal_variate(rng, mean, sd))
                .collect::<Result<Vec<_>>>()?,
            Generator::LogNormal { mu, sigma } => (0..n)
                .map(|_| (mu + sigma * rng.standard_normal()).exp())
                .collect(),
            Generator::Gamma { shape, scale } => {
                (0..n).map(|_| scale * rng.standard_gamma(shape)).collect()
            }
            Generator::FixedDataset(ref name) => {
                let data = datasets::lookup(name)
                    .ok_or_else(|| domain(format!("unknown dataset {name:?}")))?
                    .sample();
                if n > data.len() {
                    return Err(domain(format!(
                        "dataset {name} has {} values, scenario asks for {n}",
                        data.len()
                    )));
                }
                data.values()[..n].to_vec()
            }
        };
        Sample::new(values)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Normal { mean, sd } => write!(f, "normal({mean}, {sd})"),
            Generator::LogNormal { mu, sigma } => write!(f, "lognormal({mu}, {sigma})"),
            Generator::Gamma { shape, scale } => write!(f, "gamma({shape}, {scale})"),
            Generator::FixedDataset(name) => write!(f, "dataset({name})"),
        }
    }
}

/// Which constructor to evaluate for a target.
///
/// For `MeanDiff`, `Gaussian` is the pooled-variance interval and `Welch`
/// the Satterthwaite one; `Welch` is meaningless for other targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    Gaussian,
    General,
    Welch,
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" | "exact" | "pooled" => Ok(MethodTag::Gaussian),
            "general" | "fep" => Ok(MethodTag::General),
            "welch" => Ok(MethodTag::Welch),
            other => Err(domain(format!("unknown method {other:?}"))),
        }
    }
}

impl MethodTag {
    pub fn label(&self, target: Target) -> &'static str {
        match (self, target) {
            (MethodTag::Gaussian, Target::MeanDiff) => "pooled",
            (MethodTag::Gaussian, _) => "gaussian",
            (MethodTag::General, _) => "general",
            (MethodTag::Welch, _) => "welch",
        }
    }
}

pub fn parse_target(s: &str) -> Result<Target> {
    match s {
        "mean" => Ok(Target::Mean),
        "variance" | "var" => Ok(Target::Variance),
        "ratio" | "varratio" => Ok(Target::VarRatio),
        "meandiff" | "diff" => Ok(Target::MeanDiff),
        other => Err(domain(format!("unknown target {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub generator: Generator,
    /// Second-sample generator; defaults to `generator` when absent.
    pub generator2: Option<Generator>,
    pub n1: usize,
    pub n2: Option<usize>,
    pub alpha: f64,
    pub replications: usize,
    pub target: Target,
    pub methods: Vec<MethodTag>,
    pub ratio_mode: RatioNormalization,
}

pub const DEFAULT_REPLICATIONS: usize = 20_000;

impl ScenarioConfig {
    /// One-sample scenario with both methods and the default replication count.
    pub fn one_sample(generator: Generator, n: usize, alpha: f64, target: Target) -> Self {
        ScenarioConfig {
            name: "scenario".into(),
            generator,
            generator2: None,
            n1: n,
            n2: None,
            alpha,
            replications: DEFAULT_REPLICATIONS,
            target,
            methods: vec![MethodTag::Gaussian, MethodTag::General],
            ratio_mode: RatioNormalization::default(),
        }
    }

    pub fn is_two_sample(&self) -> bool {
        matches!(self.target, Target::VarRatio | Target::MeanDiff)
    }

    pub fn second_generator(&self) -> &Generator {
        self.generator2.as_ref().unwrap_or(&self.generator)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(domain("replications must be at least 1"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(domain(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.n1 < 2 {
            return Err(domain("n1 must be at least 2"));
        }
        if self.methods.is_empty() {
            return Err(domain("at least one method is required"));
        }
        self.generator.validate()?;
        if self.is_two_sample() {
            match self.n2 {
                Some(n2) if n2 >= 2 => {}
                _ => return Err(domain("two-sample targets need n2 >= 2")),
            }
            self.second_generator().validate()?;
        } else if self.n2.is_some() || self.generator2.is_some() {
            return Err(domain(format!(
                "target {} is one-sample; n2/generator2 not allowed",
                self.target
            )));
        }
        if self.target != Target::MeanDiff && self.methods.contains(&MethodTag::Welch) {
            return Err(domain("welch applies to the meandiff target only"));
        }
        Ok(())
    }

    /// Population value of the target, when the generators define one.
    pub fn true_parameter(&self) -> Option<f64> {
        let g2 = self.second_generator();
        match self.target {
            Target::Mean => self.generator.true_mean(),
            Target::Variance => self.generator.true_variance(),
            Target::VarRatio => Some(self.generator.true_variance()? / g2.true_variance()?),
            Target::MeanDiff => Some(self.generator.true_mean()? - g2.true_mean()?),
        }
    }

    fn build(&self, method: MethodTag, x: &Sample, y: Option<&Sample>) -> Result<ConfidenceInterval> {
        let a = self.alpha;
        let second = || y.ok_or_else(|| domain("second sample missing"));
        match (self.target, method) {
            (Target::Mean, MethodTag::Gaussian) => onesample::ci_mean_gaussian(x, a),
            (Target::Mean, MethodTag::General) => onesample::ci_mean_general(x, a),
            (Target::Variance, MethodTag::Gaussian) => onesample::ci_var_gaussian(x, a),
            (Target::Variance, MethodTag::General) => onesample::ci_var_general(x, a),
            (Target::VarRatio, MethodTag::Gaussian) => twosample::ci_ratio_gaussian(x, second()?, a),
            (Target::VarRatio, MethodTag::General) => {
                twosample::ci_ratio_general(x, second()?, a, self.ratio_mode)
            }
            (Target::MeanDiff, MethodTag::Gaussian) => twosample::ci_dm_pooled(x, second()?, a),
            (Target::MeanDiff, MethodTag::Welch) => twosample::ci_dm_welch(x, second()?, a),
            (Target::MeanDiff, MethodTag::General) => twosample::ci_dm_general(x, second()?, a),
            (_, MethodTag::Welch) => Err(domain("welch applies to the meandiff target only")),
        }
    }
}

/// Aggregated statistics for one method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodReport {
    pub method: MethodTag,
    pub label: &'static str,
    /// Replications in which the interval could be built.
    pub applicable: usize,
    /// Replications in which the method was inapplicable.
    pub failures: usize,
    pub covered: usize,
    /// Fraction of applicable replications covering the true value; None for
    /// fixed datasets or when no replication was applicable.
    pub coverage: Option<f64>,
    pub mean_width: f64,
    pub width_std: f64,
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub truncated: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub config: ScenarioConfig,
    pub seed: u64,
    pub replications_run: usize,
    pub true_value: Option<f64>,
    pub methods: Vec<MethodReport>,
}

impl CoverageReport {
    pub fn method(&self, tag: MethodTag) -> Option<&MethodReport> {
        self.methods.iter().find(|m| m.method == tag)
    }
}

/// Binomial standard error of a coverage estimate at nominal level `p`.
pub fn binomial_se(p: f64, replications: usize) -> f64 {
    (p * (1.0 - p) / replications as f64).sqrt()
}

#[derive(Debug, Clone, Copy)]
enum Outcome {
    Built {
        lower: f64,
        upper: f64,
        covered: bool,
        truncated: bool,
    },
    Inapplicable,
}

fn replicate(
    cfg: &ScenarioConfig,
    seed: u64,
    index: u64,
    truth: Option<f64>,
) -> Result<Vec<Outcome>> {
    let mut rng = RngStream::new(seed, index);
    let x = cfg.generator.draw(&mut rng, cfg.n1)?;
    let y = match cfg.n2 {
        Some(n2) if cfg.is_two_sample() => Some(cfg.second_generator().draw(&mut rng, n2)?),
        _ => None,
    };
    cfg.methods
        .iter()
        .map(|&m| match cfg.build(m, &x, y.as_ref()) {
            Ok(ci) => Ok(Outcome::Built {
                lower: ci.lower,
                upper: ci.upper,
                covered: truth.is_some_and(|t| ci.contains(t)),
                truncated: ci.truncated_at_zero,
            }),
            Err(
                Error::ZeroVariance
                | Error::NonPositiveFourthMoment
                | Error::TooFewObservations { .. },
            ) => Ok(Outcome::Inapplicable),
            Err(e) => Err(e),
        })
        .collect()
}

/// Runs a scenario on the current rayon pool.
pub fn run_scenario(cfg: &ScenarioConfig, seed: u64) -> Result<CoverageReport> {
    cfg.validate()?;
    let truth = cfg.true_parameter();
    let any_random =
        cfg.generator.is_random() || cfg.is_two_sample() && cfg.second_generator().is_random();
    // Fixed data give the same interval in every replication.
    let reps = if any_random { cfg.replications } else { 1 };
    let outcomes: Vec<Vec<Outcome>> = (0..reps as u64)
        .into_par_iter()
        .map(|r| replicate(cfg, seed, r, truth))
        .collect::<Result<_>>()?;

    let methods = cfg
        .methods
        .iter()
        .enumerate()
        .map(|(k, &tag)| aggregate(tag, cfg.target, outcomes.iter().map(|o| o[k]), truth.is_some()))
        .collect();
    Ok(CoverageReport {
        config: cfg.clone(),
        seed,
        replications_run: reps,
        true_value: truth,
        methods,
    })
}

/// Runs a scenario on a dedicated pool with `threads` workers.
pub fn run_scenario_with_threads(
    cfg: &ScenarioConfig,
    seed: u64,
    threads: usize,
) -> Result<CoverageReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| domain(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_scenario(cfg, seed))
}

fn aggregate(
    tag: MethodTag,
    target: Target,
    outcomes: impl Iterator<Item = Outcome>,
    has_truth: bool,
) -> MethodReport {
    let mut widths = Vec::new();
    let (mut failures, mut covered, mut truncated) = (0, 0, 0);
    let (mut sum_lo, mut sum_hi) = (0.0, 0.0);
    for o in outcomes {
        match o {
            Outcome::Built {
                lower,
                upper,
                covered: c,
                truncated: t,
            } => {
                widths.push(upper - lower);
                sum_lo += lower;
                sum_hi += upper;
                covered += c as usize;
                truncated += t as usize;
            }
            Outcome::Inapplicable => failures += 1,
        }
    }
    let applicable = widths.len();
    let nf = applicable as f64;
    let mean_width = if applicable > 0 {
        widths.iter().sum::<f64>() / nf
    } else {
        f64::NAN
    };
    let width_std = if applicable > 1 {
        (widths.iter().map(|w| (w - mean_width).powi(2)).sum::<f64>() / (nf - 1.0)).sqrt()
    } else {
        0.0
    };
    MethodReport {
        method: tag,
        label: tag.label(target),
        applicable,
        failures,
        covered,
        coverage: (has_truth && applicable > 0).then(|| covered as f64 / nf),
        mean_width,
        width_std,
        mean_lower: sum_lo / nf,
        mean_upper: sum_hi / nf,
        truncated,
    }
}
