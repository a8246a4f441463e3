//! Two independent samples: variance ratio σ₁²/σ₂² and mean difference
//! Δm = m₁ − m₂.
//!
//! The general (asymptotic) intervals use the normalizers
//!
//! * â² = n₁n₂ / (n₁T₂² + n₂T₁²) for the variance ratio,
//! * b̂² = n₁n₂ / (n₂S₁² + n₁S₂²) for the mean difference,
//!
//! and need neither Gaussian data nor a decision on equality of variances.

use std::fmt;
use std::str::FromStr;

use crate::dist::{z_critical, Distribution};
use crate::error::{domain, Error, Result};
use crate::moments::{summarize, Sample, SampleSummary};
use crate::onesample::{check_alpha, ConfidenceInterval, Method, Target};

/// How T₁², T₂² enter the variance-ratio normalizer â.
///
/// `TheoremScaled` carries the delta-method factors of the ratio
/// S₁²/S₂², T₁² = (μ₄₁ − S₁⁴)/S₂⁴ and T₂² = S₁⁴(μ₄₂ − S₂⁴)/S₂⁸, so that
/// â (S₁²/S₂² − σ₁²/σ₂²) is asymptotically standard normal.
/// `TableUnscaled` uses the bare Tⱼ² = μ₄ⱼ − Sⱼ⁴ as in the published
/// formula table and R code; it is only correct when σ₂ = 1 = σ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatioNormalization {
    #[default]
    TheoremScaled,
    TableUnscaled,
}

impl FromStr for RatioNormalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" | "theorem-scaled" => Ok(RatioNormalization::TheoremScaled),
            "table-unscaled" | "table" => Ok(RatioNormalization::TableUnscaled),
            other => Err(domain(format!(
                "unknown ratio mode {other:?} (expected theorem or table-unscaled)"
            ))),
        }
    }
}

impl fmt::Display for RatioNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioNormalization::TheoremScaled => "theorem",
            RatioNormalization::TableUnscaled => "table-unscaled",
        })
    }
}

/// Plug-in normalizers shared by the two-sample intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSampleNormalizers {
    /// None when a fourth-moment statistic is nonpositive.
    pub a_hat: Option<f64>,
    pub b_hat: f64,
    pub welch_f: f64,
}

struct Pair {
    x: SampleSummary,
    y: SampleSummary,
    s2x: f64,
    s2y: f64,
}

impl Pair {
    fn new(x: &Sample, y: &Sample) -> Result<Self> {
        let x = summarize(x);
        let y = summarize(y);
        let s2x = x.positive_s2()?;
        let s2y = y.positive_s2()?;
        Ok(Pair { x, y, s2x, s2y })
    }

    fn n1(&self) -> f64 {
        self.x.n as f64
    }

    fn n2(&self) -> f64 {
        self.y.n as f64
    }

    fn a_hat(&self, mode: RatioNormalization) -> Result<f64> {
        let t1_raw = self.x.positive_t2()?;
        let t2_raw = self.y.positive_t2()?;
        let (t1, t2) = match mode {
            RatioNormalization::TableUnscaled => (t1_raw, t2_raw),
            RatioNormalization::TheoremScaled => {
                let s2y2 = self.s2y * self.s2y;
                (t1_raw / s2y2, self.s2x * self.s2x * t2_raw / (s2y2 * s2y2))
            }
        };
        let (n1, n2) = (self.n1(), self.n2());
        Ok((n1 * n2 / (n1 * t2 + n2 * t1)).sqrt())
    }

    fn b_hat(&self) -> f64 {
        let (n1, n2) = (self.n1(), self.n2());
        (n1 * n2 / (n2 * self.s2x + n1 * self.s2y)).sqrt()
    }

    fn welch_f(&self) -> f64 {
        let (n1, n2) = (self.n1(), self.n2());
        let vx = self.s2x / n1;
        let vy = self.s2y / n2;
        (vx + vy).powi(2) / (vx * vx / (n1 - 1.0) + vy * vy / (n2 - 1.0))
    }

    fn mean_diff(&self) -> f64 {
        self.x.mean - self.y.mean
    }
}

pub fn normalizers(
    x: &Sample,
    y: &Sample,
    mode: RatioNormalization,
) -> Result<TwoSampleNormalizers> {
    let p = Pair::new(x, y)?;
    Ok(TwoSampleNormalizers {
        a_hat: p.a_hat(mode).ok(),
        b_hat: p.b_hat(),
        welch_f: p.welch_f(),
    })
}

pub fn ci_ratio_gaussian(x: &Sample, y: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    let ratio = p.s2x / p.s2y;
    let f = Distribution::fisher_f(p.n1() - 1.0, p.n2() - 1.0)?;
    Ok(ConfidenceInterval::new(
        ratio,
        ratio / f.quantile(1.0 - 0.5 * alpha)?,
        ratio / f.quantile(0.5 * alpha)?,
        alpha,
        Method::GaussianExact,
        Target::VarRatio,
    ))
}

pub fn ci_ratio_general(
    x: &Sample,
    y: &Sample,
    alpha: f64,
    mode: RatioNormalization,
) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    let a_hat = p.a_hat(mode)?;
    Ok(ConfidenceInterval::symmetric(
        p.s2x / p.s2y,
        z_critical(alpha)? / a_hat,
        alpha,
        Method::FepGeneral,
        Target::VarRatio,
    ))
}

/// ((n₁−1)S₁² + (n₂−1)S₂²) / (n₁ + n₂ − 2).
pub fn pooled_s2(x: &Sample, y: &Sample) -> Result<f64> {
    let (n1, n2) = (x.len(), y.len());
    if n1 + n2 < 3 {
        return Err(Error::TooFewObservations {
            required: 3,
            actual: n1 + n2,
        });
    }
    let sx = summarize(x);
    let sy = summarize(y);
    let pooled = (sx.m2 * n1 as f64 + sy.m2 * n2 as f64) / (n1 + n2 - 2) as f64;
    if pooled > 0.0 {
        Ok(pooled)
    } else {
        Err(Error::ZeroVariance)
    }
}

/// Welch–Satterthwaite effective degrees of freedom.
pub fn welch_df(x: &Sample, y: &Sample) -> Result<f64> {
    Ok(Pair::new(x, y)?.welch_f())
}

pub fn ci_dm_pooled(x: &Sample, y: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    let pooled = pooled_s2(x, y)?;
    let (n1, n2) = (p.n1(), p.n2());
    let t = Distribution::student_t(n1 + n2 - 2.0)?.quantile(1.0 - 0.5 * alpha)?;
    Ok(ConfidenceInterval::symmetric(
        p.mean_diff(),
        pooled.sqrt() * t * (1.0 / n1 + 1.0 / n2).sqrt(),
        alpha,
        Method::GaussianExact,
        Target::MeanDiff,
    ))
}

pub fn ci_dm_welch(x: &Sample, y: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    let t = Distribution::student_t(p.welch_f())?.quantile(1.0 - 0.5 * alpha)?;
    let se = (p.s2x / p.n1() + p.s2y / p.n2()).sqrt();
    Ok(ConfidenceInterval::symmetric(
        p.mean_diff(),
        t * se,
        alpha,
        Method::GaussianExact,
        Target::MeanDiff,
    ))
}

pub fn ci_dm_general(x: &Sample, y: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    Ok(ConfidenceInterval::symmetric(
        p.mean_diff(),
        z_critical(alpha)? / p.b_hat(),
        alpha,
        Method::FepGeneral,
        Target::MeanDiff,
    ))
}

/// Variance-ratio F interval as computed by the original R implementation,
/// which takes the denominator degrees of freedom as n₂ − 2.
pub fn ci_ratio_gaussian_rcode(x: &Sample, y: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    if p.y.n < 3 {
        return Err(Error::TooFewObservations {
            required: 3,
            actual: p.y.n,
        });
    }
    let ratio = p.s2x / p.s2y;
    let f = Distribution::fisher_f(p.n1() - 1.0, p.n2() - 2.0)?;
    Ok(ConfidenceInterval::new(
        ratio,
        ratio / f.quantile(1.0 - 0.5 * alpha)?,
        ratio / f.quantile(0.5 * alpha)?,
        alpha,
        Method::GaussianExact,
        Target::VarRatio,
    ))
}

/// Unequal-variance Δm interval as computed by the original R
/// implementation: unpooled standard error with t(n₁ + n₂ − 2) instead of
/// t(f).
pub fn ci_dm_welch_rcode(x: &Sample, y: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let p = Pair::new(x, y)?;
    let t = Distribution::student_t(p.n1() + p.n2() - 2.0)?.quantile(1.0 - 0.5 * alpha)?;
    let se = (p.s2x / p.n1() + p.s2y / p.n2()).sqrt();
    Ok(ConfidenceInterval::symmetric(
        p.mean_diff(),
        t * se,
        alpha,
        Method::GaussianExact,
        Target::MeanDiff,
    ))
}

/// Largest-to-smallest size ratio beyond which the balancedness hypothesis
/// behind the general intervals is reported as doubtful.
pub const IMBALANCE_WARN_RATIO: f64 = 5.0;

pub fn is_imbalanced(n1: usize, n2: usize) -> bool {
    let (lo, hi) = (n1.min(n2) as f64, n1.max(n2) as f64);
    hi / lo > IMBALANCE_WARN_RATIO
}
