//! Samples and the descriptive statistics the interval formulas consume.
//!
//! All moments are computed in two passes (mean first, then centered
//! powers). Income data span several orders of magnitude and one-pass
//! fourth moments lose most of their digits there.

use crate::error::{Error, Result};

/// An ordered, non-empty collection of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Applies `x -> scale * x + shift` to every observation.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Sample> {
        Sample::new(self.values.iter().map(|v| scale * v + shift).collect())
    }
}

impl TryFrom<&[f64]> for Sample {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Sample::new(values.to_vec())
    }
}

/// Divisor-n k-th central moment.
pub fn central_moment(s: &Sample, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(crate::error::domain("central moment order must be positive"));
    }
    let mean = s.mean();
    Ok(centered_power_sum(s.values(), mean, k as i32) / s.len() as f64)
}

fn centered_power_sum(values: &[f64], mean: f64, k: i32) -> f64 {
    values.iter().map(|v| (v - mean).powi(k)).sum()
}

/// Cached moments of one sample.
///
/// `s2` uses divisor n − 1 and is absent when n = 1. `mu4` and the central
/// moments inside `skewness`/`kurtosis` use divisor n. `t2 = mu4 − s2²` is
/// not clamped and can be negative for small n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub s2: Option<f64>,
    pub m2: f64,
    pub m3: f64,
    pub mu4: f64,
    pub t2: Option<f64>,
    pub skewness: Option<f64>,
    pub kurtosis: Option<f64>,
}

impl SampleSummary {
    pub fn is_degenerate(&self) -> bool {
        self.m2 == 0.0
    }

    /// S_n² if it exists and is strictly positive.
    pub fn positive_s2(&self) -> Result<f64> {
        match self.s2 {
            None => Err(Error::TooFewObservations {
                required: 2,
                actual: self.n,
            }),
            Some(v) if v > 0.0 => Ok(v),
            Some(_) => Err(Error::ZeroVariance),
        }
    }

    /// T_n² = μ₄ − S⁴ if strictly positive.
    pub fn positive_t2(&self) -> Result<f64> {
        self.positive_s2()?;
        match self.t2 {
            Some(t2) if t2 > 0.0 => Ok(t2),
            _ => Err(Error::NonPositiveFourthMoment),
        }
    }
}

pub fn summarize(s: &Sample) -> SampleSummary {
    let n = s.len();
    let nf = n as f64;
    let mean = s.mean();
    let (mut sum2, mut sum3, mut sum4) = (0.0, 0.0, 0.0);
    for v in s.values() {
        let d = v - mean;
        let d2 = d * d;
        sum2 += d2;
        sum3 += d2 * d;
        sum4 += d2 * d2;
    }
    let m2 = sum2 / nf;
    let m3 = sum3 / nf;
    let mu4 = sum4 / nf;
    let s2 = (n >= 2).then(|| sum2 / (nf - 1.0));
    let t2 = s2.map(|s2| mu4 - s2 * s2);
    let (skewness, kurtosis) = if m2 > 0.0 {
        (Some(m3 / m2.powf(1.5)), Some(mu4 / (m2 * m2)))
    } else {
        (None, None)
    };
    SampleSummary {
        n,
        mean,
        s2,
        m2,
        m3,
        mu4,
        t2,
        skewness,
        kurtosis,
    }
}
