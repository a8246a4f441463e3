//! Jarque-Bera normality test.

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::moments::{summarize, Sample};

/// Default significance level for the accept/reject decision.
pub const DEFAULT_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JarqueBeraResult {
    pub statistic: f64,
    pub p_value: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub n: usize,
}

impl JarqueBeraResult {
    /// Normality is accepted when the p-value reaches the level.
    pub fn accepts_normality(&self, level: f64) -> bool {
        self.p_value >= level
    }
}

/// P(χ²₂ > J) for a Jarque-Bera statistic J.
pub fn jb_p_value(statistic: f64) -> Result<f64> {
    Distribution::ChiSquare { df: 2.0 }.sf(statistic)
}

/// J_n = n [ (a_n − 3)² / 24 + b_n² / 6 ] with divisor-n moments.
pub fn jarque_bera(s: &Sample) -> Result<JarqueBeraResult> {
    let n = s.len();
    if n < 4 {
        return Err(Error::TooFewObservations {
            required: 4,
            actual: n,
        });
    }
    let summary = summarize(s);
    let (Some(skewness), Some(kurtosis)) = (summary.skewness, summary.kurtosis) else {
        return Err(Error::ZeroVariance);
    };
    let statistic =
        n as f64 * ((kurtosis - 3.0).powi(2) / 24.0 + skewness * skewness / 6.0);
    Ok(JarqueBeraResult {
        statistic,
        p_value: jb_p_value(statistic)?,
        skewness,
        kurtosis,
        n,
    })
}
