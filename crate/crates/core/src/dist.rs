//! Reference laws used by the interval constructors: standard normal,
//! Student t, chi-square and Fisher F.
//!
//! Quantiles are obtained by inverting the CDF: the root is first bracketed
//! by geometric growth, then refined by Newton steps that fall back to
//! bisection whenever a step would leave the bracket.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{domain, Result};
use crate::specfun::{self, ln_beta, ln_gamma_unchecked};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    Normal,
    StudentT { df: f64 },
    ChiSquare { df: f64 },
    FisherF { df1: f64, df2: f64 },
}

fn check_df(df: f64) -> Result<()> {
    if df.is_finite() && df > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "degrees of freedom must be positive and finite, got {df}"
        )))
    }
}

impl Distribution {
    pub fn student_t(df: f64) -> Result<Self> {
        check_df(df)?;
        Ok(Distribution::StudentT { df })
    }

    pub fn chi_square(df: f64) -> Result<Self> {
        check_df(df)?;
        Ok(Distribution::ChiSquare { df })
    }

    pub fn fisher_f(df1: f64, df2: f64) -> Result<Self> {
        check_df(df1)?;
        check_df(df2)?;
        Ok(Distribution::FisherF { df1, df2 })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Distribution::Normal => Ok(()),
            Distribution::StudentT { df } | Distribution::ChiSquare { df } => check_df(df),
            Distribution::FisherF { df1, df2 } => {
                check_df(df1)?;
                check_df(df2)
            }
        }
    }

    fn lower_support(&self) -> Option<f64> {
        match self {
            Distribution::Normal | Distribution::StudentT { .. } => None,
            Distribution::ChiSquare { .. } | Distribution::FisherF { .. } => Some(0.0),
        }
    }

    /// Cumulative distribution function.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if x.is_nan() {
            return Err(domain("cdf evaluated at NaN"));
        }
        match *self {
            Distribution::Normal => normal_cdf(x),
            Distribution::StudentT { df } => {
                if x.is_infinite() {
                    return Ok(if x > 0.0 { 1.0 } else { 0.0 });
                }
                Ok(t_cdf(x, df)?)
            }
            Distribution::ChiSquare { df } => {
                if x <= 0.0 {
                    return Ok(0.0);
                }
                specfun::reg_inc_gamma_p(0.5 * df, 0.5 * x)
            }
            Distribution::FisherF { df1, df2 } => {
                if x <= 0.0 {
                    return Ok(0.0);
                }
                if x.is_infinite() {
                    return Ok(1.0);
                }
                Ok(f_cdf(x, df1, df2)?.0)
            }
        }
    }

    /// Upper-tail probability P(X > x), computed without cancellation.
    pub fn sf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if x.is_nan() {
            return Err(domain("survival function evaluated at NaN"));
        }
        match *self {
            Distribution::Normal => normal_cdf(-x),
            Distribution::ChiSquare { df } => {
                if x <= 0.0 {
                    return Ok(1.0);
                }
                specfun::reg_inc_gamma_q(0.5 * df, 0.5 * x)
            }
            Distribution::StudentT { df } => {
                if x.is_infinite() {
                    return Ok(if x > 0.0 { 0.0 } else { 1.0 });
                }
                t_cdf(-x, df)
            }
            Distribution::FisherF { df1, df2 } => {
                if x <= 0.0 {
                    return Ok(1.0);
                }
                if x.is_infinite() {
                    return Ok(0.0);
                }
                Ok(f_cdf(x, df1, df2)?.1)
            }
        }
    }

    // Density, used only for the Newton refinement of quantiles.
    fn pdf(&self, x: f64) -> f64 {
        match *self {
            Distribution::Normal => (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
            Distribution::StudentT { df } => {
                let ln = -0.5 * df.ln() - ln_beta(0.5 * df, 0.5)
                    - 0.5 * (df + 1.0) * (x * x / df).ln_1p();
                ln.exp()
            }
            Distribution::ChiSquare { df } => {
                if x <= 0.0 {
                    return 0.0;
                }
                let k = 0.5 * df;
                ((k - 1.0) * x.ln() - 0.5 * x - k * 2f64.ln() - ln_gamma_unchecked(k)).exp()
            }
            Distribution::FisherF { df1, df2 } => {
                if x <= 0.0 {
                    return 0.0;
                }
                let (a, b) = (0.5 * df1, 0.5 * df2);
                let ln = a * (df1 / df2).ln() + (a - 1.0) * x.ln()
                    - (a + b) * (df1 * x / df2).ln_1p()
                    - ln_beta(a, b);
                ln.exp()
            }
        }
    }

    /// Quantile function: the x with cdf(x) = p, for p strictly inside (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        self.validate()?;
        if !(p > 0.0 && p < 1.0) {
            return Err(domain(format!("quantile requires 0 < p < 1, got {p}")));
        }
        if let Distribution::Normal = self {
            if p == 0.5 {
                return Ok(0.0);
            }
        }
        if let Distribution::StudentT { .. } = self {
            if p == 0.5 {
                return Ok(0.0);
            }
        }
        let (mut lo, mut hi) = self.bracket(p)?;
        let mut x = 0.5 * (lo + hi);
        for _ in 0..400 {
            let f = self.cdf(x)? - p;
            if f == 0.0 {
                return Ok(x);
            }
            if f < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            let density = self.pdf(x);
            let newton = if density > 0.0 && density.is_finite() {
                x - f / density
            } else {
                f64::NAN
            };
            let next = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if next == x {
                break;
            }
            x = next;
        }
        Ok(x)
    }

    fn bracket(&self, p: f64) -> Result<(f64, f64)> {
        let mut step = 1.0;
        match self.lower_support() {
            Some(floor) => {
                let mut hi = step;
                while self.cdf(hi)? < p {
                    step *= 2.0;
                    hi = step;
                    if !hi.is_finite() {
                        return Err(domain("quantile bracket overflow"));
                    }
                }
                Ok((floor, hi))
            }
            None => {
                let (mut lo, mut hi) = (-step, step);
                while self.cdf(lo)? > p || self.cdf(hi)? < p {
                    step *= 2.0;
                    lo = -step;
                    hi = step;
                    if !step.is_finite() {
                        return Err(domain("quantile bracket overflow"));
                    }
                }
                Ok((lo, hi))
            }
        }
    }
}

// The beta argument and its complement are each formed directly, and the
// smaller one is passed on: 1 − x near 1 would lose digits to cancellation.
fn t_cdf(x: f64, df: f64) -> Result<f64> {
    let (x2, denom) = (x * x, df + x * x);
    let tail = if x2 < df {
        0.5 - 0.5 * specfun::reg_inc_beta(x2 / denom, 0.5, 0.5 * df)?
    } else {
        0.5 * specfun::reg_inc_beta(df / denom, 0.5 * df, 0.5)?
    };
    Ok(if x > 0.0 { 1.0 - tail } else { tail })
}

/// (P(X ≤ x), P(X > x)) for the F law, x > 0 finite.
fn f_cdf(x: f64, df1: f64, df2: f64) -> Result<(f64, f64)> {
    let u = df1 * x;
    let denom = u + df2;
    if u <= df2 {
        let lower = specfun::reg_inc_beta(u / denom, 0.5 * df1, 0.5 * df2)?;
        Ok((lower, 1.0 - lower))
    } else {
        let upper = specfun::reg_inc_beta(df2 / denom, 0.5 * df2, 0.5 * df1)?;
        Ok((1.0 - upper, upper))
    }
}

fn normal_cdf(x: f64) -> Result<f64> {
    if x.is_infinite() {
        return Ok(if x > 0.0 { 1.0 } else { 0.0 });
    }
    let z = x * FRAC_1_SQRT_2;
    if z < 0.0 {
        Ok(0.5 * specfun::erfc(-z)?)
    } else {
        Ok(1.0 - 0.5 * specfun::erfc(z)?)
    }
}

/// Two-sided critical value z_{1−α/2} of the standard normal law.
pub fn z_critical(alpha: f64) -> Result<f64> {
    Distribution::Normal.quantile(1.0 - 0.5 * alpha)
}
