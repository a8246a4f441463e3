//! Confidence intervals for one and two samples.
//!
//! Every target (mean, variance, variance ratio, mean difference) gets an
//! exact interval that assumes Gaussian data and a general asymptotic
//! interval derived from the functional empirical process, which needs
//! only a finite fourth moment. The crate also ships the numerical
//! substrate (special functions and CDF/quantile inversion), a Jarque-Bera
//! normality test, a seeded Monte-Carlo coverage harness and the `fepci`
//! command-line front end.
//!
//! ```
//! use fepci::moments::Sample;
//! use fepci::onesample::{ci_mean_gaussian, ci_mean_general};
//!
//! let s = Sample::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
//! let exact = ci_mean_gaussian(&s, 0.05).unwrap();
//! let general = ci_mean_general(&s, 0.05).unwrap();
//! assert_eq!(exact.point, general.point);
//! assert!(general.width() < exact.width());
//! ```

pub mod cli;
pub mod datasets;
pub mod dist;
mod error;
pub mod mc;
pub mod moments;
pub mod normality;
pub mod onesample;
pub mod specfun;
pub mod twosample;

pub use error::{Error, Result};
