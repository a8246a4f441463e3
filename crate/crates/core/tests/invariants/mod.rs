//! Randomized invariant suites, 1000 cases per property. Shared by the
//! `properties` test target and the acceptance run.

use fepci::dist::Distribution;
use fepci::moments::{summarize, Sample};
use fepci::normality::{jarque_bera, jb_p_value};
use fepci::onesample::{
    ci_mean_gaussian, ci_mean_general, ci_var_gaussian, ci_var_general, ConfidenceInterval,
};
use fepci::specfun::{erf, ln_gamma, reg_inc_beta, reg_inc_gamma_p};
use fepci::twosample::{
    ci_dm_general, ci_dm_pooled, ci_dm_welch, ci_ratio_general, normalizers, welch_df,
    RatioNormalization,
};
use proptest::prelude::*;

pub const CASES: u32 = 1000;

fn config() -> ProptestConfig {
    // no regression files: the suites also run outside the test harness
    ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(CASES) }
}

fn close(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    (a - b).abs() <= rel * scale.abs().max(b.abs()).max(1e-300)
}

fn values(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0..100.0f64, min_len..max_len)
}

fn sample(min_len: usize, max_len: usize) -> impl Strategy<Value = Sample> {
    values(min_len, max_len)
        .prop_filter("nondegenerate", |v| v.iter().any(|x| *x != v[0]))
        .prop_map(|v| Sample::new(v).unwrap())
}

fn df() -> impl Strategy<Value = f64> {
    prop_oneof![0.5..5.0f64, 5.0..60.0f64, 60.0..500.0f64]
}

pub mod specfun_props {
    use super::*;

    pub fn erf_is_odd() {
        proptest!(config(), |(x in -8.0..8.0f64)| {
            prop_assert!((erf(x).unwrap() + erf(-x).unwrap()).abs() < 1e-14);
        });
    }

    pub fn inc_gamma_monotone() {
        proptest!(config(), |(a in 0.05..80.0f64, x in 0.0..150.0f64, dx in 0.0..5.0f64)| {
            prop_assert!(reg_inc_gamma_p(a, x + dx).unwrap() >= reg_inc_gamma_p(a, x).unwrap());
        });
    }

    pub fn inc_beta_monotone() {
        proptest!(config(), |(a in 0.1..60.0f64, b in 0.1..60.0f64, x in 0.0..1.0f64, t in 0.0..1.0f64)| {
            let y = x + t * (1.0 - x);
            prop_assert!(reg_inc_beta(y, a, b).unwrap() >= reg_inc_beta(x, a, b).unwrap());
        });
    }

    pub fn inc_beta_symmetry() {
        proptest!(config(), |(a in 0.1..60.0f64, b in 0.1..60.0f64, x in 0.0..=1.0f64)| {
            let s = reg_inc_beta(x, a, b).unwrap() + reg_inc_beta(1.0 - x, b, a).unwrap();
            prop_assert!((s - 1.0).abs() < 1e-12, "sum {}", s);
        });
    }

    pub fn ln_gamma_recurrence() {
        proptest!(config(), |(x in 0.5..100.0f64)| {
            let d = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
            prop_assert!((d - x.ln()).abs() < 1e-10);
        });
    }
}

pub mod dist_props {
    use super::*;

    fn law() -> impl Strategy<Value = Distribution> {
        prop_oneof![
            Just(Distribution::Normal),
            df().prop_map(|d| Distribution::student_t(d).unwrap()),
            df().prop_map(|d| Distribution::chi_square(d).unwrap()),
            (df(), df()).prop_map(|(a, b)| Distribution::fisher_f(a, b).unwrap()),
        ]
    }

    pub fn quantile_round_trip() {
        proptest!(config(), |(d in law(), p in 0.005..0.995f64)| {
            let q = d.quantile(p).unwrap();
            prop_assert!((d.cdf(q).unwrap() - p).abs() < 1e-9);
        });
    }

    pub fn quantile_strictly_increasing() {
        proptest!(config(), |(d in law(), p in 0.005..0.99f64, dp in 1e-3..5e-3f64)| {
            prop_assert!(d.quantile(p + dp).unwrap() > d.quantile(p).unwrap());
        });
    }

    pub fn student_dominates_normal() {
        proptest!(config(), |(nu in df(), p in 0.5001..0.9995f64)| {
            let t = Distribution::student_t(nu).unwrap().quantile(p).unwrap();
            prop_assert!(t > Distribution::Normal.quantile(p).unwrap());
        });
    }

    pub fn fisher_reciprocity() {
        proptest!(config(), |(a in df(), b in df(), p in 0.005..0.995f64)| {
            let q = Distribution::fisher_f(a, b).unwrap().quantile(p).unwrap();
            let r = Distribution::fisher_f(b, a).unwrap().quantile(1.0 - p).unwrap();
            prop_assert!(close(q, 1.0 / r, 1e-8, 1.0 / r));
        });
    }
}

pub mod moments_props {
    use super::*;

    pub fn location_invariance() {
        proptest!(config(), |(s in sample(2, 60), c in -1000.0..1000.0f64)| {
            let a = summarize(&s);
            let b = summarize(&s.affine(1.0, c).unwrap());
            prop_assert!(close(b.mean, a.mean + c, 1e-12, c.abs() + a.mean.abs()));
            prop_assert!(close(b.s2.unwrap(), a.s2.unwrap(), 1e-9, a.s2.unwrap()));
            prop_assert!(close(b.mu4, a.mu4, 1e-9, a.mu4));
            // t2 is a difference of two fourth-order quantities; judge it on their scale
            prop_assert!(close(b.t2.unwrap(), a.t2.unwrap(), 1e-9, a.mu4));
            prop_assert!(close(b.skewness.unwrap(), a.skewness.unwrap(), 1e-9, 1.0));
            prop_assert!(close(b.kurtosis.unwrap(), a.kurtosis.unwrap(), 1e-9, 1.0));
        });
    }

    pub fn scale_equivariance() {
        proptest!(config(), |(s in sample(2, 60), lambda in 0.01..100.0f64)| {
            let a = summarize(&s);
            let b = summarize(&s.affine(lambda, 0.0).unwrap());
            let l2 = lambda * lambda;
            prop_assert!(close(b.mean, lambda * a.mean, 1e-9, lambda * 100.0));
            prop_assert!(close(b.s2.unwrap(), l2 * a.s2.unwrap(), 1e-9, 0.0));
            prop_assert!(close(b.mu4, l2 * l2 * a.mu4, 1e-9, 0.0));
            prop_assert!(close(b.t2.unwrap(), l2 * l2 * a.t2.unwrap(), 1e-9, l2 * l2 * a.mu4));
            prop_assert!(close(b.skewness.unwrap(), a.skewness.unwrap(), 1e-9, 1.0));
            prop_assert!(close(b.kurtosis.unwrap(), a.kurtosis.unwrap(), 1e-9, 1.0));
        });
    }

    pub fn summary_ranges() {
        proptest!(config(), |(s in sample(2, 60))| {
            let m = summarize(&s);
            prop_assert!(m.s2.unwrap() > 0.0 && m.mu4 > 0.0);
            prop_assert!(m.kurtosis.unwrap() >= 1.0 - 1e-12);
        });
    }
}

pub mod normality_props {
    use super::*;

    pub fn jb_affine_invariance() {
        proptest!(config(), |(s in sample(4, 80), a in prop_oneof![-50.0..-0.02f64, 0.02..50.0f64], b in -500.0..500.0f64)| {
            let j0 = jarque_bera(&s).unwrap().statistic;
            let j1 = jarque_bera(&s.affine(a, b).unwrap()).unwrap().statistic;
            prop_assert!(close(j1, j0, 1e-9, j0.max(1e-3)), "{} vs {}", j1, j0);
        });
    }

    pub fn p_value_decreasing() {
        proptest!(config(), |(j in 0.0..200.0f64, dj in 1e-6..10.0f64)| {
            let (p0, p1) = (jb_p_value(j).unwrap(), jb_p_value(j + dj).unwrap());
            prop_assert!(p1 <= p0);
            prop_assert!((0.0..=1.0).contains(&p1));
        });
    }

    pub fn p_value_is_exponential() {
        proptest!(config(), |(j in 0.0..200.0f64)| {
            let p = jb_p_value(j).unwrap();
            prop_assert!(close(p, (-0.5 * j).exp(), 1e-12, 0.0));
        });
    }
}

pub mod onesample_props {
    use super::*;

    type Ctor = fn(&Sample, f64) -> fepci::Result<ConfidenceInterval>;
    const CTORS: [Ctor; 4] = [ci_mean_gaussian, ci_mean_general, ci_var_gaussian, ci_var_general];

    pub fn mean_intervals_share_center_general_narrower() {
        proptest!(config(), |(s in sample(2, 60), alpha in 0.001..0.5f64)| {
            let g = ci_mean_gaussian(&s, alpha).unwrap();
            let f = ci_mean_general(&s, alpha).unwrap();
            prop_assert_eq!(g.point, f.point);
            prop_assert!(close(0.5 * (g.lower + g.upper), 0.5 * (f.lower + f.upper), 1e-12, 100.0));
            prop_assert!(f.width() < g.width());
            prop_assert!(g.lower <= g.point && g.point <= g.upper);
        });
    }

    pub fn mean_shift_equivariance() {
        proptest!(config(), |(s in sample(2, 60), c in -1000.0..1000.0f64, alpha in 0.001..0.5f64)| {
            let shifted = s.affine(1.0, c).unwrap();
            for ctor in [ci_mean_gaussian as Ctor, ci_mean_general] {
                let (a, b) = (ctor(&s, alpha).unwrap(), ctor(&shifted, alpha).unwrap());
                prop_assert!((b.lower - a.lower - c).abs() < 1e-9);
                prop_assert!((b.upper - a.upper - c).abs() < 1e-9);
            }
        });
    }

    pub fn variance_scale_equivariance() {
        proptest!(config(), |(s in sample(2, 60), lambda in 0.01..100.0f64, alpha in 0.001..0.5f64)| {
            let scaled = s.affine(lambda, 0.0).unwrap();
            let l2 = lambda * lambda;
            for ctor in [ci_var_gaussian as Ctor, ci_var_general] {
                let (Ok(a), Ok(b)) = (ctor(&s, alpha), ctor(&scaled, alpha)) else { continue };
                prop_assert!(close(b.raw_lower, l2 * a.raw_lower, 1e-9, l2 * a.upper));
                prop_assert!(close(b.upper, l2 * a.upper, 1e-9, 0.0));
            }
        });
    }

    pub fn nesting() {
        proptest!(config(), |(s in sample(2, 60), a1 in 0.001..0.5f64, t in 0.01..1.0f64)| {
            let a2 = a1 + t * (0.9 - a1);
            for ctor in CTORS {
                let (Ok(wide), Ok(narrow)) = (ctor(&s, a1), ctor(&s, a2)) else { continue };
                prop_assert!(wide.lower <= narrow.lower && narrow.upper <= wide.upper);
            }
        });
    }

    pub fn clamping_is_flagged() {
        proptest!(config(), |(s in sample(2, 20), alpha in 0.001..0.5f64)| {
            if let Ok(ci) = ci_var_general(&s, alpha) {
                prop_assert_eq!(ci.truncated_at_zero, ci.raw_lower < 0.0);
                prop_assert!(ci.lower >= 0.0 && ci.lower <= ci.upper);
                if !ci.truncated_at_zero {
                    prop_assert_eq!(ci.lower, ci.raw_lower);
                }
            }
        });
    }
}

pub mod twosample_props {
    use super::*;

    type Ctor = fn(&Sample, &Sample, f64) -> fepci::Result<ConfidenceInterval>;
    const DM: [Ctor; 3] = [ci_dm_pooled, ci_dm_welch, ci_dm_general];

    fn equal_sized_pair() -> impl Strategy<Value = (Sample, Sample)> {
        (2usize..50).prop_flat_map(|n| (sample(n, n + 1), sample(n, n + 1)))
    }

    pub fn mean_difference_antisymmetry() {
        proptest!(config(), |(x in sample(2, 40), y in sample(2, 40), alpha in 0.001..0.5f64)| {
            for ctor in DM {
                let (a, b) = (ctor(&x, &y, alpha).unwrap(), ctor(&y, &x, alpha).unwrap());
                prop_assert!((a.lower + b.upper).abs() < 1e-9);
                prop_assert!((a.upper + b.lower).abs() < 1e-9);
            }
        });
    }

    pub fn equal_sizes_standard_errors_coincide() {
        proptest!(config(), |((x, y) in equal_sized_pair(), alpha in 0.001..0.5f64)| {
            let n = x.len() as f64;
            let (sx, sy) = (summarize(&x).s2.unwrap(), summarize(&y).s2.unwrap());
            let b_hat = normalizers(&x, &y, RatioNormalization::default()).unwrap().b_hat;
            let se = (sx / n + sy / n).sqrt();
            prop_assert!(close(1.0 / b_hat, se, 1e-9, 0.0));
            let general = ci_dm_general(&x, &y, alpha).unwrap();
            let welch = ci_dm_welch(&x, &y, alpha).unwrap();
            prop_assert!(general.width() < welch.width());
        });
    }

    pub fn pooled_equals_welch_for_equal_variances() {
        proptest!(config(), |(x in sample(2, 40), c in -100.0..100.0f64, alpha in 0.001..0.5f64)| {
            // y is a shifted copy: same n and same S²
            let y = x.affine(1.0, c).unwrap();
            let (p, w) = (ci_dm_pooled(&x, &y, alpha).unwrap(), ci_dm_welch(&x, &y, alpha).unwrap());
            prop_assert!((p.lower - w.lower).abs() < 1e-9 && (p.upper - w.upper).abs() < 1e-9);
        });
    }

    pub fn ratio_scale_law() {
        proptest!(config(), |(x in sample(3, 40), y in sample(3, 40), lambda in 0.05..20.0f64, alpha in 0.001..0.5f64)| {
            let scaled = y.affine(lambda, 0.0).unwrap();
            let (Ok(a), Ok(b)) = (
                ci_ratio_general(&x, &y, alpha, RatioNormalization::TheoremScaled),
                ci_ratio_general(&x, &scaled, alpha, RatioNormalization::TheoremScaled),
            ) else { return Ok(()) };
            let k = 1.0 / (lambda * lambda);
            prop_assert!(close(b.point, k * a.point, 1e-9, 0.0));
            prop_assert!(close(b.raw_lower, k * a.raw_lower, 1e-9, k * a.upper));
            prop_assert!(close(b.upper, k * a.upper, 1e-9, 0.0));
        });
    }

    pub fn welch_df_bounds() {
        proptest!(config(), |(x in sample(2, 40), y in sample(2, 40))| {
            let f = welch_df(&x, &y).unwrap();
            let (n1, n2) = (x.len() as f64, y.len() as f64);
            prop_assert!(f >= n1.min(n2) - 1.0 - 1e-9 && f <= n1 + n2 - 2.0 + 1e-9, "f = {}", f);
        });
    }
}

pub mod mc_props {
    use super::*;
    use fepci::mc::{
        normal_variate, run_scenario, run_scenario_with_threads, Generator, MethodTag, RngStream,
        ScenarioConfig,
    };
    use fepci::onesample::Target;

    pub fn streams_are_reproducible() {
        proptest!(config(), |(seed in any::<u64>(), stream in any::<u64>())| {
            let mut a = RngStream::new(seed, stream);
            let mut b = RngStream::new(seed, stream);
            for _ in 0..10 {
                prop_assert_eq!(
                    normal_variate(&mut a, 0.0, 1.0).unwrap().to_bits(),
                    normal_variate(&mut b, 0.0, 1.0).unwrap().to_bits()
                );
            }
        });
    }

    pub fn general_mean_interval_narrower_on_average() {
        proptest!(config(), |(seed in any::<u64>(), n in 2usize..40, m in -10.0..10.0f64, sd in 0.1..10.0f64)| {
            let mut cfg = ScenarioConfig::one_sample(Generator::Normal { mean: m, sd }, n, 0.05, Target::Mean);
            cfg.replications = 10;
            let r = run_scenario(&cfg, seed).unwrap();
            let g = r.method(MethodTag::Gaussian).unwrap();
            let f = r.method(MethodTag::General).unwrap();
            prop_assert!(f.mean_width < g.mean_width);
            prop_assert_eq!(f.failures + f.applicable, 10);
        });
    }

    pub fn reports_independent_of_thread_count() {
        proptest!(config(), |(seed in any::<u64>(), n in 2usize..20, threads in 2usize..6)| {
            let mut cfg = ScenarioConfig::one_sample(Generator::Gamma { shape: 2.0, scale: 1.5 }, n, 0.1, Target::Variance);
            cfg.replications = 6;
            let one = run_scenario_with_threads(&cfg, seed, 1).unwrap();
            let many = run_scenario_with_threads(&cfg, seed, threads).unwrap();
            prop_assert_eq!(format!("{one:?}"), format!("{many:?}"));
        });
    }
}

pub mod cli_props {
    use super::*;
    use std::io::Write;

    fn run(args: &[&str]) -> (i32, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = fepci::cli::run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    pub fn digits_never_change_csv() {
        proptest!(config(), |(v in values(2, 30), d1 in 1usize..16, d2 in 1usize..16)| {
            let mut f = tempfile::NamedTempFile::new().unwrap();
            for x in &v {
                writeln!(f, "{x:e}").unwrap();
            }
            let path = f.path().to_str().unwrap();
            let a = run(&["fepci", "one", path, "--format", "csv", "--digits", &d1.to_string()]);
            let b = run(&["fepci", "one", path, "--format", "csv", "--digits", &d2.to_string()]);
            prop_assert_eq!(a, b);
        });
    }

    pub fn degraded_rows_carry_markers() {
        proptest!(config(), |(v in values(2, 8))| {
            let mut f = tempfile::NamedTempFile::new().unwrap();
            for x in &v {
                writeln!(f, "{x:e}").unwrap();
            }
            let (code, text) = run(&["fepci", "one", f.path().to_str().unwrap()]);
            let mut partial = false;
            for line in text.lines().filter(|l| l.contains(" - ")) {
                partial = true;
                prop_assert!(line.contains("[inapplicable:"), "{}", line);
            }
            for line in text.lines().filter(|l| l.contains("truncated")) {
                prop_assert!(line.contains("[truncated-at-zero raw-lower="), "{}", line);
            }
            prop_assert_eq!(code, if partial { 2 } else { 0 });
        });
    }
}

/// Every suite as (module, name, runner). Runners panic on a failing case.
pub const ALL: &[(&str, &str, fn())] = &[
    ("specfun_props", "erf_is_odd", specfun_props::erf_is_odd),
    ("specfun_props", "inc_gamma_monotone", specfun_props::inc_gamma_monotone),
    ("specfun_props", "inc_beta_monotone", specfun_props::inc_beta_monotone),
    ("specfun_props", "inc_beta_symmetry", specfun_props::inc_beta_symmetry),
    ("specfun_props", "ln_gamma_recurrence", specfun_props::ln_gamma_recurrence),
    ("dist_props", "quantile_round_trip", dist_props::quantile_round_trip),
    ("dist_props", "quantile_strictly_increasing", dist_props::quantile_strictly_increasing),
    ("dist_props", "student_dominates_normal", dist_props::student_dominates_normal),
    ("dist_props", "fisher_reciprocity", dist_props::fisher_reciprocity),
    ("moments_props", "location_invariance", moments_props::location_invariance),
    ("moments_props", "scale_equivariance", moments_props::scale_equivariance),
    ("moments_props", "summary_ranges", moments_props::summary_ranges),
    ("normality_props", "jb_affine_invariance", normality_props::jb_affine_invariance),
    ("normality_props", "p_value_decreasing", normality_props::p_value_decreasing),
    ("normality_props", "p_value_is_exponential", normality_props::p_value_is_exponential),
    ("onesample_props", "mean_intervals_share_center_general_narrower", onesample_props::mean_intervals_share_center_general_narrower),
    ("onesample_props", "mean_shift_equivariance", onesample_props::mean_shift_equivariance),
    ("onesample_props", "variance_scale_equivariance", onesample_props::variance_scale_equivariance),
    ("onesample_props", "nesting", onesample_props::nesting),
    ("onesample_props", "clamping_is_flagged", onesample_props::clamping_is_flagged),
    ("twosample_props", "mean_difference_antisymmetry", twosample_props::mean_difference_antisymmetry),
    ("twosample_props", "equal_sizes_standard_errors_coincide", twosample_props::equal_sizes_standard_errors_coincide),
    ("twosample_props", "pooled_equals_welch_for_equal_variances", twosample_props::pooled_equals_welch_for_equal_variances),
    ("twosample_props", "ratio_scale_law", twosample_props::ratio_scale_law),
    ("twosample_props", "welch_df_bounds", twosample_props::welch_df_bounds),
    ("mc_props", "streams_are_reproducible", mc_props::streams_are_reproducible),
    ("mc_props", "general_mean_interval_narrower_on_average", mc_props::general_mean_interval_narrower_on_average),
    ("mc_props", "reports_independent_of_thread_count", mc_props::reports_independent_of_thread_count),
    ("cli_props", "digits_never_change_csv", cli_props::digits_never_change_csv),
    ("cli_props", "degraded_rows_carry_markers", cli_props::degraded_rows_carry_markers),
];
