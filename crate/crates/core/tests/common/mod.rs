//! Test-side oracles, independent of the production code paths.
#![allow(dead_code)]

use std::f64::consts::PI;

/// ln Γ by the Stirling series after shifting the argument above 30.
pub fn ln_gamma(x: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < 30.0 {
        shift += z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2)
        - 1.0 / (1680.0 * z * z2 * z2 * z2);
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol.max(1e-15 * (left + right).abs()) {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// P(a, x) by quadrature. For a < 1 the substitution t = u^(1/a) removes
/// the endpoint singularity of t^(a−1).
pub fn inc_gamma_p(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if a < 1.0 {
        let integral = integrate(|u| (-u.powf(1.0 / a)).exp(), 0.0, x.powf(a), 1e-15);
        return integral * (-ln_gamma(a + 1.0)).exp();
    }
    let lg = ln_gamma(a);
    integrate(
        |t| {
            if t == 0.0 {
                if a == 1.0 { (-lg).exp() } else { 0.0 }
            } else {
                ((a - 1.0) * t.ln() - t - lg).exp()
            }
        },
        0.0,
        x,
        1e-15,
    )
}

// ∫₀^x t^(a−1) (1−t)^(b−1) dt / B(a, b) for x ≤ 1/2.
fn inc_beta_left(x: f64, a: f64, b: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ln_b = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    if a < 1.0 {
        let integral = integrate(|u| (1.0 - u.powf(1.0 / a)).powf(b - 1.0), 0.0, x.powf(a), 1e-15);
        return integral / a * (-ln_b).exp();
    }
    integrate(
        |t| {
            if t == 0.0 {
                if a == 1.0 { (-ln_b).exp() } else { 0.0 }
            } else {
                ((a - 1.0) * t.ln() + (b - 1.0) * (-t).ln_1p() - ln_b).exp()
            }
        },
        0.0,
        x,
        1e-15,
    )
}

/// I_x(a, b) by quadrature, integrating from whichever endpoint is nearer.
pub fn inc_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.5 {
        inc_beta_left(x, a, b)
    } else {
        1.0 - inc_beta_left(1.0 - x, b, a)
    }
}

/// I_x(a, b) for integer a, b as a binomial tail.
pub fn inc_beta_binomial(x: f64, a: u32, b: u32) -> f64 {
    let m = a + b - 1;
    let mut total = 0.0;
    for j in a..=m {
        let ln_c = ln_gamma(m as f64 + 1.0) - ln_gamma(j as f64 + 1.0) - ln_gamma((m - j) as f64 + 1.0);
        total += (ln_c + j as f64 * x.ln() + (m - j) as f64 * (1.0 - x).ln()).exp();
    }
    total
}

/// erf by its Maclaurin series for |x| ≤ 2.5, by quadrature beyond.
pub fn erf(x: f64) -> f64 {
    if x.abs() > 2.5 {
        return x.signum() * 2.0 / PI.sqrt() * integrate(|t| (-t * t).exp(), 0.0, x.abs(), 1e-16);
    }
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -x * x / k;
        let add = term / (2.0 * k + 1.0);
        sum += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    sum * 2.0 / PI.sqrt()
}

/// Root of an increasing function by plain bisection.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, target: f64, tol: f64) -> f64 {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < tol {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

/// Grid for ln Γ checked in absolute terms: 1e-3 to 1e3, log-spaced.
pub fn ln_gamma_abs_grid() -> Vec<f64> {
    (0..=120).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / 120.0)).collect()
}

/// Grid for ln Γ checked in relative terms: 1e3 to 1e6.
pub fn ln_gamma_rel_grid() -> Vec<f64> {
    (0..=30).map(|i| 10f64.powf(3.0 + 3.0 * i as f64 / 30.0)).collect()
}

pub fn erf_grid() -> Vec<f64> {
    (-120..=120).map(|i| i as f64 * 0.05).collect()
}

pub const GAMMA_SHAPES: [f64; 9] = [0.1, 0.5, 1.0, 1.5, 2.5, 5.0, 10.0, 24.5, 50.0];
pub const BETA_SHAPES: [f64; 7] = [0.5, 1.0, 2.0, 3.5, 5.0, 12.0, 40.0];

/// x values spread over the bulk of Gamma(a).
pub fn gamma_xs(a: f64) -> Vec<f64> {
    let sd = a.sqrt();
    let mut xs: Vec<f64> = (0..=16)
        .map(|i| (a + sd * (-4.0 + 0.5 * i as f64)).max(0.0))
        .collect();
    xs.extend([0.0, 1e-3, 0.05, 0.5, 2.0]);
    xs
}

pub fn beta_xs() -> Vec<f64> {
    let mut xs: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
    xs.extend([0.0, 1e-3, 0.999, 1.0]);
    xs
}

/// Largest absolute deviation of `f` from `g` over `xs`, with its argument.
pub fn max_abs_err<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(xs: &[f64], f: F, g: G) -> (f64, f64) {
    xs.iter()
        .map(|&x| ((f(x) - g(x)).abs(), x))
        .fold((0.0, f64::NAN), |acc, e| if e.0 > acc.0 || e.0.is_nan() { e } else { acc })
}

pub const QUANTILE_DFS: [f64; 7] = [1.0, 2.0, 4.0, 8.0, 29.0, 49.0, 5.882];

/// p = 0.005, 0.010, ..., 0.995.
pub fn p_grid() -> Vec<f64> {
    (1..=199).map(|i| i as f64 * 0.005).collect()
}
