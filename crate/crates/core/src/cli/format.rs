//! Display formatting for reports.

/// Formats `x` with at most `digits` significant digits, choosing between
/// fixed and scientific notation the way R's `format(x, digits = dg)` does:
/// trailing zeros are dropped, integer digits are never rounded away, and
/// fixed notation wins unless it is wider than scientific.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Inf".into() } else { "-Inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let raw = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = raw.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    let significant = mantissa.chars().filter(char::is_ascii_digit).count() as i32;
    let sci = format!(
        "{mantissa}e{}{:02}",
        if exp < 0 { '-' } else { '+' },
        exp.abs()
    );
    let decimals = (significant - 1 - exp).max(0) as usize;
    let fixed = format!("{:.*}", decimals, x);
    if fixed.len() <= sci.len() {
        fixed
    } else {
        sci
    }
}

/// Full-precision serialization for machine-readable output.
pub fn full(x: f64) -> String {
    format!("{x}")
}
