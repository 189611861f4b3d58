//! Small summary statistics for Monte Carlo output.

use serde::{Deserialize, Serialize};

/// Mean of `n` observations with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl Estimate {
    pub fn from_samples<I: IntoIterator<Item = f64>>(xs: I) -> Self {
        let mut n = 0usize;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for x in xs {
            n += 1;
            sum += x;
            sum_sq += x * x;
        }
        if n == 0 {
            return Estimate { mean: f64::NAN, stderr: f64::NAN, n };
        }
        let nf = n as f64;
        let mean = sum / nf;
        let stderr = if n > 1 {
            let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
            (var / nf).sqrt()
        } else {
            0.0
        };
        Estimate { mean, stderr, n }
    }

    /// Normal-approximation 95% interval.
    pub fn ci95(&self) -> (f64, f64) {
        (self.mean - 1.96 * self.stderr, self.mean + 1.96 * self.stderr)
    }
}

/// Fraction of `true` values.
pub fn fraction<I: IntoIterator<Item = bool>>(xs: I) -> f64 {
    let (hit, n) = xs.into_iter().fold((0usize, 0usize), |(h, n), b| (h + usize::from(b), n + 1));
    if n == 0 {
        f64::NAN
    } else {
        hit as f64 / n as f64
    }
}

/// C-style `%.6g`: six significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 <= |x| < 1e6`.
pub fn format_g(x: f64) -> String {
    const DIGITS: i32 = 6;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // The exponent after rounding to six digits decides the style.
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x))
    }
}
