use std::fmt::Write as _;

use clap::ValueEnum;
use lipaffine::{AffineTransform, ImageStats};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub mean: f64,
    pub variance: f64,
    pub count: usize,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lip_clipped: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_clipped: Option<usize>,
    #[serde(skip)]
    transform: Option<AffineTransform>,
}

impl Report {
    pub fn new(stats: &ImageStats, transform: Option<AffineTransform>) -> Self {
        Report {
            mean: stats.mean.value(),
            variance: stats.variance,
            count: stats.count,
            alpha: transform.map(|t| t.alpha),
            beta: transform.map(|t| t.beta.value()),
            lip_clipped: None,
            baseline_clipped: None,
            transform,
        }
    }

    pub fn render(&self, format: ReportFormat, decimals: usize) -> String {
        match format {
            ReportFormat::Json => {
                let mut s = serde_json::to_string(self).expect("report serializes");
                s.push('\n');
                s
            }
            ReportFormat::Text => self.render_text(decimals),
        }
    }

    fn render_text(&self, d: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mean       {}", fixed(self.mean, d));
        let _ = writeln!(s, "variance   {}", fixed(self.variance, d));
        let _ = writeln!(s, "count      {}", self.count);
        match self.transform {
            Some(t) => {
                let _ = writeln!(s, "alpha      {}", fixed(t.alpha, d));
                let _ = writeln!(s, "beta       {}", fixed(t.beta.value(), d));
                let _ = writeln!(s, "transform  {}", t.describe(d));
            }
            None => {
                s.push_str("alpha      unavailable (constant image)\n");
                s.push_str("beta       unavailable (constant image)\n");
            }
        }
        if let Some(n) = self.lip_clipped {
            let _ = writeln!(s, "lip_clipped       {n}");
        }
        if let Some(n) = self.baseline_clipped {
            let _ = writeln!(s, "baseline_clipped  {n}");
        }
        s
    }
}

/// Fixed-point formatting that never prints a negative zero.
fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{:.*}", decimals, x);
    match s.strip_prefix('-') {
        Some(rest) if !rest.bytes().any(|c| matches!(c, b'1'..=b'9')) => rest.to_string(),
        _ => s,
    }
}

/// Formats `x` with `digits` significant digits in the style of C's `%g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let digits = digits.max(1);
    // exponent after rounding, so 9.9999999996 counts as 10
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.0, 9), "0");
        assert_eq!(format_significant(0.970_604_427_179_832, 9), "0.970604427");
        assert_eq!(format_significant(-0.999_023_437_5, 9), "-0.999023438");
        assert_eq!(format_significant(0.5, 9), "0.5");
        assert_eq!(format_significant(0.999_999_999_9, 9), "1");
        assert_eq!(format_significant(1.5e-7, 9), "1.5e-7");
        assert_eq!(format_significant(123.456, 4), "123.5");
    }
}
