//! `%.12g`-style decimal formatting.

/// Significant digits written for every value.
pub const SIGNIFICANT: usize = 12;

/// Format like C's `%.12g`: shortest of fixed or scientific notation with
/// trailing zeros removed. NaN prints as `nan`; negative zero as `0`.
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

/// Value as it reads back after formatting.
pub fn rounded(x: f64) -> f64 {
    format_g(x).parse().unwrap_or(f64::NAN)
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
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (2.0, "2"),
            (0.5, "0.5"),
            (-1.35, "-1.35"),
            (1.0 / 3.0, "0.333333333333"),
            (0.918295834054, "0.918295834054"),
            (4.0 * std::f64::consts::PI / 3.0, "4.18879020479"),
            (1.0e-5, "1e-05"),
            (1.23456789e-7, "1.23456789e-07"),
            (0.0001, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (9.9999999999999, "10"),
            (f64::NAN, "nan"),
            (f64::INFINITY, "inf"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x), s, "{x:e}");
        }
    }

    #[test]
    fn formatting_is_idempotent() {
        let mut x = 1.0e-9_f64;
        while x < 1.0e9 {
            for v in [x, -x, x * std::f64::consts::E] {
                let once = format_g(v);
                assert_eq!(format_g(once.parse().unwrap()), once);
            }
            x *= 1.37;
        }
    }
}
