//! Text formatting for numeric output.

/// Significant digits used for every number printed by the CLI.
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros removed, scientific
/// notation outside `1e-4 <= |x| < 1e12`.
pub fn fmt_g(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
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

/// Space-separated list of `fmt_g` values.
pub fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_g(x)).collect::<Vec<_>>().join(" ")
}
