//! printf-style `%g` formatting and the `re+imi` complex token format used by
//! the plain-text matrix files and CSV output.

use crate::{Error, Result};
use num_complex::Complex64;

/// Format `x` like C's `%.<sig>g`: `sig` significant digits, shortest of
/// fixed/scientific style, trailing zeros trimmed.
pub(crate) fn fmt_g(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let p = sig.max(1);
    // Round to p significant digits in e-style, then read off the exponent.
    let e_style = format!("{:.*e}", p - 1, x);
    let (mantissa, exp_str) = e_style.split_once('e').expect("e-style float");
    let exp: i32 = exp_str.parse().expect("float exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = trim_trailing_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", mantissa, sign, exp.abs())
    } else {
        let frac = (p as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{:.*}", frac, x);
        trim_trailing_zeros(&fixed)
    }
}

fn trim_trailing_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}

/// Format a complex number as `re+imi` / `re-imi` with `%.17g` parts
/// (17 significant digits round-trip an f64 exactly).
pub(crate) fn fmt_complex17(z: Complex64) -> String {
    let re = fmt_g(z.re, 17);
    let im = z.im + 0.0; // normalize -0.0
    if im < 0.0 {
        format!("{}-{}i", re, fmt_g(-im, 17))
    } else {
        format!("{}+{}i", re, fmt_g(im, 17))
    }
}

/// Parse a `re+imi` / `re-imi` token.
pub(crate) fn parse_complex(token: &str) -> Result<Complex64> {
    let body = token
        .strip_suffix('i')
        .ok_or_else(|| Error::Parse(format!("complex entry `{token}` does not end in `i`")))?;
    let bytes = body.as_bytes();
    // Split at the last +/- that is not an exponent sign and not leading.
    let mut split = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let idx = split
        .ok_or_else(|| Error::Parse(format!("complex entry `{token}` has no imaginary part")))?;
    let re: f64 = body[..idx]
        .parse()
        .map_err(|_| Error::Parse(format!("bad real part in `{token}`")))?;
    let im: f64 = body[idx..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad imaginary part in `{token}`")))?;
    Ok(Complex64::new(re, im))
}
