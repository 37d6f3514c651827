use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer};

use super::precision::{BigReal, Precision};
use crate::error::{Error, Result};

fn is_plain_decimal(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    digits(int) && frac.map_or(true, digits)
}

/// Parses a plain decimal `-?d+(.d+)?` (no exponent) at the given precision.
pub fn parse_decimal(s: &str, prec: Precision) -> Result<BigReal> {
    let s = s.trim();
    if !is_plain_decimal(s) {
        return Err(Error::InvalidInput(format!("not a plain decimal: {s:?}")));
    }
    let parsed = Float::parse(s).map_err(|e| Error::InvalidInput(format!("{s:?}: {e}")))?;
    Ok(Float::with_val_round(prec.bits(), parsed, Round::Nearest).0)
}

/// Formats `x` with exactly `frac_digits` digits after the point, rounded to nearest,
/// in the form `-?d+.d+`.
pub fn format_decimal(x: &BigReal, frac_digits: u32) -> String {
    let scale = Integer::from(10).pow(frac_digits);
    let scaled = Float::with_val(x.prec() + 64, x * &scale);
    let n = scaled.round().to_integer().unwrap_or_default();
    let neg = n < 0;
    let digits = n.abs().to_string();
    let width = frac_digits as usize + 1;
    let padded = format!("{digits:0>width$}");
    let (int, frac) = padded.split_at(padded.len() - frac_digits as usize);
    let sign = if neg { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{int}.0")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
