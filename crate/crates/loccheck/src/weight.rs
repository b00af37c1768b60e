//! Numeric backends for spectrum entries.
//!
//! Every spectrum is generic over a [`Weight`]: either `f64` (fast, used by
//! the Monte Carlo search) or [`BigRational`] (exact, used to certify
//! claimed counterexamples with no rounding anywhere). The two backends
//! share one code path for construction, prefix sums, majorization and
//! tensor powers, so a rational run is the float run with the arithmetic
//! swapped out.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which arithmetic a spectrum carries its probabilities in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumericMode {
    Float,
    Rational,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Float => write!(f, "float"),
            NumericMode::Rational => write!(f, "rational"),
        }
    }
}

/// Scalar usable as a spectrum entry.
pub trait Weight:
    Clone
    + PartialOrd
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const MODE: NumericMode;

    /// Parses a decimal literal such as `0.493`, `2`, or `1.6e-3`.
    ///
    /// The rational backend parses exactly: `"0.493"` becomes 493/1000 with
    /// no rounding step anywhere.
    fn parse_decimal(text: &str) -> Option<Self>;

    /// The exact value of an `f64` (its binary value, not a decimal rendering).
    fn from_f64_exact(value: f64) -> Option<Self>;

    /// Nearest `f64`; used for entropy and display, never for verdicts.
    fn to_f64_lossy(&self) -> f64;

    /// Lossless text form: 17 significant digits for floats (round-trips
    /// bit-exactly through `parse_decimal`), `num/den` for rationals.
    fn render_exact(&self) -> String;

    /// Whether a freshly constructed total mass counts as already
    /// normalized, so construction keeps the entries untouched.
    ///
    /// Floats accept |total - 1| <= 1e-9, which makes construction
    /// idempotent bit-for-bit; rationals accept only an exact 1.
    fn total_is_unit(total: &Self) -> bool;

    fn is_finite_value(&self) -> bool;
}

impl Weight for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn parse_decimal(text: &str) -> Option<Self> {
        text.parse().ok()
    }

    fn from_f64_exact(value: f64) -> Option<Self> {
        Some(value)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn render_exact(&self) -> String {
        format!("{self:.16e}")
    }

    fn total_is_unit(total: &Self) -> bool {
        (total - 1.0).abs() <= 1e-9
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Weight for BigRational {
    const MODE: NumericMode = NumericMode::Rational;

    fn parse_decimal(text: &str) -> Option<Self> {
        parse_decimal_rational(text)
    }

    fn from_f64_exact(value: f64) -> Option<Self> {
        BigRational::from_float(value)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn render_exact(&self) -> String {
        self.to_string()
    }

    fn total_is_unit(total: &Self) -> bool {
        total.is_one()
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Exact decimal-literal parser: `[+-]digits[.digits][(e|E)[+-]digits]`.
fn parse_decimal_rational(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i64>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let shift = exponent.checked_sub(frac_part.len() as i64)?;
    // a 10^10000 scale factor is never a probability; bail before building it
    if shift.unsigned_abs() > 10_000 {
        return None;
    }
    let unscaled: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(unscaled * ten.pow(shift as u32))
    } else {
        BigRational::new(unscaled, ten.pow(shift.unsigned_abs() as u32))
    };
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(text: &str) -> BigRational {
        BigRational::parse_decimal(text).unwrap()
    }

    #[test]
    fn decimal_parse_is_exact() {
        assert_eq!(rational("0.493"), BigRational::new(493.into(), 1000.into()));
        assert_eq!(rational("0.03"), BigRational::new(3.into(), 100.into()));
        assert_eq!(rational("1"), BigRational::from_integer(1.into()));
        assert_eq!(rational("2.5e-3"), BigRational::new(1.into(), 400.into()));
        assert_eq!(rational("1.6E2"), BigRational::from_integer(160.into()));
        assert_eq!(rational("-0.5"), BigRational::new((-1).into(), 2.into()));
        assert_eq!(rational(".5"), BigRational::new(1.into(), 2.into()));
        assert_eq!(rational("5."), BigRational::from_integer(5.into()));
    }

    #[test]
    fn decimal_parse_rejects_garbage() {
        for bad in ["", ".", "e5", "1.2.3", "abc", "0x10", "1/2", "1e99999999999"] {
            assert!(BigRational::parse_decimal(bad).is_none(), "{bad:?} parsed");
        }
    }

    #[test]
    fn float_render_round_trips() {
        for value in [0.0, 1.0, 0.03, 0.493, 1.0 / 3.0, 2.0f64.powi(-40), 0.999_999_999] {
            let text = value.render_exact();
            let back: f64 = f64::parse_decimal(&text).unwrap();
            assert_eq!(back.to_bits(), value.to_bits(), "{value} -> {text} -> {back}");
        }
    }

    #[test]
    fn float_exact_lift_matches_binary_value() {
        let lifted = BigRational::from_f64_exact(0.03).unwrap();
        assert_ne!(lifted, rational("0.03"), "0.03 is not a binary fraction");
        assert_eq!(lifted.to_f64_lossy(), 0.03);
    }
}
