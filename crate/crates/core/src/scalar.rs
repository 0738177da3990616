//! Scalar abstraction shared by every ordering, matrix and measure routine.
//!
//! All order decisions in this crate are meant to be made exactly, so the
//! default instantiation is [`Rational`]. The same code runs over `f64` and
//! `f32`, where comparisons fall back to an absolute tolerance.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Ordered field used by the crate. Exact types report a zero tolerance.
pub trait Scalar:
    Clone + fmt::Debug + PartialOrd + Num + Signed + ToPrimitive + Send + Sync + 'static
{
    /// Absolute tolerance used for equality and sign decisions.
    fn tolerance() -> Self;

    fn is_exact() -> bool;

    /// `num / den` in this scalar type.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tolerance()
    }

    /// `self > other` beyond tolerance.
    fn definitely_gt(&self, other: &Self) -> bool {
        self.clone() - other.clone() > Self::tolerance()
    }

    /// `self <= other` up to tolerance.
    fn approx_le(&self, other: &Self) -> bool {
        !self.definitely_gt(other)
    }

    fn is_approx_zero(&self) -> bool {
        self.abs() <= Self::tolerance()
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-12
    }
    fn is_exact() -> bool {
        false
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
    fn is_exact() -> bool {
        false
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
}

impl Scalar for Rational {
    fn tolerance() -> Self {
        Rational::zero()
    }
    fn is_exact() -> bool {
        true
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64_lossy(&self) -> f64 {
        // `Ratio::to_f64` overflows on huge numerators even when the quotient is small.
        self.to_f64().unwrap_or_else(|| {
            let scale = BigInt::from(10u8).pow(30);
            let scaled = (self * Rational::from_integer(scale)).round().to_integer();
            scaled.to_f64().unwrap_or(f64::NAN) / 1e30
        })
    }
}

/// Parses `"p/q"`, integer, or plain decimal literals (`"0.25"`, `"-1.5"`, `"1e-3"`)
/// into an exact rational. Decimals are converted without rounding.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational literal {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp = s[pos + 1..].parse::<i32>().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits })
        .map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        Rational::from_integer(numer * ten.pow(scale as u32))
    } else {
        Rational::new(numer, ten.pow(scale.unsigned_abs()))
    };
    Ok(value)
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exact rational image of a finite float.
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    Rational::from_f64(value)
}

/// Formats a float with `digits` significant digits, trimming trailing zeros.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return if value == 0.0 { "0".into() } else { value.to_string() };
    }
    let digits = digits.max(1);
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{value:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
