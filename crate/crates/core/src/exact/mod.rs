//! Exact arithmetic substrate: rationals, univariate polynomials over ℚ,
//! definite integration, Sturm sequences, certified root isolation and
//! integer factorization.

mod factor;
mod poly;
mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use factor::{factorize, FACTORIZATION_CAP};
pub use poly::{integrate, ExactPolynomial};
pub use roots::{
    cauchy_bound, count_roots, isolate_roots, isolate_roots_with_precision,
    positive_on_open_interval, rational_roots, Bound, IsolatingInterval, SturmSequence,
};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Default width of a refined isolating interval, 10⁻¹².
pub fn default_precision() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn int_u(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `"num/den"`, also for integers (`"3/1"`).
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(if value.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Parses `a/b`, an integer, a decimal (`0.25`) or scientific notation
/// (`1e-12`, `2.5E3`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("cannot parse rational from {text:?}"));
    let text = text.trim();
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = text[pos + 1..].parse().map_err(|_| bad())?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.contains(['+', '-']) || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = match digits.as_str() {
        "" | "-" | "+" => return Err(bad()),
        d => d,
    };
    let significand: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(significand * ten.pow(scale as u32))
    } else {
        Rational::new(significand, ten.pow(scale.unsigned_abs()))
    };
    Ok(value)
}

pub(crate) fn sign_of(value: &Rational) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}
