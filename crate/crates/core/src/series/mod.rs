//! Exact truncated Laurent series in β over arbitrary-precision rationals.
//!
//! Every expansion in the crate is produced here with exact coefficients.
//! A [`LaurentSeries`] knows how far its coefficients are exact (its
//! `order`); operations propagate that bound conservatively, so a result
//! never claims more exact terms than its inputs justify.

mod constant;
mod elementary;
mod laurent;
mod scaled;

pub use constant::ConstFactor;
pub use elementary::{elementary, Elementary};
pub use laurent::{Evaluation, LaurentSeries};
pub use scaled::ScaledSeries;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for every series coefficient.
pub type Rational = num_rational::BigRational;

/// Default truncation order for expansions.
pub const DEFAULT_ORDER: i64 = 12;

/// Builds `n/d` from machine integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Renders a rational as `"n/d"`, or `"n"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // num-rational gives up on huge operands; fall back to a scaled quotient.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        if q.is_negative() {
            -(n.abs() / d)
        } else {
            n / d
        }
    })
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
