use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{format_rational, Rational};
use crate::error::{domain, Result};

/// Exact constant `r · √s · π^p`.
///
/// In canonical form `s` is a squarefree positive integer (the square part
/// of the radicand is folded into `r`), and `s = 1` whenever `r = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstFactor {
    r: Rational,
    s: Rational,
    p: i64,
}

// 64 digits of π, enough for the 30+ digit decimal rendering below.
const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751058209749445923";

/// Trial divisors are tried up to this bound when extracting square
/// factors; radicands in this crate are far smaller.
const TRIAL_LIMIT: u64 = 1_000_000;

impl ConstFactor {
    pub fn new(r: Rational, s: Rational, p: i64) -> Result<Self> {
        if !s.is_positive() {
            return Err(domain(format!(
                "radicand must be positive, got {}",
                format_rational(&s)
            )));
        }
        Ok(Self::canonical(r, s, p))
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        Self::canonical(r, Rational::one(), 0)
    }

    /// `π^p`.
    pub fn pi_power(p: i64) -> Self {
        Self::canonical(Rational::one(), Rational::one(), p)
    }

    /// `√q` for a positive rational `q`.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        Self::new(Rational::one(), q.clone(), 0)
    }

    fn canonical(r: Rational, s: Rational, p: i64) -> Self {
        if r.is_zero() {
            return Self {
                r,
                s: Rational::one(),
                p: 0,
            };
        }
        // √(a/b) = √(ab) / b, then pull squares out of ab.
        let n = s.numer() * s.denom();
        let (root, rest) = split_square(n);
        let r = r * Rational::new(root, s.denom().clone());
        Self {
            r,
            s: Rational::from_integer(rest),
            p,
        }
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn radicand(&self) -> &Rational {
        &self.s
    }

    pub fn pi_exponent(&self) -> i64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    /// `Some(r)` when the constant is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.s.is_one() && self.p == 0).then(|| self.r.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(&self.r * &other.r, &self.s * &other.s, self.p + other.p)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::canonical(&self.r * q, self.s.clone(), self.p)
    }

    /// The square, which is always of the form `r'·π^p'`.
    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn to_f64(&self) -> f64 {
        super::rational_to_f64(&self.r)
            * super::rational_to_f64(&self.s).sqrt()
            * std::f64::consts::PI.powi(self.p as i32)
    }

    /// Decimal rendering with `digits` digits after the point, computed in
    /// exact integer arithmetic (last digit truncated).
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.r.is_zero() {
            return format!("0.{}", "0".repeat(digits as usize));
        }
        let pi = Rational::new(
            PI_DIGITS.parse::<BigInt>().expect("π digits"),
            BigInt::from(10u32).pow(PI_DIGITS.len() as u32 - 1),
        );
        let pi_pow = num_traits::pow::Pow::pow(&pi, 2 * self.p);
        let square = &self.r * &self.r * &self.s * pi_pow;
        let scale = BigInt::from(10u32).pow(2 * digits);
        let scaled = (square * Rational::from_integer(scale)).floor().to_integer();
        let root = scaled.sqrt();
        let text = root.to_string();
        let width = digits as usize + 1;
        let padded = format!("{text:0>width$}");
        let (int_part, frac) = padded.split_at(padded.len() - digits as usize);
        let sign = if self.r.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac}")
    }
}

/// Splits `n > 0` as `root² · rest` with `rest` squarefree (up to the
/// trial-division limit).
fn split_square(n: BigInt) -> (BigInt, BigInt) {
    let mut rest = n;
    let mut root = BigInt::one();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let dd = BigInt::from(d * d);
        if dd > rest {
            break;
        }
        let big_d = BigInt::from(d);
        while rest.is_multiple_of(&dd) {
            rest /= &dd;
            root *= &big_d;
        }
        d += 1;
    }
    let s = rest.sqrt();
    if &s * &s == rest && !rest.is_one() {
        root *= s;
        rest = BigInt::one();
    }
    (root, rest)
}

impl Default for ConstFactor {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Display for ConstFactor {
    /// Renders as e.g. `1/2`, `1/π`, `√3/3`, `2√14/35`, `√6/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.r.is_negative() { "-" } else { "" };
        let num = self.r.numer().abs();
        let den = self.r.denom();
        let mut top = String::new();
        let radical = !self.s.is_one();
        let pi_top = self.p > 0;
        if !num.is_one() || (!radical && !pi_top) {
            top.push_str(&num.to_string());
        }
        if radical {
            top.push_str(&format!("√{}", self.s.numer()));
        }
        if pi_top {
            top.push('π');
            if self.p > 1 {
                top.push_str(&format!("^{}", self.p));
            }
        }
        let mut bottom = String::new();
        if !den.is_one() {
            bottom.push_str(&den.to_string());
        }
        if self.p < 0 {
            bottom.push('π');
            if self.p < -1 {
                bottom.push_str(&format!("^{}", -self.p));
            }
        }
        if bottom.is_empty() {
            write!(f, "{sign}{top}")
        } else {
            write!(f, "{sign}{top}/{bottom}")
        }
    }
}

impl Serialize for ConstFactor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ConstFactor", 5)?;
        st.serialize_field("display", &self.to_string())?;
        st.serialize_field("r", &format_rational(&self.r))?;
        st.serialize_field("s", &format_rational(&self.s))?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    #[test]
    fn canonical_form_extracts_squares() {
        let c = ConstFactor::sqrt_of(&ratio(8, 175)).unwrap();
        assert_eq!(c.r(), &ratio(2, 35));
        assert_eq!(c.radicand(), &ratio(14, 1));
        assert_eq!(c.to_string(), "2√14/35");

        let c = ConstFactor::sqrt_of(&ratio(1, 3)).unwrap();
        assert_eq!(c, ConstFactor::new(ratio(1, 3), ratio(3, 1), 0).unwrap());
        assert_eq!(c.to_string(), "√3/3");

        let c = ConstFactor::sqrt_of(&ratio(1, 4)).unwrap();
        assert_eq!(c.as_rational(), Some(ratio(1, 2)));

        assert_eq!(ConstFactor::pi_power(-1).to_string(), "1/π");
        assert_eq!(ConstFactor::sqrt_of(&ratio(3, 2)).unwrap().to_string(), "√6/2");
        assert!(ConstFactor::sqrt_of(&ratio(-1, 2)).is_err());
        assert!(ConstFactor::sqrt_of(&ratio(0, 1)).is_err());
    }

    #[test]
    fn squares_are_rational_times_pi() {
        let c = ConstFactor::sqrt_of(&ratio(8, 175))
            .unwrap()
            .mul(&ConstFactor::pi_power(1));
        let sq = c.square();
        assert_eq!(sq.radicand(), &ratio(1, 1));
        assert_eq!(sq.r(), &ratio(8, 175));
        assert_eq!(sq.pi_exponent(), 2);
    }

    #[test]
    fn decimal_rendering_to_thirty_digits() {
        // Reference digits from an independent 40-digit evaluation.
        let cases = [
            (ConstFactor::sqrt_of(&ratio(1, 3)).unwrap(), "0.577350269189625764509148780501"),
            (ConstFactor::pi_power(-1), "0.318309886183790671537767526745"),
            (
                ConstFactor::sqrt_of(&ratio(8, 175)).unwrap(),
                "0.213808993529939507747642784703",
            ),
            (ConstFactor::pi_power(2), "9.869604401089358618834490999876"),
        ];
        for (c, expected) in cases {
            assert_eq!(c.to_decimal(30), expected, "{c}");
            let f: f64 = expected.parse().unwrap();
            assert!((c.to_f64() - f).abs() < 1e-15 * f.abs());
        }
        let neg = ConstFactor::rational(ratio(-1, 8));
        assert_eq!(neg.to_decimal(4), "-0.1250");
    }
}
