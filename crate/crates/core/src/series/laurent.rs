use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{format_rational, int, rational_to_f64, ConstFactor, Rational, ScaledSeries};
use crate::error::{domain, usage, Result};

/// Truncated Laurent series `Σ c_k β^k` with exact rational coefficients.
///
/// Coefficients are stored for every exponent in `[valuation, order)`;
/// terms at or above `order` are unknown. A nonzero series always has a
/// nonzero leading coefficient. The zero series stores nothing and uses
/// `valuation == order` internally, which makes the product order rule
/// below hold without special cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

/// Partial sum of a series at a point, with the magnitude of the last
/// retained nonzero term as a crude truncation indicator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub truncation: f64,
}

impl LaurentSeries {
    /// Builds a series from the coefficients of `β^valuation ..β^(order-1)`.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<Rational>, order: i64) -> Result<Self> {
        if order <= valuation {
            return Err(usage(format!(
                "order {order} must exceed valuation {valuation}"
            )));
        }
        if coeffs.len() as i64 != order - valuation {
            return Err(usage(format!(
                "expected {} coefficients for exponents [{valuation}, {order}), got {}",
                order - valuation,
                coeffs.len()
            )));
        }
        Ok(Self::normalized(valuation, coeffs, order))
    }

    /// Builds a series by evaluating `f` at every exponent in `[valuation, order)`.
    pub fn from_fn(valuation: i64, order: i64, f: impl Fn(i64) -> Rational) -> Self {
        let coeffs = (valuation..order).map(f).collect();
        Self::normalized(valuation, coeffs, order.max(valuation))
    }

    pub fn zero(order: i64) -> Self {
        Self {
            valuation: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c · β^exponent`, exact below `order`.
    pub fn monomial(exponent: i64, c: Rational, order: i64) -> Self {
        if exponent >= order {
            return Self::zero(order);
        }
        let mut coeffs = vec![Rational::zero(); (order - exponent) as usize];
        coeffs[0] = c;
        Self::normalized(exponent, coeffs, order)
    }

    fn normalized(mut valuation: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(skip) => {
                coeffs.drain(..skip);
                valuation += skip as i64;
            }
            None => return Self::zero(order),
        }
        debug_assert_eq!(valuation + coeffs.len() as i64, order);
        Self {
            valuation,
            coeffs,
            order,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Every coefficient of `β^k` with `k < order` is exact.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `β^k`, or `None` when `k` lies beyond the exact range.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.order {
            None
        } else if k < self.valuation {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(k - self.valuation) as usize].clone())
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Nonzero terms as `(exponent, coefficient)`, in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Drops everything at or above `order` (no-op if already coarser).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if order <= self.valuation {
            return Self::zero(order);
        }
        let keep = (order - self.valuation) as usize;
        Self::normalized(self.valuation, self.coeffs[..keep].to_vec(), order)
    }

    /// Termwise equality over the exponents both series know exactly.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let top = self.order.min(other.order);
        let bottom = self.valuation.min(other.valuation);
        (bottom..top).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::normalized(self.valuation, coeffs, self.order)
    }

    /// Multiplies by `β^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    /// Multiplicative inverse. The relative precision is preserved.
    pub fn inverse(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| domain("inverse of the zero series"))?;
        let n = self.coeffs.len();
        let inv_lead = lead.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv_lead.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-(acc * &inv_lead));
        }
        Ok(Self::normalized(
            -self.valuation,
            out,
            -self.valuation + n as i64,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(domain("division by the zero series"));
        }
        Ok(self * &other.inverse()?)
    }

    /// Termwise `d/dβ`; the exact range shrinks by one.
    pub fn differentiate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.valuation + i as i64))
            .collect();
        if self.is_zero() {
            return Self::zero(self.order - 1);
        }
        Self::normalized(self.valuation - 1, coeffs, self.order - 1)
    }

    /// Substitutes `β ↦ c·β`, multiplying the coefficient of `β^k` by `c^k`.
    pub fn scale_argument(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(usage("argument scale must be nonzero"));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| x * num_traits::pow::Pow::pow(c, self.valuation + i as i64))
            .collect();
        Ok(Self::normalized(self.valuation, coeffs, self.order))
    }

    /// `u^q` for a unit series `u = 1 + O(β)`, computed as `exp(q·log u)`.
    pub fn pow_rational(&self, q: &Rational) -> Result<Self> {
        self.require_unit("pow_rational")?;
        if q.is_zero() {
            return Ok(Self::one(self.order));
        }
        exp_series(&log_unit(self).scale(q))
    }

    /// Square root of a series with even valuation and positive leading
    /// coefficient, returned as `√lead · β^(v/2) · (unit series)`.
    pub fn sqrt_even(&self) -> Result<ScaledSeries> {
        let lead = self
            .leading()
            .ok_or_else(|| domain("square root of the zero series"))?;
        if self.valuation % 2 != 0 {
            return Err(domain(format!(
                "square root needs an even valuation, got {}",
                self.valuation
            )));
        }
        if !lead.is_positive() {
            return Err(domain(format!(
                "square root needs a positive leading coefficient, got {}",
                format_rational(lead)
            )));
        }
        let unit = self.scale(&lead.recip()).shift(-self.valuation);
        let root = unit
            .pow_rational(&super::ratio(1, 2))?
            .shift(self.valuation / 2);
        let factor = ConstFactor::sqrt_of(lead)?;
        Ok(ScaledSeries::from_unit(factor, root))
    }

    /// `u'/u`. Used in place of `log u`, which is not a Laurent series when
    /// the valuation is nonzero.
    pub fn log_derivative(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("log-derivative of the zero series"));
        }
        self.differentiate().div(self)
    }

    /// Partial sum at `beta`.
    pub fn eval(&self, beta: f64) -> Result<Evaluation> {
        if !beta.is_finite() {
            return Err(domain(format!("cannot evaluate at β = {beta}")));
        }
        if beta == 0.0 && self.valuation < 0 && !self.is_zero() {
            return Err(domain("pole at β = 0"));
        }
        let mut value = 0.0;
        let mut truncation = 0.0;
        for (k, c) in self.terms() {
            let term = rational_to_f64(c) * beta.powi(k as i32);
            value += term;
            truncation = term.abs();
        }
        Ok(Evaluation { value, truncation })
    }

    fn require_unit(&self, what: &str) -> Result<()> {
        match self.leading() {
            Some(l) if self.valuation == 0 && l.is_one() => Ok(()),
            _ => Err(domain(format!(
                "{what} needs valuation 0 and leading coefficient 1"
            ))),
        }
    }
}

/// `log(1 + g)` via the Mercator series; `u` must be a unit series.
fn log_unit(u: &LaurentSeries) -> LaurentSeries {
    let g = u - &LaurentSeries::one(u.order);
    let mut acc = LaurentSeries::zero(u.order);
    let mut power = g.clone();
    let mut k = 1i64;
    while !power.is_zero() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale(&super::ratio(sign, k));
        power = (&power * &g).truncate(u.order);
        k += 1;
    }
    acc
}

/// `exp(a)` for `a` with positive valuation (or zero), by its Taylor sum.
fn exp_series(a: &LaurentSeries) -> Result<LaurentSeries> {
    if matches!(a.valuation(), Some(v) if v < 1) {
        return Err(domain("exp needs a series with positive valuation"));
    }
    let mut acc = LaurentSeries::one(a.order);
    let mut term = LaurentSeries::one(a.order);
    let mut k = 1i64;
    loop {
        term = (&term * a).scale(&super::ratio(1, k)).truncate(a.order);
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
        k += 1;
    }
    Ok(acc)
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = self.order.min(rhs.order);
        let low = self.valuation.min(rhs.valuation).min(order);
        LaurentSeries::from_fn(low, order, |k| {
            self.coeff(k).unwrap_or_default() + rhs.coeff(k).unwrap_or_default()
        })
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

/// Cauchy product. The result is exact below
/// `min(order_a + val_b, order_b + val_a)`.
impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = (self.order + rhs.valuation).min(rhs.order + self.valuation);
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(order);
        }
        let valuation = self.valuation + rhs.valuation;
        let n = (order - valuation) as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        LaurentSeries::normalized(valuation, coeffs, order)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let mag = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag} β")?,
                _ => write!(f, "{mag} β^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(β^{})", self.order)
    }
}

#[derive(Serialize)]
struct Term {
    exponent: i64,
    coefficient: String,
}

impl Serialize for LaurentSeries {
    /// Nonzero terms as exact `"n/d"` strings, plus valuation and order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms()
            .map(|(k, c)| Term {
                exponent: k,
                coefficient: format_rational(c),
            })
            .collect();
        let mut st = serializer.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("valuation", &self.valuation())?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
