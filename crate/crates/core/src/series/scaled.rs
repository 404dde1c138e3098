use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::{ConstFactor, Evaluation, LaurentSeries};
use crate::error::{domain, Result};

/// An exact constant times a unit-normalized Laurent series, used for
/// prior expansions such as `(1/√3)(1 - β²/10 + …)`.
///
/// The unit's leading coefficient is exactly one.
#[derive(Clone, Debug, Serialize)]
pub struct ScaledSeries {
    factor: ConstFactor,
    unit: LaurentSeries,
}

impl ScaledSeries {
    /// Wraps an already-normalized unit series.
    pub(crate) fn from_unit(factor: ConstFactor, unit: LaurentSeries) -> Self {
        debug_assert!(unit.leading().is_none_or(|c| c.is_one()));
        Self { factor, unit }
    }

    /// `factor · series`, moving the series' leading coefficient into the
    /// factor.
    pub fn new(factor: ConstFactor, series: LaurentSeries) -> Result<Self> {
        let lead = series
            .leading()
            .cloned()
            .ok_or_else(|| domain("a scaled series needs a nonzero series"))?;
        if factor.is_zero() {
            return Err(domain("a scaled series needs a nonzero factor"));
        }
        let unit = series.scale(&lead.recip());
        Ok(Self {
            factor: factor.scale(&lead),
            unit,
        })
    }

    pub fn factor(&self) -> &ConstFactor {
        &self.factor
    }

    pub fn unit(&self) -> &LaurentSeries {
        &self.unit
    }

    pub fn valuation(&self) -> i64 {
        self.unit.valuation().expect("unit series is nonzero")
    }

    pub fn order(&self) -> i64 {
        self.unit.order()
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self {
            factor: self.factor.clone(),
            unit: self.unit.truncate(order),
        }
    }

    /// Coefficient of `β^k` as `factor · unit_k`.
    pub fn coeff(&self, k: i64) -> Option<ConstFactor> {
        self.unit.coeff(k).map(|c| self.factor.scale(&c))
    }

    /// The plain rational series when the factor is rational.
    pub fn as_rational_series(&self) -> Option<LaurentSeries> {
        self.factor.as_rational().map(|r| self.unit.scale(&r))
    }

    /// `factor² · unit²`, when the squared factor is rational.
    pub fn square(&self) -> Option<LaurentSeries> {
        let r = self.factor.square().as_rational()?;
        Some((&self.unit * &self.unit).scale(&r))
    }

    /// Equal factors in canonical form and termwise-equal units up to the
    /// smaller order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.factor == other.factor && self.unit.agrees_with(&other.unit)
    }

    pub fn eval(&self, beta: f64) -> Result<Evaluation> {
        let e = self.unit.eval(beta)?;
        let f = self.factor.to_f64();
        Ok(Evaluation {
            value: f * e.value,
            truncation: (f * e.truncation).abs(),
        })
    }
}

impl fmt::Display for ScaledSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational_series() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "({}) · ({})", self.factor, self.unit),
        }
    }
}
