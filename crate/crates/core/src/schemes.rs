//! Prior constructions over β: the quantum (Bures volume element) priors
//! and the Fisher rule `ω = √((log Z)'')`, with high-temperature
//! classification and moments.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{usage, Error, Result};
use crate::models::{ModelId, PartitionSeries, ThermalModel};
use crate::numerics::{quad, Quadrant, Tail};
use crate::series::{elementary, ratio, ConstFactor, Elementary, ScaledSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Quantum,
    Lavenda,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Quantum, Scheme::Lavenda];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Quantum => "quantum",
            Scheme::Lavenda => "lavenda",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::NotFound {
                kind: "scheme",
                name: s.to_string(),
                valid: "quantum, lavenda".to_string(),
            })
    }
}

impl Serialize for Scheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// High-temperature behaviour of a prior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `ω ∝ 1/β`
    Jeffreys,
    /// `ω → const`
    BayesLaplace,
    /// Any other leading power; the payload is the pole order `-valuation`.
    Other(i64),
}

impl Verdict {
    pub fn from_valuation(v: i64) -> Self {
        match v {
            -1 => Verdict::Jeffreys,
            0 => Verdict::BayesLaplace,
            _ => Verdict::Other(-v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Jeffreys => f.write_str("Jeffreys"),
            Verdict::BayesLaplace => f.write_str("BayesLaplace"),
            Verdict::Other(p) => write!(f, "Other({p})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Series,
    NumericSlope,
}

/// Exact expansion of a model's prior under one scheme.
#[derive(Clone, Debug, Serialize)]
pub struct PriorExpansion {
    pub model: ModelId,
    pub scheme: Scheme,
    pub expansion: ScaledSeries,
    pub order: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Exact leading coefficient (series method only).
    pub leading: Option<ConstFactor>,
    /// Leading coefficient as a float; for the numeric method, `ω(β)·β^{-v}`
    /// at the smaller probe point.
    pub leading_value: f64,
    pub method: Method,
    /// `Δ log ω / Δ log β` between the probe points (numeric method only).
    pub slope: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Divergence {
    AtZero,
    AtInfinity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PriorMoments {
    pub proper: bool,
    /// `None` when `∫ω` diverges.
    pub normalization: Option<f64>,
    pub mean: Option<f64>,
    pub second_moment: Option<f64>,
    pub divergence: Option<Divergence>,
}

/// `√((log Z)'')` of a partition series, exact below `order`.
pub fn lavenda_series(z: &PartitionSeries, order: i64) -> Result<ScaledSeries> {
    if order < 6 {
        return Err(usage(format!("Fisher-rule expansions need order >= 6, got {order}")));
    }
    let root = z.second_log_derivative()?.sqrt_even()?;
    if root.order() < order {
        return Err(usage(format!(
            "partition series exact to order {} only gives ω to order {}, short of {order}",
            z.order(),
            root.order()
        )));
    }
    Ok(root.truncate(order))
}

/// Retries `build` with growing guard orders until the result is exact
/// below `order`.
fn with_guard(order: i64, build: impl Fn(i64) -> Result<ScaledSeries>) -> Result<ScaledSeries> {
    let mut last = None;
    for guard in [2, 4, 8, 16] {
        let s = build(order + guard)?;
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
        last = Some(s.order());
    }
    Err(usage(format!(
        "could not reach order {order} (best {})",
        last.unwrap_or(order)
    )))
}

/// Exact series of the quantum prior of M1–M3.
pub fn quantum_prior_series(model: &ThermalModel, order: i64) -> Result<ScaledSeries> {
    model.require(Scheme::Quantum)?;
    if order < 1 {
        return Err(usage(format!("order must be >= 1, got {order}")));
    }
    let quarter = ratio(1, 4);
    let half = ratio(1, 2);
    with_guard(order, |n| {
        let at = |kind, c: &crate::Rational| elementary(kind, n).scale_argument(c);
        match model.id() {
            ModelId::SqueezedThermalQuantum => {
                let s = &(&at(Elementary::Cosh, &quarter)? * &at(Elementary::Coth, &quarter)?)
                    * &at(Elementary::Sech, &half)?;
                ScaledSeries::new(ConstFactor::rational(ratio(1, 8)), s)
            }
            ModelId::DisplacedThermalQuantum => {
                ScaledSeries::new(ConstFactor::pi_power(-1), at(Elementary::Sech, &half)?)
            }
            ModelId::DisplacedSqueezedQuantum => {
                let c = at(Elementary::Cosh, &quarter)?;
                let s = &(&c * &c) * &at(Elementary::Sech, &half)?.pow_rational(&ratio(3, 2))?;
                ScaledSeries::new(ConstFactor::rational(ratio(1, 2)), s)
            }
            _ => unreachable!("checked by require"),
        }
    })
}

/// Fisher-rule series of a model, building `Z` with enough guard terms.
pub fn lavenda_prior_series(model: &ThermalModel, order: i64) -> Result<ScaledSeries> {
    model.require(Scheme::Lavenda)?;
    if order < 6 {
        return Err(usage(format!("Fisher-rule expansions need order >= 6, got {order}")));
    }
    with_guard(order, |n| {
        let z = model.z_series(n)?;
        z.second_log_derivative()?.sqrt_even()
    })
}

pub fn prior_expansion(model: &ThermalModel, scheme: Scheme, order: i64) -> Result<PriorExpansion> {
    let expansion = match scheme {
        Scheme::Quantum => quantum_prior_series(model, order)?,
        Scheme::Lavenda => lavenda_prior_series(model, order)?,
    };
    Ok(PriorExpansion {
        model: model.id(),
        scheme,
        expansion,
        order,
    })
}

pub fn classify_series(p: &PriorExpansion) -> ClassificationResult {
    let v = p.expansion.valuation();
    let leading = p.expansion.coeff(v).expect("valuation lies below the order");
    ClassificationResult {
        verdict: Verdict::from_valuation(v),
        leading_value: leading.to_f64(),
        leading: Some(leading),
        method: Method::Series,
        slope: None,
    }
}

/// Probe points of the numeric classifier.
pub const SLOPE_PROBES: (f64, f64) = (1e-3, 1e-4);
const SLOPE_THRESHOLD: f64 = 0.05;

/// Classifies from the log-log slope of the numeric prior near β = 0.
pub fn classify_numeric(model: &ThermalModel, scheme: Scheme) -> Result<ClassificationResult> {
    let (hi, lo) = SLOPE_PROBES;
    let (w_hi, w_lo) = (model.omega_eval(hi, scheme)?, model.omega_eval(lo, scheme)?);
    let slope = (w_hi.ln() - w_lo.ln()) / (hi.ln() - lo.ln());
    let verdict = if (slope + 1.0).abs() < SLOPE_THRESHOLD {
        Verdict::Jeffreys
    } else if slope.abs() < SLOPE_THRESHOLD {
        Verdict::BayesLaplace
    } else {
        Verdict::Other(-slope.round() as i64)
    };
    let power = match verdict {
        Verdict::Jeffreys => 1,
        Verdict::BayesLaplace => 0,
        Verdict::Other(p) => p as i32,
    };
    Ok(ClassificationResult {
        verdict,
        leading: None,
        leading_value: w_lo * lo.powi(power),
        method: Method::NumericSlope,
        slope: Some(slope),
    })
}

/// Bound `|ω(β)| <= scale · e^{-rate·β}` for the priors known to decay.
fn decay(model: &ThermalModel, scheme: Scheme) -> Option<(f64, f64)> {
    match (model.id(), scheme) {
        (ModelId::DisplacedThermalQuantum, Scheme::Quantum) => Some((2.0 / PI, 0.5)),
        // ½cosh²(β/4) sech^{3/2}(β/2) <= ½ sech^{1/2}(β/2) <= (√2/2) e^{-β/4}
        (ModelId::DisplacedSqueezedQuantum, Scheme::Quantum) => Some((0.5f64.sqrt(), 0.25)),
        (ModelId::FermiOscillator, Scheme::Lavenda) => {
            let eps = crate::series::rational_to_f64(&model.params().epsilon0);
            Some((eps, 0.5 * eps))
        }
        _ => None,
    }
}

/// Normalization and first two moments of `ω` on `(0, ∞)`.
///
/// A pole at β = 0 makes the prior improper there. Priors that are finite
/// at 0 but lack an exponential bound decay like `1/β` (the energy
/// variance of a bounded spectrum falls off as `1/β²`) and diverge at ∞.
pub fn prior_moments(model: &ThermalModel, scheme: Scheme) -> Result<PriorMoments> {
    let expansion = prior_expansion(model, scheme, 8)?;
    let divergent = |at| PriorMoments {
        proper: false,
        normalization: None,
        mean: None,
        second_moment: None,
        divergence: Some(at),
    };
    if expansion.expansion.valuation() < 0 {
        return Ok(divergent(Divergence::AtZero));
    }
    let Some((scale, rate)) = decay(model, scheme) else {
        return Ok(divergent(Divergence::AtInfinity));
    };
    let moment = |k: u32| -> Result<f64> {
        let f = |b: f64| b.powi(k as i32) * model.omega_eval(b, scheme).unwrap_or(f64::NAN);
        let q = Quadrant::semi_infinite(&f, 0.0).with_tail(Tail::Exponential {
            scale,
            power: k,
            rate,
        });
        Ok(quad(&q, 1e-12)?.value)
    };
    let norm = moment(0)?;
    Ok(PriorMoments {
        proper: true,
        normalization: Some(norm),
        mean: Some(moment(1)? / norm),
        second_moment: Some(moment(2)? / norm),
        divergence: None,
    })
}
