//! Exact high-temperature expansions of priors over inverse temperature.
//!
//! Two prior constructions are covered: volume elements of Bures metrics
//! on families of thermal density matrices, and the Fisher-information rule
//! `ω(β) = √(∂²/∂β² log Z)`. Every expansion is computed with exact rational
//! Laurent-series arithmetic ([`series`]) and checked against independent
//! double-precision evaluation ([`numerics`]). Each model's β→0 behaviour
//! is then classified as Jeffreys (`∝ 1/β`) or Bayes-Laplace (constant).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference values in tests keep all the digits they were computed to.
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod error;
pub mod models;
pub mod numerics;
pub mod schemes;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use models::{lookup, registry, ModelId, ThermalModel};
pub use schemes::{Scheme, Verdict};
pub use series::{
    elementary, ConstFactor, Elementary, Evaluation, LaurentSeries, Rational, ScaledSeries,
    DEFAULT_ORDER,
};
