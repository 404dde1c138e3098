//! Registry of thermal models: closed-form evaluators, exact partition
//! series, densities of states and Bures marginals.

mod bures;
mod dos;
mod partition;

pub use bures::BuresDensity;
pub use dos::{CanonicalMoments, DensityOfStates};
pub use partition::{z_partition_series, PartitionSeries};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::error::{domain, usage, Error, Result};
use crate::numerics::{bessel_i, erfi, langevin_derivative};
use crate::schemes::{Scheme, Verdict};
use crate::series::{format_rational, int, ratio, rational_to_f64, ConstFactor, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    SqueezedThermalQuantum,
    DisplacedThermalQuantum,
    DisplacedSqueezedQuantum,
    SpinHalfBures,
    SpinHalfMaximal,
    SpinOneExtended,
    SqueezedThermalLavenda,
    IdealGas,
    HarmonicOscillator,
    FermiOscillator,
}

/// Extra names accepted by [`lookup`]. Displacement and squeezing are
/// unitary, so both Fisher-rule variants share the squeezed-thermal `Z`.
const ALIASES: [(&str, ModelId); 2] = [
    ("displaced-thermal-lavenda", ModelId::SqueezedThermalLavenda),
    ("displaced-squeezed-lavenda", ModelId::SqueezedThermalLavenda),
];

impl ModelId {
    pub const ALL: [ModelId; 10] = [
        ModelId::SqueezedThermalQuantum,
        ModelId::DisplacedThermalQuantum,
        ModelId::DisplacedSqueezedQuantum,
        ModelId::SpinHalfBures,
        ModelId::SpinHalfMaximal,
        ModelId::SpinOneExtended,
        ModelId::SqueezedThermalLavenda,
        ModelId::IdealGas,
        ModelId::HarmonicOscillator,
        ModelId::FermiOscillator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::SqueezedThermalQuantum => "squeezed-thermal-quantum",
            ModelId::DisplacedThermalQuantum => "displaced-thermal-quantum",
            ModelId::DisplacedSqueezedQuantum => "displaced-squeezed-quantum",
            ModelId::SpinHalfBures => "spin-half-bures",
            ModelId::SpinHalfMaximal => "spin-half-maximal",
            ModelId::SpinOneExtended => "spin-one-extended",
            ModelId::SqueezedThermalLavenda => "squeezed-thermal-lavenda",
            ModelId::IdealGas => "ideal-gas",
            ModelId::HarmonicOscillator => "harmonic-oscillator",
            ModelId::FermiOscillator => "fermi-oscillator",
        }
    }

    /// Short label `M1` … `M10`.
    pub fn label(self) -> String {
        let i = Self::ALL.iter().position(|&m| m == self).expect("listed");
        format!("M{}", i + 1)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.name() == s || m.label().eq_ignore_ascii_case(s))
            .or_else(|| ALIASES.iter().find(|(a, _)| *a == s).map(|&(_, m)| m))
            .ok_or_else(|| Error::NotFound {
                kind: "model",
                name: s.to_string(),
                valid: ModelId::ALL.map(|m| m.name()).join(", "),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    QuantumBures,
    FisherLavenda,
    ReferenceClassical,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::QuantumBures => "quantum-bures",
            Family::FisherLavenda => "fisher-lavenda",
            Family::ReferenceClassical => "reference-classical",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dims {
    Infinite,
    Finite(u32),
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dims::Infinite => f.write_str("infinite"),
            Dims::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Diagonal Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hamiltonian {
    pub diagonal: Vec<Rational>,
}

impl fmt::Display for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.diagonal.iter().map(format_rational).collect();
        write!(f, "diag({})", entries.join(", "))
    }
}

impl Serialize for Hamiltonian {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.diagonal.iter().map(format_rational))
    }
}

/// Scale parameters of the reference oscillators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    /// Harmonic-oscillator frequency.
    pub nu: Rational,
    /// Fermi-oscillator level spacing.
    pub epsilon0: Rational,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            nu: Rational::one(),
            epsilon0: Rational::one(),
        }
    }
}

/// A published expansion `factor · Σ c_k β^k`. When `proportional` is set
/// only the ratios of the coefficients are claimed.
#[derive(Clone, Debug, PartialEq)]
pub struct PublishedExpansion {
    pub scheme: Scheme,
    pub factor: ConstFactor,
    pub terms: Vec<(i64, Rational)>,
    pub proportional: bool,
}

/// What the literature states about a model's prior near β = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub verdict: Verdict,
    pub expansion: Option<PublishedExpansion>,
}

/// A registry entry together with its scale parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ThermalModel {
    id: ModelId,
    params: ModelParams,
}

/// All ten models with default parameters, in registry order.
pub fn registry() -> Vec<ThermalModel> {
    ModelId::ALL.into_iter().map(ThermalModel::new).collect()
}

/// Resolves a model name, label (`M4`) or alias.
pub fn lookup(name: &str) -> Result<ThermalModel> {
    name.parse().map(ThermalModel::new)
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

fn csch(x: f64) -> f64 {
    1.0 / x.sinh()
}

/// `1/(2 sinh(β/4))`
fn squeezed_z(beta: f64) -> f64 {
    0.5 * csch(beta / 4.0)
}

/// Series of the spin-one partition function,
/// `3 e^{-β} Σ β^j / (j! (2j+1)(2j+3))`; all terms are positive.
fn spin_one_z_series(beta: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut j = 0u32;
    loop {
        let jf = f64::from(j);
        let contribution = term / ((2.0 * jf + 1.0) * (2.0 * jf + 3.0));
        sum += contribution;
        if contribution < 1e-17 * sum {
            break;
        }
        j += 1;
        term *= beta / f64::from(j);
    }
    3.0 * (-beta).exp() * sum
}

/// Spin-one partition function in its erfi form,
/// `3e^{-β}((1+2β)√π erfi(√β) - 2√β e^β) / (8β^{3/2})`, for `0 < β <= 100`.
/// Loses about `log10(1/β)` digits to cancellation as β → 0.
pub fn spin_one_z_erfi(beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(domain(format!("β must be positive, got {beta}")));
    }
    let s = beta.sqrt();
    let bracket = (1.0 + 2.0 * beta) * PI.sqrt() * erfi(s)? - 2.0 * s * beta.exp();
    Ok(3.0 * (-beta).exp() * bracket / (8.0 * beta * s))
}

impl ThermalModel {
    pub fn new(id: ModelId) -> Self {
        Self {
            id,
            params: ModelParams::default(),
        }
    }

    pub fn with_params(mut self, params: ModelParams) -> Result<Self> {
        for (name, q) in [("ν", &params.nu), ("ε₀", &params.epsilon0)] {
            if q <= &int(0) {
                return Err(usage(format!("{name} must be positive, got {}", format_rational(q))));
            }
        }
        self.params = params;
        Ok(self)
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn family(&self) -> Family {
        use ModelId::*;
        match self.id {
            SqueezedThermalQuantum | DisplacedThermalQuantum | DisplacedSqueezedQuantum => {
                Family::QuantumBures
            }
            SpinHalfBures | SpinHalfMaximal | SpinOneExtended | SqueezedThermalLavenda => {
                Family::FisherLavenda
            }
            IdealGas | HarmonicOscillator | FermiOscillator => Family::ReferenceClassical,
        }
    }

    pub fn dims(&self) -> Dims {
        use ModelId::*;
        match self.id {
            SpinHalfBures | SpinHalfMaximal | FermiOscillator => Dims::Finite(2),
            SpinOneExtended => Dims::Finite(3),
            _ => Dims::Infinite,
        }
    }

    /// Number of state parameters of the underlying quantum family.
    pub fn degrees_of_freedom(&self) -> Option<u32> {
        use ModelId::*;
        match self.id {
            SqueezedThermalQuantum | DisplacedThermalQuantum | SpinHalfBures | SpinHalfMaximal => {
                Some(3)
            }
            DisplacedSqueezedQuantum | SpinOneExtended => Some(4),
            _ => None,
        }
    }

    pub fn hamiltonian(&self) -> Option<Hamiltonian> {
        let diagonal = match self.id {
            ModelId::SpinHalfBures => vec![int(1), int(-1)],
            ModelId::SpinOneExtended => vec![ratio(1, 2), int(0), ratio(1, 2)],
            ModelId::FermiOscillator => vec![int(0), self.params.epsilon0.clone()],
            _ => return None,
        };
        Some(Hamiltonian { diagonal })
    }

    /// Squeezing-parameter factor `υ(r)` of the volume element.
    pub fn r_part(&self, r: f64) -> Option<f64> {
        match self.id {
            ModelId::SqueezedThermalQuantum => Some((2.0 * r).sinh()),
            ModelId::DisplacedSqueezedQuantum => {
                let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sin());
                Some((4.0 * c * c - s * s).sqrt())
            }
            _ => None,
        }
    }

    pub fn has_quantum_prior(&self) -> bool {
        self.family() == Family::QuantumBures
    }

    pub fn schemes(&self) -> Vec<Scheme> {
        if self.has_quantum_prior() {
            vec![Scheme::Quantum, Scheme::Lavenda]
        } else {
            vec![Scheme::Lavenda]
        }
    }

    pub fn primary_scheme(&self) -> Scheme {
        self.schemes()[0]
    }

    pub fn supports(&self, scheme: Scheme) -> bool {
        self.schemes().contains(&scheme)
    }

    pub(crate) fn require(&self, scheme: Scheme) -> Result<()> {
        if self.supports(scheme) {
            Ok(())
        } else {
            Err(usage(format!(
                "model {} does not support the {scheme} scheme (supported: {})",
                self.name(),
                self.schemes().iter().map(Scheme::to_string).collect::<Vec<_>>().join(", ")
            )))
        }
    }

    pub fn dos(&self) -> Option<DensityOfStates> {
        match self.id {
            ModelId::SpinHalfBures => Some(DensityOfStates::semicircle()),
            ModelId::SpinOneExtended => Some(DensityOfStates::spin_one()),
            _ => None,
        }
    }

    pub fn bures_density(&self) -> Option<BuresDensity> {
        match self.id {
            ModelId::SpinHalfBures => Some(BuresDensity::SpinHalf),
            ModelId::SpinOneExtended => Some(BuresDensity::SpinOne),
            _ => None,
        }
    }

    fn nu(&self) -> f64 {
        rational_to_f64(&self.params.nu)
    }

    fn epsilon0(&self) -> f64 {
        rational_to_f64(&self.params.epsilon0)
    }

    /// Closed-form `Z(β)`.
    pub fn z_eval(&self, beta: f64) -> Result<f64> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(domain(format!("β must be positive and finite, got {beta}")));
        }
        use ModelId::*;
        Ok(match self.id {
            SqueezedThermalQuantum | DisplacedThermalQuantum | DisplacedSqueezedQuantum
            | SqueezedThermalLavenda => squeezed_z(beta),
            SpinHalfBures => 2.0 * bessel_i(1, beta)? / beta,
            SpinHalfMaximal => beta.sinh() / beta,
            SpinOneExtended => {
                if beta < 1e-2 {
                    spin_one_z_series(beta)
                } else {
                    spin_one_z_erfi(beta)?
                }
            }
            IdealGas => beta.powf(-1.5),
            HarmonicOscillator => 1.0 / -(-self.nu() * beta).exp_m1(),
            FermiOscillator => 1.0 + (-self.epsilon0() * beta).exp(),
        })
    }

    /// Exact `Z` as a partition series with unit exact below `order`.
    pub fn z_series(&self, order: i64) -> Result<PartitionSeries> {
        z_partition_series(self.id, &self.params, order)
    }

    /// `∫ Ω(ε) e^{-βε} dε` for models with a density of states.
    pub fn dos_partition(&self, beta: f64) -> Result<f64> {
        self.dos()
            .ok_or_else(|| usage(format!("model {} has no density of states", self.name())))?
            .partition(beta)
    }

    /// Numeric prior `ω(β)` under `scheme`.
    ///
    /// The Fisher rule uses `√((log Z)'')` in closed form where one exists,
    /// and the Boltzmann-weighted energy variance of the density of states
    /// otherwise.
    pub fn omega_eval(&self, beta: f64, scheme: Scheme) -> Result<f64> {
        self.require(scheme)?;
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(domain(format!("β must be positive and finite, got {beta}")));
        }
        use ModelId::*;
        Ok(match (scheme, self.id) {
            (Scheme::Quantum, SqueezedThermalQuantum) => {
                let x = beta / 4.0;
                x.cosh() / x.tanh() * sech(beta / 2.0) / 8.0
            }
            (Scheme::Quantum, DisplacedThermalQuantum) => sech(beta / 2.0) / PI,
            (Scheme::Quantum, DisplacedSqueezedQuantum) => {
                0.5 * (beta / 4.0).cosh().powi(2) * sech(beta / 2.0).powf(1.5)
            }
            (Scheme::Quantum, _) => unreachable!("checked by require"),
            (Scheme::Lavenda, SqueezedThermalQuantum | DisplacedThermalQuantum)
            | (Scheme::Lavenda, DisplacedSqueezedQuantum | SqueezedThermalLavenda) => {
                0.25 * csch(beta / 4.0)
            }
            (Scheme::Lavenda, SpinHalfBures | SpinOneExtended) => {
                let dos = self.dos().expect("spin models carry a density of states");
                dos.canonical(beta)?.variance.sqrt()
            }
            (Scheme::Lavenda, SpinHalfMaximal) => langevin_derivative(beta).sqrt(),
            (Scheme::Lavenda, IdealGas) => 1.5f64.sqrt() / beta,
            (Scheme::Lavenda, HarmonicOscillator) => {
                let nu = self.nu();
                0.5 * nu * csch(0.5 * nu * beta)
            }
            (Scheme::Lavenda, FermiOscillator) => {
                let eps = self.epsilon0();
                0.5 * eps * sech(0.5 * eps * beta)
            }
        })
    }

    /// `log Z`, for finite-difference oracles.
    pub fn log_z(&self, beta: f64) -> Result<f64> {
        Ok(self.z_eval(beta)?.ln())
    }

    /// Published verdict and expansion for this model's primary scheme.
    pub fn expected(&self) -> Expectation {
        use ModelId::*;
        let terms = |ts: &[(i64, i64, i64)]| ts.iter().map(|&(k, n, d)| (k, ratio(n, d))).collect();
        let published = |scheme, factor, ts: &[(i64, i64, i64)], proportional| {
            Some(PublishedExpansion {
                scheme,
                factor,
                terms: terms(ts),
                proportional,
            })
        };
        let one = ConstFactor::one();
        let (verdict, expansion) = match self.id {
            SqueezedThermalQuantum => (
                Verdict::Jeffreys,
                published(Scheme::Quantum, one, &[(-1, 1, 2), (1, -7, 192), (3, 667, 184320)], false),
            ),
            DisplacedThermalQuantum => (
                Verdict::BayesLaplace,
                published(
                    Scheme::Quantum,
                    ConstFactor::pi_power(-1),
                    &[(0, 1, 1), (2, -1, 8), (4, 5, 384)],
                    false,
                ),
            ),
            DisplacedSqueezedQuantum => (
                Verdict::BayesLaplace,
                published(Scheme::Quantum, one, &[(0, 1, 2), (2, -1, 16), (4, 23, 3072)], false),
            ),
            SpinHalfBures => (
                Verdict::BayesLaplace,
                published(Scheme::Lavenda, one, &[(0, 1, 2), (2, -1, 32), (4, 7, 3072)], false),
            ),
            SpinHalfMaximal => (
                Verdict::BayesLaplace,
                published(
                    Scheme::Lavenda,
                    ConstFactor::sqrt_of(&ratio(1, 3)).expect("positive"),
                    &[(0, 1, 1), (2, -1, 10), (4, 137, 12600)],
                    true,
                ),
            ),
            SpinOneExtended => (
                Verdict::Jeffreys,
                published(Scheme::Lavenda, one, &[(-1, 1, 1), (1, -119, 40), (2, 1891, 140)], true),
            ),
            SqueezedThermalLavenda => (
                Verdict::Jeffreys,
                published(Scheme::Lavenda, one, &[(-1, 1, 1), (1, -1, 96), (2, 7, 92160)], false),
            ),
            IdealGas | HarmonicOscillator => (Verdict::Jeffreys, None),
            FermiOscillator => (Verdict::BayesLaplace, None),
        };
        Expectation { verdict, expansion }
    }
}
