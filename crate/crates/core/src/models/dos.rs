use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::numerics::{quad, QuadResult, Quadrant, Singularity};

/// A normalized density of states `Ω(ε)` on a finite support.
#[derive(Clone, Copy, Debug)]
pub struct DensityOfStates {
    pub support: (f64, f64),
    pub weight: fn(f64) -> f64,
    pub singularity: Singularity,
    /// `∫ Ω` over the support.
    pub normalization: f64,
}

/// Boltzmann-weighted moments at one β.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalMoments {
    pub partition: f64,
    pub mean: f64,
    pub variance: f64,
}

const TOL: f64 = 1e-12;

fn semicircle(z: f64) -> f64 {
    2.0 * (1.0 - z * z).max(0.0).sqrt() / PI
}

fn spin_one_marginal(v: f64) -> f64 {
    3.0 * v / (4.0 * (1.0 - v).sqrt())
}

impl DensityOfStates {
    /// `2√(1-z²)/π` on `[-1, 1]`.
    pub fn semicircle() -> Self {
        Self {
            support: (-1.0, 1.0),
            weight: semicircle,
            singularity: Singularity::None,
            normalization: 1.0,
        }
    }

    /// `3v/(4√(1-v))` on `[0, 1]`.
    pub fn spin_one() -> Self {
        Self {
            support: (0.0, 1.0),
            weight: spin_one_marginal,
            singularity: Singularity::InverseSqrtRight,
            normalization: 1.0,
        }
    }

    fn integrate(&self, g: &dyn Fn(f64) -> f64, tol: f64) -> Result<QuadResult> {
        let (a, b) = self.support;
        quad(&Quadrant::finite(g, a, b).with_singularity(self.singularity), tol)
    }

    /// `∫ Ω(ε) e^{-βε} dε`.
    pub fn partition(&self, beta: f64) -> Result<f64> {
        Ok(self.canonical(beta)?.partition)
    }

    /// Partition function, mean energy and energy variance at `beta`.
    /// The variance is integrated about the mean, so it stays accurate as
    /// β → 0.
    pub fn canonical(&self, beta: f64) -> Result<CanonicalMoments> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(domain(format!("β must be finite and >= 0, got {beta}")));
        }
        let w = self.weight;
        // Shift by the lower edge so the Boltzmann factor stays <= 1.
        let lo = self.support.0;
        let boltzmann = |e: f64| (-beta * (e - lo)).exp();
        let z0 = self.integrate(&|e| w(e) * boltzmann(e), TOL)?.value;
        let mean = self.integrate(&|e| e * w(e) * boltzmann(e), TOL * z0)?.value / z0;
        let variance = self
            .integrate(&|e| (e - mean).powi(2) * w(e) * boltzmann(e), TOL * z0)?
            .value
            / z0;
        Ok(CanonicalMoments {
            partition: z0 * (-beta * lo).exp(),
            mean,
            variance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel_i;

    #[test]
    fn normalized() {
        for dos in [DensityOfStates::semicircle(), DensityOfStates::spin_one()] {
            let z = dos.partition(0.0).unwrap();
            assert!((z - dos.normalization).abs() < 1e-10, "{z}");
        }
    }

    #[test]
    fn semicircle_laplace_transform_is_bessel() {
        for beta in [0.1, 1.0, 5.0, 20.0] {
            let z = DensityOfStates::semicircle().partition(beta).unwrap();
            let exact = 2.0 * bessel_i(1, beta).unwrap() / beta;
            assert!((z - exact).abs() < 1e-10 * exact, "β = {beta}: {z} vs {exact}");
        }
    }

    #[test]
    fn spin_one_moments_at_infinite_temperature() {
        let m = DensityOfStates::spin_one().canonical(0.0).unwrap();
        assert!((m.mean - 0.8).abs() < 1e-11);
        assert!((m.variance - 8.0 / 175.0).abs() < 1e-11);
    }

    #[test]
    fn semicircle_variance_near_zero() {
        // var = (log Z)'' = 1/4 - β²/32 + …
        let m = DensityOfStates::semicircle().canonical(1e-3).unwrap();
        assert!((m.variance - (0.25 - 1e-6 / 32.0)).abs() < 1e-11);
    }

    #[test]
    fn rejects_negative_beta() {
        assert!(DensityOfStates::spin_one().partition(-1.0).is_err());
    }
}
