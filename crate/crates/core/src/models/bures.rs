use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numerics::{quad, Quadrant, Singularity};

/// Normalized Bures volume elements with a radial block that can be
/// integrated out in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuresDensity {
    /// `p(x,y,z) = 1/(π² √(1 - x² - y² - z²))` on the unit ball.
    SpinHalf,
    /// `p(v,x,y,z) = 3/(4π² v √(1-v) √(v² - x² - y² - z²))` for
    /// `x² + y² + z² <= v² <= 1`.
    SpinOne,
}

impl BuresDensity {
    pub const ALL: [BuresDensity; 2] = [BuresDensity::SpinHalf, BuresDensity::SpinOne];

    pub fn id(self) -> &'static str {
        match self {
            BuresDensity::SpinHalf => "spin-half",
            BuresDensity::SpinOne => "spin-one",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            BuresDensity::SpinHalf => 3,
            BuresDensity::SpinOne => 4,
        }
    }

    pub fn marginal_variable(self) -> &'static str {
        match self {
            BuresDensity::SpinHalf => "z",
            BuresDensity::SpinOne => "v",
        }
    }

    /// Open domain of the marginal variable.
    pub fn marginal_domain(self) -> (f64, f64) {
        match self {
            BuresDensity::SpinHalf => (-1.0, 1.0),
            BuresDensity::SpinOne => (0.0, 1.0),
        }
    }

    /// Full density at a point (`[x, y, z]` or `[v, x, y, z]`); zero
    /// outside the support.
    pub fn density(self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dimension() {
            return Err(crate::error::usage(format!(
                "{} density takes {} coordinates, got {}",
                self.id(),
                self.dimension(),
                point.len()
            )));
        }
        let r2 = |xs: &[f64]| xs.iter().map(|x| x * x).sum::<f64>();
        Ok(match self {
            BuresDensity::SpinHalf => {
                let gap = 1.0 - r2(point);
                if gap > 0.0 {
                    1.0 / (PI * PI * gap.sqrt())
                } else {
                    0.0
                }
            }
            BuresDensity::SpinOne => {
                let v = point[0];
                let gap = v * v - r2(&point[1..]);
                if v > 0.0 && v < 1.0 && gap > 0.0 {
                    3.0 / (4.0 * PI * PI * v * (1.0 - v).sqrt() * gap.sqrt())
                } else {
                    0.0
                }
            }
        })
    }

    /// Published closed form of the univariate marginal.
    pub fn marginal_closed(self, t: f64) -> f64 {
        match self {
            BuresDensity::SpinHalf => 2.0 * (1.0 - t * t).sqrt() / PI,
            BuresDensity::SpinOne => 3.0 * t / (4.0 * (1.0 - t).sqrt()),
        }
    }

    fn check_interior(self, t: f64) -> Result<()> {
        let (a, b) = self.marginal_domain();
        if t > a && t < b {
            Ok(())
        } else {
            Err(domain(format!(
                "{} = {t} is not inside ({a}, {b})",
                self.marginal_variable()
            )))
        }
    }

    /// Prefactor left once the radial block is factored out, and the
    /// radius `R` of that block.
    fn split(self, t: f64) -> (f64, f64) {
        match self {
            BuresDensity::SpinHalf => (1.0 / (PI * PI), (1.0 - t * t).sqrt()),
            BuresDensity::SpinOne => (3.0 / (4.0 * PI * PI * t * (1.0 - t).sqrt()), t),
        }
    }

    /// Marginal density at `t`, integrating the radial block analytically:
    /// `∫_{disk R} dx dy/√(R²-ρ²) = 2πR` and
    /// `∫_{ball R} dx dy dz/√(R²-ρ²) = π²R²`.
    pub fn marginal_reduce(self, t: f64) -> Result<f64> {
        self.check_interior(t)?;
        let (prefactor, radius) = self.split(t);
        let radial = match self {
            BuresDensity::SpinHalf => 2.0 * PI * radius,
            BuresDensity::SpinOne => PI * PI * radius * radius,
        };
        Ok(prefactor * radial)
    }

    /// Same marginal with the radial block done by quadrature in polar or
    /// spherical shells.
    pub fn marginal_numeric(self, t: f64) -> Result<f64> {
        self.check_interior(t)?;
        let (prefactor, radius) = self.split(t);
        let shell = |rho: f64| -> f64 {
            let gap = ((radius - rho) * (radius + rho)).max(f64::MIN_POSITIVE);
            match self {
                BuresDensity::SpinHalf => 2.0 * PI * rho / gap.sqrt(),
                BuresDensity::SpinOne => 4.0 * PI * rho * rho / gap.sqrt(),
            }
        };
        let q = Quadrant::finite(&shell, 0.0, radius).with_singularity(Singularity::InverseSqrtRight);
        Ok(prefactor * quad(&q, 1e-12)?.value)
    }

    /// `∫` of the closed-form marginal over its domain.
    pub fn normalization(self) -> Result<f64> {
        let (a, b) = self.marginal_domain();
        let f = |t: f64| self.marginal_closed(t);
        let q = match self {
            BuresDensity::SpinHalf => Quadrant::finite(&f, a, b),
            BuresDensity::SpinOne => {
                Quadrant::finite(&f, a, b).with_singularity(Singularity::InverseSqrtRight)
            }
        };
        Ok(quad(&q, 1e-12)?.value)
    }
}

impl fmt::Display for BuresDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BuresDensity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|d| d.id() == s)
            .ok_or_else(|| Error::NotFound {
                kind: "density",
                name: s.to_string(),
                valid: Self::ALL.map(|d| d.id()).join(", "),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marginal_values() {
        let v = BuresDensity::SpinOne.marginal_reduce(0.5).unwrap();
        assert!((v - 0.530330085889910643).abs() < 1e-12);
        let z = BuresDensity::SpinHalf.marginal_reduce(0.0).unwrap();
        assert!((z - 2.0 / PI).abs() < 1e-15);
        let a = BuresDensity::SpinHalf.marginal_reduce(0.6).unwrap();
        let b = BuresDensity::SpinHalf.marginal_reduce(-0.6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn analytic_and_numeric_reductions_agree() {
        for d in BuresDensity::ALL {
            for t in [0.05, 0.3, 0.7, 0.95] {
                let closed = d.marginal_closed(t);
                assert!((d.marginal_reduce(t).unwrap() - closed).abs() < 1e-12);
                assert!((d.marginal_numeric(t).unwrap() - closed).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn densities_normalize() {
        for d in BuresDensity::ALL {
            assert!((d.normalization().unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn boundary_is_rejected() {
        assert!(BuresDensity::SpinOne.marginal_reduce(1.0).is_err());
        assert!(BuresDensity::SpinOne.marginal_reduce(0.0).is_err());
        assert!(BuresDensity::SpinHalf.marginal_reduce(-1.0).is_err());
        assert!(BuresDensity::SpinHalf.density(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn density_support() {
        assert_eq!(BuresDensity::SpinOne.density(&[0.5, 0.6, 0.0, 0.0]).unwrap(), 0.0);
        assert!(BuresDensity::SpinOne.density(&[0.5, 0.1, 0.0, 0.0]).unwrap() > 0.0);
        assert_eq!(BuresDensity::SpinHalf.density(&[1.0, 0.5, 0.0]).unwrap(), 0.0);
    }
}
