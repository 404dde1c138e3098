use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{ModelId, ModelParams};
use crate::error::{domain, usage, Result};
use crate::series::{
    elementary, factorial, format_rational, int, rational_to_f64, ConstFactor, Elementary,
    LaurentSeries, Rational,
};

/// `Z(β) = const · β^ρ · unit(β)` with `unit = 1 + O(β)`.
#[derive(Clone, Debug)]
pub struct PartitionSeries {
    constant: ConstFactor,
    exponent: Rational,
    unit: LaurentSeries,
}

impl PartitionSeries {
    pub fn new(constant: ConstFactor, exponent: Rational, unit: LaurentSeries) -> Result<Self> {
        if constant.is_zero() {
            return Err(domain("partition function constant must be nonzero"));
        }
        if unit.valuation() != Some(0) || !unit.leading().is_some_and(|c| c.is_one()) {
            return Err(domain("partition unit series must start 1 + O(β)"));
        }
        Ok(Self {
            constant,
            exponent,
            unit,
        })
    }

    pub fn constant(&self) -> &ConstFactor {
        &self.constant
    }

    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }

    pub fn unit(&self) -> &LaurentSeries {
        &self.unit
    }

    pub fn order(&self) -> i64 {
        self.unit.order()
    }

    pub fn with_constant(&self, constant: ConstFactor) -> Result<Self> {
        Self::new(constant, self.exponent.clone(), self.unit.clone())
    }

    /// `(log Z)'' = -ρ/β² + (unit'/unit)'`.
    pub fn second_log_derivative(&self) -> Result<LaurentSeries> {
        let tail = self.unit.log_derivative()?.differentiate();
        if self.exponent.is_zero() {
            return Ok(tail);
        }
        let pole = LaurentSeries::monomial(-2, -self.exponent.clone(), tail.order());
        Ok(&pole + &tail)
    }

    /// Truncated value `const · β^ρ · unit(β)`.
    pub fn eval(&self, beta: f64) -> Result<f64> {
        if !(beta > 0.0) {
            return Err(domain(format!("β must be positive, got {beta}")));
        }
        let unit = self.unit.eval(beta)?.value;
        Ok(self.constant.to_f64() * beta.powf(rational_to_f64(&self.exponent)) * unit)
    }
}

impl fmt::Display for PartitionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} · β^({}) · ({})",
            self.constant,
            format_rational(&self.exponent),
            self.unit
        )
    }
}

impl Serialize for PartitionSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("PartitionSeries", 3)?;
        st.serialize_field("constant", &self.constant)?;
        st.serialize_field("exponent", &format_rational(&self.exponent))?;
        st.serialize_field("unit", &self.unit)?;
        st.end()
    }
}

/// Exact partition series of `id`, with unit exact below `order`.
pub fn z_partition_series(id: ModelId, params: &ModelParams, order: i64) -> Result<PartitionSeries> {
    if order < 4 {
        return Err(usage(format!("partition series need order >= 4, got {order}")));
    }
    use ModelId::*;
    let rational = ConstFactor::rational;
    match id {
        SqueezedThermalQuantum | DisplacedThermalQuantum | DisplacedSqueezedQuantum
        | SqueezedThermalLavenda => {
            // 1/(2 sinh(β/4)) = (2/β) · (sinh x / x)^{-1}, x = β/4
            let sinhc = LaurentSeries::from_fn(0, order, |k| {
                if k % 2 == 0 {
                    Rational::from_integer(factorial(k as u64 + 1)).recip()
                } else {
                    Rational::zero()
                }
            });
            let unit = sinhc.scale_argument(&crate::series::ratio(1, 4))?.inverse()?;
            PartitionSeries::new(rational(int(2)), int(-1), unit)
        }
        SpinHalfBures => {
            // 2 I₁(β)/β = Σ (β/2)^{2k} / (k! (k+1)!)
            let unit = LaurentSeries::from_fn(0, order, |k| {
                if k % 2 == 0 {
                    let j = (k / 2) as u64;
                    Rational::new(
                        1.into(),
                        factorial(j) * factorial(j + 1) * num_bigint::BigInt::from(2).pow(k as u32),
                    )
                } else {
                    Rational::zero()
                }
            });
            PartitionSeries::new(ConstFactor::one(), Rational::zero(), unit)
        }
        SpinHalfMaximal => {
            let unit = LaurentSeries::from_fn(0, order, |k| {
                if k % 2 == 0 {
                    Rational::from_integer(factorial(k as u64 + 1)).recip()
                } else {
                    Rational::zero()
                }
            });
            PartitionSeries::new(ConstFactor::one(), Rational::zero(), unit)
        }
        SpinOneExtended => {
            // e^{-β} · 3 Σ β^j / (j! (2j+1)(2j+3))
            let s = LaurentSeries::from_fn(0, order, |j| {
                let j = j as u64;
                Rational::new(
                    3.into(),
                    factorial(j) * num_bigint::BigInt::from((2 * j + 1) * (2 * j + 3)),
                )
            });
            let decay = elementary(Elementary::Exp, order).scale_argument(&int(-1))?;
            PartitionSeries::new(ConstFactor::one(), Rational::zero(), &decay * &s)
        }
        IdealGas => PartitionSeries::new(
            ConstFactor::one(),
            crate::series::ratio(-3, 2),
            LaurentSeries::one(order),
        ),
        HarmonicOscillator => {
            // 1 - e^{-νβ} = νβ Σ (-νβ)^k / (k+1)!
            let nu = positive(&params.nu, "ν")?;
            let inner = LaurentSeries::from_fn(0, order, |k| {
                Rational::from_integer(factorial(k as u64 + 1)).recip()
            })
            .scale_argument(&-nu.clone())?;
            PartitionSeries::new(rational(nu.recip()), int(-1), inner.inverse()?)
        }
        FermiOscillator => {
            let eps = positive(&params.epsilon0, "ε₀")?;
            let decay = elementary(Elementary::Exp, order).scale_argument(&-eps.clone())?;
            let unit = (&LaurentSeries::one(order) + &decay).scale(&crate::series::ratio(1, 2));
            PartitionSeries::new(rational(int(2)), Rational::zero(), unit)
        }
    }
}

fn positive<'a>(q: &'a Rational, name: &str) -> Result<&'a Rational> {
    if q > &Rational::zero() {
        Ok(q)
    } else {
        Err(domain(format!("{name} must be positive, got {}", format_rational(q))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn series(id: ModelId, order: i64) -> PartitionSeries {
        z_partition_series(id, &ModelParams::default(), order).unwrap()
    }

    #[test]
    fn spin_half_bures_unit() {
        let z = series(ModelId::SpinHalfBures, 8);
        assert_eq!(z.exponent(), &Rational::zero());
        let expected = [(0, ratio(1, 1)), (2, ratio(1, 8)), (4, ratio(1, 192)), (6, ratio(1, 9216))];
        for (k, c) in expected {
            assert_eq!(z.unit().coeff(k), Some(c));
        }
        assert_eq!(z.unit().coeff(7), Some(ratio(0, 1)));
    }

    #[test]
    fn squeezed_thermal_shape() {
        let z = series(ModelId::SqueezedThermalQuantum, 8);
        assert_eq!(z.exponent(), &int(-1));
        assert_eq!(z.constant().as_rational(), Some(int(2)));
        // (sinh x / x)^{-1} = 1 - x²/6 + 7x⁴/360 …, x = β/4
        assert_eq!(z.unit().coeff(2), Some(ratio(-1, 96)));
        assert_eq!(z.unit().coeff(4), Some(ratio(7, 92160)));
    }

    #[test]
    fn spin_one_unit() {
        let z = series(ModelId::SpinOneExtended, 10);
        let back = &z.unit().clone() * &elementary(Elementary::Exp, 10);
        let expected = [ratio(1, 1), ratio(1, 5), ratio(3, 70), ratio(1, 126)];
        for (k, c) in expected.into_iter().enumerate() {
            assert_eq!(back.coeff(k as i64), Some(c));
        }
    }

    #[test]
    fn bose_oscillator() {
        let params = ModelParams {
            nu: int(2),
            ..ModelParams::default()
        };
        let z = z_partition_series(ModelId::HarmonicOscillator, &params, 8).unwrap();
        let beta: f64 = 0.05;
        let exact = 1.0 / -(-2.0 * beta).exp_m1();
        assert!((z.eval(beta).unwrap() - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn second_log_derivative_of_power() {
        let z = series(ModelId::IdealGas, 6);
        let d2 = z.second_log_derivative().unwrap();
        assert_eq!(d2.valuation(), Some(-2));
        assert_eq!(d2.coeff(-2), Some(ratio(3, 2)));
        assert_eq!(d2.coeff(0), Some(ratio(0, 1)));
    }

    #[test]
    fn rejects_low_order_and_bad_units() {
        assert!(z_partition_series(ModelId::SpinHalfBures, &ModelParams::default(), 3).is_err());
        let not_unit = LaurentSeries::constant(int(2), 4);
        assert!(PartitionSeries::new(ConstFactor::one(), int(0), not_unit).is_err());
        let params = ModelParams {
            epsilon0: int(0),
            ..ModelParams::default()
        };
        assert!(z_partition_series(ModelId::FermiOscillator, &params, 6).is_err());
    }
}
