use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{factorial, LaurentSeries, Rational};

/// Elementary functions with exact Taylor (or Laurent) expansions at zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    Exp,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Sech,
    Csch,
    Sin,
    Cos,
}

impl Elementary {
    pub const ALL: [Elementary; 9] = [
        Elementary::Exp,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tanh,
        Elementary::Coth,
        Elementary::Sech,
        Elementary::Csch,
        Elementary::Sin,
        Elementary::Cos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Exp => "exp",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tanh => "tanh",
            Elementary::Coth => "coth",
            Elementary::Sech => "sech",
            Elementary::Csch => "csch",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Elementary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Elementary::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown elementary function '{s}'"))
    }
}

/// Exact series of `kind` in its own variable, with every coefficient of
/// `x^k`, `k < order`, exact. `coth` and `csch` start at `x^-1`.
pub fn elementary(kind: Elementary, order: i64) -> LaurentSeries {
    match kind {
        Elementary::Exp => taylor(order, |_| 1),
        Elementary::Sinh => taylor(order, |k| if k % 2 == 1 { 1 } else { 0 }),
        Elementary::Cosh => taylor(order, |k| if k % 2 == 0 { 1 } else { 0 }),
        Elementary::Sin => taylor(order, |k| match k % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        }),
        Elementary::Cos => taylor(order, |k| match k % 4 {
            0 => 1,
            2 => -1,
            _ => 0,
        }),
        Elementary::Tanh => quotient(
            &elementary(Elementary::Sinh, order),
            &elementary(Elementary::Cosh, order),
        ),
        Elementary::Sech => quotient(
            &LaurentSeries::one(order),
            &elementary(Elementary::Cosh, order),
        ),
        Elementary::Coth => quotient(
            &elementary(Elementary::Cosh, order + 1),
            &elementary(Elementary::Sinh, order + 2),
        ),
        Elementary::Csch => quotient(
            &LaurentSeries::one(order + 1),
            &elementary(Elementary::Sinh, order + 2),
        ),
    }
    .truncate(order)
}

/// `Σ sign(k) x^k / k!` for `0 <= k < order`.
fn taylor(order: i64, sign: impl Fn(i64) -> i64) -> LaurentSeries {
    if order <= 0 {
        return LaurentSeries::zero(order);
    }
    LaurentSeries::from_fn(0, order, |k| match sign(k) {
        0 => Rational::zero(),
        s => Rational::new(s.into(), factorial(k as u64)),
    })
}

fn quotient(a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    a.div(b).expect("elementary denominators are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    #[test]
    fn csch_coefficients() {
        let csch = elementary(Elementary::Csch, 6);
        assert_eq!(csch.order(), 6);
        let expected = [(-1, ratio(1, 1)), (1, ratio(-1, 6)), (3, ratio(7, 360)), (5, ratio(-31, 15120))];
        for (k, c) in expected {
            assert_eq!(csch.coeff(k), Some(c));
        }
        for k in [0, 2, 4] {
            assert_eq!(csch.coeff(k), Some(ratio(0, 1)));
        }
        let prod = &csch * &elementary(Elementary::Sinh, 8);
        assert!(prod.agrees_with(&LaurentSeries::one(6)));
    }

    #[test]
    fn cosh_and_sech() {
        let cosh = elementary(Elementary::Cosh, 5);
        assert_eq!(cosh.coeff(2), Some(ratio(1, 2)));
        assert_eq!(cosh.coeff(4), Some(ratio(1, 24)));
        let sech = elementary(Elementary::Sech, 6);
        assert_eq!(sech.coeff(2), Some(ratio(-1, 2)));
        assert_eq!(sech.coeff(4), Some(ratio(5, 24)));
        assert!((&sech * &elementary(Elementary::Cosh, 6)).agrees_with(&LaurentSeries::one(6)));
    }

    #[test]
    fn every_kind_reaches_the_requested_order() {
        for kind in Elementary::ALL {
            for order in [1, 6, 13] {
                assert_eq!(elementary(kind, order).order(), order, "{kind} at {order}");
            }
            assert_eq!(kind.name().parse::<Elementary>().unwrap(), kind);
        }
    }

    #[test]
    fn trig_identities() {
        let s = elementary(Elementary::Sin, 12);
        let c = elementary(Elementary::Cos, 12);
        assert!((&(&s * &s) + &(&c * &c)).agrees_with(&LaurentSeries::one(12)));
        let t = elementary(Elementary::Tanh, 12);
        assert!((&t * &elementary(Elementary::Cosh, 12)).agrees_with(&elementary(Elementary::Sinh, 12)));
    }
}
