use crate::error::{domain, usage, Result};

const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Modified Bessel function of the first kind `I_n(x)` for `n ∈ {0, 1}` and
/// `0 <= x <= 50`.
///
/// Every term of the power series `Σ (x/2)^{2k+n} / (k! (k+n)!)` is
/// positive, so direct summation keeps full relative accuracy over the
/// whole range; no asymptotic branch is needed.
pub fn bessel_i(n: u32, x: f64) -> Result<f64> {
    if n > 1 {
        return Err(usage(format!("bessel_i supports orders 0 and 1, got {n}")));
    }
    if !(0.0..=50.0).contains(&x) {
        return Err(domain(format!("bessel_i needs 0 <= x <= 50, got {x}")));
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = if n == 0 { 1.0 } else { half };
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + n as f64));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    Ok(sum)
}

/// Imaginary error function `erfi(x) = -i erf(ix)` for `|x| <= 10`.
pub fn erfi(x: f64) -> Result<f64> {
    if !(x.abs() <= 10.0) {
        return Err(domain(format!("erfi needs |x| <= 10, got {x}")));
    }
    if x < 0.0 {
        return erfi(-x).map(|v| -v);
    }
    // (2/√π) Σ x^{2k+1} / (k! (2k+1)); all terms positive.
    let q = x * x;
    let mut power = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        k += 1.0;
        power *= q / k;
        let term = power / (2.0 * k + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    Ok(TWO_OVER_SQRT_PI * sum)
}

/// Langevin function `coth x - 1/x`, with the removable singularity at zero
/// handled. Odd in `x`.
pub fn langevin(x: f64) -> f64 {
    let a = x.abs();
    let value = if a < 1e-2 {
        let q = a * a;
        a * (1.0 / 3.0 - q * (1.0 / 45.0 - q * (2.0 / 945.0)))
    } else if a < 2.0 {
        // Lambert's continued fraction: x / (3 + x²/(5 + x²/(7 + …))).
        let q = a * a;
        let mut tail = 0.0;
        for k in (1..=20).rev() {
            tail = q / ((2 * k + 1) as f64 + tail);
        }
        tail / a
    } else {
        1.0 / a.tanh() - 1.0 / a
    };
    value.copysign(x)
}

/// Derivative of the Langevin function, `1/x² - csch² x`.
pub fn langevin_derivative(x: f64) -> f64 {
    let a = x.abs();
    if a < 0.1 {
        let q = a * a;
        1.0 / 3.0
            - q * (1.0 / 15.0 - q * (2.0 / 189.0 - q * (1.0 / 675.0 - q * (2.0 / 10395.0))))
    } else {
        let s = a.sinh();
        1.0 / (a * a) - 1.0 / (s * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bessel_values() {
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        // Reference values from an independent 40-digit evaluation.
        let cases = [
            (0, 1.0, 1.266065877752008335598244625214717537607),
            (1, 1.0, 0.565159103992485027207696027609863307328),
            (1, 0.1, 0.050062526047092694899782196854),
            (1, 5.0, 24.3356421424505271991430504518),
            (0, 15.0, 339649.373297913879521701629915),
            (1, 50.0, 2.90307859010355679675e20),
            (0, 50.0, 2.93255378384933632665e20),
        ];
        for (n, x, expected) in cases {
            assert_relative_eq!(bessel_i(n, x).unwrap(), expected, max_relative = 1e-12);
        }
        assert!(bessel_i(1, 51.0).is_err());
        assert!(bessel_i(1, -1.0).is_err());
        assert!(bessel_i(2, 1.0).is_err());
    }

    #[test]
    fn bessel_partial_sums_oracle() {
        // I_1(1) from a hand-rolled partial sum of Σ (x/2)^{2k+1}/(k!(k+1)!).
        let mut s = 0.0;
        let mut fact = [1.0f64; 20];
        for i in 1..20 {
            fact[i] = fact[i - 1] * i as f64;
        }
        for k in 0..15 {
            s += 0.5f64.powi(2 * k as i32 + 1) / (fact[k] * fact[k + 1]);
        }
        assert_relative_eq!(bessel_i(1, 1.0).unwrap(), s, max_relative = 1e-14);
        assert!((s - 0.565159104).abs() < 1e-9);
    }

    #[test]
    fn erfi_values() {
        assert_eq!(erfi(0.0).unwrap(), 0.0);
        assert_relative_eq!(
            erfi(1.0).unwrap(),
            1.650425758797542876025337729561362443896,
            max_relative = 1e-12
        );
        assert_relative_eq!(erfi(0.5).unwrap(), 0.6149520946965109808, max_relative = 1e-12);
        assert_eq!(erfi(-0.5).unwrap(), -erfi(0.5).unwrap());
        assert_relative_eq!(erfi(3.0).unwrap(), 1629.994622601565651, max_relative = 1e-12);
        assert_relative_eq!(erfi(10.0).unwrap(), 1.52430742270866969936e42, max_relative = 1e-12);
        assert!(erfi(10.5).is_err());
        assert!(erfi(f64::NAN).is_err());
    }

    #[test]
    fn langevin_values() {
        assert_eq!(langevin(0.0), 0.0);
        let x = 1e-3;
        assert_relative_eq!(langevin(x), x / 3.0 - x * x * x / 45.0, max_relative = 1e-12);
        assert!((langevin(10.0) - 0.9).abs() < 1e-8);
        // Continuity across the branch points.
        for x in [1e-2, 2.0] {
            let below = langevin(x * (1.0 - 1e-12));
            let above = langevin(x * (1.0 + 1e-12));
            assert_relative_eq!(below, above, max_relative = 1e-11);
        }
        assert_relative_eq!(langevin(1.0), 1.0 / 1f64.tanh() - 1.0, max_relative = 1e-14);
        assert_relative_eq!(langevin(0.5), 0.16395341373865284, max_relative = 1e-12);
        assert_eq!(langevin(-0.5), -langevin(0.5));
    }

    #[test]
    fn langevin_derivative_matches_difference_quotient() {
        for x in [0.05, 0.1, 0.7, 3.0] {
            let h = 1e-5;
            let fd = (langevin(x + h) - langevin(x - h)) / (2.0 * h);
            assert_relative_eq!(langevin_derivative(x), fd, max_relative = 1e-8);
        }
        assert_relative_eq!(langevin_derivative(1e-3), 1.0 / 3.0, max_relative = 1e-6);
    }
}
