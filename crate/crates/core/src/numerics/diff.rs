use crate::error::{domain, Result};

/// Finite-difference step used at `beta`: `max(1e-4, 1e-3·β)`.
pub fn step_for(beta: f64) -> f64 {
    (1e-3 * beta).max(1e-4)
}

/// `d²/dβ² log Z` by central second differences at steps `h` and `h/2`,
/// combined by one Richardson extrapolation.
pub fn second_log_derivative_numeric(
    log_z: impl Fn(f64) -> Result<f64>,
    beta: f64,
) -> Result<f64> {
    let h = step_for(beta);
    if !(beta > 2.0 * h) {
        return Err(domain(format!(
            "β = {beta} is too close to zero for step {h}"
        )));
    }
    let center = log_z(beta)?;
    let second = |h: f64| -> Result<f64> {
        Ok((log_z(beta + h)? - 2.0 * center + log_z(beta - h)?) / (h * h))
    };
    let coarse = second(h)?;
    let fine = second(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel_i;

    #[test]
    fn ideal_gas() {
        let d2 = second_log_derivative_numeric(|b| Ok(-1.5 * b.ln()), 0.5).unwrap();
        assert!((d2 - 6.0).abs() < 6e-7);
    }

    #[test]
    fn spin_half_bures() {
        let log_z = |b: f64| Ok((2.0 * bessel_i(1, b)? / b).ln());
        let d2 = second_log_derivative_numeric(log_z, 0.1).unwrap();
        let series = 0.25 - 0.01 / 32.0 + 5.0 * 1e-4 / 1536.0;
        assert!((d2 - series).abs() < 1e-6, "{d2}");
        assert!((d2 - 0.24969).abs() < 1e-5);
    }

    #[test]
    fn maximal_monotone_near_zero() {
        let log_z = |b: f64| Ok((b.sinh() / b).ln());
        let d2 = second_log_derivative_numeric(log_z, 1e-2).unwrap();
        assert!((d2 - 1.0 / 3.0).abs() < 1e-5, "{d2}");
    }

    #[test]
    fn rejects_points_too_close_to_zero() {
        assert!(second_log_derivative_numeric(Ok, 1e-4).is_err());
    }

    #[test]
    fn propagates_failures() {
        let r = second_log_derivative_numeric(|_| Err(crate::Error::Domain("boom".into())), 1.0);
        assert!(r.is_err());
    }
}
