use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{usage, Error, Result};

/// Least-squares fit `f(β) ≈ Σ c_k β^{e_k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub exponents: Vec<i64>,
    pub coefficients: Vec<f64>,
    /// Max relative deviation of the fit over the grid.
    pub residual: f64,
    /// Condition number of the column-scaled design matrix.
    pub condition: f64,
}

impl FitResult {
    pub fn coefficient(&self, exponent: i64) -> Option<f64> {
        self.exponents
            .iter()
            .position(|&e| e == exponent)
            .map(|i| self.coefficients[i])
    }
}

const MAX_CONDITION: f64 = 1e13;

/// `n` points spaced geometrically from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo * (ratio * i as f64).exp() })
        .collect()
}

/// Fits `f` on `grid` with the given exponents. A consistency oracle for
/// exact expansions, never a source of exact coefficients.
pub fn fit_laurent_oracle(
    f: impl Fn(f64) -> Result<f64>,
    exponents: &[i64],
    grid: &[f64],
) -> Result<FitResult> {
    if exponents.is_empty() {
        return Err(usage("fit needs at least one exponent"));
    }
    if grid.len() < 2 * exponents.len() {
        return Err(usage(format!(
            "fit needs at least {} grid points, got {}",
            2 * exponents.len(),
            grid.len()
        )));
    }
    if let Some(b) = grid.iter().find(|&&b| !(b > 0.0 && b <= 0.5)) {
        return Err(usage(format!("grid point {b} lies outside (0, 0.5]")));
    }
    let values = grid.iter().map(|&b| f(b)).collect::<Result<Vec<_>>>()?;
    let (m, n) = (grid.len(), exponents.len());
    let mut design = DMatrix::from_fn(m, n, |i, j| grid[i].powi(exponents[j] as i32));
    let norms: Vec<f64> = (0..n).map(|j| design.column(j).norm()).collect();
    for (j, norm) in norms.iter().enumerate() {
        design.column_mut(j).unscale_mut(*norm);
    }
    let rhs = DVector::from_vec(values.clone());
    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    if !(condition < MAX_CONDITION) {
        return Err(Error::Numeric {
            message: format!("ill-conditioned fit basis (condition {condition:e})"),
            estimate: f64::NAN,
            error: condition,
        });
    }
    let scaled = svd
        .solve(&rhs, 0.0)
        .map_err(|e| usage(format!("least-squares solve failed: {e}")))?;
    let coefficients: Vec<f64> = scaled.iter().zip(&norms).map(|(c, n)| c / n).collect();
    let fitted = &design * &scaled;
    let residual = values
        .iter()
        .zip(fitted.iter())
        .map(|(v, fv)| {
            let scale = if *v == 0.0 { 1.0 } else { v.abs() };
            (v - fv).abs() / scale
        })
        .fold(0.0, f64::max);
    Ok(FitResult {
        exponents: exponents.to_vec(),
        coefficients,
        residual,
        condition,
    })
}
