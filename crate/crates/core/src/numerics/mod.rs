//! Double-precision special functions, adaptive quadrature with declared
//! endpoint singularities, numeric second log-derivatives and a
//! least-squares Laurent fit. These are the independent numeric oracles the
//! exact series are checked against.

mod diff;
mod fit;
mod quad;
mod special;

pub use diff::{second_log_derivative_numeric, step_for};
pub use fit::{fit_laurent_oracle, geometric_grid, FitResult};
pub use quad::{quad, Interval, QuadResult, Quadrant, Singularity, Tail};
pub use special::{bessel_i, erfi, langevin, langevin_derivative};

/// Catalan's constant to 30 digits; a verification constant only.
pub const CATALAN: f64 = 0.915965594177219015054603514932;
