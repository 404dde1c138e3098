use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{usage, Error, Result};

/// Integration domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    /// `[a, ∞)`
    SemiInfinite(f64),
}

/// Declared endpoint behaviour of the integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Singularity {
    #[default]
    None,
    /// `f(x) ~ (x - a)^{-1/2}` at the left end.
    InverseSqrtLeft,
    /// `f(x) ~ (b - x)^{-1/2}` at the right end.
    InverseSqrtRight,
}

/// Declared decay on a semi-infinite interval:
/// `|f(x)| <= scale · x^power · e^{-rate·x}` for all `x >= a >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Tail {
    #[default]
    None,
    Exponential { scale: f64, power: u32, rate: f64 },
}

impl Tail {
    /// Upper bound on `∫_t^∞ |f|`.
    fn bound(&self, t: f64) -> f64 {
        match *self {
            Tail::None => f64::INFINITY,
            Tail::Exponential { scale, power, rate } => {
                // ∫_t^∞ x^k e^{-λx} dx = e^{-λt} Σ_{j<=k} k!/j! · t^j / λ^{k-j+1}
                let mut sum = 0.0;
                let mut coef = 1.0; // k!/j! for j = k
                for j in (0..=power).rev() {
                    sum += coef * t.powi(j as i32) / rate.powi((power - j + 1) as i32);
                    coef *= j as f64;
                }
                scale * (-rate * t).exp() * sum
            }
        }
    }
}

/// An integration problem: integrand, domain, and declared endpoint and
/// tail behaviour.
pub struct Quadrant<'a> {
    pub integrand: &'a dyn Fn(f64) -> f64,
    pub interval: Interval,
    pub singularity: Singularity,
    pub tail: Tail,
}

impl<'a> Quadrant<'a> {
    pub fn finite(integrand: &'a dyn Fn(f64) -> f64, a: f64, b: f64) -> Self {
        Self {
            integrand,
            interval: Interval::Finite(a, b),
            singularity: Singularity::None,
            tail: Tail::None,
        }
    }

    pub fn semi_infinite(integrand: &'a dyn Fn(f64) -> f64, a: f64) -> Self {
        Self {
            integrand,
            interval: Interval::SemiInfinite(a),
            singularity: Singularity::None,
            tail: Tail::None,
        }
    }

    pub fn with_singularity(mut self, singularity: Singularity) -> Self {
        self.singularity = singularity;
        self
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Estimated absolute error, including any truncated tail.
    pub error: f64,
    pub evaluations: usize,
}

const MAX_SEGMENTS: usize = 4000;

/// Adaptive Gauss–Kronrod (7/15) quadrature to absolute tolerance `tol`.
///
/// Inverse-square-root endpoints are removed by `x = a + t²` (or
/// `x = b - t²`). Semi-infinite domains are truncated where the declared
/// tail bound drops below `tol/10`; without a declared tail they are mapped
/// onto `[0, 1)` by `x = a + t/(1 - t)`.
pub fn quad(q: &Quadrant<'_>, tol: f64) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(usage(format!("tolerance must be positive, got {tol}")));
    }
    let f = q.integrand;
    match (q.interval, q.singularity) {
        (Interval::Finite(a, b), _) if !(a < b) => {
            Err(usage(format!("empty or reversed interval [{a}, {b}]")))
        }
        (Interval::Finite(a, b), Singularity::None) => adaptive(f, a, b, tol),
        (Interval::Finite(a, b), Singularity::InverseSqrtLeft) => {
            let g = |t: f64| 2.0 * t * f(a + t * t);
            adaptive(&g, 0.0, (b - a).sqrt(), tol)
        }
        (Interval::Finite(a, b), Singularity::InverseSqrtRight) => {
            let g = |t: f64| 2.0 * t * f(b - t * t);
            adaptive(&g, 0.0, (b - a).sqrt(), tol)
        }
        (Interval::SemiInfinite(_), Singularity::InverseSqrtRight) => Err(usage(
            "a semi-infinite interval has no right endpoint singularity",
        )),
        (Interval::SemiInfinite(a), singularity) => {
            let (head, a) = if singularity == Singularity::InverseSqrtLeft {
                let head = quad(
                    &Quadrant::finite(f, a, a + 1.0).with_singularity(singularity),
                    tol / 2.0,
                )?;
                (Some(head), a + 1.0)
            } else {
                (None, a)
            };
            let body_tol = if head.is_some() { tol / 2.0 } else { tol };
            let body = semi_infinite(f, a, q.tail, body_tol)?;
            Ok(match head {
                Some(h) => QuadResult {
                    value: h.value + body.value,
                    error: h.error + body.error,
                    evaluations: h.evaluations + body.evaluations,
                },
                None => body,
            })
        }
    }
}

fn semi_infinite(f: &dyn Fn(f64) -> f64, a: f64, tail: Tail, tol: f64) -> Result<QuadResult> {
    match tail {
        Tail::None => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
        Tail::Exponential { rate, .. } => {
            if !(rate > 0.0) || a < 0.0 {
                return Err(usage("exponential tails need rate > 0 on [a, ∞) with a >= 0"));
            }
            let step = 1.0 / rate;
            let mut cut = a + step;
            while tail.bound(cut) >= tol / 10.0 {
                cut += step;
            }
            let mut r = adaptive(f, a, cut, 0.9 * tol)?;
            r.error += tail.bound(cut);
            Ok(r)
        }
    }
}

// Gauss-Kronrod 7/15 abscissae and weights, as tabulated.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let first = gk15(f, a, b);
    let mut evaluations = 15;
    let (mut value, mut error) = (first.value, first.error);
    if !value.is_finite() {
        return Err(non_finite(a, b));
    }
    heap.push(first);
    while error > tol {
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Numeric {
                message: format!("quadrature on [{a}, {b}] exhausted {MAX_SEGMENTS} segments"),
                estimate: value,
                error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            return Err(Error::Numeric {
                message: format!("quadrature on [{a}, {b}] hit the resolution limit near {mid}"),
                estimate: value,
                error,
            });
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if !value.is_finite() {
            return Err(non_finite(a, b));
        }
        heap.push(left);
        heap.push(right);
    }
    // Resum to shed accumulated cancellation in the running totals.
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(QuadResult {
        value,
        error,
        evaluations,
    })
}

fn non_finite(a: f64, b: f64) -> Error {
    Error::Numeric {
        message: format!("integrand is not finite on [{a}, {b}]"),
        estimate: f64::NAN,
        error: f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::CATALAN;
    use std::f64::consts::PI;

    fn sech(x: f64) -> f64 {
        1.0 / x.cosh()
    }

    #[test]
    fn inverse_sqrt_right_endpoint() {
        let f = |v: f64| 3.0 * v / (4.0 * (1.0 - v).sqrt());
        let q = Quadrant::finite(&f, 0.0, 1.0).with_singularity(Singularity::InverseSqrtRight);
        let r = quad(&q, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn inverse_sqrt_left_endpoint() {
        let f = |x: f64| 1.0 / x.sqrt();
        let q = Quadrant::finite(&f, 0.0, 4.0).with_singularity(Singularity::InverseSqrtLeft);
        assert!((quad(&q, 1e-12).unwrap().value - 4.0).abs() < 1e-12);
        let q = Quadrant::semi_infinite(&|x: f64| (-x).exp() / x.sqrt(), 0.0)
            .with_singularity(Singularity::InverseSqrtLeft);
        assert!((quad(&q, 1e-11).unwrap().value - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn semicircle() {
        let f = |z: f64| 2.0 * (1.0 - z * z).sqrt() / PI;
        let r = quad(&Quadrant::finite(&f, -1.0, 1.0), 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn sech_moments_with_declared_tail() {
        let bound = |power| Tail::Exponential {
            scale: 2.0 / PI,
            power,
            rate: 0.5,
        };
        let f0 = |b: f64| sech(b / 2.0) / PI;
        let f1 = |b: f64| b * sech(b / 2.0) / PI;
        let f2 = |b: f64| b * b * sech(b / 2.0) / PI;
        let n = quad(&Quadrant::semi_infinite(&f0, 0.0).with_tail(bound(0)), 1e-12).unwrap();
        let m1 = quad(&Quadrant::semi_infinite(&f1, 0.0).with_tail(bound(1)), 1e-12).unwrap();
        let m2 = quad(&Quadrant::semi_infinite(&f2, 0.0).with_tail(bound(2)), 1e-12).unwrap();
        assert!((n.value - 1.0).abs() < 1e-10);
        assert!((m1.value - 8.0 * CATALAN / PI).abs() < 1e-8);
        assert!((m2.value - PI * PI).abs() < 1e-8);
    }

    #[test]
    fn semi_infinite_without_tail_uses_mapping() {
        let f = |b: f64| sech(b / 2.0) / PI;
        let r = quad(&Quadrant::semi_infinite(&f, 0.0), 1e-11).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn tail_bound_formula() {
        // ∫_t^∞ x² e^{-x/2} dx = e^{-t/2} (2t² + 8t + 16)
        let tail = Tail::Exponential { scale: 1.0, power: 2, rate: 0.5 };
        let t: f64 = 3.0;
        let expected = (-t / 2.0).exp() * (2.0 * t * t + 8.0 * t + 16.0);
        assert!((tail.bound(t) - expected).abs() < 1e-12);
    }

    #[test]
    fn failures_are_reported() {
        let f = |x: f64| 1.0 / x;
        let err = quad(&Quadrant::finite(&f, 0.0, 1.0), 1e-10).unwrap_err();
        assert!(matches!(err, Error::Numeric { .. }));
        assert!(quad(&Quadrant::finite(&f, 1.0, 0.0), 1e-10).is_err());
        assert!(quad(&Quadrant::finite(&f, 1.0, 2.0), 0.0).is_err());
    }
}
