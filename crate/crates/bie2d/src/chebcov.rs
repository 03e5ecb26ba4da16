//! Fejér quadrature, Chebyshev transforms and the graded change-of-variables
//! family used to cluster quadrature nodes toward corners.
//!
//! All grids live on the reference interval [0,1]; Chebyshev polynomials are
//! taken in the shifted argument T_m(2s - 1).

use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChebCovError {
    #[error("Fejér rule requires an even, positive point count, got {0}")]
    BadPointCount(usize),
    #[error("change of variables requires order p >= 2, got {0}")]
    BadOrder(usize),
    #[error("parameter {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("sample count {got} does not match rule size {expect}")]
    SampleCount { got: usize, expect: usize },
}

/// Scalar types the Chebyshev machinery operates on (real or complex data
/// with real coefficient arithmetic).
pub trait LinearScalar:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
}
impl LinearScalar for f64 {}
impl LinearScalar for Complex64 {}

/// Fejér first-rule nodes and weights on [0,1].
///
/// Nodes are strictly decreasing in the index, matching the underlying
/// Chebyshev points zeta_j = cos(pi (2j+1) / (2Q)).
#[derive(Debug, Clone)]
pub struct FejerRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl FejerRule {
    pub fn new(q: usize) -> Result<Self, ChebCovError> {
        if q == 0 || q % 2 != 0 {
            return Err(ChebCovError::BadPointCount(q));
        }
        let mut nodes = Vec::with_capacity(q);
        let mut weights = Vec::with_capacity(q);
        for j in 0..q {
            let ang = PI * (2 * j + 1) as f64 / (2 * q) as f64;
            nodes.push(0.5 * (ang.cos() + 1.0));
            let mut acc = 0.0;
            for k in 1..=q / 2 {
                acc += (k as f64 * PI * (2 * j + 1) as f64 / q as f64).cos()
                    / ((4 * k * k - 1) as f64);
            }
            weights.push(0.5 * (2.0 / q as f64) * (1.0 - 2.0 * acc));
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrate node samples over [0,1].
    pub fn integrate<T: LinearScalar>(&self, samples: &[T]) -> T {
        assert_eq!(samples.len(), self.len());
        let mut acc = T::zero();
        for (f, w) in samples.iter().zip(&self.weights) {
            acc = acc + *f * *w;
        }
        acc
    }
}

/// Truncated Chebyshev expansion sum_m a_m T_m(2s - 1) on [0,1].
#[derive(Debug, Clone)]
pub struct ChebSeries<T> {
    coeffs: Vec<T>,
}

impl<T: LinearScalar> ChebSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Clenshaw evaluation at s in [0,1].
    pub fn eval(&self, s: f64) -> T {
        let u = 2.0 * s - 1.0;
        let mut b1 = T::zero();
        let mut b2 = T::zero();
        for &c in self.coeffs.iter().rev() {
            let b0 = b1 * (2.0 * u) - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        b1 - b2 * u
    }

    /// Derivative d/ds of the expansion, as a series of the same length.
    ///
    /// The coefficient recurrence acts in the Chebyshev variable x = 2s - 1;
    /// the trailing factor 2 is the chain rule of that map.
    pub fn differentiate(&self) -> Self {
        let q = self.coeffs.len();
        let mut d = vec![T::zero(); q + 2];
        for i in (1..q).rev() {
            d[i - 1] = d[i + 1] + self.coeffs[i] * (2.0 * i as f64);
        }
        d.truncate(q);
        if let Some(c0) = d.first_mut() {
            *c0 = *c0 * 0.5;
        }
        for c in &mut d {
            *c = *c * 2.0;
        }
        Self { coeffs: d }
    }
}

/// Chebyshev coefficients interpolating samples taken at the Fejér nodes.
pub fn cheb_transform<T: LinearScalar>(
    samples: &[T],
    rule: &FejerRule,
) -> Result<ChebSeries<T>, ChebCovError> {
    let q = rule.len();
    if samples.len() != q {
        return Err(ChebCovError::SampleCount {
            got: samples.len(),
            expect: q,
        });
    }
    let mut coeffs = Vec::with_capacity(q);
    for m in 0..q {
        let mut acc = T::zero();
        for (j, f) in samples.iter().enumerate() {
            let t = (m as f64 * PI * (2 * j + 1) as f64 / (2 * q) as f64).cos();
            acc = acc + *f * t;
        }
        let scale = if m == 0 { 1.0 } else { 2.0 } / q as f64;
        coeffs.push(acc * scale);
    }
    Ok(ChebSeries { coeffs })
}

/// Evaluate a Chebyshev series at a point of [0,1].
pub fn cheb_eval<T: LinearScalar>(series: &ChebSeries<T>, s: f64) -> T {
    series.eval(s)
}

/// Derivative series; see [`ChebSeries::differentiate`].
pub fn cheb_differentiate<T: LinearScalar>(series: &ChebSeries<T>) -> ChebSeries<T> {
    series.differentiate()
}

/// Shape of the change of variables applied to a patch parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CovKind {
    Identity,
    GradedW,
    Monomial,
}

/// Change-of-variables choice: a kind plus grading order p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CovSpec {
    pub kind: CovKind,
    pub p: usize,
}

impl CovSpec {
    pub fn new(kind: CovKind, p: usize) -> Result<Self, ChebCovError> {
        if p < 2 {
            return Err(ChebCovError::BadOrder(p));
        }
        Ok(Self { kind, p })
    }

    pub const fn identity() -> Self {
        Self {
            kind: CovKind::Identity,
            p: 2,
        }
    }
}

/// The reference grading map on [0,1] and its derivative.
///
/// For `GradedW` this is the full symmetric map w(2 pi theta)/(2 pi), graded
/// toward both endpoints; `Monomial` is theta^p.
pub fn cov_eval(spec: CovSpec, theta: f64) -> Result<(f64, f64), ChebCovError> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(ChebCovError::OutOfRange(theta));
    }
    Ok(match spec.kind {
        CovKind::Identity => (theta, 1.0),
        CovKind::Monomial => monomial_eval(spec.p, theta),
        CovKind::GradedW => {
            let (ratio, ds) = w_eval(spec.p, 2.0 * theta - 1.0);
            (ratio, ds)
        }
    })
}

/// The one-sided grading applied to corner patches: graded toward theta = 0,
/// plain at theta = 1 (the w map restricted to its first half; the monomial
/// map is already one-sided).
pub fn corner_cov_eval(spec: CovSpec, theta: f64) -> Result<(f64, f64), ChebCovError> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(ChebCovError::OutOfRange(theta));
    }
    Ok(match spec.kind {
        CovKind::Identity => (theta, 1.0),
        CovKind::Monomial => monomial_eval(spec.p, theta),
        CovKind::GradedW => {
            // half of the symmetric map, rescaled back to [0,1]
            let (ratio, ds) = w_eval(spec.p, theta - 1.0);
            (2.0 * ratio, ds)
        }
    })
}

/// Cancellation-free `s(theta) - s(theta')` for the corner grading.
///
/// Written so that the factor (theta - theta') appears explicitly; the
/// relative accuracy of the result does not degrade as the two parameters
/// approach each other or the corner.
pub fn corner_cov_diff(spec: CovSpec, theta_a: f64, theta_b: f64) -> f64 {
    match spec.kind {
        CovKind::Identity => theta_a - theta_b,
        CovKind::Monomial => {
            // a^p - b^p = (a - b) sum a^i b^{p-1-i}
            let mut s = 0.0;
            for i in 0..spec.p {
                s += theta_a.powi(i as i32) * theta_b.powi((spec.p - 1 - i) as i32);
            }
            (theta_a - theta_b) * s
        }
        CovKind::GradedW => w_diff(spec.p, theta_a - 1.0, theta_b - 1.0, theta_a - theta_b),
    }
}

// The paper-style grading function, expressed through the cubic
// P(x) = 1/2 + x/p + (1/2 - 1/p) x^3 on x in [-1, 1]:
// w-argument t in [0, 2pi] maps to x = (t - pi)/pi, v(t) = P(x),
// v(2pi - t) = P(-x), and s = P(x)^p / (P(x)^p + P(-x)^p) rescaled.
fn p_cubic(p: usize, x: f64) -> f64 {
    let inv_p = 1.0 / p as f64;
    0.5 + inv_p * x + (0.5 - inv_p) * x * x * x
}

fn p_cubic_deriv(p: usize, x: f64) -> f64 {
    let inv_p = 1.0 / p as f64;
    inv_p + 3.0 * (0.5 - inv_p) * x * x
}

/// Ratio A/(A+B) of the grading and its shared theta-derivative.
///
/// The full map is the ratio itself (x = 2 theta - 1, chain factor 2); the
/// corner half map is twice the ratio (x = theta - 1, chain factor 1). The
/// rescalings make ds/dtheta identical for both, namely 2p [...]/(A+B)^2.
fn w_eval(p: usize, x: f64) -> (f64, f64) {
    let v = p_cubic(p, x);
    let vt = p_cubic(p, -x);
    let a = v.powi(p as i32);
    let b = vt.powi(p as i32);
    let ratio = a / (a + b);
    let num = v.powi(p as i32 - 1) * vt.powi(p as i32 - 1)
        * (p_cubic_deriv(p, x) * vt + v * p_cubic_deriv(p, -x));
    let ds = 2.0 * p as f64 * num / ((a + b) * (a + b));
    (ratio, ds)
}

fn monomial_eval(p: usize, theta: f64) -> (f64, f64) {
    let s = theta.powi(p as i32);
    let ds = p as f64 * theta.powi(p as i32 - 1);
    (s, ds)
}

fn w_diff(p: usize, xa: f64, xb: f64, dx: f64) -> f64 {
    let inv_p = 1.0 / p as f64;
    let c3 = 0.5 - inv_p;
    let va = p_cubic(p, xa);
    let vta = p_cubic(p, -xa);
    let vb = p_cubic(p, xb);
    let vtb = p_cubic(p, -xb);
    // odd-part difference of P: P(xa)P(-xb) - P(xb)P(-xa) = O(xa) - O(xb)
    let odd = dx * (inv_p + c3 * (xa * xa + xa * xb + xb * xb));
    // x^p - y^p factorization with x = va*vtb, y = vb*vta
    let x = va * vtb;
    let y = vb * vta;
    let mut s = 0.0;
    for i in 0..p {
        s += x.powi(i as i32) * y.powi((p - 1 - i) as i32);
    }
    let da = va.powi(p as i32) + vta.powi(p as i32);
    let db = vb.powi(p as i32) + vtb.powi(p as i32);
    2.0 * odd * s / (da * db)
}
