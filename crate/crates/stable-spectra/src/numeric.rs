//! Shared numerical machinery: the gamma function, Gauss-Legendre panels,
//! alternating-series acceleration and the two improper oscillatory kernels
//!
//! ```text
//!   S(s, p) = INT_0^inf sin(s t) / t^p dt          0 < p < 2
//!   K(s, p) = INT_0^inf (1 - cos(s t)) / t^(1+p) dt    0 < p < 2
//! ```
//!
//! Both integrands decay only algebraically, so the tails are integrated
//! half-period by half-period and the resulting alternating series is
//! accelerated by iterated averaging.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Euler's gamma function.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// The factor `gamma(1-p) * cos(p*pi/2)` without the removable pole at p = 1,
/// via the reflection formula: `pi / (2 * gamma(p) * sin(p*pi/2))`.
///
/// Valid on 0 < p < 2; equals pi/2 at p = 1.
pub fn gamma_cos_factor(p: f64) -> f64 {
    PI / (2.0 * gamma(p) * (0.5 * p * PI).sin())
}

// ---------------------------------------------------------------------------
// Gauss-Legendre panels
// ---------------------------------------------------------------------------

fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x), P'_n(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl32() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(32))
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(16))
}

/// Values that can be accumulated by the panel integrators.
pub trait PanelValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
}

impl PanelValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl PanelValue for num_complex::Complex64 {
    fn zero() -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// 32-point Gauss-Legendre over [a, b].
pub fn integrate_gl<T: PanelValue>(f: impl Fn(f64) -> T, a: f64, b: f64) -> T {
    let (nodes, weights) = gl32();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = T::zero();
    for (x, w) in nodes.iter().zip(weights) {
        acc = acc.add(f(mid + half * x).scale(*w));
    }
    acc.scale(half)
}

fn integrate_gl16<T: PanelValue>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> T {
    let (nodes, weights) = gl16();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = T::zero();
    for (x, w) in nodes.iter().zip(weights) {
        acc = acc.add(f(mid + half * x).scale(*w));
    }
    acc.scale(half)
}

/// Integrates over [a, b] when the integrand has algebraic kinks at both
/// endpoints: panels shrink geometrically toward each end.
pub fn integrate_panel_graded<T: PanelValue>(f: impl Fn(f64) -> T, a: f64, b: f64) -> T {
    const LEVELS: i32 = 8;
    const RATIO: f64 = 0.125;
    let mid = 0.5 * (a + b);
    let h = mid - a;
    let first = h * RATIO.powi(LEVELS);
    let mut acc = T::zero();
    acc = acc.add(integrate_gl16(&f, a, a + first));
    acc = acc.add(integrate_gl16(&f, b - first, b));
    for level in (0..LEVELS).rev() {
        let outer = h * RATIO.powi(level);
        let inner = h * RATIO.powi(level + 1);
        acc = acc.add(integrate_gl16(&f, a + inner, a + outer));
        acc = acc.add(integrate_gl16(&f, b - outer, b - inner));
    }
    acc
}

// ---------------------------------------------------------------------------
// Alternating series acceleration
// ---------------------------------------------------------------------------

/// Limit of a convergent series with (eventually) alternating terms, by
/// iterated averaging of the partial sums. Returns (limit, error estimate).
pub fn accelerate_alternating(terms: &[f64]) -> (f64, f64) {
    assert!(!terms.is_empty());
    let mut row: Vec<f64> = Vec::with_capacity(terms.len());
    let mut sum = 0.0;
    for &t in terms {
        sum += t;
        row.push(sum);
    }
    let mut previous = *row.last().unwrap();
    while row.len() > 1 {
        previous = row[0];
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    (row[0], (row[0] - previous).abs())
}

// ---------------------------------------------------------------------------
// Oscillatory kernels
// ---------------------------------------------------------------------------

const TAIL_TOL: f64 = 1e-10;

/// Accelerated tail of `sum_k INT over consecutive half-period segments`,
/// starting at `start` with segment width `width`.
fn oscillatory_tail(f: &impl Fn(f64) -> f64, start: f64, width: f64, context: &str) -> Result<f64> {
    let mut terms = Vec::with_capacity(64);
    let mut best = (0.0, f64::INFINITY);
    for k in 0..192usize {
        let a = start + k as f64 * width;
        terms.push(integrate_gl(f, a, a + width));
        if terms.len() >= 24 && terms.len() % 8 == 0 {
            let (value, err) = accelerate_alternating(&terms);
            if err < best.1 {
                best = (value, err);
            }
            if err < TAIL_TOL {
                return Ok(value);
            }
        }
    }
    if best.1 < 100.0 * TAIL_TOL {
        return Ok(best.0);
    }
    Err(Error::Numerical {
        context: context.to_string(),
        residual: best.1,
    })
}

/// `INT_0^inf sin(s t)/t^p dt` for 0 < p < 2. Odd in `s`.
pub fn sine_kernel_integral(s: f64, p: f64) -> Result<f64> {
    if !(0.0 < p && p < 2.0) {
        return Err(Error::parameter(format!(
            "sine kernel needs 0 < p < 2, got p = {p}"
        )));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let sign = s.signum();
    let s = s.abs();

    // [0, delta]: term-by-term integration of the sine series, s*delta = 1.
    let delta = 1.0 / s;
    let mut head = 0.0;
    let mut term_pow = s * delta.powf(2.0 - p); // s^(2m+1) * delta^(2m+2-p) at m=0
    let mut factorial = 1.0;
    for m in 0..40 {
        let mf = 2.0 * m as f64;
        factorial *= if m == 0 { 1.0 } else { (mf) * (mf + 1.0) };
        let term = if m % 2 == 0 { 1.0 } else { -1.0 } * term_pow / (factorial * (mf + 2.0 - p));
        head += term;
        if term.abs() < 1e-17 * head.abs().max(1.0) {
            break;
        }
        term_pow *= (s * delta) * (s * delta);
    }

    // [delta, pi/s]: smooth remainder of the first half-period.
    let half = PI / s;
    let body = integrate_gl(|t| (s * t).sin() / t.powf(p), delta, half);

    // Alternating half-period tail from pi/s on.
    let tail = oscillatory_tail(&|t| (s * t).sin() / t.powf(p), half, half, "sine kernel tail")?;

    Ok(sign * (head + body + tail))
}

/// `INT_0^inf (1 - cos(s t))/t^(1+p) dt` for 0 < p < 2. Even in `s`.
pub fn cosine_kernel_integral(s: f64, p: f64) -> Result<f64> {
    if !(0.0 < p && p < 2.0) {
        return Err(Error::parameter(format!(
            "cosine kernel needs 0 < p < 2, got p = {p}"
        )));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let s = s.abs();

    // [0, delta]: series of 1 - cos, s*delta = 1.
    let delta = 1.0 / s;
    let mut head = 0.0;
    let mut term_pow = (s * s) * delta.powf(2.0 - p); // s^(2m) * delta^(2m-p) at m=1
    let mut factorial = 1.0;
    for m in 1..40 {
        let mf = 2.0 * m as f64;
        factorial *= (mf - 1.0) * mf;
        let term = if m % 2 == 1 { 1.0 } else { -1.0 } * term_pow / (factorial * (mf - p));
        head += term;
        if term.abs() < 1e-17 * head.abs().max(1.0) {
            break;
        }
        term_pow *= (s * delta) * (s * delta);
    }

    // [delta, T0] where T0 = pi/(2s) is the first zero of cos(st).
    let t0 = 0.5 * PI / s;
    let body = integrate_gl(|t| (1.0 - (s * t).cos()) / t.powf(1.0 + p), delta, t0);

    // Beyond T0: split 1 - cos into the exact power tail and an alternating
    // cosine tail over half-periods of cos(st).
    let power_tail = t0.powf(-p) / p;
    let width = PI / s;
    let cos_tail = oscillatory_tail(
        &|t| (s * t).cos() / t.powf(1.0 + p),
        t0,
        width,
        "cosine kernel tail",
    )?;

    Ok(head + body + power_tail - cos_tail)
}
