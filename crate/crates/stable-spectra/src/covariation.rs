//! Covariation of linear forms of a stable vector: the exact atom-sum
//! bracket, the covariation norm, the additivity gap diagnostic and a
//! fractional-moment Monte-Carlo estimator with batch-means error bars.

use crate::error::{Error, Result};
use crate::spectral::{linear_pairing, lift, DiscreteSpectralMeasure};
use crate::stable::{moment_ratio, spow_c, Alpha, MomentKind};
use num_complex::Complex64;

/// Exact covariation `[<a, X>, <b, X>]` of two linear forms of the vector
/// with spectral measure `measure`:
/// `sum_atoms w <a, s> <b, s>^<alpha-1>` with the bilinear pairing.
///
/// Coefficients may be complex in either mode. A zero second form has zero
/// bracket against anything.
pub fn covariation_exact(
    measure: &DiscreteSpectralMeasure,
    alpha: Alpha,
    a: &[Complex64],
    b: &[Complex64],
) -> Result<Complex64> {
    let d = measure.dimension();
    for v in [a, b] {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: v.len(),
            });
        }
    }
    let beta = alpha.value() - 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for atom in measure.atoms() {
        let first = linear_pairing(a, &atom.point);
        let second = spow_c(linear_pairing(b, &atom.point), beta);
        acc += first * second * atom.weight;
    }
    Ok(acc)
}

/// Real-coefficient convenience wrapper.
pub fn covariation_exact_real(
    measure: &DiscreteSpectralMeasure,
    alpha: Alpha,
    a: &[f64],
    b: &[f64],
) -> Result<Complex64> {
    covariation_exact(measure, alpha, &lift(a), &lift(b))
}

/// Covariation norm `([<a,X>, <a,X>])^(1/alpha)`.
///
/// The self-bracket of a symmetric measure is real and nonnegative; a
/// violation beyond rounding signals corrupted input and is reported as an
/// integrity error.
pub fn covariation_norm(
    measure: &DiscreteSpectralMeasure,
    alpha: Alpha,
    a: &[Complex64],
) -> Result<f64> {
    let v = covariation_exact(measure, alpha, a, a)?;
    let scale = v.re.abs().max(1.0);
    if v.im.abs() > 1e-10 * scale || v.re < -1e-10 * scale {
        return Err(Error::Integrity(format!(
            "self-covariation is not a nonnegative real: {v}"
        )));
    }
    Ok(v.re.max(0.0).powf(1.0 / alpha.value()))
}

/// How far the bracket `[X_i0, sum_j theta_j X_j]` is from the sum of the
/// per-component brackets. Zero exactly when covariation is additive in its
/// second argument at these coefficients.
pub fn additivity_gap(
    measure: &DiscreteSpectralMeasure,
    alpha: Alpha,
    i0: usize,
    theta: &[Complex64],
) -> Result<f64> {
    let d = measure.dimension();
    if i0 >= d {
        return Err(Error::IndexOutOfRange {
            index: i0,
            dimension: d,
        });
    }
    if theta.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: theta.len(),
        });
    }
    let mut e_i0 = vec![Complex64::new(0.0, 0.0); d];
    e_i0[i0] = Complex64::new(1.0, 0.0);
    let joint = covariation_exact(measure, alpha, &e_i0, theta)?;
    let mut split = Complex64::new(0.0, 0.0);
    let mut single = vec![Complex64::new(0.0, 0.0); d];
    for j in 0..d {
        single[j] = theta[j];
        split += covariation_exact(measure, alpha, &e_i0, &single)?;
        single[j] = Complex64::new(0.0, 0.0);
    }
    Ok((joint - split).norm())
}

/// A Monte-Carlo covariation estimate with a nonoverlapping batch-means
/// standard error.
#[derive(Debug, Clone, Copy)]
pub struct CovariationEstimate {
    pub value: Complex64,
    pub std_error: f64,
    pub n: usize,
    pub p: f64,
}

const BATCHES: usize = 20;

/// Estimates `[X, Y]` from paired samples via the fractional-moment ratio
///
/// `mean(x y^<p-1>) / mean(|y|^p) * (mean(|y|^p) / S(p))^(alpha/p)`
///
/// for a moment order `1 <= p < alpha`, where `S(p)` is the moment ratio of
/// the stated sample kind. The standard error comes from 20 nonoverlapping
/// batches.
pub fn covariation_estimate(
    x: &[Complex64],
    y: &[Complex64],
    alpha: Alpha,
    p: f64,
    kind: MomentKind,
) -> Result<CovariationEstimate> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    if x.len() < 1000 {
        return Err(Error::parameter(format!(
            "covariation estimation needs at least 1000 paired samples, got {}",
            x.len()
        )));
    }
    if !(1.0 <= p && p < alpha.value()) {
        return Err(Error::parameter(format!(
            "moment order must satisfy 1 <= p < alpha = {}, got {p}",
            alpha.value()
        )));
    }
    let ratio = moment_ratio(alpha, p, kind)?;
    let exponent = alpha.value() / p;
    let estimate = |xs: &[Complex64], ys: &[Complex64]| -> Result<Complex64> {
        let n = xs.len() as f64;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for (xi, yi) in xs.iter().zip(ys) {
            num += xi * spow_c(*yi, p - 1.0);
            den += yi.norm().powf(p);
        }
        num /= n;
        den /= n;
        if den <= f64::MIN_POSITIVE {
            return Err(Error::Degenerate(
                "second samples are numerically zero; the moment denominator vanishes".into(),
            ));
        }
        Ok(num / den * (den / ratio).powf(exponent))
    };

    let value = estimate(x, y)?;
    let batch_len = x.len() / BATCHES;
    let mut batch_values = Vec::with_capacity(BATCHES);
    for b in 0..BATCHES {
        let lo = b * batch_len;
        let hi = lo + batch_len;
        batch_values.push(estimate(&x[lo..hi], &y[lo..hi])?);
    }
    let mean: Complex64 = batch_values.iter().sum::<Complex64>() / BATCHES as f64;
    let var: f64 = batch_values
        .iter()
        .map(|v| (v - mean).norm_sqr())
        .sum::<f64>()
        / (BATCHES - 1) as f64;
    let std_error = (var / BATCHES as f64).sqrt();

    Ok(CovariationEstimate {
        value,
        std_error,
        n: x.len(),
        p,
    })
}

/// Default estimator moment order: `min(1.2, (1 + alpha)/2)`, kept well
/// below alpha so the moment ratio stays stable.
pub fn default_moment_order(alpha: Alpha) -> f64 {
    (0.5 * (1.0 + alpha.value())).min(1.2)
}
