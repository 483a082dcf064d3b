//! Scalar symmetric alpha-stable machinery: the stability index, signed
//! powers, alpha-dependent constants, reproducible samplers and the two
//! oscillatory-integral identities used as numerical oracles everywhere else.

use crate::error::{Error, Result};
use crate::numeric::{
    cosine_kernel_integral, gamma, gamma_cos_factor, integrate_panel_graded, sine_kernel_integral,
};
use crate::rng::SeedStream;
use num_complex::Complex64;
use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI};

/// Stability index, restricted to the open interval (1, 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && 1.0 < value && value < 2.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::parameter(format!(
                "stability index must satisfy 1 < alpha < 2, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `sign(s) |s|^beta`, with 0 mapped to 0.
pub fn signed_power(s: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(spow(s, beta))
}

/// `|z|^(beta-1) conj(z)`, with 0 mapped to 0.
pub fn signed_power_complex(z: Complex64, beta: f64) -> Result<Complex64> {
    check_beta(beta)?;
    Ok(spow_c(z, beta))
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::parameter(format!(
            "signed power exponent must be positive, got {beta}"
        )))
    }
}

/// Unchecked signed power; also accepts beta = 0 (the sign function).
pub(crate) fn spow(s: f64, beta: f64) -> f64 {
    if s == 0.0 {
        0.0
    } else {
        s.signum() * s.abs().powf(beta)
    }
}

pub(crate) fn spow_c(z: Complex64, beta: f64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z.conj() * z.norm().powf(beta - 1.0)
    }
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

/// Alpha-dependent scalars: the norm/variation constant, the fractional
/// moment ratios of order `p` for real and isotropic complex variables, the
/// one- and two-dimensional kernel constants, and the isotropic
/// characteristic-function constant.
#[derive(Debug, Clone, Copy)]
pub struct StableConstants {
    pub alpha: f64,
    pub p: f64,
    /// `gamma(1 - 1/alpha)`.
    pub psi_alpha: f64,
    /// `E|X|^p / scale^p` for a real symmetric stable variable.
    pub s_alpha_real: f64,
    /// `E|Z|^p / scale^p` for an isotropic complex stable variable.
    pub s_alpha_iso: f64,
    /// Reciprocal of `gamma(1-p) cos(p pi/2)`: the 1-D sine-kernel constant.
    pub rho_small: f64,
    /// The 2-D kernel constant `c(p)`.
    pub c_p: f64,
    /// `p * c(p)`: the constant of the signed 2-D kernel identity.
    pub rho_p: f64,
    /// Angular average of `|cos|^alpha`, in (0, 1).
    pub c0: f64,
}

/// Evaluates every constant for a moment order `0 < p < alpha`.
pub fn constants(alpha: Alpha, p: f64) -> Result<StableConstants> {
    let a = alpha.value();
    let c_p = c_of_p(p);
    Ok(StableConstants {
        alpha: a,
        p,
        psi_alpha: gamma(1.0 - 1.0 / a),
        s_alpha_real: moment_ratio(alpha, p, MomentKind::Real)?,
        s_alpha_iso: moment_ratio(alpha, p, MomentKind::Isotropic)?,
        rho_small: 1.0 / gamma_cos_factor(p),
        c_p,
        rho_p: p * c_p,
        c0: c0_of_alpha(alpha),
    })
}

/// Moment ratio `E|X|^p / scale^p` for the requested sample kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    Real,
    Isotropic,
}

/// The ratio `E|X|^p / scale^p` alone, a pure gamma-function expression.
pub fn moment_ratio(alpha: Alpha, p: f64, kind: MomentKind) -> Result<f64> {
    let a = alpha.value();
    if !(p.is_finite() && 0.0 < p && p < a) {
        return Err(Error::parameter(format!(
            "moment order must satisfy 0 < p < alpha = {a}, got p = {p} (the moment does not exist otherwise)"
        )));
    }
    Ok(match kind {
        MomentKind::Real => {
            2.0_f64.powf(p) * gamma(0.5 * (1.0 + p)) * gamma(1.0 - p / a)
                / (gamma(1.0 - 0.5 * p) * gamma(0.5))
        }
        MomentKind::Isotropic => {
            gamma(0.5 * (2.0 + p)) * gamma(1.0 - p / a) / gamma(1.0 - 0.5 * p)
        }
    })
}

impl StableConstants {
    pub fn moment_ratio(&self, kind: MomentKind) -> f64 {
        match kind {
            MomentKind::Real => self.s_alpha_real,
            MomentKind::Isotropic => self.s_alpha_iso,
        }
    }
}

/// The 2-D kernel constant
/// `c(p) = 2^(-p/2) (gamma(1-p) cos(p pi/2) / p) INT_0^2pi (1+sin 2t)^(p/2) dt`,
/// with the angular integral done by graded quadrature around its kinks.
pub fn c_of_p(p: f64) -> f64 {
    let angular = |t: f64| (1.0 + (2.0 * t).sin()).max(0.0).powf(0.5 * p);
    // kinks where sin(2t) = -1
    let k1 = 0.75 * PI;
    let k2 = 1.75 * PI;
    let integral = integrate_panel_graded(angular, 0.0, k1)
        + integrate_panel_graded(angular, k1, k2)
        + integrate_panel_graded(angular, k2, 2.0 * PI);
    2.0_f64.powf(-0.5 * p) * gamma_cos_factor(p) / p * integral
}

/// `(1/2pi) INT_0^2pi |cos t|^alpha dt`, by graded quadrature.
pub fn c0_of_alpha(alpha: Alpha) -> f64 {
    let a = alpha.value();
    let f = |t: f64| t.cos().abs().powf(a);
    let integral = integrate_panel_graded(f, 0.0, FRAC_PI_2)
        + integrate_panel_graded(f, FRAC_PI_2, 1.5 * PI)
        + integrate_panel_graded(f, 1.5 * PI, 2.0 * PI);
    integral / (2.0 * PI)
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// A reproducible batch of draws together with the parameters that made it.
#[derive(Debug, Clone)]
pub struct SampleBatch<T> {
    pub values: Vec<T>,
    pub seed: u64,
    pub alpha: Alpha,
    pub scale: f64,
}

/// One standard symmetric alpha-stable draw (characteristic function
/// `exp(-|t|^alpha)`), by the trigonometric composition method.
pub(crate) fn standard_sas(alpha: f64, rng: &mut SeedStream) -> f64 {
    let u = PI * (rng.uniform_open() - 0.5);
    let w = rng.exponential();
    let num = (alpha * u).sin();
    let den = u.cos().powf(1.0 / alpha);
    let tail = (((1.0 - alpha) * u).cos() / w).powf((1.0 - alpha) / alpha);
    num / den * tail
}

/// One positive strictly stable draw with Laplace transform
/// `exp(-g^rho)`, 0 < rho < 1 (Kanter's representation).
pub(crate) fn standard_positive_stable(rho: f64, rng: &mut SeedStream) -> f64 {
    let v = PI * rng.uniform_open();
    let w = rng.exponential();
    (rho * v).sin() / v.sin().powf(1.0 / rho)
        * (((1.0 - rho) * v).sin() / w).powf((1.0 - rho) / rho)
}

fn check_batch_params(scale: f64, n: usize) -> Result<()> {
    if !(scale.is_finite() && scale >= 0.0) {
        return Err(Error::parameter(format!(
            "scale must be a finite nonnegative real, got {scale}"
        )));
    }
    if n == 0 {
        return Err(Error::parameter("sample count must be at least 1"));
    }
    Ok(())
}

/// I.i.d. real symmetric alpha-stable draws with characteristic function
/// `exp(-scale^alpha |t|^alpha)`. Deterministic under `seed`.
pub fn sample_sas_real(alpha: Alpha, scale: f64, n: usize, seed: u64) -> Result<SampleBatch<f64>> {
    check_batch_params(scale, n)?;
    let mut values = vec![0.0; n];
    if scale > 0.0 {
        let mut rng = SeedStream::new(seed);
        for v in values.iter_mut() {
            *v = scale * standard_sas(alpha.value(), &mut rng);
        }
    }
    Ok(SampleBatch {
        values,
        seed,
        alpha,
        scale,
    })
}

/// I.i.d. isotropic complex symmetric alpha-stable draws.
///
/// Built as `sqrt(A) * (G1 + i G2)` with `A` a totally skewed positive
/// (alpha/2)-stable subordinator and independent centred Gaussians. The
/// Gaussian deviation is `scale / sqrt(2)`, which calibrates the batch so the
/// fractional-moment identity `E|Z|^p = S_iso(p) * scale^p` holds exactly for
/// every moment order `p < alpha`.
pub fn sample_isotropic_complex(
    alpha: Alpha,
    scale: f64,
    n: usize,
    seed: u64,
) -> Result<SampleBatch<Complex64>> {
    check_batch_params(scale, n)?;
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    if scale > 0.0 {
        let mut rng = SeedStream::new(seed);
        let sigma = scale / 2.0_f64.sqrt();
        let rho = 0.5 * alpha.value();
        for v in values.iter_mut() {
            let a = standard_positive_stable(rho, &mut rng);
            let (g1, g2) = rng.normal_pair();
            *v = Complex64::new(g1, g2) * (sigma * a.sqrt());
        }
    }
    Ok(SampleBatch {
        values,
        seed,
        alpha,
        scale,
    })
}

// ---------------------------------------------------------------------------
// Kernel identity checks
// ---------------------------------------------------------------------------

/// A quadrature value next to its closed form.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub numeric: f64,
    pub closed_form: f64,
    pub abs_err: f64,
}

/// Same, for a complex-valued identity.
#[derive(Debug, Clone, Copy)]
pub struct ComplexIdentityCheck {
    pub numeric: Complex64,
    pub closed_form: Complex64,
    pub abs_err: f64,
}

/// Result of the one-dimensional kernel check: the sine kernel against
/// `s^<p-1> gamma(1-p) cos(p pi/2)` plus the companion `1 - cos` identity.
#[derive(Debug, Clone, Copy)]
pub struct KernelCheck1d {
    pub numeric: f64,
    pub closed_form: f64,
    pub abs_err: f64,
    pub cosine: IdentityCheck,
}

/// Verifies `INT_0^inf sin(st)/t^p dt = s^<p-1> gamma(1-p) cos(p pi/2)` for
/// 1 < p < 2, and the even companion
/// `INT_0^inf (1-cos(st))/t^(p+1) dt = |s|^p gamma(1-p) cos(p pi/2) / p`.
pub fn kernel_check_1d(s: f64, p: f64) -> Result<KernelCheck1d> {
    if !(1.0 < p && p < 2.0) {
        return Err(Error::parameter(format!(
            "one-dimensional kernel check needs 1 < p < 2, got {p}"
        )));
    }
    let g = gamma_cos_factor(p);
    let numeric = sine_kernel_integral(s, p)?;
    let closed_form = spow(s, p - 1.0) * g;
    let cos_numeric = cosine_kernel_integral(s, p)?;
    let cos_closed = s.abs().powf(p) * g / p;
    Ok(KernelCheck1d {
        numeric,
        closed_form,
        abs_err: (numeric - closed_form).abs(),
        cosine: IdentityCheck {
            numeric: cos_numeric,
            closed_form: cos_closed,
            abs_err: (cos_numeric - cos_closed).abs(),
        },
    })
}

/// Result of the two-dimensional kernel check.
#[derive(Debug, Clone, Copy)]
pub struct KernelCheck2d {
    /// `INTINT (1 - cos Re(x conj z))/|x|^(p+2) dA` against `c(p) |z|^p`.
    pub modulus: IdentityCheck,
    /// `INTINT sin(Re(x conj z))/conj(x)^<p+1> dA` against `p c(p) z^<p-1>`.
    pub signed: ComplexIdentityCheck,
}

/// Verifies the two planar kernel identities by genuine 2-D quadrature in
/// polar coordinates: the radial integral with algebraic-tail treatment, the
/// angular one with graded panels around the zeros of `cos(t - arg z)`.
pub fn kernel_check_2d(z: Complex64, p: f64) -> Result<KernelCheck2d> {
    if !(0.0 < p && p < 2.0) {
        return Err(Error::parameter(format!(
            "two-dimensional kernel check needs 0 < p < 2, got {p}"
        )));
    }
    if z.norm() == 0.0 {
        return Err(Error::parameter("kernel check needs z != 0"));
    }
    let r = z.norm();
    let psi = z.arg();
    let failure: RefCell<Option<Error>> = RefCell::new(None);

    let radial_cos = |theta: f64| -> f64 {
        let u = r * (theta - psi).cos();
        match cosine_kernel_integral(u, p) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let modulus_numeric = angular_integral_real(&radial_cos, psi);
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }

    let radial_sin = |theta: f64| -> Complex64 {
        let u = r * (theta - psi).cos();
        match sine_kernel_integral(u, p) {
            Ok(v) => Complex64::from_polar(1.0, -theta) * v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let signed_numeric = angular_integral_complex(&radial_sin, psi);
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }

    let c_p = c_of_p(p);
    let modulus_closed = c_p * r.powf(p);
    let signed_closed = spow_c(z, p - 1.0) * (p * c_p);
    Ok(KernelCheck2d {
        modulus: IdentityCheck {
            numeric: modulus_numeric,
            closed_form: modulus_closed,
            abs_err: (modulus_numeric - modulus_closed).abs(),
        },
        signed: ComplexIdentityCheck {
            numeric: signed_numeric,
            closed_form: signed_closed,
            abs_err: (signed_numeric - signed_closed).norm(),
        },
    })
}

/// Angular integral over one full turn, panels split at `psi +- pi/2` where
/// the radial amplitude crosses zero.
fn angular_integral_real(f: &impl Fn(f64) -> f64, psi: f64) -> f64 {
    integrate_panel_graded(f, psi, psi + 0.5 * PI)
        + integrate_panel_graded(f, psi + 0.5 * PI, psi + 1.5 * PI)
        + integrate_panel_graded(f, psi + 1.5 * PI, psi + 2.0 * PI)
}

fn angular_integral_complex(f: &impl Fn(f64) -> Complex64, psi: f64) -> Complex64 {
    integrate_panel_graded(f, psi, psi + 0.5 * PI)
        + integrate_panel_graded(f, psi + 0.5 * PI, psi + 1.5 * PI)
        + integrate_panel_graded(f, psi + 1.5 * PI, psi + 2.0 * PI)
}
