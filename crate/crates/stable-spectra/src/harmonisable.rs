//! Harmonisable models `X_t = sum_j exp(i t lambda_j) dxi_j` over finitely
//! many frequencies: the covariation function, the spectral-line
//! classification of its time structure, cyclic and Bohr coefficients,
//! Fejer averaging and path synthesis.

use crate::bimeasure::{bilinear_form, pd_nonnegativity, DiscreteBimeasure, IncrementLaw};
use crate::error::{Error, Result};
use crate::rng::SeedStream;
use crate::spectral::VectorSampler;
use crate::stable::Alpha;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Relative tolerance for deciding that a spectral line sits on a lattice.
const LINE_TOL: f64 = 1e-9;
/// Absolute gap under which two lines are merged into one.
const MERGE_TOL: f64 = 1e-9;
/// Trials of the constructor's positivity gate.
const GATE_TRIALS: usize = 128;
const GATE_SEED: u64 = 0;

/// A harmonisable model: frequencies, their covariation bimeasure and
/// optionally the increment law that realizes it.
#[derive(Debug, Clone)]
pub struct HarmonisableModel {
    frequencies: Vec<f64>,
    bimeasure: DiscreteBimeasure,
    alpha: Alpha,
    increments: Option<IncrementLaw>,
}

impl HarmonisableModel {
    /// Validates that the bimeasure lives on the model's frequencies, that
    /// its form is nonnegative on a sampled candidate set, and that an
    /// attached increment law matches frequencies and stability index.
    pub fn new(
        frequencies: Vec<f64>,
        bimeasure: DiscreteBimeasure,
        alpha: Alpha,
        increments: Option<IncrementLaw>,
    ) -> Result<Self> {
        if frequencies.len() != bimeasure.cells() {
            return Err(Error::DimensionMismatch {
                expected: frequencies.len(),
                actual: bimeasure.cells(),
            });
        }
        for (a, b) in frequencies.iter().zip(bimeasure.frequencies()) {
            if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                return Err(Error::Input(format!(
                    "bimeasure frequency {b} does not match model frequency {a}"
                )));
            }
        }
        if !pd_nonnegativity(&bimeasure, alpha, GATE_TRIALS, GATE_SEED)? {
            return Err(Error::Integrity(
                "invalid bimeasure: the covariation form takes negative real values".into(),
            ));
        }
        if let Some(law) = &increments {
            if law.cells() != frequencies.len() {
                return Err(Error::DimensionMismatch {
                    expected: frequencies.len(),
                    actual: law.cells(),
                });
            }
            for (a, b) in frequencies.iter().zip(law.frequencies()) {
                if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                    return Err(Error::Input(format!(
                        "increment frequency {b} does not match model frequency {a}"
                    )));
                }
            }
            if (law.alpha().value() - alpha.value()).abs() > 1e-12 {
                return Err(Error::parameter(
                    "increment law and model carry different stability indices",
                ));
            }
        }
        Ok(HarmonisableModel {
            frequencies,
            bimeasure,
            alpha,
            increments,
        })
    }

    /// Builds the model directly from an increment law.
    pub fn from_increments(law: IncrementLaw) -> Result<Self> {
        let bimeasure = DiscreteBimeasure::from_increments(&law)?;
        Self::new(
            law.frequencies().to_vec(),
            bimeasure,
            law.alpha(),
            Some(law),
        )
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn bimeasure(&self) -> &DiscreteBimeasure {
        &self.bimeasure
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn increments(&self) -> Option<&IncrementLaw> {
        self.increments.as_ref()
    }

    /// Covariation function
    /// `C(s, t) = sum_jk exp(i (s lambda_j - t lambda_k)) F[j][k]`.
    pub fn covariation_function(&self, s: f64, t: f64) -> Complex64 {
        let u: Vec<Complex64> = self
            .frequencies
            .iter()
            .map(|&l| Complex64::from_polar(1.0, s * l))
            .collect();
        let v: Vec<Complex64> = self
            .frequencies
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -t * l))
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &uj) in u.iter().enumerate() {
            let mut row = Complex64::new(0.0, 0.0);
            for (k, &vk) in v.iter().enumerate() {
                row += vk * self.bimeasure.entry(j, k);
            }
            acc += uj * row;
        }
        acc
    }

    /// The spectral lines `gamma = lambda_j - lambda_k` carrying bimeasure
    /// mass above `mass_tolerance`, merged within 1e-9, each with its total
    /// absolute mass.
    fn spectral_lines(&self, mass_tolerance: f64) -> Vec<SpectralLine> {
        let mut raw: Vec<(f64, f64)> = Vec::new();
        for (j, &lj) in self.frequencies.iter().enumerate() {
            for (k, &lk) in self.frequencies.iter().enumerate() {
                let mass = self.bimeasure.entry(j, k).norm();
                if mass > mass_tolerance {
                    raw.push((lj - lk, mass));
                }
            }
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut lines: Vec<SpectralLine> = Vec::new();
        for (gamma, mass) in raw {
            match lines.last_mut() {
                Some(last) if (gamma - last.gamma).abs() <= MERGE_TOL => {
                    // weighted merge keeps the line location stable
                    let total = last.mass + mass;
                    last.gamma = (last.gamma * last.mass + gamma * mass) / total;
                    last.mass = total;
                }
                _ => lines.push(SpectralLine { gamma, mass }),
            }
        }
        for line in lines.iter_mut() {
            if line.gamma.abs() <= MERGE_TOL {
                line.gamma = 0.0;
            }
        }
        lines
    }

    /// Classifies the time structure of the covariation function from the
    /// line support of the bimeasure.
    ///
    /// Stationary when only the diagonal line carries mass. Periodic when
    /// the nonzero lines are closed under negation and admit an approximate
    /// common divisor `g` (candidates `gamma_min / m`, `m <= 64`, relative
    /// tolerance 1e-9); the fundamental period is `2 pi / g` for the largest
    /// consistent `g`. Everything else is reported as almost periodic, which
    /// is the weaker true statement for one-sided line sets.
    pub fn classify(&self, mass_tolerance: f64) -> Result<ClassificationReport> {
        if !(mass_tolerance.is_finite() && mass_tolerance >= 0.0) {
            return Err(Error::parameter(format!(
                "mass tolerance must be nonnegative, got {mass_tolerance}"
            )));
        }
        let lines = self.spectral_lines(mass_tolerance);
        let nonzero: Vec<f64> = lines
            .iter()
            .map(|l| l.gamma)
            .filter(|g| g.abs() > MERGE_TOL)
            .collect();
        if nonzero.is_empty() {
            return Ok(ClassificationReport {
                verdict: Verdict::Stationary,
                period: None,
                lines,
                mass_tolerance,
            });
        }
        let symmetric = nonzero.iter().all(|&g| {
            nonzero
                .iter()
                .any(|&h| (g + h).abs() <= LINE_TOL * g.abs().max(1.0))
        });
        let period = if symmetric {
            common_line_divisor(&nonzero).map(|g| TAU / g)
        } else {
            None
        };
        Ok(ClassificationReport {
            verdict: if period.is_some() {
                Verdict::Periodic
            } else {
                Verdict::AlmostPeriodic
            },
            period,
            lines,
            mass_tolerance,
        })
    }

    /// Cyclic coefficient of order `k` for period `T` at lag `tau`:
    /// the averaged integral `(1/T) INT_0^T C(t+tau, t) exp(-i 2 pi k t / T) dt`
    /// done term by term (the integrand is a finite trigonometric
    /// polynomial), next to the line-sum prediction.
    pub fn fourier_coefficient(&self, tau: f64, k: i64, period: f64) -> Result<FourierCoefficient> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::parameter(format!(
                "period must be positive, got {period}"
            )));
        }
        let omega = TAU * k as f64 / period;
        let mut numeric = Complex64::new(0.0, 0.0);
        let mut predicted = Complex64::new(0.0, 0.0);
        for (j, &lj) in self.frequencies.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, tau * lj);
            for (k2, &lk) in self.frequencies.iter().enumerate() {
                let entry = self.bimeasure.entry(j, k2);
                if entry.norm() == 0.0 {
                    continue;
                }
                let gamma = lj - lk;
                let delta = gamma - omega;
                numeric += phase * entry * mean_exponential(delta * period);
                if delta.abs() <= LINE_TOL * omega.abs().max(1.0) {
                    predicted += phase * entry;
                }
            }
        }
        Ok(FourierCoefficient { numeric, predicted })
    }

    /// Bohr coefficient at line `gamma` over the horizon `[-M, M]`:
    /// `(1/2M) INT_{-M}^{M} C(t+tau, t) exp(-i gamma t) dt`, term by term.
    /// Converges to the line sum as the horizon grows.
    pub fn bohr_coefficient(&self, tau: f64, gamma: f64, horizon: f64) -> Result<Complex64> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::parameter(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &lj) in self.frequencies.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, tau * lj);
            for (k, &lk) in self.frequencies.iter().enumerate() {
                let entry = self.bimeasure.entry(j, k);
                if entry.norm() == 0.0 {
                    continue;
                }
                acc += phase * entry * sinc((lj - lk - gamma) * horizon);
            }
        }
        Ok(acc)
    }

    /// Fejer average over `2N + 1` period shifts,
    /// `(1/(2N+1)) sum_{k=-N}^{N} C(t + tau + kT, t + kT)`, next to the
    /// lattice-masked limit it converges to.
    pub fn fejer_average(&self, t: f64, tau: f64, n: u32, period: f64) -> Result<FejerAverage> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::parameter(format!(
                "period must be positive, got {period}"
            )));
        }
        let mut value = Complex64::new(0.0, 0.0);
        for k in -(n as i64)..=n as i64 {
            let shift = k as f64 * period;
            value += self.covariation_function(t + tau + shift, t + shift);
        }
        value /= (2 * n + 1) as f64;

        let gap = TAU / period;
        let mut masked = Complex64::new(0.0, 0.0);
        for (j, &lj) in self.frequencies.iter().enumerate() {
            for (k, &lk) in self.frequencies.iter().enumerate() {
                let gamma = lj - lk;
                let nearest = (gamma / gap).round() * gap;
                if (gamma - nearest).abs() <= LINE_TOL * gamma.abs().max(1.0) {
                    masked += Complex64::from_polar(1.0, (t + tau) * lj - t * lk)
                        * self.bimeasure.entry(j, k);
                }
            }
        }
        Ok(FejerAverage {
            value,
            masked_limit: masked,
        })
    }

    /// Draws `n_paths` sample paths on the given time grid. Requires the
    /// increment law; path `p` uses stream `p` of `seed`, so path sets are
    /// reproducible and order-independent.
    pub fn synthesize_paths(
        &self,
        times: &[f64],
        n_paths: usize,
        seed: u64,
    ) -> Result<Vec<Vec<Complex64>>> {
        let law = self.increments.as_ref().ok_or(Error::MissingIncrements)?;
        let sampler = VectorSampler::new(law.joint_measure(), self.alpha)?;
        let mut paths = Vec::with_capacity(n_paths);
        for p in 0..n_paths {
            let mut rng = SeedStream::with_stream(seed, p as u64);
            let dxi = sampler.draw(&mut rng);
            let path: Vec<Complex64> = times
                .iter()
                .map(|&t| {
                    self.frequencies
                        .iter()
                        .zip(&dxi)
                        .map(|(&l, &inc)| Complex64::from_polar(1.0, t * l) * inc)
                        .sum()
                })
                .collect();
            paths.push(path);
        }
        Ok(paths)
    }

    /// `C(t, t)` expressed through the bimeasure form at the phase vector
    /// `(exp(i t lambda_j))_j`.
    pub fn diagonal_form(&self, t: f64) -> Result<Complex64> {
        let z: Vec<Complex64> = self
            .frequencies
            .iter()
            .map(|&l| Complex64::from_polar(1.0, t * l))
            .collect();
        bilinear_form(&self.bimeasure, &z, self.alpha)
    }
}

/// `(1/T) INT_0^T exp(i delta t) dt` written with `x = delta T`.
fn mean_exponential(x: f64) -> Complex64 {
    if x.abs() <= 1e-9 {
        Complex64::new(1.0, 0.5 * x)
    } else {
        (Complex64::from_polar(1.0, x) - 1.0) / Complex64::new(0.0, x)
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() <= 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Largest approximate common divisor of the nonzero lines among the
/// candidates `gamma_min / m`, `m <= 64`.
fn common_line_divisor(nonzero: &[f64]) -> Option<f64> {
    let gamma_min = nonzero
        .iter()
        .map(|g| g.abs())
        .fold(f64::INFINITY, f64::min);
    for m in 1..=64u32 {
        let g = gamma_min / m as f64;
        let consistent = nonzero.iter().all(|&gamma| {
            let nearest = (gamma / g).round() * g;
            (gamma - nearest).abs() <= LINE_TOL * gamma.abs().max(1.0)
        });
        if consistent {
            return Some(g);
        }
    }
    None
}

/// Time structure of the covariation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stationary,
    Periodic,
    AlmostPeriodic,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Stationary => write!(f, "stationary"),
            Verdict::Periodic => write!(f, "periodic"),
            Verdict::AlmostPeriodic => write!(f, "almost_periodic"),
        }
    }
}

/// One spectral line and the total bimeasure mass it carries.
#[derive(Debug, Clone, Copy)]
pub struct SpectralLine {
    pub gamma: f64,
    pub mass: f64,
}

/// Outcome of `classify`.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// Fundamental period, present exactly for the periodic verdict.
    pub period: Option<f64>,
    pub lines: Vec<SpectralLine>,
    pub mass_tolerance: f64,
}

/// Cyclic coefficient: averaged integral next to the line-sum prediction.
#[derive(Debug, Clone, Copy)]
pub struct FourierCoefficient {
    pub numeric: Complex64,
    pub predicted: Complex64,
}

/// Fejer average next to its lattice-masked limit.
#[derive(Debug, Clone, Copy)]
pub struct FejerAverage {
    pub value: Complex64,
    pub masked_limit: Complex64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use approx::assert_abs_diff_eq;

    fn alpha(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn diagonal_covariation_depends_on_the_time_difference_only() {
        let model = corpus::diagonal_model(alpha(1.5)).unwrap();
        let a = model.covariation_function(1.0, 0.0);
        let b = model.covariation_function(2.0, 1.0);
        assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-13);
        for h in [0.3, 2.7, -5.0] {
            let shifted = model.covariation_function(1.0 + h, h);
            assert_abs_diff_eq!((a - shifted).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn lattice_model_is_pi_periodic_in_both_times() {
        let model = corpus::lattice_model(alpha(1.5)).unwrap();
        let pi = std::f64::consts::PI;
        for (s, t) in [(0.3, -0.8), (1.9, 2.2), (-4.0, 0.1)] {
            let base = model.covariation_function(s, t);
            let shifted = model.covariation_function(s + pi, t + pi);
            assert_abs_diff_eq!((base - shifted).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_bimeasure_gives_the_zero_covariation_function() {
        let zero = DiscreteBimeasure::new(
            vec![0.0, 1.0],
            vec![vec![Complex64::new(0.0, 0.0); 2]; 2],
        )
        .unwrap();
        let model = HarmonisableModel::new(vec![0.0, 1.0], zero, alpha(1.5), None).unwrap();
        assert_eq!(model.covariation_function(0.7, -0.2).norm(), 0.0);
        let report = model.classify(1e-12).unwrap();
        assert_eq!(report.verdict, Verdict::Stationary);
    }

    #[test]
    fn classify_corpus_models() {
        let a = alpha(1.5);
        let diag = corpus::diagonal_model(a).unwrap().classify(1e-12).unwrap();
        assert_eq!(diag.verdict, Verdict::Stationary);
        assert!(diag.lines.iter().all(|l| l.gamma == 0.0));

        let lattice = corpus::lattice_model(a).unwrap().classify(1e-12).unwrap();
        assert_eq!(lattice.verdict, Verdict::Periodic);
        let period = lattice.period.unwrap();
        assert_abs_diff_eq!(period, std::f64::consts::PI, epsilon = 1e-9);

        let mixed = corpus::mixed_model(a).unwrap().classify(1e-12).unwrap();
        assert_eq!(mixed.verdict, Verdict::AlmostPeriodic);
        assert!(mixed.period.is_none());
        let gammas: Vec<f64> = mixed.lines.iter().map(|l| l.gamma).collect();
        assert_eq!(gammas.len(), 2);
        assert_abs_diff_eq!(gammas[0], 0.0);
        assert_abs_diff_eq!(gammas[1], std::f64::consts::SQRT_2, epsilon = 1e-9);
    }

    #[test]
    fn classification_invariants_hold_for_the_periodic_verdict() {
        let model = corpus::lattice_model(alpha(1.5)).unwrap();
        let report = model.classify(1e-12).unwrap();
        let t = report.period.unwrap();
        let gap = TAU / t;
        for line in &report.lines {
            let nearest = (line.gamma / gap).round() * gap;
            assert_abs_diff_eq!(line.gamma, nearest, epsilon = 1e-9);
        }
    }

    #[test]
    fn fourier_coefficients_on_the_diagonal_model() {
        let model = corpus::diagonal_model(alpha(1.5)).unwrap();
        // constant lagged covariation: zeroth coefficient is the full mass
        let c0 = model.fourier_coefficient(0.0, 0, 2.0).unwrap();
        assert_abs_diff_eq!(c0.numeric.re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!((c0.numeric - c0.predicted).norm(), 0.0, epsilon = 1e-12);
        // k = 1 at period pi integrates an exact full turn to zero
        let c1 = model
            .fourier_coefficient(0.0, 1, std::f64::consts::PI)
            .unwrap();
        assert_abs_diff_eq!(c1.numeric.norm(), 0.0, epsilon = 1e-12);
        assert_eq!(c1.predicted.norm(), 0.0);
    }

    #[test]
    fn fourier_numeric_matches_prediction_on_the_lattice_model() {
        let model = corpus::lattice_model(alpha(1.5)).unwrap();
        for k in -3..=3 {
            for tau in [0.0, 0.7] {
                let c = model
                    .fourier_coefficient(tau, k, std::f64::consts::PI)
                    .unwrap();
                assert!(
                    (c.numeric - c.predicted).norm() <= 1e-10,
                    "k = {k}, tau = {tau}: {} vs {}",
                    c.numeric,
                    c.predicted
                );
            }
        }
        // the +2 line shows up at k = 1 with phase exp(i tau * 2)
        let c = model.fourier_coefficient(0.4, 1, std::f64::consts::PI).unwrap();
        let expected = Complex64::from_polar(0.5, 0.4 * 2.0);
        assert_abs_diff_eq!((c.predicted - expected).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bohr_coefficient_is_exact_on_the_diagonal_line() {
        let model = corpus::diagonal_model(alpha(1.5)).unwrap();
        for m in [1.0, 10.0, 400.0] {
            let v = model.bohr_coefficient(0.0, 0.0, m).unwrap();
            assert_abs_diff_eq!(v.re, 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn bohr_coefficient_recovers_the_off_diagonal_line_mass() {
        let model = corpus::mixed_model(alpha(1.5)).unwrap();
        let tau = 0.3;
        let gamma = std::f64::consts::SQRT_2;
        let target = Complex64::from_polar(0.5, tau * gamma);
        let mut previous = f64::INFINITY;
        for m in [50.0, 400.0, 3200.0] {
            let v = model.bohr_coefficient(tau, gamma, m).unwrap();
            let err = (v - target).norm();
            assert!(err < previous);
            previous = err;
        }
        assert!(previous < 1e-3);
    }

    #[test]
    fn fejer_average_at_zero_shifts_is_the_lagged_covariation() {
        let model = corpus::mixed_model(alpha(1.5)).unwrap();
        let f = model.fejer_average(0.4, 1.1, 0, 2.0).unwrap();
        let c = model.covariation_function(1.5, 0.4);
        assert_abs_diff_eq!((f.value - c).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn fejer_average_is_exact_for_periodic_models_at_every_width() {
        let model = corpus::lattice_model(alpha(1.5)).unwrap();
        let c = model.covariation_function(0.9, 0.2);
        for n in [0u32, 1, 5, 50] {
            let f = model
                .fejer_average(0.2, 0.7, n, std::f64::consts::PI)
                .unwrap();
            assert_abs_diff_eq!((f.value - c).norm(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!((f.masked_limit - c).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn fejer_mask_restricts_to_lattice_lines() {
        // mask-then-sum equals the covariation function of the line-restricted
        // bimeasure: for the mixed model with T = pi, the sqrt(2) line drops.
        let a = alpha(1.5);
        let model = corpus::mixed_model(a).unwrap();
        let diag_only = corpus::diagonal_model_with(
            model.frequencies().to_vec(),
            vec![1.0, 1.0, 1.0],
            a,
        )
        .unwrap();
        let f = model
            .fejer_average(0.3, 0.8, 10, std::f64::consts::PI)
            .unwrap();
        let restricted = diag_only.covariation_function(1.1, 0.3);
        assert_abs_diff_eq!((f.masked_limit - restricted).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_form_agrees_with_the_covariation_function_on_the_diagonal() {
        for model in [
            corpus::diagonal_model(alpha(1.5)).unwrap(),
            corpus::lattice_model(alpha(1.3)).unwrap(),
            corpus::mixed_model(alpha(1.8)).unwrap(),
        ] {
            for t in [0.0, 0.6, -2.3] {
                let via_form = model.diagonal_form(t).unwrap();
                let via_c = model.covariation_function(t, t);
                assert_abs_diff_eq!((via_form - via_c).norm(), 0.0, epsilon = 1e-12);
            }
        }
        // diagonal models have real nonnegative C(t, t)
        let model = corpus::diagonal_model(alpha(1.5)).unwrap();
        let v = model.diagonal_form(0.7).unwrap();
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13);
        assert!(v.re >= 0.0);
    }

    #[test]
    fn synthesis_needs_increments_and_zero_laws_give_zero_paths() {
        let a = alpha(1.5);
        let analytics_only = corpus::lattice_model(a).unwrap();
        assert!(matches!(
            analytics_only.synthesize_paths(&[0.0], 2, 0),
            Err(Error::MissingIncrements)
        ));

        let zero = corpus::zero_increment_model(a).unwrap();
        let paths = zero.synthesize_paths(&[0.0, 1.0], 3, 9).unwrap();
        assert!(paths.iter().flatten().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn single_zero_frequency_paths_are_constant_in_time() {
        let a = alpha(1.5);
        let model = corpus::single_frequency_model(a).unwrap();
        let paths = model.synthesize_paths(&[0.0, 0.5, 2.0], 5, 11).unwrap();
        for path in paths {
            for v in &path {
                assert_abs_diff_eq!((v - path[0]).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn paths_are_reproducible_under_the_seed() {
        let model = corpus::diagonal_model(alpha(1.5)).unwrap();
        let a = model.synthesize_paths(&[0.0, 1.0], 4, 77).unwrap();
        let b = model.synthesize_paths(&[0.0, 1.0], 4, 77).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constructor_rejects_negative_diagonal_bimeasures() {
        let matrix = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        let mut bad = matrix.clone();
        bad[1][1] = Complex64::new(-1.0, 0.0);
        // the bimeasure constructor already refuses a negative diagonal
        assert!(DiscreteBimeasure::new(vec![0.0, 1.0], bad).is_err());
        // an off-diagonal dominant matrix passes construction but fails the gate
        let mut lopsided = matrix;
        lopsided[0][1] = Complex64::new(-5.0, 0.0);
        lopsided[1][0] = Complex64::new(-5.0, 0.0);
        let bim = DiscreteBimeasure::new(vec![0.0, 1.0], lopsided).unwrap();
        assert!(matches!(
            HarmonisableModel::new(vec![0.0, 1.0], bim, alpha(1.5), None),
            Err(Error::Integrity(_))
        ));
    }
}
