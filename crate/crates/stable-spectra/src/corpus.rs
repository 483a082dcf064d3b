//! Named example measures, increment laws and harmonisable models used by
//! the test suites, the acceptance runner and the guide, plus seeded random
//! generators for additivity-condition laws.

use crate::bimeasure::{DiscreteBimeasure, IncrementLaw};
use crate::error::Result;
use crate::harmonisable::HarmonisableModel;
use crate::rng::SeedStream;
use crate::spectral::{Atom, DiscreteSpectralMeasure, Mode};
use crate::stable::Alpha;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// The standard scalar pair: atoms at plus/minus 1 with weight 1/2 each, so
/// the coordinate is a standard stable variable of unit scale.
pub fn standard_pair_measure() -> DiscreteSpectralMeasure {
    DiscreteSpectralMeasure::new(
        Mode::Real,
        1,
        vec![Atom::real(&[1.0], 0.5), Atom::real(&[-1.0], 0.5)],
    )
    .expect("standard pair is well formed")
}

/// The two-atom measure on the diagonal of the plane: the negative witness
/// for the additivity condition.
pub fn diagonal_pair_measure() -> DiscreteSpectralMeasure {
    DiscreteSpectralMeasure::new(
        Mode::Real,
        2,
        vec![
            Atom::real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], 0.5),
            Atom::real(&[-FRAC_1_SQRT_2, -FRAC_1_SQRT_2], 0.5),
        ],
    )
    .expect("diagonal pair is well formed")
}

/// A one-dimensional complex measure with atoms at both poles of the phase
/// `exp(i pi/6)`.
pub fn complex_phase_measure() -> DiscreteSpectralMeasure {
    let s = Complex64::from_polar(1.0, PI / 6.0);
    DiscreteSpectralMeasure::new(
        Mode::Complex,
        1,
        vec![Atom::complex(&[s], 0.5), Atom::complex(&[-s], 0.5)],
    )
    .expect("phase pair is well formed")
}

/// A seeded symmetric measure with `pairs` mirrored atom pairs in random
/// directions and random weights.
pub fn random_symmetric_measure(
    dimension: usize,
    pairs: usize,
    seed: u64,
) -> Result<DiscreteSpectralMeasure> {
    let mut rng = SeedStream::with_stream(seed, 101);
    let mut atoms = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let mut dir = Vec::with_capacity(dimension);
        let mut norm_sq = 0.0;
        while norm_sq == 0.0 {
            dir.clear();
            for _ in 0..dimension {
                let (g, _) = rng.normal_pair();
                dir.push(g);
                norm_sq += g * g;
            }
        }
        let norm = norm_sq.sqrt();
        let unit: Vec<f64> = dir.iter().map(|x| x / norm).collect();
        atoms.push(Atom::real(&unit, rng.uniform_in(0.2, 1.5)));
    }
    DiscreteSpectralMeasure::new(Mode::Real, dimension, atoms)?.symmetrize()
}

/// The fixed measures exercised by the sampling-law checks: axes measures,
/// the diagonal pair, a complex phase pair and a scattered random measure.
pub fn sampling_measures() -> Vec<(&'static str, DiscreteSpectralMeasure)> {
    vec![
        ("standard-pair", standard_pair_measure()),
        (
            "axes-2d",
            DiscreteSpectralMeasure::axes(&[0.5, 0.5]).expect("axes measure"),
        ),
        ("diagonal-pair", diagonal_pair_measure()),
        ("complex-phase", complex_phase_measure()),
        (
            "random-3d",
            random_symmetric_measure(3, 3, 2024).expect("random measure"),
        ),
    ]
}

/// A seeded increment law satisfying the additivity condition: every joint
/// atom touches a single coordinate (a real pole or a complex phase), so all
/// mixed third derivatives vanish identically.
pub fn random_condition_a_law(seed: u64) -> Result<IncrementLaw> {
    let mut rng = SeedStream::with_stream(seed, 202);
    let cells = 1 + (rng.uniform_open() * 4.0) as usize;
    let complex_mode = rng.uniform_open() < 0.5;
    let mode = if complex_mode { Mode::Complex } else { Mode::Real };
    let mut atoms = Vec::with_capacity(2 * cells);
    for j in 0..cells {
        let weight = rng.uniform_in(0.25, 1.5);
        let mut point = vec![Complex64::new(0.0, 0.0); cells];
        point[j] = if complex_mode {
            Complex64::from_polar(1.0, rng.uniform_in(0.0, 2.0 * PI))
        } else {
            Complex64::new(1.0, 0.0)
        };
        let negated: Vec<Complex64> = point.iter().map(|z| -z).collect();
        atoms.push(Atom::complex(&point, weight));
        atoms.push(Atom::complex(&negated, weight));
    }
    // real-mode atoms must have exactly real coordinates
    let atoms = if complex_mode {
        atoms
    } else {
        atoms
            .into_iter()
            .map(|a| Atom {
                point: a.point.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
                weight: a.weight,
            })
            .collect()
    };
    let joint = DiscreteSpectralMeasure::new(mode, cells, atoms)?;
    let mut frequencies = Vec::with_capacity(cells);
    let mut f = rng.uniform_in(-1.0, 1.0);
    for _ in 0..cells {
        frequencies.push(f);
        f += rng.uniform_in(0.3, 1.3);
    }
    let alpha = Alpha::new(rng.uniform_in(1.15, 1.9))?;
    IncrementLaw::new(frequencies, joint, alpha)
}

/// Stationary corpus model: frequencies (0, 2), identity bimeasure, with the
/// independent-increment law attached so paths can be synthesized.
pub fn diagonal_model(alpha: Alpha) -> Result<HarmonisableModel> {
    let joint = DiscreteSpectralMeasure::axes(&[0.5, 0.5])?;
    let law = IncrementLaw::new(vec![0.0, 2.0], joint, alpha)?;
    HarmonisableModel::from_increments(law)
}

/// A diagonal (stationary) analytics-only model with the given frequencies
/// and diagonal masses.
pub fn diagonal_model_with(
    frequencies: Vec<f64>,
    diagonal: Vec<f64>,
    alpha: Alpha,
) -> Result<HarmonisableModel> {
    let n = frequencies.len();
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (j, &m) in diagonal.iter().enumerate() {
        matrix[j][j] = Complex64::new(m, 0.0);
    }
    let bimeasure = DiscreteBimeasure::new(frequencies.clone(), matrix)?;
    HarmonisableModel::new(frequencies, bimeasure, alpha, None)
}

/// Periodic corpus model: frequencies (0, 1, 2) with unit diagonal and mass
/// 1/2 on both lines at plus/minus 2, so the fundamental period is pi.
pub fn lattice_model(alpha: Alpha) -> Result<HarmonisableModel> {
    let frequencies = vec![0.0, 1.0, 2.0];
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); 3]; 3];
    for (j, row) in matrix.iter_mut().enumerate() {
        row[j] = Complex64::new(1.0, 0.0);
    }
    matrix[2][0] = Complex64::new(0.5, 0.0);
    matrix[0][2] = Complex64::new(0.5, 0.0);
    let bimeasure = DiscreteBimeasure::new(frequencies.clone(), matrix)?;
    HarmonisableModel::new(frequencies, bimeasure, alpha, None)
}

/// Almost-periodic corpus model: frequencies (0, 1, sqrt 2) with unit
/// diagonal and a single one-sided line of mass 1/2 at sqrt 2.
pub fn mixed_model(alpha: Alpha) -> Result<HarmonisableModel> {
    let frequencies = vec![0.0, 1.0, SQRT_2];
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); 3]; 3];
    for (j, row) in matrix.iter_mut().enumerate() {
        row[j] = Complex64::new(1.0, 0.0);
    }
    matrix[2][0] = Complex64::new(0.5, 0.0);
    let bimeasure = DiscreteBimeasure::new(frequencies.clone(), matrix)?;
    HarmonisableModel::new(frequencies, bimeasure, alpha, None)
}

/// A model whose increment law has an empty joint measure: all paths are
/// identically zero.
pub fn zero_increment_model(alpha: Alpha) -> Result<HarmonisableModel> {
    let joint = DiscreteSpectralMeasure::empty(Mode::Real, 2);
    let law = IncrementLaw::new(vec![0.0, 1.0], joint, alpha)?;
    HarmonisableModel::from_increments(law)
}

/// A single zero-frequency cell with a standard increment: paths are
/// constant in time.
pub fn single_frequency_model(alpha: Alpha) -> Result<HarmonisableModel> {
    let law = IncrementLaw::new(vec![0.0], standard_pair_measure(), alpha)?;
    HarmonisableModel::from_increments(law)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{ThetaGridSpec, TripleMode};

    #[test]
    fn random_condition_a_laws_pass_the_checker_identically() {
        for seed in 0..24 {
            let law = random_condition_a_law(seed).unwrap();
            let report = law
                .condition_a(&ThetaGridSpec::default(), 1e-12, TripleMode::Literal)
                .unwrap();
            assert!(report.pass, "seed {seed}");
            assert_eq!(report.max_abs, 0.0, "seed {seed}");
        }
    }

    #[test]
    fn random_symmetric_measures_are_symmetric_with_unit_atoms() {
        for seed in 0..8 {
            let m = random_symmetric_measure(3, 4, seed).unwrap();
            assert!(m.is_symmetric());
            for atom in m.atoms() {
                let norm: f64 = atom.point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn corpus_models_construct() {
        let a = Alpha::new(1.5).unwrap();
        assert!(diagonal_model(a).is_ok());
        assert!(lattice_model(a).is_ok());
        assert!(mixed_model(a).is_ok());
        assert!(zero_increment_model(a).is_ok());
        assert!(single_frequency_model(a).is_ok());
    }
}
