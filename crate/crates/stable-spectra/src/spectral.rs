//! Discrete symmetric spectral measures on the unit sphere, their Fourier
//! transform, third mixed derivatives, the additivity-condition checker and
//! exact sampling of the stable vectors they characterize.
//!
//! A measure of dimension `d` lives on the unit sphere of `R^d` in real mode
//! and on the unit sphere of `R^(2d)` in complex mode; complex points are
//! stored as `d` complex coordinates.

use crate::covariation;
use crate::error::{Error, Result};
use crate::rng::SeedStream;
use crate::stable::{standard_sas, Alpha};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Coordinate field of the measure's carrier sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Real,
    Complex,
}

/// A weighted point on the unit sphere.
#[derive(Debug, Clone)]
pub struct Atom {
    pub point: Vec<Complex64>,
    pub weight: f64,
}

impl Atom {
    pub fn real(point: &[f64], weight: f64) -> Self {
        Atom {
            point: point.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            weight,
        }
    }

    pub fn complex(point: &[Complex64], weight: f64) -> Self {
        Atom {
            point: point.to_vec(),
            weight,
        }
    }

    fn norm(&self) -> f64 {
        self.point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

const ATOM_MERGE_TOL: f64 = 1e-12;
const SPHERE_TOL: f64 = 1e-9;

/// A finite measure with finitely many weighted atoms on the unit sphere.
#[derive(Debug, Clone)]
pub struct DiscreteSpectralMeasure {
    mode: Mode,
    dimension: usize,
    atoms: Vec<Atom>,
}

impl DiscreteSpectralMeasure {
    /// Builds a measure, validating that every atom sits on the unit sphere
    /// (within `1e-9`, then renormalized exactly), has positive weight and the
    /// right dimension. Atoms closer than `1e-12` are merged.
    pub fn new(mode: Mode, dimension: usize, atoms: Vec<Atom>) -> Result<Self> {
        Self::with_sphere_tolerance(mode, dimension, atoms, SPHERE_TOL)
    }

    pub(crate) fn with_sphere_tolerance(
        mode: Mode,
        dimension: usize,
        atoms: Vec<Atom>,
        sphere_tol: f64,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::parameter("measure dimension must be at least 1"));
        }
        let mut normalized: Vec<Atom> = Vec::with_capacity(atoms.len());
        for (index, mut atom) in atoms.into_iter().enumerate() {
            if atom.point.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: atom.point.len(),
                });
            }
            if mode == Mode::Real && atom.point.iter().any(|z| z.im != 0.0) {
                return Err(Error::Input(format!(
                    "atom {index} of a real-mode measure has imaginary parts"
                )));
            }
            if !(atom.weight.is_finite() && atom.weight > 0.0) {
                return Err(Error::parameter(format!(
                    "atom {index} has non-positive weight {}",
                    atom.weight
                )));
            }
            let norm = atom.norm();
            if (norm - 1.0).abs() > sphere_tol {
                return Err(Error::OffSphere { index, norm });
            }
            for z in atom.point.iter_mut() {
                *z /= norm;
            }
            normalized.push(atom);
        }
        let mut merged: Vec<Atom> = Vec::with_capacity(normalized.len());
        for atom in normalized {
            match merged.iter_mut().find(|a| point_distance(&a.point, &atom.point) <= ATOM_MERGE_TOL)
            {
                Some(existing) => existing.weight += atom.weight,
                None => merged.push(atom),
            }
        }
        Ok(DiscreteSpectralMeasure {
            mode,
            dimension,
            atoms: merged,
        })
    }

    /// The measure with no atoms.
    pub fn empty(mode: Mode, dimension: usize) -> Self {
        DiscreteSpectralMeasure {
            mode,
            dimension,
            atoms: Vec::new(),
        }
    }

    /// The measure of a vector with independent components: atoms at both
    /// poles of every axis, each carrying that axis' weight.
    pub fn axes(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::parameter("axes measure needs at least one weight"));
        }
        let d = weights.len();
        let mut atoms = Vec::with_capacity(2 * d);
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::parameter(format!(
                    "axis weight {i} must be positive, got {w}"
                )));
            }
            let mut plus = vec![0.0; d];
            plus[i] = 1.0;
            let mut minus = vec![0.0; d];
            minus[i] = -1.0;
            atoms.push(Atom::real(&plus, w));
            atoms.push(Atom::real(&minus, w));
        }
        Self::new(Mode::Real, d, atoms)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Replaces every atom `(s, w)` by the pair `(s, w/2), (-s, w/2)`.
    /// Idempotent up to atom merging; preserves total mass.
    pub fn symmetrize(&self) -> Result<Self> {
        let mut atoms = Vec::with_capacity(2 * self.atoms.len());
        for atom in &self.atoms {
            let negated: Vec<Complex64> = atom.point.iter().map(|z| -z).collect();
            atoms.push(Atom {
                point: atom.point.clone(),
                weight: 0.5 * atom.weight,
            });
            atoms.push(Atom {
                point: negated,
                weight: 0.5 * atom.weight,
            });
        }
        Self::new(self.mode, self.dimension, atoms)
    }

    /// True when every atom has a mirrored twin of equal weight.
    pub fn is_symmetric(&self) -> bool {
        self.pair_up().is_ok()
    }

    /// One representative per mirrored atom pair, with the pair's total mass.
    pub(crate) fn pair_up(&self) -> Result<Vec<Atom>> {
        let mut visited = vec![false; self.atoms.len()];
        let mut pairs = Vec::with_capacity(self.atoms.len() / 2);
        for i in 0..self.atoms.len() {
            if visited[i] {
                continue;
            }
            let negated: Vec<Complex64> = self.atoms[i].point.iter().map(|z| -z).collect();
            let partner = (i + 1..self.atoms.len()).find(|&j| {
                !visited[j] && point_distance(&self.atoms[j].point, &negated) <= SPHERE_TOL
            });
            let Some(j) = partner else {
                return Err(Error::Asymmetric { index: i });
            };
            let (wi, wj) = (self.atoms[i].weight, self.atoms[j].weight);
            if (wi - wj).abs() > 1e-12 * wi.max(wj) {
                return Err(Error::Asymmetric { index: i });
            }
            visited[i] = true;
            visited[j] = true;
            pairs.push(Atom {
                point: self.atoms[i].point.clone(),
                weight: wi + wj,
            });
        }
        Ok(pairs)
    }

    fn check_theta(&self, theta: &[Complex64]) -> Result<()> {
        if theta.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: theta.len(),
            });
        }
        if self.mode == Mode::Real && theta.iter().any(|z| z.im != 0.0) {
            return Err(Error::parameter(
                "real-mode measures take real frequency arguments",
            ));
        }
        Ok(())
    }

    /// Fourier transform of the measure:
    /// `phi(theta) = sum_atoms w cos(<theta, s>)` with the mode pairing.
    pub fn phi(&self, theta: &[Complex64]) -> Result<f64> {
        self.check_theta(theta)?;
        Ok(self
            .atoms
            .iter()
            .map(|a| a.weight * cf_pairing(theta, &a.point).cos())
            .sum())
    }

    /// `phi` with a real argument vector.
    pub fn phi_real(&self, theta: &[f64]) -> Result<f64> {
        self.phi(&lift(theta))
    }

    /// Third mixed derivative of `phi`:
    /// `sum_atoms w s_i s_j s_k sin(<theta, s>)`, evaluated analytically.
    /// Real in real mode (zero imaginary part).
    pub fn third_derivative(
        &self,
        i: usize,
        j: usize,
        k: usize,
        theta: &[Complex64],
    ) -> Result<Complex64> {
        self.check_theta(theta)?;
        for index in [i, j, k] {
            if index >= self.dimension {
                return Err(Error::IndexOutOfRange {
                    index,
                    dimension: self.dimension,
                });
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            let u = cf_pairing(theta, &a.point);
            acc += a.point[i] * a.point[j] * a.point[k] * (a.weight * u.sin());
        }
        Ok(acc)
    }

    /// Scans the third derivative over a frequency grid and all index triples
    /// of the requested kind; the measure satisfies the additivity condition
    /// when the largest modulus stays at zero.
    pub fn check_additivity(
        &self,
        grid: &ThetaGridSpec,
        tolerance: f64,
        triple_mode: TripleMode,
    ) -> Result<AdditivityReport> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::parameter(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        let points = grid.points(self.mode, self.dimension)?;
        if points.is_empty() {
            return Err(Error::parameter("frequency grid is empty"));
        }
        let triples = triple_mode.triples(self.dimension);
        let mut max_abs = 0.0;
        let mut worst = None;
        for theta in &points {
            for &(i, j, k) in &triples {
                let value = self.third_derivative(i, j, k, theta)?;
                let abs = value.norm();
                if abs > max_abs {
                    max_abs = abs;
                    worst = Some(WorstCase {
                        i,
                        j,
                        k,
                        theta: theta.clone(),
                        value,
                    });
                }
            }
        }
        Ok(AdditivityReport {
            max_abs,
            worst,
            grid_spec: grid.describe(self.mode, self.dimension),
            tolerance,
            triple_mode,
            points_scanned: points.len(),
            pass: max_abs <= tolerance,
        })
    }

    /// Characteristic function of the stable vector with this spectral
    /// measure: `exp(-sum_atoms w |<theta, s>|^alpha)`.
    pub fn char_function(&self, alpha: Alpha, theta: &[Complex64]) -> Result<f64> {
        self.check_theta(theta)?;
        let a = alpha.value();
        let exponent: f64 = self
            .atoms
            .iter()
            .map(|at| at.weight * cf_pairing(theta, &at.point).abs().powf(a))
            .sum();
        Ok((-exponent).exp())
    }

    /// `n` independent draws of the stable vector with this law.
    /// Requires a symmetric measure; the empty measure yields zero vectors.
    pub fn sample_vector(
        &self,
        alpha: Alpha,
        n: usize,
        seed: u64,
    ) -> Result<Vec<Vec<Complex64>>> {
        let sampler = VectorSampler::new(self, alpha)?;
        let mut rng = SeedStream::new(seed);
        Ok((0..n).map(|_| sampler.draw(&mut rng)).collect())
    }

    /// Exact covariation of the linear forms `<a, X>` on `<b, X>`; see the
    /// `covariation` module.
    pub fn covariation(&self, alpha: Alpha, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
        covariation::covariation_exact(self, alpha, a, b)
    }
}

/// Prepared sampler: one scaled direction per mirrored atom pair, combined
/// with independent standard stable amplitudes.
pub struct VectorSampler {
    directions: Vec<Vec<Complex64>>,
    dimension: usize,
    alpha: f64,
}

impl VectorSampler {
    pub fn new(measure: &DiscreteSpectralMeasure, alpha: Alpha) -> Result<Self> {
        let pairs = measure.pair_up()?;
        let a = alpha.value();
        let directions = pairs
            .iter()
            .map(|atom| {
                let scale = atom.weight.powf(1.0 / a);
                atom.point.iter().map(|&z| z * scale).collect()
            })
            .collect();
        Ok(VectorSampler {
            directions,
            dimension: measure.dimension(),
            alpha: a,
        })
    }

    pub fn draw(&self, rng: &mut SeedStream) -> Vec<Complex64> {
        let mut x = vec![Complex64::new(0.0, 0.0); self.dimension];
        for dir in &self.directions {
            let z = standard_sas(self.alpha, rng);
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += di * z;
            }
        }
        x
    }
}

/// Empirical characteristic function of vector samples at one frequency.
pub fn empirical_char_function(samples: &[Vec<Complex64>], theta: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for x in samples {
        acc += Complex64::from_polar(1.0, cf_pairing(theta, x));
    }
    acc / samples.len() as f64
}

/// The real pairing `Re <theta, conj s>` used by characteristic functions and
/// the Fourier transform of the measure.
pub(crate) fn cf_pairing(theta: &[Complex64], point: &[Complex64]) -> f64 {
    theta
        .iter()
        .zip(point)
        .map(|(t, s)| t.re * s.re + t.im * s.im)
        .sum()
}

/// The bilinear pairing `sum_j a_j s_j` (no conjugation) used by covariation.
pub(crate) fn linear_pairing(coeff: &[Complex64], point: &[Complex64]) -> Complex64 {
    coeff.iter().zip(point).map(|(a, s)| a * s).sum()
}

/// Lifts a real vector into the complex argument form the measure API takes.
pub fn lift(theta: &[f64]) -> Vec<Complex64> {
    theta.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn point_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Which index triples the additivity checker scans.
///
/// `Literal` takes every `(i, j, k)` that is not a single repeated index,
/// which is the reading the additivity theorem's proof uses; `PairwiseDistinct`
/// restricts to triples of three different indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleMode {
    Literal,
    PairwiseDistinct,
}

impl TripleMode {
    /// Canonical representatives `i <= j <= k`; the derivative is symmetric
    /// in its indices, so one representative per multiset suffices.
    fn triples(self, d: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                for k in j..d {
                    let keep = match self {
                        TripleMode::Literal => !(i == j && j == k),
                        TripleMode::PairwiseDistinct => i != j && j != k,
                    };
                    if keep {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Display for TripleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TripleMode::Literal => write!(f, "literal"),
            TripleMode::PairwiseDistinct => write!(f, "pairwise-distinct"),
        }
    }
}

/// Frequency grid for the additivity checker: a per-coordinate value set
/// (applied to real parts, and to imaginary parts in complex mode), explicit
/// extra points, and a cap with seeded subsampling beyond it.
#[derive(Debug, Clone)]
pub struct ThetaGridSpec {
    pub per_coordinate: Vec<f64>,
    pub extra_points: Vec<Vec<Complex64>>,
    pub max_points: usize,
    pub subsample_seed: u64,
}

impl Default for ThetaGridSpec {
    fn default() -> Self {
        ThetaGridSpec {
            per_coordinate: vec![0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, PI, -PI],
            extra_points: Vec::new(),
            max_points: 100_000,
            subsample_seed: 0,
        }
    }
}

impl ThetaGridSpec {
    /// Default grid plus explicit points.
    pub fn with_extra_points(points: Vec<Vec<Complex64>>) -> Self {
        ThetaGridSpec {
            extra_points: points,
            ..Default::default()
        }
    }

    fn slots(mode: Mode, dimension: usize) -> usize {
        match mode {
            Mode::Real => dimension,
            Mode::Complex => 2 * dimension,
        }
    }

    fn assemble(mode: Mode, dimension: usize, coords: &[f64]) -> Vec<Complex64> {
        match mode {
            Mode::Real => coords.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Mode::Complex => (0..dimension)
                .map(|i| Complex64::new(coords[2 * i], coords[2 * i + 1]))
                .collect(),
        }
    }

    /// All grid points for a measure of the given mode and dimension.
    pub fn points(&self, mode: Mode, dimension: usize) -> Result<Vec<Vec<Complex64>>> {
        if self.per_coordinate.is_empty() && self.extra_points.is_empty() {
            return Err(Error::parameter("frequency grid has no values"));
        }
        for (i, p) in self.extra_points.iter().enumerate() {
            if p.len() != dimension {
                return Err(Error::Input(format!(
                    "extra grid point {i} has dimension {} instead of {dimension}",
                    p.len()
                )));
            }
            if mode == Mode::Real && p.iter().any(|z| z.im != 0.0) {
                return Err(Error::Input(format!(
                    "extra grid point {i} has imaginary parts on a real-mode measure"
                )));
            }
        }
        let slots = Self::slots(mode, dimension);
        let base = self.per_coordinate.len();
        let mut points = Vec::new();
        if base > 0 {
            let total = (base as f64).powi(slots as i32);
            if total <= self.max_points as f64 {
                let mut index = vec![0usize; slots];
                let mut coords = vec![0.0; slots];
                loop {
                    for (c, &i) in coords.iter_mut().zip(&index) {
                        *c = self.per_coordinate[i];
                    }
                    points.push(Self::assemble(mode, dimension, &coords));
                    // mixed-radix increment
                    let mut pos = 0;
                    loop {
                        if pos == slots {
                            break;
                        }
                        index[pos] += 1;
                        if index[pos] < base {
                            break;
                        }
                        index[pos] = 0;
                        pos += 1;
                    }
                    if pos == slots {
                        break;
                    }
                }
            } else {
                let mut rng = SeedStream::new(self.subsample_seed);
                let mut coords = vec![0.0; slots];
                for _ in 0..self.max_points {
                    for c in coords.iter_mut() {
                        let pick = (rng.uniform_open() * base as f64) as usize;
                        *c = self.per_coordinate[pick.min(base - 1)];
                    }
                    points.push(Self::assemble(mode, dimension, &coords));
                }
            }
        }
        points.extend(self.extra_points.iter().cloned());
        Ok(points)
    }

    pub fn describe(&self, mode: Mode, dimension: usize) -> String {
        let slots = Self::slots(mode, dimension);
        let total = (self.per_coordinate.len() as f64).powi(slots as i32);
        let sampled = if total > self.max_points as f64 {
            format!(
                ", subsampled to {} points (seed {})",
                self.max_points, self.subsample_seed
            )
        } else {
            String::new()
        };
        format!(
            "per-coordinate values {:?} over {} slots{}{}",
            self.per_coordinate,
            slots,
            sampled,
            if self.extra_points.is_empty() {
                String::new()
            } else {
                format!(" + {} explicit points", self.extra_points.len())
            }
        )
    }
}

/// Where and how badly the additivity condition fails.
#[derive(Debug, Clone)]
pub struct WorstCase {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub theta: Vec<Complex64>,
    pub value: Complex64,
}

/// Outcome of the additivity-condition scan.
#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub max_abs: f64,
    pub worst: Option<WorstCase>,
    pub grid_spec: String,
    pub tolerance: f64,
    pub triple_mode: TripleMode,
    pub points_scanned: usize,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn alpha(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    /// The two-atom measure on the diagonal of R^2 used as the negative
    /// witness throughout the crate.
    fn diagonal_pair() -> DiscreteSpectralMeasure {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DiscreteSpectralMeasure::new(
            Mode::Real,
            2,
            vec![Atom::real(&[s, s], 0.5), Atom::real(&[-s, -s], 0.5)],
        )
        .unwrap()
    }

    #[test]
    fn axes_measure_has_mirrored_atoms_and_full_mass() {
        let m = DiscreteSpectralMeasure::axes(&[1.0, 1.0]).unwrap();
        assert_eq!(m.atoms().len(), 4);
        assert_abs_diff_eq!(m.total_mass(), 4.0);
        let m1 = DiscreteSpectralMeasure::axes(&[0.5]).unwrap();
        assert_eq!(m1.atoms().len(), 2);
        assert_abs_diff_eq!(m1.total_mass(), 1.0);
        assert!(DiscreteSpectralMeasure::axes(&[1.0, 0.0]).is_err());
        assert!(DiscreteSpectralMeasure::axes(&[]).is_err());
    }

    #[test]
    fn construction_rejects_off_sphere_points_and_merges_duplicates() {
        let off = DiscreteSpectralMeasure::new(Mode::Real, 2, vec![Atom::real(&[0.5, 0.5], 1.0)]);
        assert!(matches!(off, Err(Error::OffSphere { .. })));
        let dup = DiscreteSpectralMeasure::new(
            Mode::Real,
            1,
            vec![Atom::real(&[1.0], 0.25), Atom::real(&[1.0], 0.75)],
        )
        .unwrap();
        assert_eq!(dup.atoms().len(), 1);
        assert_abs_diff_eq!(dup.atoms()[0].weight, 1.0);
    }

    #[test]
    fn symmetrize_splits_singletons_and_preserves_mass() {
        let single =
            DiscreteSpectralMeasure::new(Mode::Real, 2, vec![Atom::real(&[1.0, 0.0], 1.0)])
                .unwrap();
        assert!(!single.is_symmetric());
        let sym = single.symmetrize().unwrap();
        assert_eq!(sym.atoms().len(), 2);
        assert!(sym.atoms().iter().all(|a| (a.weight - 0.5).abs() < 1e-15));
        assert!(sym.is_symmetric());
        assert_abs_diff_eq!(sym.total_mass(), single.total_mass());

        // Already symmetric input: unchanged mass, idempotent atom count.
        let again = sym.symmetrize().unwrap();
        assert_eq!(again.atoms().len(), 2);
        assert_abs_diff_eq!(again.total_mass(), 1.0);
    }

    #[test]
    fn symmetrize_preserves_mass_on_a_scattered_five_atom_input() {
        let dirs: [[f64; 3]; 5] = [
            [1.0, 2.0, -1.0],
            [0.3, -0.4, 1.1],
            [-2.0, 0.1, 0.1],
            [0.0, 1.0, 1.0],
            [5.0, -3.0, 2.0],
        ];
        let atoms: Vec<Atom> = dirs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                Atom::real(&[d[0] / n, d[1] / n, d[2] / n], 0.2 + 0.3 * i as f64)
            })
            .collect();
        let mass: f64 = atoms.iter().map(|a| a.weight).sum();
        let m = DiscreteSpectralMeasure::new(Mode::Real, 3, atoms).unwrap();
        let sym = m.symmetrize().unwrap();
        assert_abs_diff_eq!(sym.total_mass(), mass, epsilon = 1e-12);
        assert!(sym.is_symmetric());
    }

    #[test]
    fn phi_at_zero_is_the_total_mass() {
        let m = DiscreteSpectralMeasure::axes(&[1.0, 2.0]).unwrap();
        assert_abs_diff_eq!(m.phi_real(&[0.0, 0.0]).unwrap(), m.total_mass());
    }

    #[test]
    fn phi_of_axes_measure_sums_cosines() {
        let m = DiscreteSpectralMeasure::axes(&[1.0, 1.0]).unwrap();
        // 2 cos(pi) + 2 cos(0) = 0
        assert_abs_diff_eq!(m.phi_real(&[PI, 0.0]).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_is_even_for_symmetric_measures() {
        let m = diagonal_pair();
        for theta in [[0.3, -1.2], [2.0, 0.7], [-0.5, -0.6]] {
            let plus = m.phi_real(&theta).unwrap();
            let minus = m.phi_real(&[-theta[0], -theta[1]]).unwrap();
            assert_eq!(plus, minus);
        }
    }

    #[test]
    fn third_derivative_vanishes_identically_on_axes_measures() {
        let m = DiscreteSpectralMeasure::axes(&[0.7, 1.3, 0.2]).unwrap();
        for theta in [[0.0, 0.0, 0.0], [1.0, -2.0, 0.5], [PI, 0.1, -0.4]] {
            for (i, j, k) in [(0, 0, 1), (0, 1, 2), (2, 2, 0), (1, 2, 2)] {
                let v = m
                    .third_derivative(i, j, k, &lift(&theta))
                    .unwrap();
                assert_eq!(v.norm(), 0.0);
            }
        }
    }

    #[test]
    fn third_derivative_hand_oracle_on_the_diagonal_pair() {
        let m = diagonal_pair();
        let t = PI * std::f64::consts::SQRT_2 / 4.0;
        let v = m.third_derivative(0, 0, 1, &lift(&[t, t])).unwrap();
        assert_abs_diff_eq!(v.re, 2.0_f64.powf(-1.5), epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0);
        let at_zero = m.third_derivative(0, 0, 1, &lift(&[0.0, 0.0])).unwrap();
        assert_eq!(at_zero.norm(), 0.0);
        assert!(m.third_derivative(0, 0, 2, &lift(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn checker_passes_axes_and_flags_the_diagonal_pair() {
        let axes = DiscreteSpectralMeasure::axes(&[1.0, 1.0, 1.0]).unwrap();
        let report = axes
            .check_additivity(&ThetaGridSpec::default(), 1e-10, TripleMode::Literal)
            .unwrap();
        assert!(report.pass);
        assert_eq!(report.max_abs, 0.0);

        let t = PI * std::f64::consts::SQRT_2 / 4.0;
        let grid = ThetaGridSpec::with_extra_points(vec![lift(&[t, t])]);
        let report = diagonal_pair()
            .check_additivity(&grid, 1e-10, TripleMode::Literal)
            .unwrap();
        assert!(!report.pass);
        assert!(report.max_abs >= 0.3535);
        assert_abs_diff_eq!(report.max_abs, 2.0_f64.powf(-1.5), epsilon = 1e-12);
        let worst = report.worst.as_ref().unwrap();
        assert!(!(worst.i == worst.j && worst.j == worst.k));
    }

    #[test]
    fn checker_accepts_the_empty_measure() {
        let m = DiscreteSpectralMeasure::empty(Mode::Real, 2);
        let report = m
            .check_additivity(&ThetaGridSpec::default(), 1e-12, TripleMode::Literal)
            .unwrap();
        assert!(report.pass);
        assert_eq!(report.max_abs, 0.0);
    }

    #[test]
    fn pairwise_mode_is_vacuous_in_two_dimensions() {
        let report = diagonal_pair()
            .check_additivity(&ThetaGridSpec::default(), 1e-10, TripleMode::PairwiseDistinct)
            .unwrap();
        assert!(report.pass);
        assert_eq!(report.max_abs, 0.0);
    }

    #[test]
    fn char_function_basics() {
        let m = DiscreteSpectralMeasure::new(
            Mode::Real,
            2,
            vec![Atom::real(&[1.0, 0.0], 0.5), Atom::real(&[-1.0, 0.0], 0.5)],
        )
        .unwrap();
        let a = alpha(1.5);
        assert_abs_diff_eq!(m.char_function(a, &lift(&[0.0, 0.0])).unwrap(), 1.0);
        assert_abs_diff_eq!(
            m.char_function(a, &lift(&[1.0, 0.0])).unwrap(),
            (-1.0_f64).exp(),
            epsilon = 1e-15
        );
        for theta in [[0.4, 1.0], [3.0, -2.0]] {
            let v = m.char_function(a, &lift(&theta)).unwrap();
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    #[test]
    fn sampling_the_empty_measure_gives_zero_vectors() {
        let m = DiscreteSpectralMeasure::empty(Mode::Real, 3);
        let draws = m.sample_vector(alpha(1.5), 4, 1).unwrap();
        assert_eq!(draws.len(), 4);
        assert!(draws.iter().flatten().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn sampling_rejects_asymmetric_measures() {
        let m = DiscreteSpectralMeasure::new(Mode::Real, 2, vec![Atom::real(&[1.0, 0.0], 1.0)])
            .unwrap();
        assert!(matches!(
            m.sample_vector(alpha(1.5), 1, 0),
            Err(Error::Asymmetric { .. })
        ));
    }

    #[test]
    fn sampling_is_reproducible() {
        let m = diagonal_pair();
        let a = m.sample_vector(alpha(1.5), 8, 42).unwrap();
        let b = m.sample_vector(alpha(1.5), 8, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complex_mode_pairing_and_phase_atoms() {
        // d = 1 complex measure with atoms at +- exp(i pi/6)
        let s = Complex64::from_polar(1.0, PI / 6.0);
        let m = DiscreteSpectralMeasure::new(
            Mode::Complex,
            1,
            vec![Atom::complex(&[s], 0.5), Atom::complex(&[-s], 0.5)],
        )
        .unwrap();
        // phi(theta) = cos(Re(theta conj s)) for theta = 2: 2cos(pi/6) inside
        let theta = [Complex64::new(2.0, 0.0)];
        let expected = (2.0 * (PI / 6.0).cos()).cos();
        assert_abs_diff_eq!(m.phi(&theta).unwrap(), expected, epsilon = 1e-14);
        // single-coordinate atoms in complex mode satisfy the condition
        let report = m
            .check_additivity(&ThetaGridSpec::default(), 1e-12, TripleMode::Literal)
            .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn real_mode_rejects_complex_arguments() {
        let m = DiscreteSpectralMeasure::axes(&[1.0]).unwrap();
        let theta = [Complex64::new(0.0, 1.0)];
        assert!(m.phi(&theta).is_err());
    }
}
