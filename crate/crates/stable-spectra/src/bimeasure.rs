//! Increment laws over finitely many frequency cells, the covariation
//! bimeasure they induce, its positivity and variation diagnostics, the
//! control measure, and double integrals of step functions against the
//! bimeasure evaluated in both iteration orders.

use crate::covariation::{covariation_exact, covariation_norm};
use crate::error::{Error, Result};
use crate::rng::SeedStream;
use crate::spectral::{AdditivityReport, DiscreteSpectralMeasure, Mode, ThetaGridSpec, TripleMode};
use crate::stable::{moment_ratio, spow_c, Alpha, MomentKind};
use num_complex::Complex64;

/// Frequency atoms paired with the joint law of their stable increments.
///
/// Cell `j` carries the increment variable `dxi_j`; the joint spectral
/// measure has one coordinate per cell.
#[derive(Debug, Clone)]
pub struct IncrementLaw {
    frequencies: Vec<f64>,
    joint: DiscreteSpectralMeasure,
    alpha: Alpha,
}

impl IncrementLaw {
    pub fn new(
        frequencies: Vec<f64>,
        joint: DiscreteSpectralMeasure,
        alpha: Alpha,
    ) -> Result<Self> {
        check_frequencies(&frequencies)?;
        if joint.dimension() != frequencies.len() {
            return Err(Error::DimensionMismatch {
                expected: frequencies.len(),
                actual: joint.dimension(),
            });
        }
        Ok(IncrementLaw {
            frequencies,
            joint,
            alpha,
        })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn joint_measure(&self) -> &DiscreteSpectralMeasure {
        &self.joint
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn cells(&self) -> usize {
        self.frequencies.len()
    }

    /// Additivity-condition check of the joint measure.
    pub fn condition_a(
        &self,
        grid: &ThetaGridSpec,
        tolerance: f64,
        mode: TripleMode,
    ) -> Result<AdditivityReport> {
        self.joint.check_additivity(grid, tolerance, mode)
    }

    /// Covariation norm of the increment over a set of cells,
    /// `|| sum_{j in set} dxi_j ||`.
    pub fn set_norm(&self, cells: &[usize]) -> Result<f64> {
        let set = self.check_cells(cells)?;
        let mut indicator = vec![Complex64::new(0.0, 0.0); self.cells()];
        for &j in &set {
            indicator[j] = Complex64::new(1.0, 0.0);
        }
        covariation_norm(&self.joint, self.alpha, &indicator)
    }

    /// The moment-ratio constant matching the law's coordinate field.
    pub fn moment_kind(&self) -> MomentKind {
        match self.joint.mode() {
            Mode::Real => MomentKind::Real,
            Mode::Complex => MomentKind::Isotropic,
        }
    }

    fn check_cells(&self, cells: &[usize]) -> Result<Vec<usize>> {
        let n = self.cells();
        let mut set: Vec<usize> = cells.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&bad) = set.iter().find(|&&j| j >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dimension: n,
            });
        }
        Ok(set)
    }
}

fn check_frequencies(frequencies: &[f64]) -> Result<()> {
    if frequencies.is_empty() {
        return Err(Error::parameter("at least one frequency cell is required"));
    }
    if frequencies.iter().any(|f| !f.is_finite()) {
        return Err(Error::parameter("frequencies must be finite"));
    }
    if frequencies.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parameter("frequencies must be strictly increasing"));
    }
    Ok(())
}

/// The covariation bimeasure over the frequency cells: the complex matrix
/// `F[j][k] = [dxi_j, dxi_k]`.
#[derive(Debug, Clone)]
pub struct DiscreteBimeasure {
    frequencies: Vec<f64>,
    matrix: Vec<Vec<Complex64>>,
    condition_a: Option<AdditivityReport>,
}

impl DiscreteBimeasure {
    /// Builds a bimeasure from an explicit matrix, checking shape and that
    /// the diagonal is real and nonnegative up to rounding.
    pub fn new(frequencies: Vec<f64>, matrix: Vec<Vec<Complex64>>) -> Result<Self> {
        check_frequencies(&frequencies)?;
        let n = frequencies.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.len(),
            });
        }
        let scale = matrix
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(1.0_f64, f64::max);
        for (j, row) in matrix.iter().enumerate() {
            let diag = row[j];
            if diag.im.abs() > 1e-9 * scale || diag.re < -1e-9 * scale {
                return Err(Error::Integrity(format!(
                    "diagonal entry {j} must be a nonnegative real, got {diag}"
                )));
            }
        }
        Ok(DiscreteBimeasure {
            frequencies,
            matrix,
            condition_a: None,
        })
    }

    /// `F[j][k] = [dxi_j, dxi_k]` from the joint law, with the law's
    /// additivity-condition report attached (default grid, literal triples).
    ///
    /// The matrix is defined even when the condition fails; only the
    /// covariation-equality guarantees of the double integrals are lost, and
    /// the attached report records that.
    pub fn from_increments(law: &IncrementLaw) -> Result<Self> {
        Self::from_increments_with(law, &ThetaGridSpec::default(), 1e-10, TripleMode::Literal)
    }

    pub fn from_increments_with(
        law: &IncrementLaw,
        grid: &ThetaGridSpec,
        tolerance: f64,
        triple_mode: TripleMode,
    ) -> Result<Self> {
        let n = law.cells();
        let report = law.condition_a(grid, tolerance, triple_mode)?;
        let mut basis = vec![Complex64::new(0.0, 0.0); n];
        let mut matrix = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for j in 0..n {
            for k in 0..n {
                basis[j] = Complex64::new(1.0, 0.0);
                let e_j = basis.clone();
                basis[j] = Complex64::new(0.0, 0.0);
                basis[k] = Complex64::new(1.0, 0.0);
                let e_k = basis.clone();
                basis[k] = Complex64::new(0.0, 0.0);
                matrix[j][k] = covariation_exact(law.joint_measure(), law.alpha(), &e_j, &e_k)?;
            }
        }
        let mut out = Self::new(law.frequencies().to_vec(), matrix)?;
        out.condition_a = Some(report);
        Ok(out)
    }

    pub fn cells(&self) -> usize {
        self.frequencies.len()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.matrix[j][k]
    }

    pub fn matrix(&self) -> &[Vec<Complex64>] {
        &self.matrix
    }

    /// The additivity report attached by `from_increments`, if any.
    pub fn condition_a(&self) -> Option<&AdditivityReport> {
        self.condition_a.as_ref()
    }

    fn check_vector(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.cells() {
            return Err(Error::DimensionMismatch {
                expected: self.cells(),
                actual: z.len(),
            });
        }
        Ok(())
    }
}

/// The quadratic-like form `sum_ij z_i z_j^<alpha-1> F[i][j]`.
pub fn bilinear_form(
    bimeasure: &DiscreteBimeasure,
    z: &[Complex64],
    alpha: Alpha,
) -> Result<Complex64> {
    bimeasure.check_vector(z)?;
    let beta = alpha.value() - 1.0;
    let powers: Vec<Complex64> = z.iter().map(|&w| spow_c(w, beta)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &zi) in z.iter().enumerate() {
        for (j, &pj) in powers.iter().enumerate() {
            acc += zi * pj * bimeasure.entry(i, j);
        }
    }
    Ok(acc)
}

/// Outcome of the positive-definiteness-type scan.
#[derive(Debug, Clone)]
pub struct PdTypeReport {
    /// Smallest real part of the form over all candidates.
    pub worst_re: f64,
    /// Largest imaginary magnitude over all candidates.
    pub worst_im: f64,
    /// Candidate count (indicators plus random draws).
    pub trials: usize,
    /// True when the form stayed real and nonnegative within 1e-10.
    pub pass: bool,
}

const PD_TOL: f64 = 1e-10;

/// Samples the form at the coordinate indicators and `trials` random complex
/// vectors from the unit polydisc, recording the worst real part and the
/// worst imaginary magnitude. Failures are reported, not thrown.
pub fn pd_type_check(
    bimeasure: &DiscreteBimeasure,
    alpha: Alpha,
    trials: usize,
    seed: u64,
) -> Result<PdTypeReport> {
    if trials == 0 {
        return Err(Error::parameter("at least one trial is required"));
    }
    let n = bimeasure.cells();
    let mut worst_re = f64::INFINITY;
    let mut worst_im: f64 = 0.0;
    let mut probe = |z: &[Complex64]| -> Result<()> {
        let v = bilinear_form(bimeasure, z, alpha)?;
        worst_re = worst_re.min(v.re);
        worst_im = worst_im.max(v.im.abs());
        Ok(())
    };
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        z[j] = Complex64::new(1.0, 0.0);
        probe(&z)?;
        z[j] = Complex64::new(0.0, 0.0);
    }
    let mut rng = SeedStream::new(seed);
    for _ in 0..trials {
        for w in z.iter_mut() {
            let r = rng.uniform_open().sqrt();
            let phi = std::f64::consts::TAU * rng.uniform_open();
            *w = Complex64::from_polar(r, phi);
        }
        probe(&z)?;
    }
    Ok(PdTypeReport {
        worst_re,
        worst_im,
        trials: trials + n,
        pass: worst_re >= -PD_TOL && worst_im <= PD_TOL,
    })
}

/// Sampled real-part nonnegativity of the form: the half of the
/// positivity scan that one-sided line bimeasures can satisfy.
pub(crate) fn pd_nonnegativity(
    bimeasure: &DiscreteBimeasure,
    alpha: Alpha,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let report = pd_type_check(bimeasure, alpha, trials, seed)?;
    Ok(report.worst_re >= -PD_TOL)
}

/// Total Vitali variation `sum_jk |F[j][k]|`; the supremum over refinements
/// of an atomic partition is attained on the atoms.
pub fn vitali_variation(bimeasure: &DiscreteBimeasure) -> f64 {
    bimeasure
        .matrix()
        .iter()
        .flatten()
        .map(|z| z.norm())
        .sum()
}

/// A certified bracket for the coefficient-constrained variation: a searched
/// lower bound together with the Vitali variation as an upper bound.
#[derive(Debug, Clone, Copy)]
pub struct FrechetBound {
    pub lower_bound: f64,
    pub vitali_upper: f64,
}

/// Searches `max Re sum a_i a_j^<alpha-1> F[i][j]` over coefficient vectors
/// with `|a_i| <= 1`: sign patterns, indicators and random phase vectors
/// within the search budget.
pub fn frechet_type_sup(
    bimeasure: &DiscreteBimeasure,
    alpha: Alpha,
    search_budget: usize,
    seed: u64,
) -> Result<FrechetBound> {
    if search_budget == 0 {
        return Err(Error::parameter("search budget must be at least 1"));
    }
    let n = bimeasure.cells();
    let mut best = f64::NEG_INFINITY;
    let mut used = 0usize;
    let mut consider = |z: &[Complex64]| -> Result<()> {
        let v = bilinear_form(bimeasure, z, alpha)?;
        best = best.max(v.re);
        Ok(())
    };

    // Sign patterns first; they are optimal for diagonal matrices.
    if n <= 20 {
        let patterns = 1usize << n;
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        for bits in 0..patterns {
            if used >= search_budget {
                break;
            }
            for (i, w) in z.iter_mut().enumerate() {
                *w = Complex64::new(if bits >> i & 1 == 0 { 1.0 } else { -1.0 }, 0.0);
            }
            consider(&z)?;
            used += 1;
        }
    }
    let mut rng = SeedStream::new(seed);
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    while used < search_budget {
        for w in z.iter_mut() {
            *w = Complex64::from_polar(1.0, std::f64::consts::TAU * rng.uniform_open());
        }
        consider(&z)?;
        used += 1;
    }
    Ok(FrechetBound {
        lower_bound: best.max(0.0),
        vitali_upper: vitali_variation(bimeasure),
    })
}

/// Control measure of a cell set: `nu(A) = S(1) sum_{j in A} ||dxi_j||`,
/// the expected total variation of the increment measure (exact for atomic
/// increments, where the partition supremum is attained on single cells).
pub fn control_measure_nu(law: &IncrementLaw, cells: &[usize]) -> Result<f64> {
    let set = law.check_cells(cells)?;
    if set.is_empty() {
        return Ok(0.0);
    }
    let s1 = moment_ratio(law.alpha(), 1.0, law.moment_kind())?;
    let mut total = 0.0;
    for &j in &set {
        total += law.set_norm(&[j])?;
    }
    Ok(s1 * total)
}

/// Complex coefficients of a step function over the frequency cells.
#[derive(Debug, Clone)]
pub struct StepFunction {
    coefficients: Vec<Complex64>,
}

impl StepFunction {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        StepFunction { coefficients }
    }

    pub fn real(coefficients: &[f64]) -> Self {
        StepFunction {
            coefficients: coefficients.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    /// The indicator of a single cell among `n`.
    pub fn indicator(n: usize, cell: usize) -> Self {
        let mut coefficients = vec![Complex64::new(0.0, 0.0); n];
        coefficients[cell] = Complex64::new(1.0, 0.0);
        StepFunction { coefficients }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Partial integral `sum_j f_j F(A_j, B)` of a step function against the
/// first argument of the bimeasure, the second fixed to a cell set.
pub fn mt_partial(
    f: &StepFunction,
    b_cells: &[usize],
    bimeasure: &DiscreteBimeasure,
) -> Result<Complex64> {
    let n = bimeasure.cells();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: f.len(),
        });
    }
    let mut set: Vec<usize> = b_cells.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&j| j >= n) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            dimension: n,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &fj) in f.coefficients().iter().enumerate() {
        let row: Complex64 = set.iter().map(|&k| bimeasure.entry(j, k)).sum();
        acc += fj * row;
    }
    Ok(acc)
}

/// Double integral `sum_jk f_j g_k^<alpha-1> F[j][k]`, evaluated in both
/// iteration orders; the two must agree to rounding for step functions, and a
/// disagreement reports corrupted accumulation.
pub fn mt_integral(
    f: &StepFunction,
    g: &StepFunction,
    bimeasure: &DiscreteBimeasure,
    alpha: Alpha,
) -> Result<Complex64> {
    let n = bimeasure.cells();
    for len in [f.len(), g.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let beta = alpha.value() - 1.0;
    let powers: Vec<Complex64> = g.coefficients().iter().map(|&w| spow_c(w, beta)).collect();

    // rows first
    let mut i1 = Complex64::new(0.0, 0.0);
    for (j, &fj) in f.coefficients().iter().enumerate() {
        let mut row = Complex64::new(0.0, 0.0);
        for (k, &pk) in powers.iter().enumerate() {
            row += pk * bimeasure.entry(j, k);
        }
        i1 += fj * row;
    }
    // columns first
    let mut i2 = Complex64::new(0.0, 0.0);
    for (k, &pk) in powers.iter().enumerate() {
        let mut col = Complex64::new(0.0, 0.0);
        for (j, &fj) in f.coefficients().iter().enumerate() {
            col += fj * bimeasure.entry(j, k);
        }
        i2 += pk * col;
    }
    let scale = i1.norm().max(i2.norm()).max(1.0);
    if (i1 - i2).norm() > 1e-12 * scale {
        return Err(Error::Integrity(format!(
            "iterated integrals disagree: {i1} vs {i2}"
        )));
    }
    Ok(i1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Atom;
    use approx::assert_abs_diff_eq;

    fn alpha(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn axes_law(n: usize) -> IncrementLaw {
        let joint = DiscreteSpectralMeasure::axes(&vec![0.5; n]).unwrap();
        let frequencies: Vec<f64> = (0..n).map(|j| j as f64).collect();
        IncrementLaw::new(frequencies, joint, alpha(1.5)).unwrap()
    }

    fn diagonal_pair_law() -> IncrementLaw {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let joint = DiscreteSpectralMeasure::new(
            Mode::Real,
            2,
            vec![Atom::real(&[s, s], 0.5), Atom::real(&[-s, -s], 0.5)],
        )
        .unwrap();
        IncrementLaw::new(vec![0.0, 1.0], joint, alpha(1.5)).unwrap()
    }

    #[test]
    fn law_construction_validates_frequencies() {
        let joint = DiscreteSpectralMeasure::axes(&[0.5, 0.5]).unwrap();
        assert!(IncrementLaw::new(vec![1.0, 1.0], joint.clone(), alpha(1.5)).is_err());
        assert!(IncrementLaw::new(vec![2.0, 1.0], joint.clone(), alpha(1.5)).is_err());
        assert!(IncrementLaw::new(vec![0.0], joint, alpha(1.5)).is_err());
    }

    #[test]
    fn axes_increments_give_the_identity_bimeasure() {
        let law = axes_law(3);
        let f = DiscreteBimeasure::from_increments(&law).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let expected = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(f.entry(j, k).re, expected, epsilon = 1e-14);
                assert_eq!(f.entry(j, k).im, 0.0);
            }
        }
        assert!(f.condition_a().unwrap().pass);
    }

    #[test]
    fn diagonal_pair_increments_fill_the_matrix_with_the_hand_value() {
        let f = DiscreteBimeasure::from_increments(&diagonal_pair_law()).unwrap();
        let expected = 2.0_f64.powf(-0.75);
        for j in 0..2 {
            for k in 0..2 {
                assert_abs_diff_eq!(f.entry(j, k).re, expected, epsilon = 1e-14);
            }
        }
        assert!(!f.condition_a().unwrap().pass);
    }

    #[test]
    fn empty_joint_measure_gives_the_zero_matrix() {
        let joint = DiscreteSpectralMeasure::empty(Mode::Real, 2);
        let law = IncrementLaw::new(vec![0.0, 2.0], joint, alpha(1.5)).unwrap();
        let f = DiscreteBimeasure::from_increments(&law).unwrap();
        assert!(f.matrix().iter().flatten().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn bilinear_form_on_the_identity_sums_alpha_powers() {
        let f = DiscreteBimeasure::from_increments(&axes_law(3)).unwrap();
        let a = alpha(1.5);
        let z = [
            Complex64::new(0.3, -0.4),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.9),
        ];
        let v = bilinear_form(&f, &z, a).unwrap();
        let expected: f64 = z.iter().map(|w| w.norm().powf(1.5)).sum();
        assert_abs_diff_eq!(v.re, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);

        // indicator recovery
        let mut e = vec![Complex64::new(0.0, 0.0); 3];
        e[1] = Complex64::new(1.0, 0.0);
        assert_abs_diff_eq!(
            (bilinear_form(&f, &e, a).unwrap() - f.entry(1, 1)).norm(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn bilinear_form_matches_the_joint_covariation_for_condition_a_laws() {
        let law = axes_law(3);
        let f = DiscreteBimeasure::from_increments(&law).unwrap();
        let z = [
            Complex64::new(0.7, 0.2),
            Complex64::new(-0.4, 1.1),
            Complex64::new(0.0, -0.3),
        ];
        let via_form = bilinear_form(&f, &z, law.alpha()).unwrap();
        let via_measure = covariation_exact(law.joint_measure(), law.alpha(), &z, &z).unwrap();
        assert_abs_diff_eq!((via_form - via_measure).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn pd_check_passes_identity_and_flags_negative_diagonals() {
        let f = DiscreteBimeasure::from_increments(&axes_law(2)).unwrap();
        let report = pd_type_check(&f, alpha(1.5), 64, 7).unwrap();
        assert!(report.pass, "worst re {}", report.worst_re);

        let bad = DiscreteBimeasure {
            frequencies: vec![0.0, 1.0],
            matrix: vec![
                vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                vec![Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)],
            ],
            condition_a: None,
        };
        let report = pd_type_check(&bad, alpha(1.5), 8, 7).unwrap();
        assert!(!report.pass);
        assert!(report.worst_re <= -0.5 + 1e-12);
    }

    #[test]
    fn vitali_variation_examples() {
        let f = DiscreteBimeasure::from_increments(&axes_law(3)).unwrap();
        assert_abs_diff_eq!(vitali_variation(&f), 3.0, epsilon = 1e-13);
        let diag = DiscreteBimeasure::from_increments(&diagonal_pair_law()).unwrap();
        assert_abs_diff_eq!(
            vitali_variation(&diag),
            4.0 * 2.0_f64.powf(-0.75),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(vitali_variation(&diag), 2.378_414, epsilon = 1e-6);
        let zero = DiscreteBimeasure::new(
            vec![0.0, 1.0],
            vec![vec![Complex64::new(0.0, 0.0); 2]; 2],
        )
        .unwrap();
        assert_eq!(vitali_variation(&zero), 0.0);
    }

    #[test]
    fn frechet_search_attains_the_identity_supremum() {
        let f = DiscreteBimeasure::from_increments(&axes_law(3)).unwrap();
        for a in [1.2, 1.5, 1.9] {
            let bound = frechet_type_sup(&f, alpha(a), 200, 3).unwrap();
            assert_abs_diff_eq!(bound.lower_bound, 3.0, epsilon = 1e-12);
            assert!(bound.lower_bound <= bound.vitali_upper + 1e-12);
        }
        let zero = DiscreteBimeasure::new(
            vec![0.0, 1.0],
            vec![vec![Complex64::new(0.0, 0.0); 2]; 2],
        )
        .unwrap();
        let bound = frechet_type_sup(&zero, alpha(1.5), 16, 3).unwrap();
        assert_eq!(bound.lower_bound, 0.0);
        assert_eq!(bound.vitali_upper, 0.0);
    }

    #[test]
    fn control_measure_is_additive_and_matches_the_moment_constant() {
        let law = axes_law(3);
        assert_eq!(control_measure_nu(&law, &[]).unwrap(), 0.0);
        let single = control_measure_nu(&law, &[0]).unwrap();
        let s1 = moment_ratio(alpha(1.5), 1.0, MomentKind::Real).unwrap();
        assert_abs_diff_eq!(single, s1, epsilon = 1e-12);
        assert_abs_diff_eq!(single, 1.705_46, epsilon = 1e-5);
        let ab = control_measure_nu(&law, &[0, 1]).unwrap();
        let b = control_measure_nu(&law, &[1]).unwrap();
        assert_abs_diff_eq!(ab, single + b, epsilon = 1e-12);
    }

    #[test]
    fn mt_partial_recovers_entries_and_is_linear() {
        let law = diagonal_pair_law();
        let f = DiscreteBimeasure::from_increments(&law).unwrap();
        let e0 = StepFunction::indicator(2, 0);
        let v = mt_partial(&e0, &[1], &f).unwrap();
        assert_abs_diff_eq!((v - f.entry(0, 1)).norm(), 0.0, epsilon = 1e-14);

        let g = StepFunction::new(vec![Complex64::new(0.4, 0.1), Complex64::new(-1.0, 0.2)]);
        let h = StepFunction::new(vec![Complex64::new(-0.3, 0.7), Complex64::new(0.5, 0.0)]);
        let sum = StepFunction::new(
            g.coefficients()
                .iter()
                .zip(h.coefficients())
                .map(|(a, b)| a + b)
                .collect(),
        );
        let lhs = mt_partial(&sum, &[0, 1], &f).unwrap();
        let rhs = mt_partial(&g, &[0, 1], &f).unwrap() + mt_partial(&h, &[0, 1], &f).unwrap();
        assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn mt_integral_recovers_entries_and_scales_by_signed_powers() {
        let law = axes_law(2);
        let f = DiscreteBimeasure::from_increments(&law).unwrap();
        let a = law.alpha();
        let e0 = StepFunction::indicator(2, 0);
        let e1 = StepFunction::indicator(2, 1);
        let v = mt_integral(&e0, &e1, &f, a).unwrap();
        assert_abs_diff_eq!((v - f.entry(0, 1)).norm(), 0.0, epsilon = 1e-14);

        let g = StepFunction::new(vec![Complex64::new(0.8, -0.1), Complex64::new(0.3, 0.5)]);
        let c = 2.5;
        let scaled = StepFunction::new(g.coefficients().iter().map(|z| z * c).collect());
        let base = mt_integral(&e0, &g, &f, a).unwrap();
        let big = mt_integral(&e0, &scaled, &f, a).unwrap();
        let factor = spow_c(Complex64::new(c, 0.0), a.value() - 1.0);
        assert_abs_diff_eq!((big - base * factor).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mt_integral_equals_joint_covariation_exactly_for_condition_a_laws() {
        let law = axes_law(3);
        let bim = DiscreteBimeasure::from_increments(&law).unwrap();
        let f = StepFunction::new(vec![
            Complex64::new(0.3, 0.4),
            Complex64::new(-1.2, 0.0),
            Complex64::new(0.0, 0.9),
        ]);
        let g = StepFunction::new(vec![
            Complex64::new(1.0, -0.5),
            Complex64::new(0.2, 0.2),
            Complex64::new(-0.7, 0.1),
        ]);
        let via_mt = mt_integral(&f, &g, &bim, law.alpha()).unwrap();
        let via_cov = covariation_exact(
            law.joint_measure(),
            law.alpha(),
            f.coefficients(),
            g.coefficients(),
        )
        .unwrap();
        assert_abs_diff_eq!((via_mt - via_cov).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn biadditivity_over_disjoint_cell_sets() {
        let f = DiscreteBimeasure::from_increments(&diagonal_pair_law()).unwrap();
        let g = StepFunction::new(vec![Complex64::new(0.9, 0.0), Complex64::new(-0.2, 0.3)]);
        let union = mt_partial(&g, &[0, 1], &f).unwrap();
        let parts = mt_partial(&g, &[0], &f).unwrap() + mt_partial(&g, &[1], &f).unwrap();
        assert_abs_diff_eq!((union - parts).norm(), 0.0, epsilon = 1e-14);
    }
}
