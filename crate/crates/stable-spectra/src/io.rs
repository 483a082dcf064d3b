//! Wire formats: JSON schemas for measures, bimeasures, increment laws and
//! harmonisable models, plus fixed-precision CSV rendering for path output.
//!
//! Measure schema:
//! `{"mode": "real"|"complex", "dimension": d, "atoms": [{"point": [...], "weight": w}, ...]}`
//! with points in `R^d` for real mode and interleaved `[re, im, ...]` pairs
//! for complex mode. Points within 1e-6 of the unit sphere are normalized
//! onto it; anything farther is rejected.
//!
//! Bimeasure schema:
//! `{"frequencies": [...], "F": [[{"re": .., "im": ..}, ...], ...]}`.
//!
//! Model schema:
//! `{"alpha": a, "frequencies": [...], "bimeasure": {...}, "increments": {...}|null}`
//! where the embedded increment object is
//! `{"frequencies": [...], "measure": {...}, "alpha": a?}`.

use crate::bimeasure::{DiscreteBimeasure, IncrementLaw};
use crate::error::{Error, Result};
use crate::harmonisable::HarmonisableModel;
use crate::spectral::{Atom, DiscreteSpectralMeasure, Mode};
use crate::stable::Alpha;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const LOADER_SPHERE_TOL: f64 = 1e-6;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureJson {
    mode: String,
    dimension: usize,
    atoms: Vec<AtomJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomJson {
    point: Vec<f64>,
    weight: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BimeasureJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frequencies: Option<Vec<f64>>,
    #[serde(rename = "F")]
    matrix: Vec<Vec<ComplexJson>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IncrementsJson {
    frequencies: Vec<f64>,
    measure: MeasureJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    alpha: f64,
    frequencies: Vec<f64>,
    bimeasure: BimeasureJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    increments: Option<IncrementsJson>,
}

fn mode_from_str(s: &str) -> Result<Mode> {
    match s {
        "real" => Ok(Mode::Real),
        "complex" => Ok(Mode::Complex),
        other => Err(Error::Input(format!(
            "mode must be \"real\" or \"complex\", got \"{other}\""
        ))),
    }
}

fn mode_to_str(mode: Mode) -> &'static str {
    match mode {
        Mode::Real => "real",
        Mode::Complex => "complex",
    }
}

fn measure_from_schema(json: MeasureJson) -> Result<DiscreteSpectralMeasure> {
    let mode = mode_from_str(&json.mode)?;
    let d = json.dimension;
    let expected_len = match mode {
        Mode::Real => d,
        Mode::Complex => 2 * d,
    };
    let mut atoms = Vec::with_capacity(json.atoms.len());
    for (i, atom) in json.atoms.into_iter().enumerate() {
        if atom.point.len() != expected_len {
            return Err(Error::Input(format!(
                "atom {i}: point has {} coordinates, expected {expected_len}",
                atom.point.len()
            )));
        }
        let point: Vec<Complex64> = match mode {
            Mode::Real => atom.point.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Mode::Complex => atom
                .point
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        };
        atoms.push(Atom {
            point,
            weight: atom.weight,
        });
    }
    DiscreteSpectralMeasure::with_sphere_tolerance(mode, d, atoms, LOADER_SPHERE_TOL)
}

fn measure_to_schema(measure: &DiscreteSpectralMeasure) -> MeasureJson {
    let atoms = measure
        .atoms()
        .iter()
        .map(|a| {
            let point = match measure.mode() {
                Mode::Real => a.point.iter().map(|z| z.re).collect(),
                Mode::Complex => a.point.iter().flat_map(|z| [z.re, z.im]).collect(),
            };
            AtomJson {
                point,
                weight: a.weight,
            }
        })
        .collect();
    MeasureJson {
        mode: mode_to_str(measure.mode()).to_string(),
        dimension: measure.dimension(),
        atoms,
    }
}

pub fn measure_from_json(text: &str) -> Result<DiscreteSpectralMeasure> {
    measure_from_schema(serde_json::from_str(text)?)
}

pub fn measure_to_json(measure: &DiscreteSpectralMeasure) -> String {
    serde_json::to_string_pretty(&measure_to_schema(measure)).expect("measure serializes")
}

fn bimeasure_from_schema(json: BimeasureJson, frequencies: Option<&[f64]>) -> Result<DiscreteBimeasure> {
    let freqs = match (json.frequencies, frequencies) {
        (Some(inner), Some(outer)) => {
            if inner.len() != outer.len()
                || inner
                    .iter()
                    .zip(outer)
                    .any(|(a, b)| (a - b).abs() > 1e-12 * b.abs().max(1.0))
            {
                return Err(Error::Input(
                    "bimeasure frequencies disagree with the enclosing model".into(),
                ));
            }
            inner
        }
        (Some(inner), None) => inner,
        (None, Some(outer)) => outer.to_vec(),
        (None, None) => {
            return Err(Error::Input(
                "bimeasure needs a \"frequencies\" array".into(),
            ))
        }
    };
    let matrix = json
        .matrix
        .into_iter()
        .map(|row| row.into_iter().map(|c| Complex64::new(c.re, c.im)).collect())
        .collect();
    DiscreteBimeasure::new(freqs, matrix)
}

fn bimeasure_to_schema(bimeasure: &DiscreteBimeasure, with_frequencies: bool) -> BimeasureJson {
    BimeasureJson {
        frequencies: with_frequencies.then(|| bimeasure.frequencies().to_vec()),
        matrix: bimeasure
            .matrix()
            .iter()
            .map(|row| row.iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect())
            .collect(),
    }
}

pub fn bimeasure_from_json(text: &str) -> Result<DiscreteBimeasure> {
    bimeasure_from_schema(serde_json::from_str(text)?, None)
}

pub fn bimeasure_to_json(bimeasure: &DiscreteBimeasure) -> String {
    serde_json::to_string_pretty(&bimeasure_to_schema(bimeasure, true)).expect("bimeasure serializes")
}

fn increments_from_schema(json: IncrementsJson, model_alpha: Option<Alpha>) -> Result<IncrementLaw> {
    let alpha = match (json.alpha, model_alpha) {
        (Some(a), Some(outer)) => {
            if (a - outer.value()).abs() > 1e-12 {
                return Err(Error::Input(format!(
                    "increment alpha {a} disagrees with the model alpha {}",
                    outer.value()
                )));
            }
            outer
        }
        (Some(a), None) => Alpha::new(a)?,
        (None, Some(outer)) => outer,
        (None, None) => {
            return Err(Error::Input(
                "a standalone increment law needs an \"alpha\" field".into(),
            ))
        }
    };
    let measure = measure_from_schema(json.measure)?;
    IncrementLaw::new(json.frequencies, measure, alpha)
}

pub fn increments_from_json(text: &str) -> Result<IncrementLaw> {
    increments_from_schema(serde_json::from_str(text)?, None)
}

pub fn model_from_json(text: &str) -> Result<HarmonisableModel> {
    let json: ModelJson = serde_json::from_str(text)?;
    let alpha = Alpha::new(json.alpha)?;
    let bimeasure = bimeasure_from_schema(json.bimeasure, Some(&json.frequencies))?;
    let increments = json
        .increments
        .map(|inc| increments_from_schema(inc, Some(alpha)))
        .transpose()?;
    HarmonisableModel::new(json.frequencies, bimeasure, alpha, increments)
}

pub fn model_to_json(model: &HarmonisableModel) -> String {
    let json = ModelJson {
        alpha: model.alpha().value(),
        frequencies: model.frequencies().to_vec(),
        bimeasure: bimeasure_to_schema(model.bimeasure(), false),
        increments: model.increments().map(|law| IncrementsJson {
            frequencies: law.frequencies().to_vec(),
            measure: measure_to_schema(law.joint_measure()),
            alpha: Some(law.alpha().value()),
        }),
    };
    serde_json::to_string_pretty(&json).expect("model serializes")
}

/// Renders a float with 15 significant digits, the fixed precision used by
/// every CSV and report so reruns diff byte-identically.
pub fn format_sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// CSV of synthesized paths: header `path,t,re,im`, one row per path and
/// time point.
pub fn paths_csv(times: &[f64], paths: &[Vec<Complex64>]) -> String {
    let mut out = String::from("path,t,re,im\n");
    for (p, path) in paths.iter().enumerate() {
        for (t, value) in times.iter().zip(path) {
            out.push_str(&format!(
                "{p},{},{},{}\n",
                format_sig15(*t),
                format_sig15(value.re),
                format_sig15(value.im)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use approx::assert_abs_diff_eq;

    #[test]
    fn measure_round_trips_through_json() {
        let measure = corpus::diagonal_pair_measure();
        let text = measure_to_json(&measure);
        let back = measure_from_json(&text).unwrap();
        assert_eq!(back.dimension(), 2);
        assert_eq!(back.atoms().len(), 2);
        assert_abs_diff_eq!(back.total_mass(), measure.total_mass(), epsilon = 1e-15);
    }

    #[test]
    fn loader_normalizes_close_points_and_rejects_far_ones() {
        let close = r#"{"mode":"real","dimension":2,
            "atoms":[{"point":[1.0000004,0.0],"weight":0.5},
                     {"point":[-1.0000004,0.0],"weight":0.5}]}"#;
        let m = measure_from_json(close).unwrap();
        let norm: f64 = m.atoms()[0].point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);

        let far = r#"{"mode":"real","dimension":2,
            "atoms":[{"point":[1.1,0.0],"weight":0.5}]}"#;
        assert!(matches!(measure_from_json(far), Err(Error::OffSphere { .. })));
    }

    #[test]
    fn complex_points_are_interleaved() {
        let text = r#"{"mode":"complex","dimension":1,
            "atoms":[{"point":[0.8660254037844386,0.5],"weight":1.0},
                     {"point":[-0.8660254037844386,-0.5],"weight":1.0}]}"#;
        let m = measure_from_json(text).unwrap();
        assert_eq!(m.dimension(), 1);
        assert_abs_diff_eq!(m.atoms()[0].point[0].im, 0.5, epsilon = 1e-12);
        // wrong arity is rejected
        let bad = r#"{"mode":"complex","dimension":1,
            "atoms":[{"point":[1.0],"weight":1.0}]}"#;
        assert!(measure_from_json(bad).is_err());
    }

    #[test]
    fn unknown_fields_and_bad_modes_are_rejected() {
        let extra = r#"{"mode":"real","dimension":1,"atoms":[],"comment":"x"}"#;
        assert!(measure_from_json(extra).is_err());
        let bad_mode = r#"{"mode":"quaternion","dimension":1,"atoms":[]}"#;
        assert!(measure_from_json(bad_mode).is_err());
    }

    #[test]
    fn model_round_trips_with_and_without_increments() {
        let alpha = Alpha::new(1.5).unwrap();
        for model in [
            corpus::diagonal_model(alpha).unwrap(),
            corpus::mixed_model(alpha).unwrap(),
        ] {
            let text = model_to_json(&model);
            let back = model_from_json(&text).unwrap();
            assert_eq!(back.frequencies().len(), model.frequencies().len());
            assert_eq!(back.increments().is_some(), model.increments().is_some());
            let (s, t) = (0.8, -0.3);
            assert_abs_diff_eq!(
                (back.covariation_function(s, t) - model.covariation_function(s, t)).norm(),
                0.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn model_rejects_mismatched_embedded_frequencies() {
        let bad = r#"{
            "alpha": 1.5,
            "frequencies": [0.0, 2.0],
            "bimeasure": {"frequencies": [0.0, 1.0],
                          "F": [[{"re":1.0,"im":0.0},{"re":0.0,"im":0.0}],
                                [{"re":0.0,"im":0.0},{"re":1.0,"im":0.0}]]}
        }"#;
        assert!(model_from_json(bad).is_err());
    }

    #[test]
    fn bimeasure_json_requires_frequencies_standalone() {
        let text = r#"{"F": [[{"re":1.0,"im":0.0}]]}"#;
        assert!(bimeasure_from_json(text).is_err());
        let ok = r#"{"frequencies":[0.0],"F":[[{"re":1.0,"im":0.0}]]}"#;
        assert!(bimeasure_from_json(ok).is_ok());
    }

    #[test]
    fn csv_rendering_is_fixed_precision() {
        let times = [0.0, 0.5];
        let paths = vec![vec![
            Complex64::new(1.0, -2.0),
            Complex64::new(0.25, 0.0),
        ]];
        let csv = paths_csv(&times, &paths);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "path,t,re,im");
        let first = lines.next().unwrap();
        assert!(first.starts_with("0,0.00000000000000e0,1.00000000000000e0,"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn standalone_increments_need_alpha() {
        let law = corpus::random_condition_a_law(3).unwrap();
        let json = IncrementsJson {
            frequencies: law.frequencies().to_vec(),
            measure: measure_to_schema(law.joint_measure()),
            alpha: None,
        };
        let text = serde_json::to_string(&json).unwrap();
        assert!(increments_from_json(&text).is_err());
        let json = IncrementsJson {
            frequencies: law.frequencies().to_vec(),
            measure: measure_to_schema(law.joint_measure()),
            alpha: Some(law.alpha().value()),
        };
        let text = serde_json::to_string(&json).unwrap();
        assert!(increments_from_json(&text).is_ok());
    }
}
