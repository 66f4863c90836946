//! Model persistence and trace output.
//!
//! Models are stored as JSON with `-inf` coefficients encoded as the
//! literal string `"-inf"`; finite values use shortest round-trip decimals,
//! so serialize -> parse -> serialize is byte-identical. Traces go to CSV
//! with the header `k,e,eta` (`eta` is blank where undefined, i.e. rows
//! `k = 0` and `k = 1`).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ExponentSet, TropicalPolynomial};
use crate::ratfit::{FitConfig, FitTrace, TropicalRational};
use crate::semiring::TropValue;

pub const MODEL_FILE_VERSION: &str = "tropfit.model.v1";

/// On-disk form of a fitted (or generated) tropical rational function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub version: String,
    pub n: usize,
    pub exponents: ExponentsRepr,
    pub p: Vec<CoeffValue>,
    pub q: Vec<CoeffValue>,
    pub scale_c: f64,
    pub provenance: Provenance,
}

/// Exponent set representation; grid degrees or an explicit list, in the
/// fixed enumeration order (grids: lexicographic, last coordinate fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExponentsRepr {
    Grid { degrees: Vec<u32> },
    Explicit { exponents: Vec<Vec<u32>> },
}

/// A coefficient: a finite number, or the string `"-inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Finite(f64),
    Symbol(String),
}

impl CoeffValue {
    fn from_trop(v: TropValue) -> Self {
        if v.is_finite() {
            CoeffValue::Finite(v.get())
        } else {
            CoeffValue::Symbol("-inf".to_owned())
        }
    }

    fn to_trop(&self) -> Result<TropValue> {
        match self {
            CoeffValue::Finite(v) => TropValue::finite(*v)
                .map_err(|_| Error::InvalidModel(format!("non-finite coefficient {v}"))),
            CoeffValue::Symbol(s) if s == "-inf" => Ok(TropValue::NEG_INFINITY),
            CoeffValue::Symbol(s) => Err(Error::InvalidModel(format!(
                "unknown coefficient symbol {s:?}"
            ))),
        }
    }
}

/// How the model was produced; null fields for hand-built models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: Option<FitSettings>,
    pub trace: Option<TraceSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSettings {
    pub max_iters: usize,
    pub eta_tol: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub iterations: usize,
    pub termination: String,
    pub initial_error: f64,
    pub final_error: f64,
}

impl ModelFile {
    /// Packages a model with optional fit provenance.
    pub fn new(
        model: &TropicalRational,
        cfg: Option<&FitConfig>,
        trace: Option<&FitTrace>,
    ) -> Self {
        let set = model.exponents();
        let exponents = match set.grid_degrees() {
            Some(degrees) => ExponentsRepr::Grid {
                degrees: degrees.to_vec(),
            },
            None => ExponentsRepr::Explicit {
                exponents: set.iter().collect(),
            },
        };
        ModelFile {
            version: MODEL_FILE_VERSION.to_owned(),
            n: set.dim(),
            exponents,
            p: model
                .numerator()
                .coeffs()
                .iter()
                .map(|&c| CoeffValue::from_trop(c))
                .collect(),
            q: model
                .denominator()
                .coeffs()
                .iter()
                .map(|&c| CoeffValue::from_trop(c))
                .collect(),
            scale_c: model.scale(),
            provenance: Provenance {
                config: cfg.map(|c| FitSettings {
                    max_iters: c.max_iters,
                    eta_tol: c.eta_tol,
                    scale: c.scale,
                }),
                trace: trace.map(|t| TraceSummary {
                    iterations: t.iterations,
                    termination: t.termination.as_str().to_owned(),
                    initial_error: t.initial_error,
                    final_error: t.final_error,
                }),
            },
        }
    }

    /// Reconstructs the in-memory model, validating coefficients.
    pub fn to_model(&self) -> Result<TropicalRational> {
        if self.version != MODEL_FILE_VERSION {
            return Err(Error::InvalidModel(format!(
                "unsupported version {:?}",
                self.version
            )));
        }
        let set = match &self.exponents {
            ExponentsRepr::Grid { degrees } => ExponentSet::grid(degrees)?,
            ExponentsRepr::Explicit { exponents } => ExponentSet::explicit(exponents.clone())?,
        };
        if set.dim() != self.n {
            return Err(Error::InvalidModel(format!(
                "dimension field {} does not match exponent set dimension {}",
                self.n,
                set.dim()
            )));
        }
        let parse = |coeffs: &[CoeffValue], what: &str| -> Result<TropicalPolynomial> {
            let values = coeffs
                .iter()
                .map(CoeffValue::to_trop)
                .collect::<Result<Vec<_>>>()?;
            let poly = TropicalPolynomial::new(set.clone(), values)
                .map_err(|e| Error::InvalidModel(format!("{what}: {e}")))?;
            if !poly.has_finite_coeff() {
                return Err(Error::InvalidModel(format!(
                    "{what} has no finite coefficient"
                )));
            }
            Ok(poly)
        };
        let p = parse(&self.p, "numerator")?;
        let q = parse(&self.q, "denominator")?;
        TropicalRational::new(p, q, self.scale_c)
            .map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?)
            .map_err(|e| Error::io(path.display().to_string(), e))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        ModelFile::from_json(&text)
    }
}

/// Loads a model file and reconstructs the model in one step.
pub fn read_model(path: impl AsRef<Path>) -> Result<TropicalRational> {
    ModelFile::read(path)?.to_model()
}

/// Renders a trace as CSV with header `k,e,eta`.
pub fn trace_to_csv(trace: &FitTrace) -> String {
    let mut out = String::from("k,e,eta\n");
    for row in &trace.rows {
        match row.update_norm {
            Some(eta) => out.push_str(&format!("{},{},{}\n", row.k, row.error, eta)),
            None => out.push_str(&format!("{},{},\n", row.k, row.error)),
        }
    }
    out
}

/// Writes a trace CSV file.
pub fn write_trace_csv(trace: &FitTrace, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, trace_to_csv(trace))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Points;
    use crate::ratfit::alternating_fit;

    const NEG_INF: f64 = f64::NEG_INFINITY;

    fn sample_model() -> TropicalRational {
        let set = ExponentSet::grid(&[2]).unwrap();
        TropicalRational::new(
            TropicalPolynomial::from_raw(set.clone(), &[0.125, -1.0 / 3.0, NEG_INF]).unwrap(),
            TropicalPolynomial::from_raw(set, &[2.5e-11, 4.0, 0.0]).unwrap(),
            1.5,
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let file = ModelFile::new(&sample_model(), None, None);
        let text = file.to_json().unwrap();
        let parsed = ModelFile::from_json(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_json().unwrap(), text);
    }

    #[test]
    fn neg_inf_encodes_as_string() {
        let file = ModelFile::new(&sample_model(), None, None);
        let text = file.to_json().unwrap();
        assert!(text.contains("\"-inf\""));
        let model = ModelFile::from_json(&text).unwrap().to_model().unwrap();
        assert_eq!(model, sample_model());
    }

    #[test]
    fn rejects_unknown_symbol_and_version() {
        let file = ModelFile::new(&sample_model(), None, None);
        let mut tampered = file.clone();
        tampered.p[2] = CoeffValue::Symbol("+inf".to_owned());
        assert!(tampered.to_model().is_err());

        let mut tampered = file;
        tampered.version = "tropfit.model.v999".to_owned();
        assert!(tampered.to_model().is_err());
    }

    #[test]
    fn provenance_round_trips_through_fit() {
        let set = ExponentSet::grid(&[1]).unwrap();
        let points = Points::univariate(&[0.0, 1.0, 2.0]).unwrap();
        let cfg = FitConfig::default();
        let (model, trace) = alternating_fit(&points, &[0.0, 1.0, 2.0], &set, &cfg).unwrap();
        let file = ModelFile::new(&model, Some(&cfg), Some(&trace));
        let text = file.to_json().unwrap();
        let parsed = ModelFile::from_json(&text).unwrap();
        let summary = parsed.provenance.trace.as_ref().unwrap();
        assert_eq!(summary.termination, "tol-reached");
        assert_eq!(summary.final_error, 0.0);
        assert_eq!(parsed.to_model().unwrap(), model);
    }

    #[test]
    fn trace_csv_blank_eta_rows() {
        let set = ExponentSet::grid(&[1]).unwrap();
        let points = Points::univariate(&[0.0, 1.0, 2.0]).unwrap();
        let (_, trace) =
            alternating_fit(&points, &[0.0, 1.0, 0.5], &set, &FitConfig::default()).unwrap();
        let text = trace_to_csv(&trace);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k,e,eta"));
        let row0 = lines.next().unwrap();
        assert!(row0.starts_with("0,") && row0.ends_with(','));
        let row1 = lines.next().unwrap();
        assert!(row1.starts_with("1,") && row1.ends_with(','));
        // From k = 2 on, eta is present.
        for line in lines {
            assert!(!line.ends_with(','), "unexpected blank eta in {line:?}");
        }
        // The whole trace parses with the generic reader.
        let table = crate::dataset::parse_table(&text).unwrap();
        assert_eq!(table.header, vec!["k", "e", "eta"]);
    }
}
