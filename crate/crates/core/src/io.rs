//! JSON file formats.
//!
//! Matrices are arrays of rows of element strings (`"3"`, `"-1/2"`), with
//! entry `[k][i]` at row `k`, column `i`. For a structure matrix that entry
//! is the coefficient of `e_k` in `e_i^2`, so
//!
//! ```json
//! {"field": "rational", "dimension": 2, "structure_matrix": [["1", "2"], ["0", "0"]]}
//! ```
//!
//! describes `e_1^2 = e_1` and `e_2^2 = 2 e_1`. Permutations are one-line
//! and 1-based in JSON, 0-based in memory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolalg::EvolutionAlgebra;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::oracle::ConformanceReport;
use crate::taut::{TautDecomposition, TautTriple};
use crate::tder::{EntryStatus, PairCase, TderSolution, TernaryTriple};

pub type MatrixJson = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dimension: usize,
    pub structure_matrix: MatrixJson,
}

impl AlgebraFile {
    pub fn from_algebra(a: &EvolutionAlgebra) -> Self {
        AlgebraFile { field: a.spec(), dimension: a.dim(), structure_matrix: a.structure().to_strings() }
    }

    pub fn to_algebra(&self) -> Result<EvolutionAlgebra> {
        let m = Matrix::from_strings(self.field, &self.structure_matrix)?;
        if m.rows() != self.dimension || m.cols() != self.dimension {
            return Err(Error::Invalid(format!(
                "dimension {} but structure matrix is {}x{}",
                self.dimension,
                m.rows(),
                m.cols()
            )));
        }
        EvolutionAlgebra::new(m)
    }
}

pub fn parse_algebra(text: &str) -> Result<EvolutionAlgebra> {
    serde_json::from_str::<AlgebraFile>(text)?.to_algebra()
}

pub fn algebra_to_json(a: &EvolutionAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TautTripleFile {
    pub f1: MatrixJson,
    pub f2: MatrixJson,
    pub f3: MatrixJson,
}

impl TautTripleFile {
    pub fn from_triple(t: &TautTriple) -> Self {
        TautTripleFile { f1: t.f1.to_strings(), f2: t.f2.to_strings(), f3: t.f3.to_strings() }
    }

    /// Parses the three matrices over `spec`. Invertibility is not checked
    /// here; `verify_taut` reports singular components as failures.
    pub fn to_triple(&self, spec: FieldSpec) -> Result<TautTriple> {
        let f1 = Matrix::from_strings(spec, &self.f1)?;
        let f2 = Matrix::from_strings(spec, &self.f2)?;
        let f3 = Matrix::from_strings(spec, &self.f3)?;
        let n = f1.rows();
        if [&f1, &f2, &f3].iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Invalid("triple components must be n x n".into()));
        }
        Ok(TautTriple { f1, f2, f3 })
    }
}

pub fn parse_taut_triple(text: &str, spec: FieldSpec) -> Result<TautTriple> {
    serde_json::from_str::<TautTripleFile>(text)?.to_triple(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub sigma: Vec<usize>,
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &TautDecomposition) -> Self {
        DecompositionFile {
            sigma: d.sigma.iter().map(|s| s + 1).collect(),
            lambda: d.lambda.iter().map(ToString::to_string).collect(),
            mu: d.mu.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_decomposition(&self, spec: FieldSpec) -> Result<TautDecomposition> {
        let sigma = self
            .sigma
            .iter()
            .map(|&s| s.checked_sub(1).ok_or_else(|| Error::Invalid("sigma is 1-based".into())))
            .collect::<Result<Vec<_>>>()?;
        let parse = |xs: &[String]| xs.iter().map(|x| spec.parse(x)).collect::<Result<Vec<FieldElement>>>();
        Ok(TautDecomposition { sigma, lambda: parse(&self.lambda)?, mu: parse(&self.mu)? })
    }
}

/// Parses a 1-based one-line permutation such as `"2,1,3"`.
pub fn parse_sigma(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .ok()
                .and_then(|v| v.checked_sub(1))
                .ok_or_else(|| Error::Invalid(format!("bad permutation {text:?}")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TderTripleFile {
    pub d1: MatrixJson,
    pub d2: MatrixJson,
    pub d3: MatrixJson,
}

impl TderTripleFile {
    pub fn from_triple(t: &TernaryTriple) -> Self {
        TderTripleFile { d1: t.d1.to_strings(), d2: t.d2.to_strings(), d3: t.d3.to_strings() }
    }

    pub fn to_triple(&self, spec: FieldSpec) -> Result<TernaryTriple> {
        TernaryTriple::new(
            Matrix::from_strings(spec, &self.d1)?,
            Matrix::from_strings(spec, &self.d2)?,
            Matrix::from_strings(spec, &self.d3)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryStatusJson {
    pub entry: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub to: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficient: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffDiagJson {
    pub i: usize,
    pub j: usize,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<String>,
    pub entries: Vec<EntryStatusJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TderReportJson {
    pub rank: usize,
    pub perfect: bool,
    pub perm: Vec<usize>,
    pub dependency: MatrixJson,
    pub offdiag: Vec<OffDiagJson>,
    pub diag_classes: Vec<Vec<usize>>,
    pub merges: usize,
    pub free_offdiag: usize,
    pub d1_homogeneous_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TderSolutionJson {
    pub field: FieldSpec,
    pub dimension: usize,
    pub basis: Vec<TderTripleFile>,
    pub report: TderReportJson,
    pub parametrization: Vec<String>,
}

impl TderSolutionJson {
    pub fn from_solution(spec: FieldSpec, sol: &TderSolution) -> Self {
        let r = &sol.report;
        let offdiag = r
            .offdiag
            .iter()
            .map(|c| {
                let (case, coef) = match &c.case {
                    PairCase::Proportional(k) => ("proportional", Some(k.to_string())),
                    PairCase::ZeroNonzero { .. } => ("zero_nonzero", None),
                    PairCase::BothZero => ("both_zero", None),
                    PairCase::Independent => ("independent", None),
                };
                let entries = c
                    .consequences
                    .iter()
                    .map(|(e, s)| match s {
                        EntryStatus::Free => EntryStatusJson { entry: e.to_string(), status: "free".into(), to: None, coefficient: None },
                        EntryStatus::Zero => EntryStatusJson { entry: e.to_string(), status: "zero".into(), to: None, coefficient: None },
                        EntryStatus::Linked { to, coefficient } => EntryStatusJson {
                            entry: e.to_string(),
                            status: "linked".into(),
                            to: Some(to.to_string()),
                            coefficient: Some(coefficient.to_string()),
                        },
                    })
                    .collect();
                OffDiagJson { i: c.i + 1, j: c.j + 1, case: case.into(), c: coef, entries }
            })
            .collect();
        TderSolutionJson {
            field: spec,
            dimension: sol.dimension,
            basis: sol.basis.iter().map(TderTripleFile::from_triple).collect(),
            report: TderReportJson {
                rank: r.squares.rank,
                perfect: r.perfect,
                perm: r.squares.perm.iter().map(|p| p + 1).collect(),
                dependency: r.squares.dependency.to_strings(),
                offdiag,
                diag_classes: r.diag_classes.classes.iter().map(|c| c.iter().map(|k| k + 1).collect()).collect(),
                merges: r.diag_classes.merges(),
                free_offdiag: sol.free_offdiag(),
                d1_homogeneous_dim: r.d1_homogeneous_dim,
            },
            parametrization: sol.render_parametrization().lines().map(String::from).collect(),
        }
    }
}

pub fn conformance_to_json(r: &ConformanceReport) -> String {
    serde_json::to_string_pretty(r).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tder::tder_basis;

    #[test]
    fn algebra_json_matches_column_convention() {
        let text = r#"{"field": "rational", "dimension": 2, "structure_matrix": [["1", "2"], ["0", "0"]]}"#;
        let a = parse_algebra(text).unwrap();
        let e2 = a.basis_vector(1);
        let sq = a.multiply(&e2, &e2).unwrap();
        assert_eq!(sq, vec![FieldSpec::Rational.from_i64(2), FieldSpec::Rational.zero()]);
        assert_eq!(parse_algebra(&algebra_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn algebra_json_errors() {
        assert!(parse_algebra("{").unwrap_err().is_parse());
        let bad_elem = r#"{"field": "rational", "dimension": 1, "structure_matrix": [["x"]]}"#;
        assert!(parse_algebra(bad_elem).unwrap_err().is_parse());
        let bad_dim = r#"{"field": "rational", "dimension": 2, "structure_matrix": [["1"]]}"#;
        assert!(matches!(parse_algebra(bad_dim), Err(Error::Invalid(_))));
        let bad_prime = r#"{"field": {"prime": 4}, "dimension": 1, "structure_matrix": [["1"]]}"#;
        assert!(parse_algebra(bad_prime).unwrap_err().is_parse());
        let empty = r#"{"field": "rational", "dimension": 0, "structure_matrix": []}"#;
        assert!(matches!(parse_algebra(empty), Err(Error::Invalid(_))));
    }

    #[test]
    fn decomposition_json_is_one_based() {
        let q = FieldSpec::Rational;
        let d = TautDecomposition { sigma: vec![1, 0], lambda: vec![q.one(), q.from_i64(2)], mu: vec![q.one(), q.one()] };
        let f = DecompositionFile::from_decomposition(&d);
        assert_eq!(f.sigma, vec![2, 1]);
        assert_eq!(f.to_decomposition(q).unwrap(), d);
        assert_eq!(parse_sigma("2, 1").unwrap(), vec![1, 0]);
        assert!(parse_sigma("0,1").is_err());
    }

    #[test]
    fn tder_json_round_trips_basis() {
        let q = FieldSpec::Rational;
        let a = EvolutionAlgebra::from_i64(q, &[&[1, -1], &[-1, 1]]).unwrap();
        let sol = tder_basis(&a).unwrap();
        let json = TderSolutionJson::from_solution(q, &sol);
        let text = serde_json::to_string(&json).unwrap();
        let back: TderSolutionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        let triples: Vec<_> = back.basis.iter().map(|t| t.to_triple(q).unwrap()).collect();
        assert_eq!(triples, sol.basis);
        assert_eq!(back.report.diag_classes, vec![vec![1, 2]]);
    }
}
