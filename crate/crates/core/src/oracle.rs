//! Brute-force checks that bypass the structured solver.
//!
//! [`oracle_tder`] writes the defining identity of a ternary derivation as
//! one linear system in the `3 n^2` unknown entries and takes its null
//! space. [`enumerate_taut_pairs`] scans every invertible `(f2, f3)` over a
//! tiny prime field. Neither touches the `tder` or `taut` solvers; only the
//! algebra product and Gauss-Jordan elimination are used.
//!
//! Unknown ordering: `vec(d1) ‖ vec(d2) ‖ vec(d3)`, column-major, so entry
//! `d_l[k][i]` (0-based `l`) sits at `l n^2 + i n + k`. Equation ordering:
//! the equation for basis pair `(i, j)` and output coordinate `k` is row
//! `(i n + j) n + k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolalg::EvolutionAlgebra;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::tder::{tder_basis, TernaryTriple};

pub const DEFAULT_ORACLE_BOUND: usize = 6;

/// Largest `p^(2 n^2)` [`enumerate_taut_pairs`] accepts.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

pub fn unknown_index(n: usize, component: usize, row: usize, col: usize) -> usize {
    component * n * n + col * n + row
}

/// The `n^3 x 3n^2` coefficient matrix of
/// `d1(e_i e_j) - d2(e_i) e_j - e_i d3(e_j) = 0`.
pub fn tder_system(a: &EvolutionAlgebra) -> Matrix {
    let n = a.dim();
    let spec = a.spec();
    let m = a.structure();
    let mut sys = Matrix::zeros(spec, n * n * n, 3 * n * n);
    let mut add = |row: usize, col: usize, v: FieldElement| {
        let cur = sys.get(row, col) + &v;
        sys.set(row, col, cur);
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let eq = (i * n + j) * n + k;
                if i == j {
                    // coordinate k of d1(e_i^2) = sum_m d1[k][m] M[m][i]
                    for mm in 0..n {
                        add(eq, unknown_index(n, 0, k, mm), m.get(mm, i).clone());
                    }
                }
                // d2(e_i) e_j = d2[j][i] e_j^2
                add(eq, unknown_index(n, 1, j, i), -m.get(k, j));
                // e_i d3(e_j) = d3[i][j] e_i^2
                add(eq, unknown_index(n, 2, i, j), -m.get(k, i));
            }
        }
    }
    sys
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTder {
    pub dimension: usize,
    pub basis: Vec<TernaryTriple>,
}

pub fn oracle_tder(a: &EvolutionAlgebra) -> Result<OracleTder> {
    oracle_tder_bounded(a, DEFAULT_ORACLE_BOUND)
}

pub fn oracle_tder_bounded(a: &EvolutionAlgebra, bound: usize) -> Result<OracleTder> {
    let n = a.dim();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let basis = tder_system(a)
        .right_null_space()
        .iter()
        .map(|v| TernaryTriple::from_vector(a.spec(), n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleTder { dimension: basis.len(), basis })
}

/// The system applied to the triple; all zero iff the triple is a ternary
/// derivation.
pub fn residual(a: &EvolutionAlgebra, t: &TernaryTriple) -> Result<Vec<FieldElement>> {
    if t.dim() != a.dim() || t.spec() != a.spec() {
        return Err(Error::DimensionMismatch("triple does not match algebra".into()));
    }
    Ok(tder_system(a).mul_vec(&t.to_vector()))
}

/// First nonzero residual of a structured basis triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualFailure {
    pub basis_index: usize,
    pub equation: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformanceReport {
    pub structured_dimension: usize,
    pub oracle_dimension: usize,
    pub dimensions_equal: bool,
    pub structured_in_oracle_space: bool,
    pub oracle_satisfies_structured_constraints: bool,
    pub formula_matches: bool,
    pub first_failing_residual: Option<ResidualFailure>,
    pub pass: bool,
}

/// Runs both solvers and cross-checks them.
pub fn compare_tder(a: &EvolutionAlgebra) -> Result<ConformanceReport> {
    let structured = tder_basis(a)?;
    let oracle = oracle_tder(a)?;
    Ok(compare_bases(a, &structured.basis, &oracle, |t| structured.satisfies_constraints(a, t), structured.formula_dimension()))
}

/// Cross-checks an arbitrary list of candidate triples against the oracle;
/// exposed so corrupted bases can be fed in as negative controls.
pub fn compare_bases(
    a: &EvolutionAlgebra,
    candidate: &[TernaryTriple],
    oracle: &OracleTder,
    constraints: impl Fn(&TernaryTriple) -> bool,
    formula_dimension: usize,
) -> ConformanceReport {
    let sys = tder_system(a);
    let mut first_failing_residual = None;
    for (idx, t) in candidate.iter().enumerate() {
        let r = sys.mul_vec(&t.to_vector());
        if let Some(eq) = r.iter().position(|x| !x.is_zero()) {
            first_failing_residual = Some(ResidualFailure { basis_index: idx, equation: eq, value: r[eq].to_string() });
            break;
        }
    }
    let structured_in_oracle_space = first_failing_residual.is_none();
    let oracle_satisfies_structured_constraints = oracle.basis.iter().all(&constraints);
    let dimensions_equal = candidate.len() == oracle.dimension;
    let formula_matches = formula_dimension == oracle.dimension;
    ConformanceReport {
        structured_dimension: candidate.len(),
        oracle_dimension: oracle.dimension,
        dimensions_equal,
        structured_in_oracle_space,
        oracle_satisfies_structured_constraints,
        formula_matches,
        first_failing_residual,
        pass: dimensions_equal && structured_in_oracle_space && oracle_satisfies_structured_constraints && formula_matches,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautEnumeration {
    pub count: usize,
    pub pairs: Vec<(Matrix, Matrix)>,
}

/// Every matrix over `F_p` of size `n x n`, in lexicographic order of the
/// row-major residues.
fn all_matrices(p: u64, n: usize) -> impl Iterator<Item = Matrix> {
    let spec = FieldSpec::Prime(p);
    let total = (p as u128).pow((n * n) as u32) as u64;
    (0..total).map(move |mut code| {
        let mut m = Matrix::zeros(spec, n, n);
        for idx in (0..n * n).rev() {
            m.set(idx / n, idx % n, spec.from_i64((code % p) as i64));
            code /= p;
        }
        m
    })
}

/// All invertible `(f2, f3)` over `F_p` that extend to a ternary
/// automorphism of the perfect algebra `a`.
///
/// For `i != j`, `f2(e_i) f3(e_j)` must vanish since `e_i e_j = 0`. The
/// diagonal products then fix `f1` on the basis of squares,
/// `f1 M = H` with `H_i = f2(e_i) f3(e_i)`, and `f1 = H M^-1` must be
/// invertible.
pub fn enumerate_taut_pairs(a: &EvolutionAlgebra) -> Result<TautEnumeration> {
    let FieldSpec::Prime(p) = a.spec() else {
        return Err(Error::Invalid("enumeration needs a prime field".into()));
    };
    let n = a.dim();
    let size = (p as u128).checked_pow((2 * n * n) as u32).unwrap_or(u128::MAX);
    if n > 3 || size > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { size, limit: ENUMERATION_LIMIT });
    }
    let m_inv = a.structure().inverse().map_err(|_| Error::NotPerfect)?;
    let invertible: Vec<Matrix> =
        all_matrices(p, n).filter(|m| !m.determinant().expect("square").is_zero()).collect();
    let columns: Vec<Vec<Vec<FieldElement>>> =
        invertible.iter().map(|m| (0..n).map(|c| m.column(c)).collect()).collect();

    let mut pairs = Vec::new();
    for (x, f2) in columns.iter().enumerate() {
        'candidates: for (y, f3) in columns.iter().enumerate() {
            let mut h = Matrix::zeros(a.spec(), n, n);
            for i in 0..n {
                for j in 0..n {
                    let prod = a.multiply(&f2[i], &f3[j])?;
                    if i == j {
                        for (k, v) in prod.into_iter().enumerate() {
                            h.set(k, i, v);
                        }
                    } else if prod.iter().any(|v| !v.is_zero()) {
                        continue 'candidates;
                    }
                }
            }
            let f1 = &h * &m_inv;
            if !f1.determinant()?.is_zero() {
                pairs.push((invertible[x].clone(), invertible[y].clone()));
            }
        }
    }
    Ok(TautEnumeration { count: pairs.len(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tder::verify_tder;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn oracle_dimensions() {
        let cases: [(&[&[i64]], usize); 3] = [
            (&[&[1, 0], &[0, 1]], 4),
            (&[&[0, 0], &[0, 0]], 12),
            (&[&[0, 1], &[0, 0]], 8),
        ];
        for (rows, dim) in cases {
            let a = EvolutionAlgebra::from_i64(Q, rows).unwrap();
            let o = oracle_tder(&a).unwrap();
            assert_eq!(o.dimension, dim);
            for t in &o.basis {
                assert!(verify_tder(&a, t).unwrap());
                assert!(residual(&a, t).unwrap().iter().all(FieldElement::is_zero));
            }
        }
    }

    #[test]
    fn oracle_bound() {
        let a = EvolutionAlgebra::new(Matrix::identity(Q, 7)).unwrap();
        assert_eq!(oracle_tder(&a), Err(Error::BoundExceeded { n: 7, bound: 6 }));
    }

    #[test]
    fn residual_detects_non_derivations() {
        let a = EvolutionAlgebra::from_i64(Q, &[&[1, 0], &[0, 1]]).unwrap();
        let mut t = TernaryTriple::zero(Q, 2);
        assert!(residual(&a, &t).unwrap().iter().all(FieldElement::is_zero));
        t.d2.set(0, 1, Q.one());
        assert!(residual(&a, &t).unwrap().iter().any(|x| !x.is_zero()));
        assert!(!verify_tder(&a, &t).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let f3 = FieldSpec::Prime(3);
        let a1 = EvolutionAlgebra::from_i64(f3, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(enumerate_taut_pairs(&a1).unwrap().count, 32);

        let f2 = FieldSpec::Prime(2);
        let a1 = EvolutionAlgebra::from_i64(f2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(enumerate_taut_pairs(&a1).unwrap().count, 2);

        let one = EvolutionAlgebra::from_i64(f3, &[&[2]]).unwrap();
        assert_eq!(enumerate_taut_pairs(&one).unwrap().count, 4);
    }

    #[test]
    fn enumeration_guards() {
        let f3 = FieldSpec::Prime(3);
        let big = EvolutionAlgebra::new(Matrix::identity(f3, 3)).unwrap();
        assert!(matches!(enumerate_taut_pairs(&big), Err(Error::EnumerationTooLarge { .. })));
        let a0 = EvolutionAlgebra::new(Matrix::zeros(f3, 2, 2)).unwrap();
        assert_eq!(enumerate_taut_pairs(&a0), Err(Error::NotPerfect));
        let q = EvolutionAlgebra::new(Matrix::identity(Q, 2)).unwrap();
        assert!(matches!(enumerate_taut_pairs(&q), Err(Error::Invalid(_))));
    }
}
