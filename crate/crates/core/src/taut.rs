//! Ternary automorphisms `(f1, f2, f3)` with `f1(xy) = f2(x) f3(y)`.
//!
//! On a perfect evolution algebra `f2` and `f3` are monomial over one and
//! the same permutation `sigma`, `f2(e_i) = lambda_i e_sigma(i)` and
//! `f3(e_i) = mu_i e_sigma(i)`, and `f1` is forced:
//! `f1(e_i^2) = lambda_i mu_i e_sigma(i)^2`, i.e. `f1 = M Q M^-1` with `Q`
//! the monomial matrix of `(sigma, lambda * mu)`.

use crate::error::{Error, Result};
use crate::evolalg::EvolutionAlgebra;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::rng::SeededRng;

/// `e_i -> scalars[i] e_sigma[i]`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    pub sigma: Vec<usize>,
    pub scalars: Vec<FieldElement>,
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma.iter().all(|&s| s < seen.len() && !std::mem::replace(&mut seen[s], true))
}

impl MonomialMap {
    pub fn new(sigma: Vec<usize>, scalars: Vec<FieldElement>) -> Result<Self> {
        if sigma.len() != scalars.len() {
            return Err(Error::DimensionMismatch("sigma and scalars differ in length".into()));
        }
        if !is_permutation(&sigma) {
            return Err(Error::Invalid(format!("{sigma:?} is not a permutation")));
        }
        if scalars.iter().any(FieldElement::is_zero) {
            return Err(Error::Invalid("monomial scalars must be nonzero".into()));
        }
        Ok(MonomialMap { sigma, scalars })
    }

    pub fn to_matrix(&self, spec: FieldSpec) -> Matrix {
        let mut m = Matrix::zeros(spec, self.sigma.len(), self.sigma.len());
        for (i, (&s, c)) in self.sigma.iter().zip(&self.scalars).enumerate() {
            m.set(s, i, c.clone());
        }
        m
    }

    /// Reads the monomial structure of a matrix, if it has one.
    pub fn from_matrix(m: &Matrix) -> Option<MonomialMap> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let mut sigma = Vec::with_capacity(n);
        let mut scalars = Vec::with_capacity(n);
        for i in 0..n {
            let col = m.column(i);
            let mut nonzero = col.iter().enumerate().filter(|(_, x)| !x.is_zero());
            let (row, value) = nonzero.next()?;
            if nonzero.next().is_some() {
                return None;
            }
            sigma.push(row);
            scalars.push(value.clone());
        }
        is_permutation(&sigma).then_some(MonomialMap { sigma, scalars })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautTriple {
    pub f1: Matrix,
    pub f2: Matrix,
    pub f3: Matrix,
}

impl TautTriple {
    /// Requires three invertible `n x n` matrices over one field.
    pub fn new(f1: Matrix, f2: Matrix, f3: Matrix) -> Result<Self> {
        let n = f1.rows();
        for m in [&f1, &f2, &f3] {
            if !m.is_square() || m.rows() != n {
                return Err(Error::DimensionMismatch("triple components must be n x n".into()));
            }
            if m.spec() != f1.spec() {
                return Err(Error::FieldMismatch(m.spec().to_string(), f1.spec().to_string()));
            }
            if m.determinant()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(TautTriple { f1, f2, f3 })
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let id = Matrix::identity(spec, n);
        TautTriple { f1: id.clone(), f2: id.clone(), f3: id }
    }

    pub fn dim(&self) -> usize {
        self.f1.rows()
    }
}

/// `sigma`, `lambda`, `mu` describing a ternary automorphism of a perfect
/// algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautDecomposition {
    pub sigma: Vec<usize>,
    pub lambda: Vec<FieldElement>,
    pub mu: Vec<FieldElement>,
}

pub fn make_taut(
    a: &EvolutionAlgebra,
    sigma: &[usize],
    lambda: &[FieldElement],
    mu: &[FieldElement],
) -> Result<TautTriple> {
    let n = a.dim();
    if sigma.len() != n || lambda.len() != n || mu.len() != n {
        return Err(Error::DimensionMismatch(format!("expected length-{n} sigma, lambda, mu")));
    }
    let m = a.structure();
    let m_inv = m.inverse().map_err(|_| Error::NotPerfect)?;
    let spec = a.spec();
    let f2 = MonomialMap::new(sigma.to_vec(), lambda.to_vec())?.to_matrix(spec);
    let f3 = MonomialMap::new(sigma.to_vec(), mu.to_vec())?.to_matrix(spec);
    let products = lambda.iter().zip(mu).map(|(l, u)| l * u).collect();
    let q = MonomialMap::new(sigma.to_vec(), products)?.to_matrix(spec);
    let f1 = &(m * &q) * &m_inv;
    Ok(TautTriple { f1, f2, f3 })
}

/// Seeded `make_taut` input: a uniform permutation and nonzero scalars.
pub fn sample_taut(a: &EvolutionAlgebra, rng: &mut SeededRng) -> Result<(TautDecomposition, TautTriple)> {
    use rand::seq::SliceRandom;
    let n = a.dim();
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    let lambda: Vec<_> = (0..n).map(|_| FieldElement::sample(rng, a.spec(), true)).collect();
    let mu: Vec<_> = (0..n).map(|_| FieldElement::sample(rng, a.spec(), true)).collect();
    let t = make_taut(a, &sigma, &lambda, &mu)?;
    Ok((TautDecomposition { sigma, lambda, mu }, t))
}

/// `a_ki b_kj = 0` for all `k` and all `i != j`, where `a`, `b` are the
/// matrices of `f2`, `f3`.
pub fn row_support_condition(f2: &Matrix, f3: &Matrix) -> bool {
    let n = f2.rows();
    (0..n).all(|k| {
        (0..n).all(|i| f2.get(k, i).is_zero() || (0..n).all(|j| j == i || f3.get(k, j).is_zero()))
    })
}

/// Checks invertibility and `f1(e_i e_j) = f2(e_i) f3(e_j)` on all basis pairs.
pub fn verify_taut(a: &EvolutionAlgebra, t: &TautTriple) -> Result<bool> {
    let n = a.dim();
    for m in [&t.f1, &t.f2, &t.f3] {
        if m.rows() != n || m.cols() != n || m.spec() != a.spec() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} component for a {n}-dimensional algebra",
                m.rows(),
                m.cols()
            )));
        }
        if m.determinant()?.is_zero() {
            return Ok(false);
        }
    }
    for i in 0..n {
        let ei = a.basis_vector(i);
        let f2ei = t.f2.column(i);
        for j in 0..n {
            let lhs = t.f1.mul_vec(&a.multiply(&ei, &a.basis_vector(j))?);
            let rhs = a.multiply(&f2ei, &t.f3.column(j))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn decompose_taut(a: &EvolutionAlgebra, t: &TautTriple) -> Result<TautDecomposition> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let f2 = MonomialMap::from_matrix(&t.f2).ok_or(Error::F2NotMonomial)?;
    let f3 = MonomialMap::from_matrix(&t.f3).ok_or(Error::F3NotMonomial)?;
    if f2.sigma != f3.sigma {
        return Err(Error::PermutationMismatch);
    }
    let rebuilt = make_taut(a, &f2.sigma, &f2.scalars, &f3.scalars)?;
    if rebuilt.f1 != t.f1 {
        return Err(Error::F1Mismatch);
    }
    Ok(TautDecomposition { sigma: f2.sigma, lambda: f2.scalars, mu: f3.scalars })
}

fn check_compatible(s: &TautTriple, t: &TautTriple) -> Result<()> {
    if s.dim() != t.dim() || s.f1.spec() != t.f1.spec() {
        return Err(Error::DimensionMismatch(format!("triples of size {} and {}", s.dim(), t.dim())));
    }
    Ok(())
}

/// Componentwise `s ∘ t`.
pub fn compose_taut(s: &TautTriple, t: &TautTriple) -> Result<TautTriple> {
    check_compatible(s, t)?;
    Ok(TautTriple { f1: &s.f1 * &t.f1, f2: &s.f2 * &t.f2, f3: &s.f3 * &t.f3 })
}

pub fn invert_taut(t: &TautTriple) -> Result<TautTriple> {
    Ok(TautTriple { f1: t.f1.inverse()?, f2: t.f2.inverse()?, f3: t.f3.inverse()? })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn v(spec: FieldSpec, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| spec.from_i64(x)).collect()
    }

    fn a1() -> EvolutionAlgebra {
        EvolutionAlgebra::from_i64(Q, &[&[1, 0], &[0, 1]]).unwrap()
    }

    #[test]
    fn make_taut_on_a1() {
        let t = make_taut(&a1(), &[0, 1], &v(Q, &[2, 3]), &v(Q, &[5, 7])).unwrap();
        assert_eq!(t.f2, Matrix::diagonal(Q, &v(Q, &[2, 3])));
        assert_eq!(t.f3, Matrix::diagonal(Q, &v(Q, &[5, 7])));
        assert_eq!(t.f1, Matrix::diagonal(Q, &v(Q, &[10, 21])));
        assert!(verify_taut(&a1(), &t).unwrap());
    }

    #[test]
    fn identity_scalars_give_identity_triple() {
        let a = EvolutionAlgebra::from_i64(Q, &[&[1, 2], &[3, 1]]).unwrap();
        let t = make_taut(&a, &[0, 1], &v(Q, &[1, 1]), &v(Q, &[1, 1])).unwrap();
        assert_eq!(t, TautTriple::identity(Q, 2));
    }

    #[test]
    fn make_taut_on_a2() {
        let (a_, b, c, d) = (2, 3, 5, 7);
        let a2 = EvolutionAlgebra::from_i64(Q, &[&[0, 4], &[1, 0]]).unwrap();
        let t = make_taut(&a2, &[0, 1], &v(Q, &[a_, b]), &v(Q, &[c, d])).unwrap();
        assert_eq!(t.f1, Matrix::diagonal(Q, &v(Q, &[b * d, a_ * c])));
        assert!(verify_taut(&a2, &t).unwrap());
    }

    #[test]
    fn make_taut_errors() {
        let a0 = EvolutionAlgebra::from_i64(Q, &[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(make_taut(&a0, &[0, 1], &v(Q, &[1, 1]), &v(Q, &[1, 1])), Err(Error::NotPerfect));
        assert!(matches!(make_taut(&a1(), &[0, 1], &v(Q, &[0, 1]), &v(Q, &[1, 1])), Err(Error::Invalid(_))));
        assert!(matches!(make_taut(&a1(), &[1, 1], &v(Q, &[1, 1]), &v(Q, &[1, 1])), Err(Error::Invalid(_))));
    }

    #[test]
    fn verify_rejects() {
        let id = Matrix::identity(Q, 2);
        let t = TautTriple::new(id.clone(), id.clone(), id.scale(&Q.from_i64(2))).unwrap();
        assert!(!verify_taut(&a1(), &t).unwrap());

        let f2 = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        assert!(!row_support_condition(&f2, &id));
        let t = TautTriple::new(Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]), f2, id).unwrap();
        assert!(!verify_taut(&a1(), &t).unwrap());
    }

    #[test]
    fn transposition_on_a1() {
        let t = make_taut(&a1(), &[1, 0], &v(Q, &[1, 1]), &v(Q, &[1, 1])).unwrap();
        let p = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!((t.f1.clone(), t.f2.clone(), t.f3.clone()), (p.clone(), p.clone(), p));
        let d = decompose_taut(&a1(), &t).unwrap();
        assert_eq!(d.sigma, vec![1, 0]);
    }

    #[test]
    fn decompose_errors() {
        let a = a1();
        let id = Matrix::identity(Q, 2);
        let shear = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        let swap = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        let t = TautTriple::new(id.clone(), shear.clone(), id.clone()).unwrap();
        assert_eq!(decompose_taut(&a, &t), Err(Error::F2NotMonomial));
        let t = TautTriple::new(id.clone(), id.clone(), shear).unwrap();
        assert_eq!(decompose_taut(&a, &t), Err(Error::F3NotMonomial));
        let t = TautTriple::new(id.clone(), id.clone(), swap).unwrap();
        assert_eq!(decompose_taut(&a, &t), Err(Error::PermutationMismatch));
        let t = TautTriple::new(id.scale(&Q.from_i64(3)), id.clone(), id.clone()).unwrap();
        assert_eq!(decompose_taut(&a, &t), Err(Error::F1Mismatch));
        let a0 = EvolutionAlgebra::from_i64(Q, &[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(decompose_taut(&a0, &TautTriple::identity(Q, 2)), Err(Error::NotPerfect));
    }

    #[test]
    fn group_laws() {
        let mut rng = SeededRng::new(4);
        for spec in [Q, FieldSpec::Prime(7)] {
            let a = EvolutionAlgebra::from_i64(spec, &[&[1, 2, 0], &[3, 1, 1], &[0, 1, 5]]).unwrap();
            assert!(a.is_perfect());
            for _ in 0..20 {
                let (ds, s) = sample_taut(&a, &mut rng).unwrap();
                let (dt, t) = sample_taut(&a, &mut rng).unwrap();
                let (_, u) = sample_taut(&a, &mut rng).unwrap();
                let st = compose_taut(&s, &t).unwrap();
                assert!(verify_taut(&a, &st).unwrap());
                assert_eq!(
                    compose_taut(&st, &u).unwrap(),
                    compose_taut(&s, &compose_taut(&t, &u).unwrap()).unwrap()
                );
                let inv = invert_taut(&s).unwrap();
                assert_eq!(compose_taut(&s, &inv).unwrap(), TautTriple::identity(spec, 3));
                assert!(verify_taut(&a, &inv).unwrap());

                // Monomial product rule: sigma_s ∘ sigma_t, scalars pulled through.
                let sigma: Vec<usize> = (0..3).map(|i| ds.sigma[dt.sigma[i]]).collect();
                let lambda: Vec<_> = (0..3).map(|i| &ds.lambda[dt.sigma[i]] * &dt.lambda[i]).collect();
                let mu: Vec<_> = (0..3).map(|i| &ds.mu[dt.sigma[i]] * &dt.mu[i]).collect();
                assert_eq!(st, make_taut(&a, &sigma, &lambda, &mu).unwrap());
                assert_eq!(decompose_taut(&a, &s).unwrap(), ds);
            }
        }
    }

    #[test]
    fn singular_components_rejected() {
        let id = Matrix::identity(Q, 2);
        assert_eq!(TautTriple::new(Matrix::zeros(Q, 2, 2), id.clone(), id.clone()), Err(Error::Singular));
        let t = TautTriple { f1: Matrix::zeros(Q, 2, 2), f2: id.clone(), f3: id };
        assert!(!verify_taut(&a1(), &t).unwrap());
    }
}
