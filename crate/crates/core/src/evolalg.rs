//! Evolution algebras given by a structure matrix in a natural basis.
//!
//! Column `i` of the structure matrix holds the coordinates of `e_i^2`:
//! `e_i * e_i = sum_k M[k][i] e_k`, and `e_i * e_j = 0` for `i != j`.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionAlgebra {
    structure: Matrix,
}

/// How the squares `e_i^2` depend on each other.
///
/// In the basis reordered by `perm`, the first `rank` squares are
/// independent and square `rank + i` equals `sum_k dependency[k][i]` times
/// square `k`. All indices are 0-based original basis indices unless noted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub perm: Vec<usize>,
    pub rank: usize,
    pub dependency: Matrix,
    pub zero_square: Vec<bool>,
    /// `Some((j, c))` when `e_i^2 = c e_j^2`, `e_j^2 != 0`, and `j` is the
    /// smallest pivot index with that property.
    pub proportional_to: Vec<Option<(usize, FieldElement)>>,
}

/// `Some(c)` with `c != 0` and `a = c b` when `a` and `b` are both nonzero
/// and proportional.
pub fn proportionality(a: &[FieldElement], b: &[FieldElement]) -> Option<FieldElement> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = a[k].div(&b[k]).ok()?;
    if c.is_zero() {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| *x == &c * y).then_some(c)
}

impl EvolutionAlgebra {
    pub fn new(structure: Matrix) -> Result<Self> {
        if !structure.is_square() {
            return Err(Error::NotSquare { rows: structure.rows(), cols: structure.cols() });
        }
        if structure.rows() == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        Ok(EvolutionAlgebra { structure })
    }

    pub fn from_i64(spec: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        EvolutionAlgebra::new(Matrix::from_i64(spec, rows))
    }

    pub fn spec(&self) -> FieldSpec {
        self.structure.spec()
    }

    pub fn dim(&self) -> usize {
        self.structure.rows()
    }

    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    /// Coordinates of `e_i^2`.
    pub fn square(&self, i: usize) -> Vec<FieldElement> {
        self.structure.column(i)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![self.spec().zero(); self.dim()];
        v[i] = self.spec().one();
        v
    }

    /// `x * y = sum_i x_i y_i e_i^2`.
    pub fn multiply(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in a {n}-dimensional algebra",
                x.len(),
                y.len()
            )));
        }
        let weights: Vec<FieldElement> = x.iter().zip(y).map(|(a, b)| a * b).collect();
        Ok(self.structure.mul_vec(&weights))
    }

    pub fn is_perfect(&self) -> bool {
        self.structure.rank() == self.dim()
    }

    /// Relabels the natural basis: new `e_t` is old `e_{perm[t]}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<EvolutionAlgebra> {
        if perm.len() != self.dim() {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let p = Matrix::permutation(self.spec(), perm);
        EvolutionAlgebra::new(&(&p.transpose() * &self.structure) * &p)
    }

    pub fn square_analysis(&self) -> SquareDecomposition {
        let n = self.dim();
        let rref = self.structure.rref();
        let perm = rref.pivot_first_permutation();
        let rank = rref.rank;
        let mut dependency = Matrix::zeros(self.spec(), rank, n - rank);
        for i in 0..n - rank {
            for k in 0..rank {
                dependency.set(k, i, rref.reduced.get(k, perm[rank + i]).clone());
            }
        }
        let squares: Vec<_> = (0..n).map(|i| self.square(i)).collect();
        let zero_square = squares.iter().map(|s| s.iter().all(FieldElement::is_zero)).collect();
        let proportional_to = (0..n)
            .map(|i| {
                if rref.pivot_cols.contains(&i) {
                    return None;
                }
                let mut pivots = rref.pivot_cols.clone();
                pivots.sort_unstable();
                pivots
                    .into_iter()
                    .find_map(|j| proportionality(&squares[i], &squares[j]).map(|c| (j, c)))
            })
            .collect();
        SquareDecomposition { perm, rank, dependency, zero_square, proportional_to }
    }
}

impl SquareDecomposition {
    /// Human-readable dependency lines such as `e2^2 = 3·e1^2` (1-based).
    pub fn describe(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (i, z) in self.zero_square.iter().enumerate() {
            if *z {
                lines.push(format!("e{}^2 = 0", i + 1));
            }
        }
        for i in 0..self.perm.len() - self.rank {
            let target = self.perm[self.rank + i];
            if self.zero_square[target] {
                continue;
            }
            let terms: Vec<String> = (0..self.rank)
                .filter(|&k| !self.dependency.get(k, i).is_zero())
                .map(|k| {
                    let c = self.dependency.get(k, i);
                    let base = format!("e{}^2", self.perm[k] + 1);
                    if c.is_one() {
                        base
                    } else {
                        format!("{}·{base}", c.pretty())
                    }
                })
                .collect();
            lines.push(format!("e{}^2 = {}", target + 1, terms.join(" + ")));
        }
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    const Q: FieldSpec = FieldSpec::Rational;

    fn v(xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn multiply_examples() {
        let a2 = EvolutionAlgebra::from_i64(Q, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(a2.multiply(&v(&[1, 0]), &v(&[1, 0])).unwrap(), v(&[0, 1]));
        assert_eq!(a2.multiply(&v(&[1, 0]), &v(&[0, 1])).unwrap(), v(&[0, 0]));
        let a1 = EvolutionAlgebra::from_i64(Q, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(a1.multiply(&v(&[1, 1]), &v(&[1, -1])).unwrap(), v(&[1, -1]));
        assert!(a1.multiply(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn multiply_is_commutative() {
        let mut rng = SeededRng::new(3);
        for spec in [Q, FieldSpec::Prime(7)] {
            for n in 1..=5 {
                let a = EvolutionAlgebra::new(Matrix::random(&mut rng, spec, n, n)).unwrap();
                let x: Vec<_> = (0..n).map(|_| FieldElement::sample(&mut rng, spec, false)).collect();
                let y: Vec<_> = (0..n).map(|_| FieldElement::sample(&mut rng, spec, false)).collect();
                assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&y, &x).unwrap());
            }
        }
    }

    #[test]
    fn perfectness() {
        assert!(EvolutionAlgebra::from_i64(Q, &[&[1, 0], &[0, 1]]).unwrap().is_perfect());
        assert!(!EvolutionAlgebra::from_i64(Q, &[&[0, 0], &[0, 0]]).unwrap().is_perfect());
        assert!(EvolutionAlgebra::from_i64(Q, &[&[1, 2], &[3, 1]]).unwrap().is_perfect());
    }

    #[test]
    fn rejects_empty_and_rectangular() {
        assert!(EvolutionAlgebra::new(Matrix::zeros(Q, 0, 0)).is_err());
        assert!(EvolutionAlgebra::new(Matrix::zeros(Q, 2, 3)).is_err());
        assert!(EvolutionAlgebra::new(Matrix::zeros(Q, 1, 1)).is_ok());
    }

    #[test]
    fn square_analysis_a8() {
        let alpha = 3;
        let a = EvolutionAlgebra::from_i64(Q, &[&[1, alpha], &[0, 0]]).unwrap();
        let sq = a.square_analysis();
        assert_eq!(sq.rank, 1);
        assert_eq!(sq.perm, vec![0, 1]);
        assert_eq!(sq.dependency, Matrix::from_i64(Q, &[&[alpha]]));
        assert_eq!(sq.proportional_to, vec![None, Some((0, Q.from_i64(alpha)))]);
        assert_eq!(sq.describe(), vec!["e2^2 = 3·e1^2".to_string()]);
    }

    #[test]
    fn square_analysis_a6() {
        let a = EvolutionAlgebra::from_i64(Q, &[&[0, 1], &[0, 0]]).unwrap();
        let sq = a.square_analysis();
        assert_eq!(sq.rank, 1);
        assert_eq!(sq.perm, vec![1, 0]);
        assert_eq!(sq.dependency, Matrix::from_i64(Q, &[&[0]]));
        assert_eq!(sq.zero_square, vec![true, false]);
        assert_eq!(sq.proportional_to, vec![None, None]);
    }

    #[test]
    fn square_analysis_a0() {
        let a = EvolutionAlgebra::from_i64(Q, &[&[0, 0], &[0, 0]]).unwrap();
        let sq = a.square_analysis();
        assert_eq!(sq.rank, 0);
        assert_eq!((sq.dependency.rows(), sq.dependency.cols()), (0, 2));
        assert_eq!(sq.zero_square, vec![true, true]);
    }

    #[test]
    fn reconstruction_and_perfect_iff_full_rank() {
        let mut rng = SeededRng::new(17);
        for spec in [Q, FieldSpec::Prime(5)] {
            for _ in 0..100 {
                use rand::Rng;
                let n = rng.gen_range(1..=5);
                let mut m = Matrix::random(&mut rng, spec, n, n);
                if n > 1 {
                    let c = rng.gen_range(0..n);
                    for r in 0..n {
                        let val = m.get(r, 0) * &spec.from_i64(2);
                        m.set(r, c, val);
                    }
                }
                let a = EvolutionAlgebra::new(m).unwrap();
                let sq = a.square_analysis();
                for i in 0..n - sq.rank {
                    let mut acc = vec![spec.zero(); n];
                    for k in 0..sq.rank {
                        let col = a.square(sq.perm[k]);
                        for (x, y) in acc.iter_mut().zip(col) {
                            *x = &*x + &(sq.dependency.get(k, i) * &y);
                        }
                    }
                    assert_eq!(acc, a.square(sq.perm[sq.rank + i]));
                }
                assert_eq!(a.is_perfect(), sq.rank == n);
                assert_eq!(a.is_perfect(), sq.dependency.cols() == 0);
            }
        }
    }
}
