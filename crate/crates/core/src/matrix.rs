//! Dense exact matrices.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::rng::SeededRng;

/// Row-major dense matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

/// Result of Gauss-Jordan elimination: `transform * m == reduced`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    /// Pivot columns in pivot order, then the remaining columns ascending.
    pub fn pivot_first_permutation(&self) -> Vec<usize> {
        let mut perm = self.pivot_cols.clone();
        perm.extend((0..self.reduced.cols).filter(|c| !self.pivot_cols.contains(c)));
        perm
    }
}

impl Matrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { spec, rows, cols, entries: vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn diagonal(spec: FieldSpec, diag: &[FieldElement]) -> Self {
        let mut m = Matrix::zeros(spec, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// The matrix with `[perm[t]][t] = 1`, so `m * P` has column `t` equal
    /// to column `perm[t]` of `m`.
    pub fn permutation(spec: FieldSpec, perm: &[usize]) -> Self {
        let mut m = Matrix::zeros(spec, perm.len(), perm.len());
        for (t, &p) in perm.iter().enumerate() {
            m.set(p, t, spec.one());
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if e.spec() != spec {
                    return Err(Error::FieldMismatch(e.spec().to_string(), spec.to_string()));
                }
                entries.push(e);
            }
        }
        Ok(Matrix { spec, rows: nrows, cols: ncols, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(spec: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| spec.from_i64(v)).collect()).collect();
        Matrix::from_rows(spec, rows).expect("rectangular input")
    }

    /// Parses element strings, row-major.
    pub fn from_strings(spec: FieldSpec, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| spec.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(spec, parsed)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(ToString::to_string).collect()).collect()
    }

    pub fn random(rng: &mut SeededRng, spec: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = (0..rows * cols).map(|_| FieldElement::sample(rng, spec, false)).collect();
        Matrix { spec, rows, cols, entries }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        debug_assert_eq!(v.spec(), self.spec);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        Matrix { entries: self.entries.iter().map(|e| e * s).collect(), ..self.clone() }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows || self.spec != rhs.spec {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.spec, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(self.spec.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Matrix {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
            ..self.clone()
        }
    }

    /// Entrywise product.
    pub fn hadamard(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a * b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: &FieldElement) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.entries[idx] = &self.entries[idx] * s;
        }
    }

    /// row[target] -= factor * row[source]
    fn eliminate_row(&mut self, target: usize, source: usize, factor: &FieldElement) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if !s.is_zero() {
                let idx = target * self.cols + c;
                self.entries[idx] = &self.entries[idx] - &(factor * s);
            }
        }
    }

    /// Gauss-Jordan elimination with the row operations accumulated in
    /// `transform`. The pivot is the first nonzero entry at or below the
    /// current row.
    pub fn rref(&self) -> Rref {
        let mut r = self.clone();
        let mut t = Matrix::identity(self.spec, self.rows);
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(row, p);
            t.swap_rows(row, p);
            let inv = r.get(row, col).invert().expect("pivot is nonzero");
            r.scale_row(row, &inv);
            t.scale_row(row, &inv);
            for i in 0..self.rows {
                if i != row {
                    let factor = r.get(i, col).clone();
                    if !factor.is_zero() {
                        r.eliminate_row(i, row, &factor);
                        t.eliminate_row(i, row, &factor);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Rref { reduced: r, transform: t, rank: pivot_cols.len(), pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.spec.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Ok(self.spec.zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.invert()?;
            for i in col + 1..n {
                let factor = a.get(i, col) * &inv;
                if !factor.is_zero() {
                    a.eliminate_row(i, col, &factor);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let rref = self.rref();
        if rref.rank < self.rows {
            return Err(Error::Singular);
        }
        Ok(rref.transform)
    }

    /// An invertible `G` with `M G M = M`.
    ///
    /// The columns are first permuted so the pivot columns come first; the
    /// reduced form of `M P` is then `[[I, C], [0, 0]]`, which is idempotent,
    /// so the elimination transform `T` of `M P` satisfies `(MP) T (MP) = MP`
    /// and `G = P T` works for `M`.
    pub fn generalized_inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let perm = self.rref().pivot_first_permutation();
        let p = Matrix::permutation(self.spec, &perm);
        let t = (self * &p).rref().transform;
        Ok(&p * &t)
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn right_null_space(&self) -> Vec<Vec<FieldElement>> {
        let rref = self.rref();
        let free = (0..self.cols).filter(|c| !rref.pivot_cols.contains(c));
        free.map(|f| {
            let mut v = vec![self.spec.zero(); self.cols];
            v[f] = self.spec.one();
            for (k, &pc) in rref.pivot_cols.iter().enumerate() {
                v[pc] = -rref.reduced.get(k, f);
            }
            v
        })
        .collect()
    }

    /// Basis of `{v : v M = 0}`: the rows of the elimination transform that
    /// produce the zero rows of the reduced form.
    pub fn left_null_space(&self) -> Vec<Vec<FieldElement>> {
        let rref = self.rref();
        (rref.rank..self.rows).map(|r| rref.transform.row(r).to_vec()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(FieldElement::pretty).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}
