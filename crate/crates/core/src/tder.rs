//! Ternary derivations: triples `(d1, d2, d3)` with
//! `d1(xy) = d2(x) y + x d3(y)`.
//!
//! The solver splits the defining identity into its off-diagonal part, a
//! homogeneous 2-unknown system per pair of basis vectors that only touches
//! `d2` and `d3`, and the matrix equation `d1 M = M diag(d2 + d3)`. The
//! latter is solvable exactly when the diagonal sums `lambda_k` agree along
//! every nonzero dependency coefficient between squares, and its solutions
//! are `M diag(lambda) G + A` with `G` a generalised inverse of `M` and
//! `A M = 0`.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolalg::{proportionality, EvolutionAlgebra, SquareDecomposition};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

/// Three linear maps, as matrices whose column `i` is the image of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTriple {
    pub d1: Matrix,
    pub d2: Matrix,
    pub d3: Matrix,
}

impl TernaryTriple {
    pub fn new(d1: Matrix, d2: Matrix, d3: Matrix) -> Result<Self> {
        let n = d1.rows();
        let spec = d1.spec();
        for m in [&d1, &d2, &d3] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch("triple components must be n x n".into()));
            }
            if m.spec() != spec {
                return Err(Error::FieldMismatch(m.spec().to_string(), spec.to_string()));
            }
        }
        Ok(TernaryTriple { d1, d2, d3 })
    }

    pub fn zero(spec: FieldSpec, n: usize) -> Self {
        let z = Matrix::zeros(spec, n, n);
        TernaryTriple { d1: z.clone(), d2: z.clone(), d3: z }
    }

    pub fn dim(&self) -> usize {
        self.d1.rows()
    }

    pub fn spec(&self) -> FieldSpec {
        self.d1.spec()
    }

    pub fn component(&self, c: Component) -> &Matrix {
        match c {
            Component::D1 => &self.d1,
            Component::D2 => &self.d2,
            Component::D3 => &self.d3,
        }
    }

    pub fn component_mut(&mut self, c: Component) -> &mut Matrix {
        match c {
            Component::D1 => &mut self.d1,
            Component::D2 => &mut self.d2,
            Component::D3 => &mut self.d3,
        }
    }

    pub fn get(&self, e: Entry) -> &FieldElement {
        self.component(e.component).get(e.row, e.col)
    }

    /// `d2[k][k] + d3[k][k]` for every `k`.
    pub fn diagonal_sums(&self) -> Vec<FieldElement> {
        (0..self.dim()).map(|k| self.d2.get(k, k) + self.d3.get(k, k)).collect()
    }

    /// Componentwise commutator `([s1,t1], [s2,t2], [s3,t3])`.
    pub fn bracket(&self, other: &TernaryTriple) -> TernaryTriple {
        let comm = |a: &Matrix, b: &Matrix| &(a * b) - &(b * a);
        TernaryTriple {
            d1: comm(&self.d1, &other.d1),
            d2: comm(&self.d2, &other.d2),
            d3: comm(&self.d3, &other.d3),
        }
    }

    pub fn add(&self, other: &TernaryTriple) -> TernaryTriple {
        TernaryTriple { d1: &self.d1 + &other.d1, d2: &self.d2 + &other.d2, d3: &self.d3 + &other.d3 }
    }

    pub fn scale(&self, s: &FieldElement) -> TernaryTriple {
        TernaryTriple { d1: self.d1.scale(s), d2: self.d2.scale(s), d3: self.d3.scale(s) }
    }

    /// `vec(d1) ‖ vec(d2) ‖ vec(d3)`, each column-major.
    pub fn to_vector(&self) -> Vec<FieldElement> {
        let n = self.dim();
        let mut out = Vec::with_capacity(3 * n * n);
        for m in [&self.d1, &self.d2, &self.d3] {
            for c in 0..n {
                out.extend(m.column(c));
            }
        }
        out
    }

    pub fn from_vector(spec: FieldSpec, n: usize, v: &[FieldElement]) -> Result<Self> {
        if v.len() != 3 * n * n {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates", 3 * n * n)));
        }
        let mut t = TernaryTriple::zero(spec, n);
        for (idx, x) in v.iter().enumerate() {
            let (comp, rest) = (idx / (n * n), idx % (n * n));
            let m = t.component_mut(Component::ALL[comp]);
            m.set(rest % n, rest / n, x.clone());
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Component {
    D1,
    D2,
    D3,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::D1, Component::D2, Component::D3];

    pub fn label(self) -> &'static str {
        match self {
            Component::D1 => "d1",
            Component::D2 => "d2",
            Component::D3 => "d3",
        }
    }
}

/// One matrix entry of a triple, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub component: Component,
    pub row: usize,
    pub col: usize,
}

impl Entry {
    pub fn new(component: Component, row: usize, col: usize) -> Self {
        Entry { component, row, col }
    }
}

impl fmt::Display for Entry {
    /// 1-based, as in `d2[1][2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}][{}]", self.component.label(), self.row + 1, self.col + 1)
    }
}

/// `d1(e_i e_j) = d2(e_i) e_j + e_i d3(e_j)` for all basis pairs.
pub fn verify_tder(a: &EvolutionAlgebra, t: &TernaryTriple) -> Result<bool> {
    let n = a.dim();
    if t.dim() != n || t.spec() != a.spec() {
        return Err(Error::DimensionMismatch(format!(
            "triple of size {} for a {n}-dimensional algebra",
            t.dim()
        )));
    }
    for i in 0..n {
        let ei = a.basis_vector(i);
        let d2ei = t.d2.column(i);
        for j in 0..n {
            let ej = a.basis_vector(j);
            let lhs = t.d1.mul_vec(&a.multiply(&ei, &ej)?);
            let r1 = a.multiply(&d2ei, &ej)?;
            let r2 = a.multiply(&ei, &t.d3.column(j))?;
            if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (x, y))| *l != x + y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// How the squares of a pair of basis vectors relate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairCase {
    /// `e_i^2 = c e_j^2` with both nonzero.
    Proportional(FieldElement),
    /// Exactly one of the squares is zero; the field names which index.
    ZeroNonzero { zero: usize },
    BothZero,
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    Free,
    Zero,
    /// `entry = coefficient * to`, where `to` is a free entry.
    Linked { to: Entry, coefficient: FieldElement },
}

/// Solution set of the off-diagonal equations for the unordered pair
/// `{i, j}`, `i < j`: `M_i d2[i][j] + M_j d3[j][i] = 0` and its twin
/// `M_j d2[j][i] + M_i d3[i][j] = 0`, where `M_k` is column `k` of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffDiagConstraint {
    pub i: usize,
    pub j: usize,
    pub case: PairCase,
    /// Statuses of `d2[i][j]`, `d2[j][i]`, `d3[i][j]`, `d3[j][i]`, in that order.
    pub consequences: Vec<(Entry, EntryStatus)>,
}

impl OffDiagConstraint {
    pub fn free_entries(&self) -> impl Iterator<Item = Entry> + '_ {
        self.consequences.iter().filter(|(_, s)| *s == EntryStatus::Free).map(|(e, _)| *e)
    }

    /// Entries linked to `free`, with their coefficients.
    pub fn linked_to(&self, free: Entry) -> impl Iterator<Item = (Entry, &FieldElement)> + '_ {
        self.consequences.iter().filter_map(move |(e, s)| match s {
            EntryStatus::Linked { to, coefficient } if *to == free => Some((*e, coefficient)),
            _ => None,
        })
    }

    /// Checks a triple against this constraint.
    pub fn holds_for(&self, t: &TernaryTriple) -> bool {
        self.consequences.iter().all(|(e, s)| match s {
            EntryStatus::Free => true,
            EntryStatus::Zero => t.get(*e).is_zero(),
            EntryStatus::Linked { to, coefficient } => *t.get(*e) == coefficient * t.get(*to),
        })
    }
}

pub fn offdiag_constraints(a: &EvolutionAlgebra) -> Vec<OffDiagConstraint> {
    let n = a.dim();
    let squares: Vec<_> = (0..n).map(|i| a.square(i)).collect();
    let is_zero: Vec<bool> = squares.iter().map(|s| s.iter().all(FieldElement::is_zero)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d2ij = Entry::new(Component::D2, i, j);
            let d2ji = Entry::new(Component::D2, j, i);
            let d3ij = Entry::new(Component::D3, i, j);
            let d3ji = Entry::new(Component::D3, j, i);
            use EntryStatus::*;
            let (case, statuses) = match (is_zero[i], is_zero[j]) {
                (true, true) => (PairCase::BothZero, [Free, Free, Free, Free]),
                (true, false) => (PairCase::ZeroNonzero { zero: i }, [Free, Zero, Free, Zero]),
                (false, true) => (PairCase::ZeroNonzero { zero: j }, [Zero, Free, Zero, Free]),
                (false, false) => match proportionality(&squares[i], &squares[j]) {
                    // M_i = c M_j turns the pair into c d2[i][j] + d3[j][i] = 0
                    // and d2[j][i] + c d3[i][j] = 0.
                    Some(c) => {
                        let inv = c.invert().expect("proportionality constant is nonzero");
                        let statuses = [
                            Free,
                            Free,
                            Linked { to: d2ji, coefficient: -inv },
                            Linked { to: d2ij, coefficient: -&c },
                        ];
                        (PairCase::Proportional(c), statuses)
                    }
                    None => (PairCase::Independent, [Zero, Zero, Zero, Zero]),
                },
            };
            let consequences = [d2ij, d2ji, d3ij, d3ji].into_iter().zip(statuses).collect();
            out.push(OffDiagConstraint { i, j, case, consequences });
        }
    }
    out
}

/// Classes of basis indices whose diagonal sums `lambda_k` must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagClassPartition {
    /// Classes sorted internally and by smallest member.
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl DiagClassPartition {
    pub fn from_unions(n: usize, unions: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::<usize>::new(n);
        for (a, b) in unions {
            uf.union(a, b);
        }
        let labels = uf.into_labeling();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        for k in 0..n {
            match (0..k).find(|&m| labels[m] == labels[k]) {
                Some(m) => {
                    class_of[k] = class_of[m];
                    classes[class_of[m]].push(k);
                }
                None => {
                    class_of[k] = classes.len();
                    classes.push(vec![k]);
                }
            }
        }
        DiagClassPartition { classes, class_of }
    }

    pub fn class_of(&self, k: usize) -> usize {
        self.class_of[k]
    }

    /// Number of successful unions: `n - #classes`.
    pub fn merges(&self) -> usize {
        self.class_of.len() - self.classes.len()
    }

    pub fn respects(&self, lambda: &[FieldElement]) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&k| lambda[k] == lambda[c[0]]))
    }
}

/// Merges `perm[j]` with `perm[rank + i]` whenever `dependency[j][i] != 0`.
pub fn diag_constraints(a: &EvolutionAlgebra, sq: &SquareDecomposition) -> DiagClassPartition {
    let mut unions = Vec::new();
    for i in 0..a.dim() - sq.rank {
        for j in 0..sq.rank {
            if !sq.dependency.get(j, i).is_zero() {
                unions.push((sq.perm[j], sq.perm[sq.rank + i]));
            }
        }
    }
    DiagClassPartition::from_unions(a.dim(), unions)
}

/// General solution of `d1 M = M diag(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D1Solution {
    pub particular: Matrix,
    pub homogeneous_basis: Vec<Matrix>,
}

/// Particular solution `M diag(lambda) G` plus the matrices `A` with
/// `A M = 0`, one per (row, left-null vector) pair.
pub fn solve_d1(a: &EvolutionAlgebra, lambda: &[FieldElement]) -> Result<D1Solution> {
    let n = a.dim();
    if lambda.len() != n {
        return Err(Error::DimensionMismatch(format!("{} diagonal sums for dimension {n}", lambda.len())));
    }
    let m = a.structure();
    let g = m.generalized_inverse()?;
    let m_lambda = m * &Matrix::diagonal(a.spec(), lambda);
    let particular = &m_lambda * &g;
    if &particular * m != m_lambda {
        return Err(Error::Infeasible(format!(
            "lambda = ({}) is not constant on the dependency classes",
            lambda.iter().map(FieldElement::pretty).collect::<Vec<_>>().join(", ")
        )));
    }
    let left_null = m.left_null_space();
    let mut homogeneous_basis = Vec::with_capacity(n * left_null.len());
    for row in 0..n {
        for v in &left_null {
            let mut h = Matrix::zeros(a.spec(), n, n);
            for (c, x) in v.iter().enumerate() {
                h.set(row, c, x.clone());
            }
            homogeneous_basis.push(h);
        }
    }
    Ok(D1Solution { particular, homogeneous_basis })
}

/// `(M diag(diag2 + diag3) M^-1, diag(diag2), diag(diag3))` on a perfect algebra.
pub fn tder_perfect_triple(
    a: &EvolutionAlgebra,
    diag2: &[FieldElement],
    diag3: &[FieldElement],
) -> Result<TernaryTriple> {
    let n = a.dim();
    if diag2.len() != n || diag3.len() != n {
        return Err(Error::DimensionMismatch("diagonal length".into()));
    }
    let m = a.structure();
    let inv = m.inverse().map_err(|_| Error::NotPerfect)?;
    let lambda: Vec<_> = diag2.iter().zip(diag3).map(|(x, y)| x + y).collect();
    let d1 = &(m * &Matrix::diagonal(a.spec(), &lambda)) * &inv;
    TernaryTriple::new(d1, Matrix::diagonal(a.spec(), diag2), Matrix::diagonal(a.spec(), diag3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TderReport {
    pub offdiag: Vec<OffDiagConstraint>,
    pub squares: SquareDecomposition,
    pub diag_classes: DiagClassPartition,
    pub d1_homogeneous_dim: usize,
    pub perfect: bool,
}

/// What a basis triple of [`TderSolution`] stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    OffDiagonal(Entry),
    /// `d2` (or `d3`) diagonal set to the indicator of a class.
    ClassDiagonal { component: Component, class: usize },
    /// `d2[k][k] = 1`, `d3[k][k] = -1`: zero diagonal sum.
    Balanced(usize),
    HomogeneousD1 { row: usize, null_vector: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TderSolution {
    pub dimension: usize,
    pub basis: Vec<TernaryTriple>,
    pub generators: Vec<Generator>,
    pub report: TderReport,
}

impl TderSolution {
    /// Free off-diagonal parameters summed over all pairs.
    pub fn free_offdiag(&self) -> usize {
        self.report.offdiag.iter().map(|c| c.free_entries().count()).sum()
    }

    /// `2n - merges + free off-diagonal parameters + n (n - r)`.
    pub fn formula_dimension(&self) -> usize {
        let n = self.report.squares.perm.len();
        2 * n - self.report.diag_classes.merges()
            + self.free_offdiag()
            + n * (n - self.report.squares.rank)
    }

    /// Checks every structured constraint except membership in the full
    /// solution space: off-diagonal statuses, the diagonal-class condition,
    /// and `(d1 - M diag(lambda) G) M = 0`.
    pub fn satisfies_constraints(&self, a: &EvolutionAlgebra, t: &TernaryTriple) -> bool {
        if !self.report.offdiag.iter().all(|c| c.holds_for(t)) {
            return false;
        }
        if self.report.perfect && !(t.d2.is_diagonal() && t.d3.is_diagonal()) {
            return false;
        }
        let lambda = t.diagonal_sums();
        if !self.report.diag_classes.respects(&lambda) {
            return false;
        }
        match solve_d1(a, &lambda) {
            Ok(sol) => (&(&t.d1 - &sol.particular) * a.structure()).is_zero(),
            Err(_) => false,
        }
    }

    /// Plain-text parametrization, one constraint per line, 1-based indices.
    pub fn render_parametrization(&self) -> String {
        let mut lines = Vec::new();
        for c in &self.report.offdiag {
            for (e, s) in &c.consequences {
                lines.push(match s {
                    EntryStatus::Free => format!("{e} free"),
                    EntryStatus::Zero => format!("{e} = 0"),
                    EntryStatus::Linked { to, coefficient } => {
                        if coefficient.is_one() {
                            format!("{e} = {to}")
                        } else if (-coefficient).is_one() {
                            format!("{e} = -{to}")
                        } else {
                            format!("{e} = {}·{to}", coefficient.pretty())
                        }
                    }
                });
            }
        }
        for class in self.report.diag_classes.classes.iter().filter(|c| c.len() > 1) {
            let names: Vec<String> = class.iter().map(|k| format!("λ{}", k + 1)).collect();
            lines.push(names.join(" = "));
        }
        lines.push("λk = d2[k][k] + d3[k][k]; diagonals of d2, d3 otherwise free".into());
        if self.report.perfect {
            lines.push("d1 = M·diag(λ)·M^-1".into());
        } else {
            lines.push(format!(
                "d1 = M·diag(λ)·G + A with A·M = 0 ({} free parameters)",
                self.report.d1_homogeneous_dim
            ));
        }
        lines.join("\n")
    }
}

/// Basis and parametrization of the Lie algebra of ternary derivations.
///
/// Generators, in order: one per free off-diagonal entry (pairs in
/// lexicographic order); per diagonal class, the `d2`-indicator, the
/// `d3`-indicator and one balanced generator per non-minimal member; then
/// the homogeneous `d1` matrices.
pub fn tder_basis(a: &EvolutionAlgebra) -> Result<TderSolution> {
    let n = a.dim();
    let spec = a.spec();
    let squares = a.square_analysis();
    let perfect = squares.rank == n;
    let offdiag = offdiag_constraints(a);
    let diag_classes = diag_constraints(a, &squares);

    let mut basis = Vec::new();
    let mut generators = Vec::new();

    for c in &offdiag {
        for free in c.free_entries() {
            let mut t = TernaryTriple::zero(spec, n);
            t.component_mut(free.component).set(free.row, free.col, spec.one());
            for (linked, coef) in c.linked_to(free) {
                t.component_mut(linked.component).set(linked.row, linked.col, coef.clone());
            }
            basis.push(t);
            generators.push(Generator::OffDiagonal(free));
        }
    }

    let mut homogeneous_dim = 0;
    for (ci, class) in diag_classes.classes.iter().enumerate() {
        let mut lambda = vec![spec.zero(); n];
        for &k in class {
            lambda[k] = spec.one();
        }
        let d1 = solve_d1(a, &lambda)?.particular;
        for component in [Component::D2, Component::D3] {
            let mut t = TernaryTriple::zero(spec, n);
            t.d1 = d1.clone();
            for &k in class {
                t.component_mut(component).set(k, k, spec.one());
            }
            basis.push(t);
            generators.push(Generator::ClassDiagonal { component, class: ci });
        }
        for &k in &class[1..] {
            let mut t = TernaryTriple::zero(spec, n);
            t.d2.set(k, k, spec.one());
            t.d3.set(k, k, -spec.one());
            basis.push(t);
            generators.push(Generator::Balanced(k));
        }
    }

    let homogeneous = solve_d1(a, &vec![spec.zero(); n])?.homogeneous_basis;
    let per_row = n - squares.rank;
    for (idx, h) in homogeneous.into_iter().enumerate() {
        let mut t = TernaryTriple::zero(spec, n);
        t.d1 = h;
        basis.push(t);
        generators.push(Generator::HomogeneousD1 { row: idx / per_row, null_vector: idx % per_row });
        homogeneous_dim += 1;
    }

    Ok(TderSolution {
        dimension: basis.len(),
        basis,
        generators,
        report: TderReport { offdiag, squares, diag_classes, d1_homogeneous_dim: homogeneous_dim, perfect },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    const Q: FieldSpec = FieldSpec::Rational;

    fn alg(rows: &[&[i64]]) -> EvolutionAlgebra {
        EvolutionAlgebra::from_i64(Q, rows).unwrap()
    }

    fn diag(xs: &[i64]) -> Matrix {
        Matrix::diagonal(Q, &xs.iter().map(|&x| Q.from_i64(x)).collect::<Vec<_>>())
    }

    fn status(c: &[OffDiagConstraint], e: Entry) -> EntryStatus {
        c.iter().flat_map(|c| &c.consequences).find(|(x, _)| *x == e).unwrap().1.clone()
    }

    fn e2(r: usize, c: usize) -> Entry {
        Entry::new(Component::D2, r, c)
    }

    fn e3(r: usize, c: usize) -> Entry {
        Entry::new(Component::D3, r, c)
    }

    #[test]
    fn verify_examples() {
        let a = alg(&[&[1, 2], &[3, 0]]);
        let id = Matrix::identity(Q, 2);
        let t = TernaryTriple::new(id.scale(&Q.from_i64(2)), id.clone(), id.clone()).unwrap();
        assert!(verify_tder(&a, &t).unwrap());
        assert!(verify_tder(&a, &TernaryTriple::zero(Q, 2)).unwrap());

        let a1 = alg(&[&[1, 0], &[0, 1]]);
        let good = TernaryTriple::new(diag(&[2, 0]), diag(&[1, 0]), diag(&[1, 0])).unwrap();
        assert!(verify_tder(&a1, &good).unwrap());
        let bad = TernaryTriple::new(diag(&[1, 0]), diag(&[1, 0]), diag(&[1, 0])).unwrap();
        assert!(!verify_tder(&a1, &bad).unwrap());

        assert!(verify_tder(&a1, &TernaryTriple::zero(Q, 3)).is_err());
    }

    #[test]
    fn offdiag_perfect_all_zero() {
        let c = offdiag_constraints(&alg(&[&[1, 0], &[0, 1]]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].case, PairCase::Independent);
        assert!(c[0].consequences.iter().all(|(_, s)| *s == EntryStatus::Zero));
    }

    #[test]
    fn offdiag_a5_links() {
        let c = offdiag_constraints(&alg(&[&[1, -1], &[-1, 1]]));
        assert_eq!(c[0].case, PairCase::Proportional(Q.from_i64(-1)));
        assert_eq!(status(&c, e3(0, 1)), EntryStatus::Linked { to: e2(1, 0), coefficient: Q.one() });
        assert_eq!(status(&c, e3(1, 0)), EntryStatus::Linked { to: e2(0, 1), coefficient: Q.one() });
        assert_eq!(c[0].free_entries().count(), 2);
    }

    #[test]
    fn offdiag_a8_links_follow_the_pair_system() {
        // e2^2 = 3 e1^2: d3[1][2] = -3 d2[2][1], d3[2][1] = -1/3 d2[1][2].
        let c = offdiag_constraints(&alg(&[&[1, 3], &[0, 0]]));
        assert_eq!(
            status(&c, e3(0, 1)),
            EntryStatus::Linked { to: e2(1, 0), coefficient: Q.from_i64(-3) }
        );
        assert_eq!(
            status(&c, e3(1, 0)),
            EntryStatus::Linked { to: e2(0, 1), coefficient: Q.ratio(-1, 3).unwrap() }
        );
    }

    #[test]
    fn offdiag_a6_upper_triangular() {
        let c = offdiag_constraints(&alg(&[&[0, 1], &[0, 0]]));
        assert_eq!(c[0].case, PairCase::ZeroNonzero { zero: 0 });
        assert_eq!(status(&c, e2(0, 1)), EntryStatus::Free);
        assert_eq!(status(&c, e3(0, 1)), EntryStatus::Free);
        assert_eq!(status(&c, e2(1, 0)), EntryStatus::Zero);
        assert_eq!(status(&c, e3(1, 0)), EntryStatus::Zero);
    }

    #[test]
    fn diag_classes_examples() {
        let a5 = alg(&[&[1, -1], &[-1, 1]]);
        let p = diag_constraints(&a5, &a5.square_analysis());
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!(p.merges(), 1);

        let a6 = alg(&[&[0, 1], &[0, 0]]);
        let p = diag_constraints(&a6, &a6.square_analysis());
        assert_eq!(p.classes, vec![vec![0], vec![1]]);

        let a3 = alg(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 5]]);
        let p = diag_constraints(&a3, &a3.square_analysis());
        assert_eq!(p.merges(), 0);
        assert_eq!(p.classes.len(), 3);
    }

    #[test]
    fn solve_d1_examples() {
        let a2 = alg(&[&[0, 2], &[1, 0]]);
        let lambda = [Q.from_i64(4), Q.from_i64(9)];
        let sol = solve_d1(&a2, &lambda).unwrap();
        assert!(sol.homogeneous_basis.is_empty());
        let m = a2.structure();
        let expected = &(m * &Matrix::diagonal(Q, &lambda)) * &m.inverse().unwrap();
        assert_eq!(sol.particular, expected);

        let a6 = alg(&[&[0, 1], &[0, 0]]);
        let (l1, mu) = (Q.from_i64(5), Q.from_i64(7));
        let sol = solve_d1(&a6, &[l1, mu.clone()]).unwrap();
        assert_eq!(*sol.particular.get(0, 0), mu);
        assert!(sol.particular.get(1, 0).is_zero());
        assert_eq!(sol.homogeneous_basis.len(), 2);
        for h in &sol.homogeneous_basis {
            assert!((h * a6.structure()).is_zero());
            // Only x12, x22 may be nonzero.
            assert!(h.get(0, 0).is_zero() && h.get(1, 0).is_zero());
        }

        let a8 = alg(&[&[1, 2], &[0, 0]]);
        assert!(matches!(solve_d1(&a8, &[Q.from_i64(1), Q.from_i64(2)]), Err(Error::Infeasible(_))));
        assert!(solve_d1(&a8, &[Q.from_i64(3), Q.from_i64(3)]).is_ok());
    }

    #[test]
    fn perfect_triples_closed_forms() {
        let (alpha, lam, mu) = (Q.from_i64(2), Q.from_i64(3), Q.from_i64(5));
        let split = |x: &FieldElement| [x.clone(), Q.zero()];
        let [l2, l3] = split(&lam);
        let [m2, m3] = split(&mu);
        let a3 = alg(&[&[1, 2], &[0, 1]]);
        let t = tder_perfect_triple(&a3, &[l2.clone(), m2.clone()], &[l3.clone(), m3.clone()]).unwrap();
        let expected = Matrix::from_rows(
            Q,
            vec![vec![lam.clone(), &alpha * &(&mu - &lam)], vec![Q.zero(), mu.clone()]],
        )
        .unwrap();
        assert_eq!(t.d1, expected);
        assert!(verify_tder(&a3, &t).unwrap());

        let a2 = alg(&[&[0, 2], &[1, 0]]);
        let t = tder_perfect_triple(&a2, &[l2, m2], &[l3, m3]).unwrap();
        assert_eq!(t.d1, Matrix::diagonal(Q, &[mu, lam]));

        let a0 = alg(&[&[0, 0], &[0, 0]]);
        assert_eq!(tder_perfect_triple(&a0, &[Q.one(), Q.one()], &[Q.one(), Q.one()]), Err(Error::NotPerfect));
    }

    #[test]
    fn basis_dimensions_on_small_cases() {
        let cases: [(&[&[i64]], usize); 6] = [
            (&[&[1, 0], &[0, 1]], 4),
            (&[&[0, 0], &[0, 0]], 12),
            (&[&[1, -1], &[-1, 1]], 7),
            (&[&[0, 1], &[0, 0]], 8),
            (&[&[1, 0], &[0, 0]], 8),
            (&[&[1, 2], &[0, 0]], 7),
        ];
        for (rows, dim) in cases {
            let a = alg(rows);
            let sol = tder_basis(&a).unwrap();
            assert_eq!(sol.dimension, dim, "{rows:?}");
            assert_eq!(sol.formula_dimension(), dim);
            for t in &sol.basis {
                assert!(verify_tder(&a, t).unwrap());
                assert!(sol.satisfies_constraints(&a, t));
            }
        }
    }

    #[test]
    fn basis_is_independent_and_closed_under_bracket() {
        let mut rng = SeededRng::new(8);
        for spec in [Q, FieldSpec::Prime(5)] {
            for n in 1..=4 {
                let mut m = Matrix::random(&mut rng, spec, n, n);
                if n > 1 {
                    for r in 0..n {
                        m.set(r, n - 1, m.get(r, 0).clone());
                    }
                }
                let a = EvolutionAlgebra::new(m).unwrap();
                let sol = tder_basis(&a).unwrap();
                let rows: Vec<Vec<FieldElement>> = sol.basis.iter().map(TernaryTriple::to_vector).collect();
                let stacked = Matrix::from_rows(spec, rows).unwrap();
                assert_eq!(stacked.rank(), sol.dimension);
                for s in sol.basis.iter().step_by(3) {
                    for t in sol.basis.iter().skip(1).step_by(4) {
                        assert!(verify_tder(&a, &s.bracket(t)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn vector_round_trip() {
        let mut rng = SeededRng::new(1);
        let d1 = Matrix::random(&mut rng, Q, 3, 3);
        let d2 = Matrix::random(&mut rng, Q, 3, 3);
        let d3 = Matrix::random(&mut rng, Q, 3, 3);
        let t = TernaryTriple::new(d1, d2, d3).unwrap();
        let v = t.to_vector();
        assert_eq!(v[1], *t.d1.get(1, 0));
        assert_eq!(TernaryTriple::from_vector(Q, 3, &v).unwrap(), t);
    }

    #[test]
    fn parametrization_text() {
        let sol = tder_basis(&alg(&[&[1, 3], &[0, 0]])).unwrap();
        let text = sol.render_parametrization();
        assert!(text.contains("d2[1][2] free"), "{text}");
        assert!(text.contains("d3[1][2] = -3·d2[2][1]"), "{text}");
        assert!(text.contains("d3[2][1] = -1/3·d2[1][2]"), "{text}");
        assert!(text.contains("λ1 = λ2"), "{text}");
    }
}
