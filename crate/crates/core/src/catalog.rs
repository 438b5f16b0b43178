//! The ten two-dimensional structure matrices with their expected
//! ternary-derivation spaces.
//!
//! Each expected space is stated as a list of linear relations on the twelve
//! entries of `(d1, d2, d3)` plus the dimension. A solution matches when
//! every basis triple satisfies every relation, the relations are
//! independent, and `12 - #relations` equals the dimension, which pins the
//! span down exactly.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::evolalg::EvolutionAlgebra;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::tder::{Component, Entry, TderSolution, TernaryTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryName {
    A0,
    A1,
    A2a,
    A3a,
    A4a,
    A5ab,
    A5,
    A6,
    A7,
    A8a,
}

impl EntryName {
    pub const ALL: [EntryName; 10] = [
        EntryName::A0,
        EntryName::A1,
        EntryName::A2a,
        EntryName::A3a,
        EntryName::A4a,
        EntryName::A5ab,
        EntryName::A5,
        EntryName::A6,
        EntryName::A7,
        EntryName::A8a,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntryName::A0 => "A0",
            EntryName::A1 => "A1",
            EntryName::A2a => "A2a",
            EntryName::A3a => "A3a",
            EntryName::A4a => "A4a",
            EntryName::A5ab => "A5ab",
            EntryName::A5 => "A5",
            EntryName::A6 => "A6",
            EntryName::A7 => "A7",
            EntryName::A8a => "A8a",
        }
    }

    pub fn uses_alpha(self) -> bool {
        matches!(self, EntryName::A2a | EntryName::A3a | EntryName::A4a | EntryName::A5ab | EntryName::A8a)
    }

    pub fn uses_beta(self) -> bool {
        self == EntryName::A5ab
    }

    pub fn is_perfect_class(self) -> bool {
        matches!(self, EntryName::A1 | EntryName::A2a | EntryName::A3a | EntryName::A4a | EntryName::A5ab)
    }
}

impl fmt::Display for EntryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntryName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EntryName::ALL.into_iter().find(|e| e.as_str() == s).ok_or_else(|| Error::UnknownEntry(s.to_string()))
    }
}

/// Parameter values; entries ignore the ones they do not use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl Params {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Self {
        Params { alpha, beta }
    }

    /// `alpha = 2`, `beta = 3`.
    pub fn default_for(spec: FieldSpec) -> Self {
        Params { alpha: spec.from_i64(2), beta: spec.from_i64(3) }
    }

    fn check(&self, name: EntryName) -> Result<()> {
        if name.uses_alpha() && self.alpha.is_zero() {
            return Err(Error::ParameterConstraint(format!("{name}: alpha must be nonzero")));
        }
        if name.uses_beta() {
            if self.beta.is_zero() {
                return Err(Error::ParameterConstraint(format!("{name}: beta must be nonzero")));
            }
            if (&self.alpha * &self.beta).is_one() {
                return Err(Error::ParameterConstraint(format!("{name}: alpha·beta must differ from 1")));
            }
        }
        Ok(())
    }
}

/// The structure matrix of a catalogue row.
pub fn structure_matrix(name: EntryName, params: &Params) -> Result<Matrix> {
    params.check(name)?;
    let spec = params.alpha.spec();
    let (z, o) = (spec.zero(), spec.one());
    let (a, b) = (params.alpha.clone(), params.beta.clone());
    let rows = match name {
        EntryName::A0 => [[z.clone(), z.clone()], [z.clone(), z]],
        EntryName::A1 => [[o.clone(), z.clone()], [z, o]],
        EntryName::A2a => [[z.clone(), a], [o, z]],
        EntryName::A3a => [[o.clone(), a], [z, o]],
        EntryName::A4a => [[z, o.clone()], [a, o]],
        EntryName::A5ab => [[o.clone(), a], [b, o]],
        EntryName::A5 => [[o.clone(), -&o], [-&o, o]],
        EntryName::A6 => [[z.clone(), o], [z.clone(), z]],
        EntryName::A7 => [[o, z.clone()], [z.clone(), z]],
        EntryName::A8a => [[o, a], [z.clone(), z]],
    };
    Matrix::from_rows(spec, rows.into_iter().map(Vec::from).collect())
}

pub fn instantiate(name: EntryName, params: &Params) -> Result<EvolutionAlgebra> {
    EvolutionAlgebra::new(structure_matrix(name, params)?)
}

/// `sum coefficient * entry = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub terms: Vec<(Entry, FieldElement)>,
}

impl Relation {
    pub fn holds_for(&self, t: &TernaryTriple) -> bool {
        let spec = t.spec();
        self.terms.iter().fold(spec.zero(), |acc, (e, c)| &acc + &(c * t.get(*e))).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedTder {
    pub name: EntryName,
    pub dimension: usize,
    pub relations: Vec<Relation>,
    /// Where the fixture departs from the printed closed form.
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub dimension_ok: bool,
    pub relations_independent: bool,
    /// Labels of relations violated by some basis triple.
    pub violated: Vec<String>,
}

impl FixtureCheck {
    pub fn pass(&self) -> bool {
        self.dimension_ok && self.relations_independent && self.violated.is_empty()
    }
}

impl ExpectedTder {
    pub fn check(&self, sol: &TderSolution) -> FixtureCheck {
        let n = 2;
        let spec = sol.basis.first().map_or(FieldSpec::Rational, TernaryTriple::spec);
        let mut rows = Vec::new();
        for r in &self.relations {
            let mut row = vec![spec.zero(); 3 * n * n];
            for (e, c) in &r.terms {
                let idx = coord(*e);
                row[idx] = &row[idx] + c;
            }
            rows.push(row);
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(spec, rows).map_or(0, |m| m.rank()) };
        let violated = self
            .relations
            .iter()
            .filter(|r| !sol.basis.iter().all(|t| r.holds_for(t)))
            .map(|r| r.label.clone())
            .collect();
        FixtureCheck {
            dimension_ok: sol.dimension == self.dimension && 3 * n * n - self.relations.len() == self.dimension,
            relations_independent: rank == self.relations.len(),
            violated,
        }
    }
}

fn coord(e: Entry) -> usize {
    let comp = match e.component {
        Component::D1 => 0,
        Component::D2 => 1,
        Component::D3 => 2,
    };
    comp * 4 + e.col * 2 + e.row
}

fn x(r: usize, c: usize) -> Entry {
    Entry::new(Component::D1, r, c)
}

fn y(r: usize, c: usize) -> Entry {
    Entry::new(Component::D2, r, c)
}

fn z(r: usize, c: usize) -> Entry {
    Entry::new(Component::D3, r, c)
}

struct Builder {
    spec: FieldSpec,
    relations: Vec<Relation>,
}

impl Builder {
    fn rel(&mut self, label: &str, terms: Vec<(Entry, FieldElement)>) {
        self.relations.push(Relation { label: label.to_string(), terms });
    }

    fn zero(&mut self, e: Entry) {
        let label = format!("{e} = 0");
        self.rel(&label, vec![(e, self.spec.one())]);
    }

    /// `e = c·to`.
    fn link(&mut self, label: &str, e: Entry, c: FieldElement, to: Entry) {
        self.rel(label, vec![(e, self.spec.one()), (to, -c)]);
    }

    /// `d1[r][c] = a·λ + b·μ` with `λ = y11 + z11`, `μ = y22 + z22`.
    fn d1_entry(&mut self, label: &str, r: usize, c: usize, a: FieldElement, b: FieldElement) {
        let o = self.spec.one();
        let mut terms = vec![(x(r, c), o)];
        if !a.is_zero() {
            terms.push((y(0, 0), -&a));
            terms.push((z(0, 0), -&a));
        }
        if !b.is_zero() {
            terms.push((y(1, 1), -&b));
            terms.push((z(1, 1), -&b));
        }
        self.rel(label, terms);
    }

    fn lambda_eq_mu(&mut self) {
        let o = self.spec.one();
        self.rel("λ = μ", vec![(y(0, 0), o.clone()), (z(0, 0), o.clone()), (y(1, 1), -&o), (z(1, 1), -&o)]);
    }

    fn diagonal_d2_d3(&mut self) {
        for e in [y(0, 1), y(1, 0), z(0, 1), z(1, 0)] {
            self.zero(e);
        }
    }
}

/// Printed `d1` of the perfect row `A5ab` with the `(2,1)` entry as
/// printed, `β(λ + μ)/(γ - 1)`, for comparison against the recomputed form.
pub fn printed_a5ab_d1(params: &Params, lambda: &FieldElement, mu: &FieldElement) -> Result<Matrix> {
    let spec = lambda.spec();
    let (a, b) = (&params.alpha, &params.beta);
    let gamma = a * b;
    let k = (&gamma - &spec.one()).invert()?;
    let rows = vec![
        vec![&k * &(&(&gamma * mu) - lambda), &k * &(a * &(lambda - mu))],
        vec![&k * &(b * &(lambda + mu)), &k * &(&(&gamma * lambda) - mu)],
    ];
    Matrix::from_rows(spec, rows)
}

/// Closed-form `d1` of a perfect row as a function of `(λ, μ)`.
pub fn perfect_d1(name: EntryName, params: &Params, lambda: &FieldElement, mu: &FieldElement) -> Result<Matrix> {
    let coeffs = perfect_d1_coefficients(name, params)?;
    let spec = lambda.spec();
    let mut m = Matrix::zeros(spec, 2, 2);
    for (r, c, a, b) in coeffs {
        m.set(r, c, &(&a * lambda) + &(&b * mu));
    }
    Ok(m)
}

/// `(row, col, coefficient of λ, coefficient of μ)` per entry of `d1`.
fn perfect_d1_coefficients(
    name: EntryName,
    params: &Params,
) -> Result<Vec<(usize, usize, FieldElement, FieldElement)>> {
    params.check(name)?;
    let spec = params.alpha.spec();
    let (zr, o) = (spec.zero(), spec.one());
    let a = params.alpha.clone();
    let e = |r, c, l: &FieldElement, m: &FieldElement| (r, c, l.clone(), m.clone());
    Ok(match name {
        EntryName::A1 => vec![e(0, 0, &o, &zr), e(0, 1, &zr, &zr), e(1, 0, &zr, &zr), e(1, 1, &zr, &o)],
        EntryName::A2a => vec![e(0, 0, &zr, &o), e(0, 1, &zr, &zr), e(1, 0, &zr, &zr), e(1, 1, &o, &zr)],
        EntryName::A3a => vec![e(0, 0, &o, &zr), e(0, 1, &-&a, &a), e(1, 0, &zr, &zr), e(1, 1, &zr, &o)],
        EntryName::A4a => vec![e(0, 0, &zr, &o), e(0, 1, &zr, &zr), e(1, 0, &-&o, &o), e(1, 1, &o, &zr)],
        EntryName::A5ab => {
            let b = params.beta.clone();
            let gamma = &a * &b;
            let k = (&gamma - &o).invert()?;
            // Entry (2,1) is β(μ - λ)/(γ - 1); see `printed_a5ab_d1`.
            vec![
                e(0, 0, &-&k, &(&gamma * &k)),
                e(0, 1, &(&a * &k), &-(&a * &k)),
                e(1, 0, &-(&b * &k), &(&b * &k)),
                e(1, 1, &(&gamma * &k), &-&k),
            ]
        }
        other => return Err(Error::Invalid(format!("{other} is not a perfect row"))),
    })
}

/// Expected ternary-derivation space of a catalogue row.
pub fn expected_tder(name: EntryName, params: &Params) -> Result<ExpectedTder> {
    params.check(name)?;
    let spec = params.alpha.spec();
    let o = spec.one();
    let mut b = Builder { spec, relations: Vec::new() };
    let mut note = None;
    let dimension = match name {
        EntryName::A0 => 12,
        EntryName::A1 | EntryName::A2a | EntryName::A3a | EntryName::A4a | EntryName::A5ab => {
            b.diagonal_d2_d3();
            for (r, c, l, m) in perfect_d1_coefficients(name, params)? {
                b.d1_entry(&format!("closed form of {}", x(r, c)), r, c, l, m);
            }
            if name == EntryName::A5ab {
                note = Some("d1[2][1] is β(μ - λ)/(γ - 1); the printed β(λ + μ) fails verification");
            }
            4
        }
        EntryName::A5 => {
            b.link("z12 = y21", z(0, 1), o.clone(), y(1, 0));
            b.link("z21 = y12", z(1, 0), o.clone(), y(0, 1));
            b.lambda_eq_mu();
            b.rel("x11 = λ + x12", vec![(x(0, 0), o.clone()), (x(0, 1), -&o), (y(0, 0), -&o), (z(0, 0), -&o)]);
            b.rel("x22 = λ + x21", vec![(x(1, 1), o.clone()), (x(1, 0), -&o), (y(0, 0), -&o), (z(0, 0), -&o)]);
            7
        }
        EntryName::A6 => {
            b.zero(y(1, 0));
            b.zero(z(1, 0));
            b.zero(x(1, 0));
            b.d1_entry("x11 = μ", 0, 0, spec.zero(), o.clone());
            8
        }
        EntryName::A7 => {
            b.zero(y(0, 1));
            b.zero(z(0, 1));
            b.zero(x(1, 0));
            b.d1_entry("x11 = λ", 0, 0, o.clone(), spec.zero());
            8
        }
        EntryName::A8a => {
            let alpha = params.alpha.clone();
            b.link("z12 = -α·y21", z(0, 1), -&alpha, y(1, 0));
            b.link("z21 = -(1/α)·y12", z(1, 0), -alpha.invert()?, y(0, 1));
            b.zero(x(1, 0));
            b.d1_entry("x11 = λ", 0, 0, o.clone(), spec.zero());
            b.lambda_eq_mu();
            note = Some("λ = μ is forced by d1 M = M diag(λ, μ) although the printed list omits it");
            7
        }
    };
    Ok(ExpectedTder { name, dimension, relations: b.relations, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tder::tder_basis;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn instantiate_examples() {
        let p = Params::new(Q.one(), Q.one());
        let a2 = instantiate(EntryName::A2a, &p).unwrap();
        assert_eq!(*a2.structure(), Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]));
        let a5 = instantiate(EntryName::A5, &p).unwrap();
        assert_eq!(*a5.structure(), Matrix::from_i64(Q, &[&[1, -1], &[-1, 1]]));
        assert!(matches!(instantiate(EntryName::A5ab, &p), Err(Error::ParameterConstraint(_))));
        let zero_alpha = Params::new(Q.zero(), Q.one());
        assert!(matches!(instantiate(EntryName::A8a, &zero_alpha), Err(Error::ParameterConstraint(_))));
        assert!(instantiate(EntryName::A1, &zero_alpha).is_ok());
    }

    #[test]
    fn names_round_trip() {
        for n in EntryName::ALL {
            assert_eq!(n.as_str().parse::<EntryName>().unwrap(), n);
        }
        assert_eq!("A9".parse::<EntryName>(), Err(Error::UnknownEntry("A9".into())));
    }

    #[test]
    fn every_row_matches_its_fixture() {
        for spec in [Q, FieldSpec::Prime(7)] {
            let p = Params::default_for(spec);
            for name in EntryName::ALL {
                let a = instantiate(name, &p).unwrap();
                let sol = tder_basis(&a).unwrap();
                let exp = expected_tder(name, &p).unwrap();
                let check = exp.check(&sol);
                assert!(check.pass(), "{name} over {spec}: {check:?}");
                assert_eq!(a.is_perfect(), name.is_perfect_class());
            }
        }
    }

    #[test]
    fn a4_closed_form() {
        let p = Params::default_for(Q);
        let (l, m) = (Q.from_i64(2), Q.from_i64(9));
        let d1 = perfect_d1(EntryName::A4a, &p, &l, &m).unwrap();
        assert_eq!(d1, Matrix::from_i64(Q, &[&[9, 0], &[7, 2]]));
    }

    #[test]
    fn a5ab_printed_entry_differs() {
        let p = Params::default_for(Q);
        let (l, m) = (Q.from_i64(1), Q.from_i64(3));
        let printed = printed_a5ab_d1(&p, &l, &m).unwrap();
        let fixed = perfect_d1(EntryName::A5ab, &p, &l, &m).unwrap();
        assert_eq!(printed.get(0, 0), fixed.get(0, 0));
        assert_eq!(printed.get(1, 1), fixed.get(1, 1));
        assert_ne!(printed.get(1, 0), fixed.get(1, 0));
    }

    #[test]
    fn corrupted_solution_fails_fixture() {
        let p = Params::default_for(Q);
        let a = instantiate(EntryName::A8a, &p).unwrap();
        let mut sol = tder_basis(&a).unwrap();
        sol.basis[0].d3.set(1, 0, Q.from_i64(5));
        assert!(!expected_tder(EntryName::A8a, &p).unwrap().check(&sol).pass());
    }
}
