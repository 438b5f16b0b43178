//! Exact field arithmetic.
//!
//! Two kinds of field are supported: the rationals, with arbitrary-precision
//! numerator and denominator, and prime fields `F_p` with `p < 2^61`. Every
//! element carries enough information to identify its field, so matrices
//! and algebras can be built over either kind chosen at runtime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 61;

/// Which field the entries of a computation live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// `F_p`, after checking `p` is a prime below `2^61`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Rejects a `Prime` spec built directly with a bad modulus.
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Rational => Ok(self),
            FieldSpec::Prime(p) => FieldSpec::prime(p),
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        match self {
            FieldSpec::Rational => FieldElement::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => FieldElement::Prime {
                residue: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Parses `-?\d+` or `-?\d+/\d+`.
    pub fn parse(self, text: &str) -> Result<FieldElement> {
        parse_element(text, self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldSpecRepr {
    Name(String),
    Prime { prime: u64 },
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            FieldSpec::Rational => FieldSpecRepr::Name("rational".into()).serialize(s),
            FieldSpec::Prime(p) => FieldSpecRepr::Prime { prime: p }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match FieldSpecRepr::deserialize(d)? {
            FieldSpecRepr::Name(name) if name == "rational" => Ok(FieldSpec::Rational),
            FieldSpecRepr::Name(name) => Err(D::Error::custom(format!("unknown field {name:?}"))),
            FieldSpecRepr::Prime { prime } => FieldSpec::prime(prime).map_err(D::Error::custom),
        }
    }
}

/// Deterministic trial division; fine for the moduli used here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of a [`FieldSpec`] field, always in canonical form.
///
/// Rationals are kept in lowest terms with a positive denominator, prime
/// residues in `[0, p)`, so derived equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rational,
            FieldElement::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Prime { residue, modulus } => FieldElement::Prime {
                residue: inverse_mod(*residue, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self * &rhs.invert()?)
    }

    /// Re-normalizes a rational. Canonical inputs come back unchanged.
    pub fn normalized(&self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => {
                FieldElement::Rational(BigRational::new(r.numer().clone(), r.denom().clone()))
            }
            FieldElement::Prime { residue, modulus } => FieldElement::Prime {
                residue: residue % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Draws an element: numerator in `[-9, 9]` over denominator in `[1, 9]`
    /// for rationals, a uniform residue for prime fields.
    pub fn sample(rng: &mut SeededRng, spec: FieldSpec, nonzero: bool) -> FieldElement {
        loop {
            let x = match spec {
                FieldSpec::Rational => {
                    let num: i64 = rng.gen_range(-9..=9);
                    let den: i64 = rng.gen_range(1..=9);
                    FieldElement::Rational(BigRational::new(num.into(), den.into()))
                }
                FieldSpec::Prime(p) => FieldElement::Prime {
                    residue: rng.gen_range(0..p),
                    modulus: p,
                },
            };
            if !nonzero || !x.is_zero() {
                return x;
            }
        }
    }

    fn check_same(&self, rhs: &FieldElement) {
        if self.spec() != rhs.spec() {
            panic!("field mismatch: {} vs {}", self.spec(), rhs.spec());
        }
    }
}

/// Parses element text against `spec`. See [`FieldSpec::parse`].
pub fn parse_element(text: &str, spec: FieldSpec) -> Result<FieldElement> {
    let malformed = || Error::MalformedElement(text.to_string());
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num_text.strip_prefix('-').unwrap_or(num_text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    if let Some(d) = den_text {
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
    }
    let num: BigInt = num_text.parse().map_err(|_| malformed())?;
    let den: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    match spec {
        FieldSpec::Rational => Ok(FieldElement::Rational(BigRational::new(num, den))),
        FieldSpec::Prime(p) => {
            let reduce = |v: &BigInt| v.mod_floor(&BigInt::from(p)).to_u64().expect("residue < p");
            let n = FieldElement::Prime { residue: reduce(&num), modulus: p };
            let d = FieldElement::Prime { residue: reduce(&den), modulus: p };
            if d.is_zero() {
                return Err(Error::DenominatorNotInvertible { text: text.to_string(), p });
            }
            n.div(&d)
        }
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(p as i128));
    debug_assert!(g.gcd == 1);
    g.x.rem_euclid(p as i128) as u64
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            FieldElement::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            FieldElement::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl FieldElement {
    /// Human-readable form: prime residues above `p/2` print as negatives.
    pub fn pretty(&self) -> String {
        match self {
            FieldElement::Prime { residue, modulus } if *residue > modulus / 2 => {
                format!("-{}", modulus - residue)
            }
            _ => self.to_string(),
        }
    }

    pub fn is_negative_pretty(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Prime { residue, modulus } => *residue > modulus / 2,
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { residue: a, modulus }, FieldElement::Prime { residue: b, .. }) => {
                FieldElement::Prime { residue: ((*a as u128 + *b as u128) % *modulus as u128) as u64, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { residue: a, modulus }, FieldElement::Prime { residue: b, .. }) => {
                FieldElement::Prime { residue: ((*a as u128 * *b as u128) % *modulus as u128) as u64, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { residue, modulus } => FieldElement::Prime {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
