//! Seeded random algebras for conformance fuzzing.

use rand::Rng;

use crate::evolalg::EvolutionAlgebra;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Uniform entries; usually but not always invertible.
    Generic,
    /// Invertible structure matrix, resampled until it is.
    Perfect,
    /// At least one square is a combination of (or proportional to) others.
    RankDeficient,
    /// At least one square is zero.
    ZeroColumn,
}

pub fn random_algebra(rng: &mut SeededRng, spec: FieldSpec, n: usize, shape: Shape) -> EvolutionAlgebra {
    let mut m = Matrix::random(rng, spec, n, n);
    match shape {
        Shape::Generic => {}
        Shape::Perfect => {
            while m.determinant().expect("square").is_zero() {
                m = Matrix::random(rng, spec, n, n);
            }
        }
        Shape::RankDeficient => {
            if n == 1 {
                m.set(0, 0, spec.zero());
            } else {
                let target = rng.gen_range(0..n);
                let sources: Vec<usize> = (0..n).filter(|&c| c != target).collect();
                let proportional = rng.gen_bool(0.5);
                let mut col = vec![spec.zero(); n];
                for (t, &s) in sources.iter().enumerate() {
                    if proportional && t > 0 {
                        break;
                    }
                    let c = FieldElement::sample(rng, spec, proportional);
                    for (r, v) in col.iter_mut().enumerate() {
                        *v = &*v + &(&c * m.get(r, s));
                    }
                }
                for (r, v) in col.into_iter().enumerate() {
                    m.set(r, target, v);
                }
            }
        }
        Shape::ZeroColumn => {
            let target = rng.gen_range(0..n);
            for r in 0..n {
                m.set(r, target, spec.zero());
            }
        }
    }
    EvolutionAlgebra::new(m).expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_hold() {
        let mut rng = SeededRng::new(0);
        for spec in [FieldSpec::Rational, FieldSpec::Prime(5)] {
            for n in 1..=5 {
                assert!(random_algebra(&mut rng, spec, n, Shape::Perfect).is_perfect());
                assert!(!random_algebra(&mut rng, spec, n, Shape::RankDeficient).is_perfect());
                let a = random_algebra(&mut rng, spec, n, Shape::ZeroColumn);
                assert!(a.square_analysis().zero_square.iter().any(|z| *z));
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = random_algebra(&mut SeededRng::new(9), FieldSpec::Rational, 4, Shape::Generic);
        let b = random_algebra(&mut SeededRng::new(9), FieldSpec::Rational, 4, Shape::Generic);
        assert_eq!(a, b);
    }
}
