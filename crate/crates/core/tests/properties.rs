use proptest::prelude::*;

use evoternary::field::parse_element;
use evoternary::io::{algebra_to_json, parse_algebra};
use evoternary::oracle::{oracle_tder, residual};
use evoternary::sample::{random_algebra, Shape};
use evoternary::tder::{tder_basis, verify_tder};
use evoternary::{FieldElement, FieldSpec, Matrix, SeededRng};

fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rational),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(7)),
        Just(FieldSpec::Prime(1_000_000_007)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn element_display_round_trips(spec in spec_strategy(), n in -1000i64..1000, d in 1i64..50) {
        // Denominators divisible by p are rejected rather than produced.
        let Ok(x) = spec.ratio(n, d) else { return Ok(()); };
        prop_assert_eq!(parse_element(&x.to_string(), spec).unwrap(), x);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,16}", spec in spec_strategy()) {
        let _ = parse_element(&text, spec);
    }

    #[test]
    fn algebra_json_round_trips(spec in spec_strategy(), n in 1usize..5, seed in any::<u64>()) {
        let a = random_algebra(&mut SeededRng::new(seed), spec, n, Shape::Generic);
        prop_assert_eq!(parse_algebra(&algebra_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn basis_lies_in_oracle_kernel(spec in spec_strategy(), n in 1usize..4, seed in any::<u64>(), shape in 0usize..3) {
        let shape = [Shape::Generic, Shape::RankDeficient, Shape::ZeroColumn][shape];
        let a = random_algebra(&mut SeededRng::new(seed), spec, n, shape);
        let sol = tder_basis(&a).unwrap();
        prop_assert_eq!(sol.dimension, oracle_tder(&a).unwrap().dimension);
        for t in &sol.basis {
            prop_assert!(residual(&a, t).unwrap().iter().all(FieldElement::is_zero));
            prop_assert!(verify_tder(&a, t).unwrap());
        }
    }

    #[test]
    fn generalized_inverse_identity(spec in spec_strategy(), n in 1usize..7, seed in any::<u64>()) {
        let mat = Matrix::random(&mut SeededRng::new(seed), spec, n, n);
        let g = mat.generalized_inverse().unwrap();
        prop_assert_eq!(&(&mat * &g) * &mat, mat);
    }
}
