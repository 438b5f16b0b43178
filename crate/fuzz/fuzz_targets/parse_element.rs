#![no_main]

use evoternary::field::parse_element;
use evoternary::FieldSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for spec in [FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(7), FieldSpec::Prime(2_305_843_009_213_693_951)] {
        if let Ok(x) = parse_element(text, spec) {
            assert_eq!(parse_element(&x.to_string(), spec).unwrap(), x);
        }
    }
});
