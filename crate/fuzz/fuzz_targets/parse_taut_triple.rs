#![no_main]

use evoternary::io::parse_taut_triple;
use evoternary::FieldSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for spec in [FieldSpec::Rational, FieldSpec::Prime(5)] {
        let _ = parse_taut_triple(text, spec);
    }
});
