#![no_main]

use evoternary::io::DecompositionFile;
use evoternary::FieldSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(file) = serde_json::from_slice::<DecompositionFile>(data) else { return };
    for spec in [FieldSpec::Rational, FieldSpec::Prime(3)] {
        let _ = file.to_decomposition(spec);
    }
});
