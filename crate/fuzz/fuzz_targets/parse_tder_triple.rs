#![no_main]

use evoternary::io::TderTripleFile;
use evoternary::FieldSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(file) = serde_json::from_slice::<TderTripleFile>(data) else { return };
    for spec in [FieldSpec::Rational, FieldSpec::Prime(3)] {
        if let Ok(t) = file.to_triple(spec) {
            assert_eq!(TderTripleFile::from_triple(&t).to_triple(spec).unwrap(), t);
        }
    }
});
