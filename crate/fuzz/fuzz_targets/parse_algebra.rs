#![no_main]

use evoternary::io::{algebra_to_json, parse_algebra};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_algebra(text) {
        assert_eq!(parse_algebra(&algebra_to_json(&a)).unwrap(), a);
        if a.dim() <= 4 {
            let _ = a.square_analysis().describe();
            let _ = evoternary::tder::tder_basis(&a);
        }
    }
});
