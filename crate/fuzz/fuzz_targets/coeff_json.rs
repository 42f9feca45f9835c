#![no_main]

use libfuzzer_sys::fuzz_target;
use lintrace::coeffs::CoeffVector;
use lintrace::fincat::builtin;

// The first byte picks the base category, the rest is the document.
const BASES: [&str; 4] = ["span", "BS3", "free_idempotent", "OC2"];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let cat = builtin(BASES[pick as usize % BASES.len()]).expect("builtin");
    if let Ok(v) = CoeffVector::from_json(&cat, text) {
        let again = CoeffVector::from_json(&cat, &v.to_json()).unwrap();
        assert_eq!(again.values(), v.values());
    }
});
