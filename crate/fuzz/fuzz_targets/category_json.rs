#![no_main]

use libfuzzer_sys::fuzz_target;
use lintrace::fincat::FinCat;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cat) = FinCat::from_json(text) {
        let again = FinCat::from_json(&cat.to_json()).expect("serialized category parses");
        assert!(again == cat);
    }
});
