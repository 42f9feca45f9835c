#![no_main]

use libfuzzer_sys::fuzz_target;
use lintrace::diagrams::{diagram_to_json, parse_diagram, IoError};
use lintrace::fincat::builtin;

fn resolve(name: &str) -> Result<lintrace::fincat::FinCat, IoError> {
    builtin(name).ok_or_else(|| IoError::UnknownCategory(name.to_string()))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_diagram(text, resolve) {
        let out = diagram_to_json(&file.diagram, Some(&file.endo), None);
        let again = parse_diagram(&out, resolve).expect("serialized diagram parses");
        assert_eq!(again.diagram.complexes(), file.diagram.complexes());
    }
});
