//! Replays the checked-in fuzz seeds through the same entry points and
//! round-trip checks as the fuzz targets, so they run on stable too.

use std::path::PathBuf;

use lintrace::coeffs::CoeffVector;
use lintrace::diagrams::{diagram_to_json, matrix_to_json, parse_diagram, parse_matrix_any, IoError};
use lintrace::exactalg::{format_rational, parse_rational};
use lintrace::fincat::{builtin, FinCat};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.iter().map(|p| std::fs::read(p).unwrap()).collect()
}

fn resolve(name: &str) -> Result<FinCat, IoError> {
    builtin(name).ok_or_else(|| IoError::UnknownCategory(name.to_string()))
}

#[test]
fn category_seeds() {
    let mut parsed = 0;
    for s in seeds("category_json") {
        let Ok(text) = std::str::from_utf8(&s) else { continue };
        if let Ok(cat) = FinCat::from_json(text) {
            assert!(FinCat::from_json(&cat.to_json()).unwrap() == cat);
            parsed += 1;
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn diagram_seeds() {
    let mut parsed = 0;
    for s in seeds("diagram_json") {
        let Ok(text) = std::str::from_utf8(&s) else { continue };
        if let Ok(file) = parse_diagram(text, resolve) {
            let out = diagram_to_json(&file.diagram, Some(&file.endo), None);
            let again = parse_diagram(&out, resolve).unwrap();
            assert_eq!(again.diagram.complexes(), file.diagram.complexes());
            parsed += 1;
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn rational_seeds() {
    for s in seeds("rational") {
        let Ok(text) = std::str::from_utf8(&s) else { continue };
        if let Ok(r) = parse_rational(text) {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}

#[test]
fn matrix_seeds() {
    for s in seeds("matrix_json") {
        let Ok(v) = serde_json::from_slice::<serde_json::Value>(&s) else { continue };
        if let Ok(m) = parse_matrix_any(&v) {
            assert_eq!(parse_matrix_any(&matrix_to_json(&m)).unwrap(), m);
        }
    }
}

#[test]
fn coeff_seeds() {
    const BASES: [&str; 4] = ["span", "BS3", "free_idempotent", "OC2"];
    let mut parsed = 0;
    for s in seeds("coeff_json") {
        let Some((&pick, rest)) = s.split_first() else { continue };
        let Ok(text) = std::str::from_utf8(rest) else { continue };
        let cat = builtin(BASES[pick as usize % BASES.len()]).unwrap();
        if let Ok(v) = CoeffVector::from_json(&cat, text) {
            assert_eq!(CoeffVector::from_json(&cat, &v.to_json()).unwrap().values(), v.values());
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}
