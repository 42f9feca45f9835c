#![no_main]

use libfuzzer_sys::fuzz_target;
use lintrace::diagrams::{matrix_to_json, parse_matrix_any};

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(m) = parse_matrix_any(&v) {
        assert_eq!(parse_matrix_any(&matrix_to_json(&m)).unwrap(), m);
        if m.rows() <= 6 && m.cols() <= 6 {
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.cols(), m.cols());
        }
    }
});
