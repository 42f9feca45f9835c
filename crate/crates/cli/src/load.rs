//! Resolving category and diagram arguments to files or bundled names.

use std::path::{Path, PathBuf};

use lintrace::diagrams::{parse_diagram, DiagramFile, IoError};
use lintrace::fincat::{builtin, FinCat};
use lintrace::harness::corpus_entry;

/// Overrides the bundled corpus directory.
pub const DATA_ENV: &str = "LINTRACE_DATA";

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// A path to an existing file, or a bare name looked up under
/// `<data>/<kind>/<name>.json`.
fn locate(arg: &str, kind: &str) -> Option<PathBuf> {
    let p = Path::new(arg);
    if p.is_file() {
        return Some(p.to_path_buf());
    }
    let bundled = data_dir().join(kind).join(format!("{arg}.json"));
    bundled.is_file().then_some(bundled)
}

/// Category from a file, the bundled corpus, or a builtin construction.
pub fn load_category(arg: &str) -> Result<FinCat, String> {
    if let Some(path) = locate(arg, "categories") {
        return FinCat::from_json(&read(&path)?).map_err(|e| format!("{}: {e}", path.display()));
    }
    if let Some(e) = corpus_entry(arg) {
        return Ok(e.cat);
    }
    builtin(arg).ok_or_else(|| format!("no category file or bundled category named {arg:?}"))
}

/// Diagram whose category must agree with `cat`. A diagram naming its
/// category by the same string as the command line is given `cat` directly.
pub fn load_diagram(arg: &str, cat_arg: &str, cat: &FinCat) -> Result<DiagramFile, String> {
    let path = locate(arg, "diagrams").ok_or_else(|| format!("no diagram file or bundled diagram named {arg:?}"))?;
    let text = read(&path)?;
    let stem = Path::new(cat_arg).file_stem().and_then(|s| s.to_str()).unwrap_or(cat_arg);
    let resolve = |name: &str| -> Result<FinCat, IoError> {
        if name == cat_arg || name == stem {
            Ok(cat.clone())
        } else {
            load_category(name).map_err(|_| IoError::UnknownCategory(name.to_string()))
        }
    };
    let file = parse_diagram(&text, resolve).map_err(|e| format!("{}: {e}", path.display()))?;
    if **file.diagram.cat() != *cat {
        return Err(format!("{}: diagram is over a different category than {cat_arg:?}", path.display()));
    }
    Ok(file)
}
