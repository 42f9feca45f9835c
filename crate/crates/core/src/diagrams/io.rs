//! Reading and writing diagram files.
//!
//! A diagram file is a JSON object
//! `{"category": name-or-table, "objects": {...}, "arrows": {...}, "endo": {...}}`.
//! Object values are either a dimension (a space in degree 0) or a complex
//! `{"degrees": {n: dim}, "d": {n: matrix}}`. Arrow and endomorphism values are
//! a matrix (degree 0) or a map `{n: matrix}`. Matrices are row-major arrays
//! whose entries are integers or `"p/q"` strings. Only a generating set of
//! arrows needs to be listed; the rest are filled in by composition.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{extend_from_generators, ChainDiagram, ChainEndo, DiagramError, NatEndo};
use crate::exactalg::{format_rational, parse_rational, ChainComplex, ChainMap, RatMatrix, Rational};
use crate::fincat::{CatTable, FinCat, FinCatError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Format(String),
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn format_err<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Format(msg.into()))
}

/// A parsed diagram file.
#[derive(Clone, Debug)]
pub struct DiagramFile {
    /// Set when the file named its category rather than inlining it.
    pub category_name: Option<String>,
    pub diagram: ChainDiagram,
    pub endo: ChainEndo,
}

/// Parses one rational matrix entry.
pub fn parse_entry(v: &Value) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| IoError::Format(e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => format_err(format!("matrix entry {n} is not an integer; write fractions as strings")),
        },
        other => format_err(format!("matrix entry {other} is neither a number nor a string")),
    }
}

/// Parses a row-major matrix, checking it against the expected shape. Any
/// matrix with no entries may be written as `[]`.
pub fn parse_matrix(v: &Value, rows: usize, cols: usize) -> Result<RatMatrix, IoError> {
    let Value::Array(rs) = v else {
        return format_err("matrix must be an array of rows");
    };
    if rs.is_empty() && rows * cols == 0 {
        return Ok(RatMatrix::zeros(rows, cols));
    }
    if rs.len() != rows {
        return format_err(format!("matrix has {} rows, expected {rows}x{cols}", rs.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let Value::Array(entries) = r else {
            return format_err("matrix row must be an array");
        };
        if entries.len() != cols {
            return format_err(format!("matrix row has {} entries, expected {rows}x{cols}", entries.len()));
        }
        for e in entries {
            data.push(parse_entry(e)?);
        }
    }
    Ok(RatMatrix::from_vec(rows, cols, data))
}

/// Parses a matrix whose shape is read off the data. Rows must agree in length.
pub fn parse_matrix_any(v: &Value) -> Result<RatMatrix, IoError> {
    let Value::Array(rs) = v else {
        return format_err("matrix must be an array of rows");
    };
    let cols = match rs.first() {
        Some(Value::Array(r)) => r.len(),
        Some(_) => return format_err("matrix row must be an array"),
        None => 0,
    };
    parse_matrix(v, rs.len(), cols)
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(format_rational(x))).collect()))
            .collect(),
    )
}

fn parse_degree(key: &str) -> Result<i32, IoError> {
    key.trim().parse::<i32>().or_else(|_| format_err(format!("degree {key:?} is not an integer")))
}

fn parse_complex(v: &Value) -> Result<ChainComplex, IoError> {
    match v {
        Value::Number(n) => match n.as_u64().and_then(|d| usize::try_from(d).ok()) {
            Some(d) if d > 0 => Ok(ChainComplex::concentrated(0, d)),
            Some(_) => Ok(ChainComplex::zero()),
            None => format_err(format!("dimension {n} is not a nonnegative integer")),
        },
        Value::Object(m) => {
            if let Some(k) = m.keys().find(|k| *k != "degrees" && *k != "d") {
                return format_err(format!("unknown complex field {k:?}"));
            }
            let mut dims = BTreeMap::new();
            let Some(Value::Object(ds)) = m.get("degrees") else {
                return format_err("complex needs a \"degrees\" object");
            };
            for (k, d) in ds {
                let Some(d) = d.as_u64().and_then(|d| usize::try_from(d).ok()) else {
                    return format_err(format!("dimension in degree {k} is not a nonnegative integer"));
                };
                dims.insert(parse_degree(k)?, d);
            }
            let mut diffs = BTreeMap::new();
            match m.get("d") {
                None => {}
                Some(Value::Object(dd)) => {
                    for (k, mat) in dd {
                        let n = parse_degree(k)?;
                        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
                        let cols = dims.get(&n).copied().unwrap_or(0);
                        diffs.insert(n, parse_matrix(mat, rows, cols)?);
                    }
                }
                Some(_) => return format_err("\"d\" must be an object keyed by degree"),
            }
            ChainComplex::from_parts(&dims, &diffs).map_err(|e| IoError::Diagram(e.into()))
        }
        _ => format_err("object value must be a dimension or a complex"),
    }
}

fn parse_chain_map(v: &Value, src: &ChainComplex, tgt: &ChainComplex) -> Result<ChainMap, IoError> {
    let mut comps = BTreeMap::new();
    match v {
        Value::Array(_) => {
            comps.insert(0, parse_matrix(v, tgt.dim(0), src.dim(0))?);
        }
        Value::Object(m) => {
            for (k, mat) in m {
                let n = parse_degree(k)?;
                comps.insert(n, parse_matrix(mat, tgt.dim(n), src.dim(n))?);
            }
        }
        _ => return format_err("map must be a matrix or an object keyed by degree"),
    }
    let f = ChainMap::new(comps);
    f.check(src, tgt).map_err(|e| IoError::Diagram(e.into()))?;
    Ok(f)
}

/// Parses a diagram file. Named categories are looked up with `resolve`.
pub fn parse_diagram(text: &str, resolve: impl Fn(&str) -> Result<FinCat, IoError>) -> Result<DiagramFile, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let Value::Object(root) = root else {
        return format_err("diagram file must be a JSON object");
    };
    if let Some(k) = root.keys().find(|k| !["category", "objects", "arrows", "endo"].contains(&k.as_str())) {
        return format_err(format!("unknown field {k:?}"));
    }
    let (cat, category_name) = match root.get("category") {
        Some(Value::String(name)) => (resolve(name)?, Some(name.clone())),
        Some(inline @ Value::Object(_)) => {
            let table: CatTable =
                serde_json::from_value(inline.clone()).map_err(|e| IoError::Format(format!("category: {e}")))?;
            (FinCat::from_table(&table)?, None)
        }
        _ => return format_err("\"category\" must be a name or an inline category"),
    };
    let cat = Arc::new(cat);
    let empty = Map::new();
    let section = |key: &str| match root.get(key) {
        None => Ok(&empty),
        Some(Value::Object(m)) => Ok(m),
        Some(_) => format_err(format!("\"{key}\" must be an object")),
    };

    let mut complexes = vec![ChainComplex::zero(); cat.num_objects()];
    for (name, v) in section("objects")? {
        let Some(a) = cat.object_by_name(name) else {
            return format_err(format!("unknown object {name:?}"));
        };
        complexes[a] = parse_complex(v)?;
    }

    let mut gens = BTreeMap::new();
    for (name, v) in section("arrows")? {
        let Some(f) = cat.arrow_by_name(name) else {
            return format_err(format!("unknown arrow {name:?}"));
        };
        let m = parse_chain_map(v, &complexes[cat.src(f)], &complexes[cat.dst(f)])?;
        if cat.is_identity(f) {
            let id = complexes[cat.src(f)].identity_map();
            if !same_map(&m, &id, &complexes[cat.src(f)], &complexes[cat.src(f)]) {
                return format_err(format!("identity {name:?} is not sent to an identity"));
            }
            continue;
        }
        gens.insert(f, m);
    }
    let maps = extend_from_generators(&cat, &gens, |a| complexes[a].identity_map(), |g, f| g.after(f))?;
    for (&f, m) in &gens {
        if !same_map(&maps[f], m, &complexes[cat.src(f)], &complexes[cat.dst(f)]) {
            return Err(DiagramError::NotFunctorial { f: cat.arrow_name(f).into(), g: "generators".into() }.into());
        }
    }
    let diagram = ChainDiagram::new(cat.clone(), complexes, maps)?;

    let endo = match root.get("endo") {
        None => diagram.identity_endo(),
        Some(_) => {
            let given = section("endo")?;
            let mut comps = Vec::with_capacity(cat.num_objects());
            for a in cat.objects() {
                let c = diagram.complex(a);
                match given.get(cat.object_name(a)) {
                    Some(v) => comps.push(parse_chain_map(v, c, c)?),
                    None if c.is_zero() => comps.push(ChainMap::zero()),
                    None => return format_err(format!("endo missing at object {:?}", cat.object_name(a))),
                }
            }
            if let Some(k) = given.keys().find(|k| cat.object_by_name(k).is_none()) {
                return format_err(format!("endo names unknown object {k:?}"));
            }
            let endo = NatEndo::new(comps);
            diagram.check_endo(&endo)?;
            endo
        }
    };
    Ok(DiagramFile { category_name, diagram, endo })
}

/// Degreewise equality, treating missing components as zero.
fn same_map(f: &ChainMap, g: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> bool {
    src.degrees().all(|n| f.at(n, tgt.dim(n), src.dim(n)) == g.at(n, tgt.dim(n), src.dim(n)))
}

fn complex_to_json(c: &ChainComplex) -> Value {
    if c.is_zero() {
        return json!(0);
    }
    if c.lo() == 0 && c.hi() == 0 {
        return json!(c.dim(0));
    }
    let degrees: Map<String, Value> = c.degrees().map(|n| (n.to_string(), json!(c.dim(n)))).collect();
    let d: Map<String, Value> =
        c.degrees().filter(|&n| !c.d(n).is_zero()).map(|n| (n.to_string(), matrix_to_json(&c.d(n)))).collect();
    json!({"degrees": degrees, "d": d})
}

fn map_to_json(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, plain: bool) -> Value {
    if plain {
        return matrix_to_json(&f.at(0, tgt.dim(0), src.dim(0)));
    }
    let degrees: std::collections::BTreeSet<i32> = src.degrees().chain(tgt.degrees()).collect();
    let m: Map<String, Value> = degrees
        .into_iter()
        .filter(|&n| src.dim(n) > 0 && tgt.dim(n) > 0)
        .map(|n| (n.to_string(), matrix_to_json(&f.at(n, tgt.dim(n), src.dim(n)))))
        .collect();
    Value::Object(m)
}

/// Writes a diagram file. The category is inlined unless a name is given.
/// Every nonidentity arrow is written, so the output does not depend on a
/// choice of generators.
pub fn diagram_to_json(x: &ChainDiagram, endo: Option<&ChainEndo>, category_name: Option<&str>) -> String {
    let cat = x.cat();
    let plain = x.complexes().iter().all(|c| c.is_zero() || (c.lo() == 0 && c.hi() == 0));
    let category = match category_name {
        Some(n) => Value::String(n.to_string()),
        None => serde_json::to_value(cat.to_table()).expect("category table serialises"),
    };
    let objects: Map<String, Value> =
        cat.objects().map(|a| (cat.object_name(a).to_string(), complex_to_json(x.complex(a)))).collect();
    let arrows: Map<String, Value> = cat
        .arrow_ids()
        .filter(|&f| !cat.is_identity(f))
        .map(|f| {
            let (s, t) = (x.complex(cat.src(f)), x.complex(cat.dst(f)));
            (cat.arrow_name(f).to_string(), map_to_json(x.map(f), s, t, plain))
        })
        .collect();
    let mut root = Map::new();
    root.insert("category".into(), category);
    root.insert("objects".into(), Value::Object(objects));
    root.insert("arrows".into(), Value::Object(arrows));
    if let Some(e) = endo {
        let comps: Map<String, Value> = cat
            .objects()
            .map(|a| {
                let c = x.complex(a);
                (cat.object_name(a).to_string(), map_to_json(&e.comps[a], c, c, plain))
            })
            .collect();
        root.insert("endo".into(), Value::Object(comps));
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("diagram serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::fincat::{builtin, span};

    fn resolve(name: &str) -> Result<FinCat, IoError> {
        builtin(name).ok_or_else(|| IoError::UnknownCategory(name.into()))
    }

    #[test]
    fn plain_span_diagram() {
        let text = r#"{
            "category": "span",
            "objects": {"a": 1, "b": 2, "c": 1},
            "arrows": {"f": [[1], [0]], "g": [["1/2"]]},
            "endo": {"a": [[3]], "b": [[3, 0], [0, 5]], "c": [[3]]}
        }"#;
        let file = parse_diagram(text, resolve).unwrap();
        let cat = file.diagram.cat().clone();
        let g = cat.arrow_by_name("g").unwrap();
        assert_eq!(file.diagram.map_at(g, 0)[(0, 0)], rat(1, 2));
        assert_eq!(file.endo.comps[1].at(0, 2, 2)[(1, 1)], int(5));
        let back = parse_diagram(&diagram_to_json(&file.diagram, Some(&file.endo), None), resolve).unwrap();
        assert_eq!(back.diagram, file.diagram);
        assert_eq!(back.endo, file.endo);
        assert!(back.category_name.is_none());
        assert_eq!(**back.diagram.cat(), span());
    }

    #[test]
    fn complexes_and_generators() {
        let text = r#"{
            "category": "BC2",
            "objects": {"*": {"degrees": {"0": 1, "1": 1}, "d": {"1": [[1]]}}},
            "arrows": {"g": {"0": [[-1]], "1": [[-1]]}}
        }"#;
        let file = parse_diagram(text, resolve).unwrap();
        assert_eq!(file.category_name.as_deref(), Some("BC2"));
        assert_eq!(file.endo, file.diagram.identity_endo());
        let again = diagram_to_json(&file.diagram, None, Some("BC2"));
        assert_eq!(parse_diagram(&again, resolve).unwrap().diagram, file.diagram);
    }

    #[test]
    fn rejections() {
        let bad = [
            r#"{"category": "nope", "objects": {}}"#,
            r#"{"category": "span", "objects": {"a": 1, "b": 1}, "arrows": {"f": [[1, 2]]}}"#,
            r#"{"category": "span", "objects": {"z": 1}}"#,
            r#"{"category": "span", "extra": 1}"#,
            r#"{"category": "BC2", "objects": {"*": 1}, "arrows": {"g": [[2]]}}"#,
            r#"{"category": "BC2", "objects": {"*": 2}, "arrows": {"g": [[0, 1], [1, 0]]}, "endo": {"*": [[1, 0], [0, 2]]}}"#,
            r#"{"category": "terminal", "objects": {"*": 1}, "arrows": {}, "endo": {"*": [[0.5]]}}"#,
            r#"{"category": "terminal", "objects": {"*": {"degrees": {"0": 1, "1": 1}, "d": {"1": [[1]], "0": [[2]]}}}}"#,
        ];
        for text in bad {
            assert!(parse_diagram(text, resolve).is_err(), "{text}");
        }
    }
}
