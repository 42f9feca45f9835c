use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use lintrace::coeffs::{
    coeff_ei, coeff_ei_desouza, coeff_group, coeff_groupoid, coeff_hofin, coeff_table, leinster_weighting, CoeffVector,
    WeightingResult,
};
use lintrace::diagrams::{
    coinvariants_group, diagram_to_json, hocolim_ei, hocolim_groupoid, hocolim_hofin, ChainDiagram, ChainEndo,
    HocolimResult,
};
use lintrace::exactalg::{format_rational, lefschetz, Rational};
use lintrace::fincat::FinCat;
use lintrace::harness::{case_rng, gen_chain_diagram, gen_hofin_category, gen_hofin_with, run_all, run_suite, Suite};
use lintrace::profcalc::{bicat_trace, dual_of_pointwise, ProfMap};
use serde_json::{json, Map, Value};

use crate::load::{load_category, load_diagram};
use crate::{Cli, Command, Format};

pub struct Output {
    pub text: String,
    pub code: u8,
}

fn ok(text: String) -> Result<Output, String> {
    Ok(Output { text, code: 0 })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value")
}

fn rat_map(cat: &FinCat, keys: impl IntoIterator<Item = (String, Rational)>) -> Map<String, Value> {
    let _ = cat;
    keys.into_iter().map(|(k, v)| (k, Value::String(format_rational(&v)))).collect()
}

pub fn run(cli: &Cli) -> Result<Output, String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { cat } => validate(fmt, cat),
        Command::Classes { cat } => classes(fmt, cat),
        Command::Coeffs { method, cat } => coeffs(fmt, method, cat.as_deref()),
        Command::Hocolim { cat, diagram } => hocolim(fmt, cat, diagram),
        Command::Trace { cat, diagram } => trace(fmt, cat, diagram),
        Command::BicatTrace { cat, diagram } => bicat(fmt, cat, diagram),
        Command::Verify { suite, seed, cases, artifacts, timing } => {
            verify(fmt, suite, *seed, *cases, artifacts, *timing)
        }
        Command::Gen { family, seed, category, max_objects, max_edges, max_dim, lo, hi } => {
            gen(family, *seed, category.as_deref(), *max_objects, *max_edges, *max_dim, (*lo, *hi))
        }
    }
}

fn properties(cat: &FinCat) -> Vec<(&'static str, bool)> {
    vec![
        ("skeletal", cat.is_skeletal()),
        ("strictly_homotopy_finite", cat.is_strictly_homotopy_finite()),
        ("ei", cat.is_ei()),
        ("groupoid", cat.is_groupoid()),
    ]
}

fn validate(fmt: Format, arg: &str) -> Result<Output, String> {
    let cat = load_category(arg)?;
    let props = properties(&cat);
    match fmt {
        Format::Json => {
            let p: Map<String, Value> = props.iter().map(|&(k, v)| (k.to_string(), json!(v))).collect();
            ok(pretty(&json!({
                "valid": true,
                "objects": cat.num_objects(),
                "arrows": cat.num_arrows(),
                "classes": cat.conjugacy_classes().len(),
                "properties": p,
            })))
        }
        Format::Text => {
            let mut s = format!(
                "valid: {} objects, {} arrows, {} conjugacy classes\n",
                cat.num_objects(),
                cat.num_arrows(),
                cat.conjugacy_classes().len()
            );
            for (k, v) in props {
                let _ = writeln!(s, "{k}: {v}");
            }
            ok(s)
        }
    }
}

fn classes(fmt: Format, arg: &str) -> Result<Output, String> {
    let cat = load_category(arg)?;
    let cc = cat.conjugacy_classes();
    let rows: Vec<(String, String, Vec<String>)> = cc
        .classes()
        .iter()
        .map(|c| {
            let names = c.iter().map(|&f| cat.arrow_name(f).to_string()).collect();
            (cat.arrow_name(c[0]).to_string(), cat.object_name(cat.src(c[0])).to_string(), names)
        })
        .collect();
    match fmt {
        Format::Json => {
            let v: Vec<Value> = rows.iter().map(|(r, o, m)| json!({"rep": r, "object": o, "members": m})).collect();
            ok(pretty(&json!({ "classes": v })))
        }
        Format::Text => {
            let mut s = String::new();
            for (r, o, m) in rows {
                let _ = writeln!(s, "[{r}] at {o}: {}", m.join(" "));
            }
            ok(s)
        }
    }
}

/// The coefficient vector and homotopy colimit pipeline that apply to `cat`,
/// preferring the most specific one.
fn method_for(cat: &FinCat) -> Option<&'static str> {
    if cat.is_strictly_homotopy_finite() {
        Some("hofin")
    } else if cat.num_objects() == 1 && cat.is_groupoid() {
        Some("group")
    } else if cat.is_groupoid() {
        Some("groupoid")
    } else if cat.is_ei() {
        Some("ei")
    } else {
        None
    }
}

fn coefficients(method: &str, cat: &FinCat) -> Result<CoeffVector, String> {
    let e = |e: lintrace::coeffs::CoeffError| format!("method {method}: {e}");
    match method {
        "hofin" => coeff_hofin(cat).map_err(e),
        "group" => {
            if !(cat.num_objects() == 1 && cat.is_groupoid()) {
                return Err("method group needs a one-object groupoid".into());
            }
            let (g, _) = cat.aut_group(0);
            CoeffVector::new(cat, coeff_group(&g).values().to_vec()).map_err(e)
        }
        "groupoid" => coeff_groupoid(cat).map_err(e),
        "ei" => coeff_ei(cat).map_err(e),
        "desouza" => coeff_ei_desouza(cat).map_err(e),
        other => Err(format!("unknown method {other:?}")),
    }
}

fn coeffs(fmt: Format, method: &str, arg: Option<&str>) -> Result<Output, String> {
    let cat = arg.map(load_category).transpose()?;
    if let Some(name) = method.strip_prefix("table:") {
        let v = coeff_table(name).ok_or_else(|| format!("no coefficient table named {name:?}"))?;
        if let Some(c) = &cat {
            if c != v.base() {
                return Err(format!("table {name} is over a different category"));
            }
        }
        return ok(show_vector(fmt, &v));
    }
    let cat = cat.ok_or("a category is required for this method")?;
    if method == "leinster" {
        return ok(match leinster_weighting(&cat) {
            WeightingResult::Found(w) => {
                let m = rat_map(&cat, cat.objects().map(|a| (cat.object_name(a).to_string(), w.values()[a].clone())));
                match fmt {
                    Format::Json => pretty(&json!({ "weighting": m })),
                    Format::Text => m.iter().map(|(k, v)| format!("{k}\t{}\n", v.as_str().unwrap_or(""))).collect(),
                }
            }
            WeightingResult::None(c) => {
                let m =
                    rat_map(&cat, cat.objects().map(|a| (cat.object_name(a).to_string(), c.combination[a].clone())));
                match fmt {
                    Format::Json => pretty(&json!({ "weighting": null, "certificate": m })),
                    Format::Text => format!("no weighting; rows combine to zero with weights {}\n", Value::Object(m)),
                }
            }
        });
    }
    let v = coefficients(method, &cat)?;
    ok(show_vector(fmt, &v))
}

fn show_vector(fmt: Format, v: &CoeffVector) -> String {
    match fmt {
        Format::Json => v.to_json(),
        Format::Text => v.to_string(),
    }
}

fn pipeline(x: &ChainDiagram, f: &ChainEndo) -> Result<(&'static str, HocolimResult), String> {
    let cat = x.cat();
    let method = method_for(cat).ok_or("no homotopy colimit pipeline: the category is not EI")?;
    let r = match method {
        "hofin" => hocolim_hofin(x).map(|h| h.with_endo(f)),
        "group" => coinvariants_group(x, f),
        "groupoid" => hocolim_groupoid(x, f),
        _ => hocolim_ei(x, f).map(|r| r.result),
    };
    Ok((method, r.map_err(|e| e.to_string())?))
}

fn degree_map(m: impl IntoIterator<Item = (i32, usize)>) -> Map<String, Value> {
    m.into_iter().map(|(n, d)| (n.to_string(), json!(d))).collect()
}

fn hocolim(fmt: Format, cat_arg: &str, diagram: &str) -> Result<Output, String> {
    let cat = load_category(cat_arg)?;
    let file = load_diagram(diagram, cat_arg, &cat)?;
    let (method, r) = pipeline(&file.diagram, &file.endo)?;
    let l = r.lefschetz();
    let dims = r.complex.dims();
    let hom = r.complex.homology_dims();
    match fmt {
        Format::Json => ok(pretty(&json!({
            "pipeline": method,
            "dims": degree_map(dims),
            "homology": degree_map(hom),
            "lefschetz": format_rational(&l),
        }))),
        Format::Text => {
            let mut s = format!("pipeline: {method}\n");
            for (n, d) in dims {
                let _ = writeln!(s, "degree {n}: dim {d}, homology {}", hom.get(&n).copied().unwrap_or(0));
            }
            let _ = writeln!(s, "lefschetz: {}", format_rational(&l));
            ok(s)
        }
    }
}

/// `lefschetz(f_a ∘ X_α)` at each class representative.
fn class_lefschetz(x: &ChainDiagram, f: &ChainEndo) -> Result<Vec<Rational>, String> {
    let cat = x.cat();
    cat.conjugacy_classes()
        .reps()
        .into_iter()
        .map(|alpha| lefschetz(&f.comps[cat.src(alpha)].after(x.map(alpha))).map_err(|e| e.to_string()))
        .collect()
}

fn trace(fmt: Format, cat_arg: &str, diagram: &str) -> Result<Output, String> {
    let cat = load_category(cat_arg)?;
    let file = load_diagram(diagram, cat_arg, &cat)?;
    let (method, r) = pipeline(&file.diagram, &file.endo)?;
    let phi = coefficients(method, &cat)?;
    let lhs = r.lefschetz();
    let rhs = phi.pair(&class_lefschetz(&file.diagram, &file.endo)?);
    let equal = lhs == rhs;
    let text = match fmt {
        Format::Json => pretty(&json!({
            "method": method,
            "lefschetz": format_rational(&lhs),
            "formula": format_rational(&rhs),
            "equal": equal,
        })),
        Format::Text => format!(
            "method: {method}\nlefschetz: {}\nformula: {}\n{}\n",
            format_rational(&lhs),
            format_rational(&rhs),
            if equal { "equal" } else { "MISMATCH" }
        ),
    };
    Ok(Output { text, code: if equal { 0 } else { 1 } })
}

fn bicat(fmt: Format, cat_arg: &str, diagram: &str) -> Result<Output, String> {
    let cat = Arc::new(load_category(cat_arg)?);
    let file = load_diagram(diagram, cat_arg, &cat)?;
    let x = &file.diagram;
    let reps = cat.conjugacy_classes().reps();
    let mut total = vec![Rational::from_integer(0.into()); reps.len()];
    if let Some((lo, hi)) = x.degree_range() {
        for n in lo..=hi {
            let xn = x.degree(n);
            let fnd = x.endo_degree(&file.endo, n);
            let w = dual_of_pointwise(&xn).map_err(|e| e.to_string())?;
            let t = bicat_trace(&w, &ProfMap { comps: fnd.comps }).map_err(|e| e.to_string())?;
            for (acc, v) in total.iter_mut().zip(t) {
                if n.rem_euclid(2) == 0 {
                    *acc += v;
                } else {
                    *acc -= v;
                }
            }
        }
    }
    let direct = class_lefschetz(x, &file.endo)?;
    let equal = direct == total;
    let m = rat_map(&cat, reps.iter().map(|&r| cat.arrow_name(r).to_string()).zip(total));
    let text = match fmt {
        Format::Json => pretty(&json!({ "components": m, "matches_pointwise": equal })),
        Format::Text => {
            let mut s: String = m.iter().map(|(k, v)| format!("[{k}]\t{}\n", v.as_str().unwrap_or(""))).collect();
            s.push_str(if equal { "matches pointwise traces\n" } else { "MISMATCH with pointwise traces\n" });
            s
        }
    };
    Ok(Output { text, code: if equal { 0 } else { 1 } })
}

fn verify(
    fmt: Format,
    suite: &str,
    seed: u64,
    cases: Option<usize>,
    artifacts: &Path,
    timing: bool,
) -> Result<Output, String> {
    let report = if suite == "all" {
        run_all(seed, cases)
    } else {
        let s = Suite::parse(suite).ok_or_else(|| format!("unknown suite {suite:?}"))?;
        run_suite(s, seed, cases)
    };
    let mut text = match fmt {
        Format::Json => report.to_json(timing),
        Format::Text => report.to_text(timing),
    };
    let code = if report.passed() { 0 } else { 1 };
    if code != 0 {
        let written = report.write_witnesses(artifacts).map_err(|e| format!("{}: {e}", artifacts.display()))?;
        if fmt == Format::Text {
            for p in written {
                let _ = writeln!(text, "witness written: {}", p.display());
            }
        }
    }
    Ok(Output { text, code })
}

fn gen(
    family: &str,
    seed: u64,
    category: Option<&str>,
    max_objects: usize,
    max_edges: usize,
    max_dim: usize,
    degrees: (i32, i32),
) -> Result<Output, String> {
    if max_objects == 0 || max_edges > 64 || degrees.0 > degrees.1 {
        return Err("bounds must be positive and degrees ordered".into());
    }
    match family {
        "hofin" => ok(gen_hofin_category(seed, max_objects, max_edges).to_json()),
        "hofin-diagram" => {
            let mut rng = case_rng(seed, 0);
            let cat = Arc::new(gen_hofin_with(&mut rng, max_objects, max_edges));
            let (x, f) = gen_chain_diagram(&mut rng, &cat, max_dim, degrees);
            ok(diagram_to_json(&x, Some(&f), None))
        }
        "diagram" => {
            let arg = category.ok_or("family diagram needs --category")?;
            let cat = Arc::new(load_category(arg)?);
            let mut rng = case_rng(seed, 0);
            let (x, f) = gen_chain_diagram(&mut rng, &cat, max_dim, degrees);
            let name = (!Path::new(arg).is_file()).then_some(arg);
            ok(diagram_to_json(&x, Some(&f), name))
        }
        other => Err(format!("unknown family {other:?}")),
    }
}
