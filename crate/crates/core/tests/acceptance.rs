//! One line per acceptance criterion. Every comparison is exact rational
//! equality. The target fails if any criterion fails, after all are printed.

use std::panic::{catch_unwind, AssertUnwindSafe};

use lintrace::exactalg::{format_rational, Rational};
use lintrace::harness::{
    corpus, ei_corpus, suite_burnside, suite_cofiber, suite_component, suite_ei, suite_leinster, suite_linearity,
    suite_multiplicativity, suite_realiz, CaseResult, CorpusEntry,
};
use num_traits::{One, Zero};

const SEED: u64 = 0;

type Check = fn() -> Result<String, String>;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn with_prefix<'a>(cases: &'a [CaseResult], prefix: &str) -> Vec<&'a CaseResult> {
    cases.iter().filter(|c| c.label.starts_with(prefix)).collect()
}

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Every case is equal and there are at least `min` of them.
fn all_equal(what: &str, cases: &[&CaseResult], min: usize) -> Result<(), String> {
    if cases.len() < min {
        return Err(format!("{what}: {} cases, need at least {min}", cases.len()));
    }
    if let Some(c) = cases.iter().find(|c| !c.equal) {
        return Err(format!(
            "{what}: case {} ({}) lhs=[{}] rhs=[{}] {}",
            c.id,
            c.label,
            show(&c.lhs),
            show(&c.rhs),
            c.error.as_deref().unwrap_or("")
        ));
    }
    Ok(())
}

fn expect_values(c: &CaseResult, expected: &[Rational]) -> Result<(), String> {
    if c.lhs != expected {
        return Err(format!("{}: got [{}], expected [{}]", c.label, show(&c.lhs), show(expected)));
    }
    Ok(())
}

fn criterion_1() -> Result<String, String> {
    let cases = suite_component(SEED, 200);
    let generated: Vec<&CaseResult> = cases.iter().filter(|c| c.label != "fixed idempotent").collect();
    all_equal("generated", &generated, 200)?;
    all_equal("component", &cases.iter().collect::<Vec<_>>(), 201)?;
    Ok(format!("{} generated cases", generated.len()))
}

fn criterion_2() -> Result<String, String> {
    let cases = suite_linearity(SEED, 100);
    all_equal("free dag", &with_prefix(&cases, "dag "), 100)?;
    let span = with_prefix(&cases, "fixed span");
    let [span] = span.as_slice() else { return Err("span case missing".into()) };
    expect_values(span, &[int(-1), int(1), int(1)])?;
    for n in 0..5i64 {
        let label = format!("fixed parallel{} ", n + 1);
        let found = with_prefix(&cases, &label);
        let [c] = found.as_slice() else { return Err(format!("{label} missing")) };
        expect_values(c, &[int(-n), int(1)])?;
    }
    all_equal("linearity", &cases.iter().collect::<Vec<_>>(), 106)?;
    Ok(format!("{} cases", cases.len()))
}

fn criterion_3() -> Result<String, String> {
    let cases = suite_cofiber(SEED, 100);
    all_equal("cone", &with_prefix(&cases, "cone"), 100)?;
    Ok(format!("{} cones", cases.len()))
}

fn criterion_4() -> Result<String, String> {
    let cases = suite_burnside(SEED, 50);
    for g in ["C2", "C3", "C4", "S3"] {
        all_equal(g, &with_prefix(&cases, &format!("complex {g}")), 1)?;
    }
    all_equal("complexes", &with_prefix(&cases, "complex "), 50)?;
    all_equal("G-sets", &with_prefix(&cases, "gset "), 50)?;
    Ok(format!("{} cases", cases.len()))
}

fn criterion_5() -> Result<String, String> {
    let curated: Vec<CorpusEntry> = ei_corpus().into_iter().filter(CorpusEntry::has_automorphisms).collect();
    if curated.len() < 5 {
        return Err(format!("only {} EI categories with automorphisms", curated.len()));
    }
    let cases = suite_ei(SEED, 28);
    for e in &curated {
        let label = format!("formulas {}", e.name);
        let found: Vec<&CaseResult> = cases.iter().filter(|c| c.label == label).collect();
        all_equal(&label, &found, 1)?;
    }
    all_equal("collapse to group", &with_prefix(&cases, "collapse group "), 2)?;
    all_equal("collapse to poset", &with_prefix(&cases, "collapse hofin "), 2)?;
    all_equal("EI linearity", &with_prefix(&cases, "linearity "), 28)?;
    all_equal("ei", &cases.iter().collect::<Vec<_>>(), 1)?;
    Ok(format!("{} categories, {} cases", curated.len(), cases.len()))
}

fn criterion_6() -> Result<String, String> {
    let cases = suite_realiz(SEED, 20);
    for n in 0..=5usize {
        let label = format!("realization n={n}");
        let found: Vec<&CaseResult> = cases.iter().filter(|c| c.label == label).collect();
        let [c] = found.as_slice() else { return Err(format!("{label} missing")) };
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        expect_values(c, &[sign])?;
    }
    let components = with_prefix(&cases, "loop components ");
    all_equal("loop components", &components, corpus().len())?;
    all_equal("stabilizer", &with_prefix(&cases, "stabilizer "), 20)?;
    Ok(format!("{} cases", cases.len()))
}

fn criterion_7() -> Result<String, String> {
    let cases = suite_leinster(SEED, 20);
    let idem = with_prefix(&cases, "idempotent n=");
    for (n, c) in (1..=5i64).zip(&idem) {
        expect_values(c, &[int(n), int(n)])?;
    }
    all_equal("idempotent family", &idem, 5)?;
    let reps: Vec<&CaseResult> = cases.iter().filter(|c| c.label.contains(" representables=")).collect();
    all_equal("representables", &reps, 20)?;
    Ok(format!("{} cases", cases.len()))
}

fn criterion_8() -> Result<String, String> {
    let cases = suite_multiplicativity(SEED, 50);
    all_equal("tensor", &with_prefix(&cases, "tensor "), 50)?;
    all_equal("suspension", &with_prefix(&cases, "suspension"), 1)?;
    all_equal("idempotent split", &with_prefix(&cases, "idempotent split"), 1)?;
    all_equal("coproduct", &with_prefix(&cases, "coproduct "), 1)?;
    if cases.iter().all(|c| c.lhs.iter().all(Rational::is_zero)) {
        return Err("every trace vanished".into());
    }
    Ok(format!("{} cases", cases.len()))
}

fn main() {
    let criteria: [(usize, &str, Check); 8] = [
        (1, "component traces", criterion_1),
        (2, "homotopy finite linearity", criterion_2),
        (3, "cofiber additivity", criterion_3),
        (4, "orbit counting", criterion_4),
        (5, "EI formulas", criterion_5),
        (6, "combinatorial identities", criterion_6),
        (7, "Leinster comparison", criterion_7),
        (8, "small fixed facts", criterion_8),
    ];
    let mut failed = Vec::new();
    for (n, name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {n} ({name}): PASS [{detail}]"),
            Err(why) => {
                println!("criterion {n} ({name}): FAIL [{why}]");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
