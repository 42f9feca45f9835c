//! Deterministic generators and verification suites. Every suite compares two
//! independently computed exact quantities per case and records both.

mod corpus;
mod gen;
mod suites;

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use crate::exactalg::{format_rational, Rational};

pub use corpus::{corpus, corpus_entry, ei_corpus, ei_names, CorpusEntry, Method};
pub use gen::{
    block_pool, case_rng, chain_map_basis, gen_chain_diagram, gen_hofin_category, gen_hofin_with, gen_vect_diagram,
    group_rep, random_chain_endo, random_chain_map, random_complex, random_dag, random_matrix, random_unimodular,
    random_vect_endo, rep_diagram, small_int, sum_chain_diagrams, tensor_with_complex, CaseRng, Rep, MAX_ARROWS, REPS,
};
pub use suites::{
    random_gset, run_all, run_suite, suite_burnside, suite_cofiber, suite_component, suite_ei, suite_leinster,
    suite_linearity, suite_multiplicativity, suite_realiz, suite_sets, Suite,
};

/// Serialized inputs of a failing case, written out as files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub category: String,
    pub diagram: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub suite: String,
    pub id: usize,
    pub label: String,
    pub seed: u64,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub equal: bool,
    pub error: Option<String>,
    pub micros: u128,
    pub witness: Option<Witness>,
}

impl CaseResult {
    fn to_json(&self, timing: bool) -> Value {
        let fmt = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let mut out = json!({
            "suite": self.suite,
            "id": self.id,
            "label": self.label,
            "seed": self.seed,
            "lhs": fmt(&self.lhs),
            "rhs": fmt(&self.rhs),
            "equal": self.equal,
        });
        if let Some(e) = &self.error {
            out["error"] = json!(e);
        }
        if timing {
            out["micros"] = json!(self.micros as u64);
        }
        out
    }
}

/// Results of one or more suites, ordered by suite and case id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.equal)
    }

    pub fn count(&self, suite: &str) -> usize {
        self.cases.iter().filter(|c| c.suite == suite).count()
    }

    /// Cases whose label starts with `prefix`.
    pub fn labelled<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CaseResult> + 'a {
        self.cases.iter().filter(move |c| c.label.starts_with(prefix))
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.cases.extend(other.cases);
    }

    /// One line per case followed by a per-suite summary. Timings are left
    /// out unless asked for so that output is reproducible byte for byte.
    pub fn to_text(&self, timing: bool) -> String {
        let mut s = String::new();
        let fmt = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        for c in &self.cases {
            let status = if c.equal { "ok  " } else { "FAIL" };
            let _ = write!(s, "{status} {}#{} {} lhs=[{}] rhs=[{}]", c.suite, c.id, c.label, fmt(&c.lhs), fmt(&c.rhs));
            if let Some(e) = &c.error {
                let _ = write!(s, " error={e}");
            }
            if timing {
                let _ = write!(s, " {}us", c.micros);
            }
            s.push('\n');
        }
        let mut suites: Vec<&str> = Vec::new();
        for c in &self.cases {
            if !suites.contains(&c.suite.as_str()) {
                suites.push(&c.suite);
            }
        }
        for name in suites {
            let total = self.count(name);
            let ok = self.cases.iter().filter(|c| c.suite == name && c.equal).count();
            let _ = writeln!(s, "suite {name}: {ok}/{total} passed");
        }
        let _ = writeln!(s, "seed {}: {}", self.seed, if self.passed() { "all passed" } else { "FAILURES" });
        s
    }

    pub fn to_json(&self, timing: bool) -> String {
        let v = json!({
            "seed": self.seed,
            "passed": self.passed(),
            "cases": self.cases.iter().map(|c| c.to_json(timing)).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&v).expect("report serialises")
    }

    /// Writes `<suite>-<id>.category.json` and `<suite>-<id>.diagram.json`
    /// for each failing case with a witness. Returns the files written.
    pub fn write_witnesses(&self, dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
        let mut written = Vec::new();
        for c in self.failures() {
            let Some(w) = &c.witness else { continue };
            std::fs::create_dir_all(dir)?;
            let stem = format!("{}-{}", c.suite, c.id);
            let p = dir.join(format!("{stem}.category.json"));
            std::fs::write(&p, &w.category)?;
            written.push(p);
            if let Some(d) = &w.diagram {
                let p = dir.join(format!("{stem}.diagram.json"));
                std::fs::write(&p, d)?;
                written.push(p);
            }
        }
        Ok(written)
    }
}
