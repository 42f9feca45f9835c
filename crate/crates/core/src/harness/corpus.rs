//! Named categories used by the verification suites and the command line.

use crate::coeffs::{leinster_weighting, WeightingResult};
use crate::fincat::{bg, builtin, delta_prime_op, disjoint_union, indiscrete, product, FinCat, FinGroup};

use super::gen::gen_hofin_category;

/// Coefficient methods, each with its own applicability predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Hofin,
    Group,
    Groupoid,
    Ei,
    Desouza,
    Leinster,
}

impl Method {
    pub const ALL: [Method; 6] =
        [Method::Hofin, Method::Group, Method::Groupoid, Method::Ei, Method::Desouza, Method::Leinster];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hofin => "hofin",
            Method::Group => "group",
            Method::Groupoid => "groupoid",
            Method::Ei => "ei",
            Method::Desouza => "desouza",
            Method::Leinster => "leinster",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn applies(self, cat: &FinCat) -> bool {
        match self {
            Method::Hofin => cat.is_strictly_homotopy_finite(),
            Method::Group => cat.num_objects() == 1 && cat.is_groupoid(),
            Method::Groupoid => cat.is_groupoid(),
            Method::Ei | Method::Desouza => cat.is_ei(),
            Method::Leinster => matches!(leinster_weighting(cat), WeightingResult::Found(_)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub cat: FinCat,
    pub methods: Vec<Method>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, cat: FinCat) -> Self {
        let methods = Method::ALL.into_iter().filter(|m| m.applies(&cat)).collect();
        CorpusEntry { name: name.into(), cat, methods }
    }

    pub fn has(&self, m: Method) -> bool {
        self.methods.contains(&m)
    }

    /// EI with a nontrivial automorphism somewhere.
    pub fn has_automorphisms(&self) -> bool {
        self.cat.is_ei() && self.cat.objects().any(|a| self.cat.endos(a).len() > 1)
    }
}

fn named(name: &str) -> CorpusEntry {
    CorpusEntry::new(name, builtin(name).expect("builtin category"))
}

/// Every named category the suites draw from.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = [
        "terminal",
        "walking_arrow",
        "span",
        "discrete3",
        "parallel3",
        "free_idempotent",
        "indiscrete3",
        "BC2",
        "BC3",
        "BC4",
        "BS3",
    ]
    .iter()
    .map(|n| named(n))
    .collect();
    out.extend((0..=5).map(|n| CorpusEntry::new(format!("delta_prime_op{n}"), delta_prime_op(n))));
    let c2 = bg(&FinGroup::cyclic(2));
    let c3 = bg(&FinGroup::cyclic(3));
    out.push(CorpusEntry::new("BC2+BC3", disjoint_union(&[&c2, &c3])));
    out.push(CorpusEntry::new("BC2xindiscrete2", product(&c2, &indiscrete(2))));
    out.extend(ei_names().iter().map(|n| named(n)));
    out.extend([11u64, 12, 13].map(|s| CorpusEntry::new(format!("dag{s}"), gen_hofin_category(s, 4, 5))));
    debug_assert!(out.iter().all(|e| e.cat.violations().is_empty()));
    out
}

/// Orbit categories and homomorphism categories with nontrivial automorphisms.
pub fn ei_names() -> [&'static str; 7] {
    ["OC2", "OC4", "OS3", "hom_C2_C2_id", "hom_C2_C2_triv", "hom_C2_C4", "hom_C3_S3"]
}

/// The curated EI entries followed by the degenerate families.
pub fn ei_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = ei_names().iter().map(|n| named(n)).collect();
    out.extend(["BC3", "BS3", "span", "walking_arrow"].iter().map(|n| named(n)));
    out.push(CorpusEntry::new("delta_prime_op2", delta_prime_op(2)));
    out
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name).or_else(|| builtin(name).map(|c| CorpusEntry::new(name, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_tagged() {
        let all = corpus();
        for e in &all {
            assert!(e.cat.violations().is_empty(), "{}", e.name);
        }
        let bs3 = all.iter().find(|e| e.name == "BS3").unwrap();
        assert!(bs3.has(Method::Group) && bs3.has(Method::Ei) && !bs3.has(Method::Hofin));
        let e = all.iter().find(|e| e.name == "free_idempotent").unwrap();
        assert!(e.has(Method::Leinster) && !e.has(Method::Ei));
        let curated: Vec<_> = ei_corpus().into_iter().filter(CorpusEntry::has_automorphisms).collect();
        assert!(curated.len() >= 5);
    }
}
