//! Finite categories as explicit composition tables, and the combinatorics
//! built on them.

mod construct;
mod functor;
mod group;
mod skeleton;
mod table;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use thiserror::Error;

pub use construct::{
    bg, builtin, category_from_group_hom, delta_prime_op, discrete, disjoint_union, free_category_on_dag,
    free_idempotent, indiscrete, lambda_cat, opposite, orbit_category, parallel_arrows, product, span, terminal,
    twisted_arrow, walking_arrow, Dag, LambdaCat, BUILTIN_NAMES,
};
pub use functor::Functor;
pub use group::{FinGroup, GroupAction};
pub use skeleton::{
    act_on_string, full_subcategory, poset_reflection, skeletalize, string_iso_classes, PosetReflection, Skeleton,
    StringClass, StringOrbits,
};
pub use table::{validate, ArrowEntry, CatTable, ComposeEntry, Violation};

pub type ObjId = usize;
pub type ArrowId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinCatError {
    #[error("invalid category: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("category is not EI")]
    NotEI,
    #[error("category is not skeletal EI")]
    NotSkeletalEI,
    #[error("category is not strictly homotopy finite")]
    NotStrictlyHoFin,
    #[error("category is not a groupoid")]
    NotGroupoid,
    #[error("object chain is not strictly increasing")]
    ChainNotIncreasing,
    #[error("graph has a directed cycle")]
    Cyclic,
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("invalid construction input: {0}")]
    BadInput(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

/// A finite category.
///
/// Composites are stored per arrow `f` as a row aligned with the outgoing
/// arrows of `dst(f)`, so the table holds exactly the composable pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrowId>,
    out: Vec<Vec<ArrowId>>,
    out_pos: Vec<usize>,
    homs: Vec<Vec<ArrowId>>,
    comp: Vec<Vec<ArrowId>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat").field("objects", &self.objects).field("arrows", &self.arrows.len()).finish()
    }
}

impl FinCat {
    /// Assembles a category from its parts and a composition closure `(g, f) -> g∘f`
    /// that is queried on every composable pair. No laws are checked; use
    /// [`FinCat::violations`] for that.
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        mut compose: impl FnMut(ArrowId, ArrowId) -> ArrowId,
    ) -> FinCat {
        let n = objects.len();
        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; arrows.len()];
        let mut homs = vec![Vec::new(); n * n];
        for (i, a) in arrows.iter().enumerate() {
            out_pos[i] = out[a.src].len();
            out[a.src].push(i);
            homs[a.src * n + a.dst].push(i);
        }
        let comp =
            arrows.iter().enumerate().map(|(f, a)| out[a.dst].iter().map(|&g| compose(g, f)).collect()).collect();
        FinCat { objects, arrows, identities, out, out_pos, homs, comp }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn arrow_ids(&self) -> std::ops::Range<ArrowId> {
        0..self.arrows.len()
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, f: ArrowId) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.arrows[f].name
    }

    pub fn src(&self, f: ArrowId) -> ObjId {
        self.arrows[f].src
    }

    pub fn dst(&self, f: ArrowId) -> ObjId {
        self.arrows[f].dst
    }

    pub fn id(&self, a: ObjId) -> ArrowId {
        self.identities[a]
    }

    pub fn is_identity(&self, f: ArrowId) -> bool {
        self.identities[self.src(f)] == f
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows `a -> b` in increasing id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[ArrowId] {
        &self.homs[a * self.num_objects() + b]
    }

    pub fn endos(&self, a: ObjId) -> &[ArrowId] {
        self.hom(a, a)
    }

    /// Arrows with source `a`.
    pub fn out_arrows(&self, a: ObjId) -> &[ArrowId] {
        &self.out[a]
    }

    /// `g ∘ f`, or `None` when `dst(f) != src(g)`.
    pub fn try_compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        (self.dst(f) == self.src(g)).then(|| self.comp[f][self.out_pos[g]])
    }

    /// `g ∘ f`; panics when the pair is not composable.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> ArrowId {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("arrows {} and {} are not composable", self.arrow_name(g), self.arrow_name(f)))
    }

    /// Composite of a path listed in application order (first arrow first).
    pub fn compose_path(&self, path: &[ArrowId]) -> ArrowId {
        let mut it = path.iter();
        let first = *it.next().expect("empty path");
        it.fold(first, |acc, &g| self.compose(g, acc))
    }

    /// Law violations of this table; empty for a genuine category.
    pub fn violations(&self) -> Vec<Violation> {
        table::check_laws(self)
    }

    /// Inverse of `f` if it is an isomorphism.
    pub fn inverse(&self, f: ArrowId) -> Option<ArrowId> {
        let (a, b) = (self.src(f), self.dst(f));
        self.hom(b, a).iter().copied().find(|&g| self.compose(g, f) == self.id(a) && self.compose(f, g) == self.id(b))
    }

    pub fn is_iso(&self, f: ArrowId) -> bool {
        self.inverse(f).is_some()
    }

    /// Least-id isomorphism `a -> b`.
    pub fn iso_between(&self, a: ObjId, b: ObjId) -> Option<ArrowId> {
        self.hom(a, b).iter().copied().find(|&f| self.is_iso(f))
    }

    /// Automorphism group of `a` with the arrow realising each element.
    pub fn aut_group(&self, a: ObjId) -> (FinGroup, Vec<ArrowId>) {
        let autos: Vec<ArrowId> = self.endos(a).iter().copied().filter(|&f| self.is_iso(f)).collect();
        let names = autos.iter().map(|&f| self.arrow_name(f).to_string()).collect();
        let group =
            FinGroup::from_elements(&autos, names, |&g, &f| self.compose(g, f)).expect("automorphisms form a group");
        (group, autos)
    }

    pub fn is_ei(&self) -> bool {
        self.objects().all(|a| self.endos(a).iter().all(|&f| self.is_iso(f)))
    }

    pub fn is_groupoid(&self) -> bool {
        self.arrow_ids().all(|f| self.is_iso(f))
    }

    pub fn is_skeletal(&self) -> bool {
        self.objects().all(|a| self.objects().filter(|&b| b != a).all(|b| self.iso_between(a, b).is_none()))
    }

    /// Skeletal with no nonidentity endomorphisms.
    pub fn is_strictly_homotopy_finite(&self) -> bool {
        self.objects().all(|a| self.endos(a).len() == 1) && self.is_skeletal()
    }

    pub fn conjugacy_classes(&self) -> ConjClasses {
        ConjClasses::of(self)
    }
}

/// Partition of the endomorphisms of a category under `α∘β ∼ β∘α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    classes: Vec<Vec<ArrowId>>,
    class_of: Vec<Option<usize>>,
}

impl ConjClasses {
    fn of(cat: &FinCat) -> ConjClasses {
        let n = cat.num_arrows();
        let mut uf = UnionFind::<usize>::new(n);
        for a in cat.objects() {
            for b in cat.objects() {
                for &alpha in cat.hom(a, b) {
                    for &beta in cat.hom(b, a) {
                        uf.union(cat.compose(beta, alpha), cat.compose(alpha, beta));
                    }
                }
            }
        }
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<ArrowId>> = Vec::new();
        let mut class_of = vec![None; n];
        // endomorphisms in increasing id order, so each class is sorted and
        // classes come out ordered by their least member
        for f in cat.arrow_ids().filter(|&f| cat.src(f) == cat.dst(f)) {
            let root = uf.find(f);
            let idx = *by_root.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(f);
            class_of[f] = Some(idx);
        }
        ConjClasses { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<ArrowId>] {
        &self.classes
    }

    /// Least arrow id of class `i`.
    pub fn rep(&self, i: usize) -> ArrowId {
        self.classes[i][0]
    }

    pub fn reps(&self) -> Vec<ArrowId> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Class index of an endomorphism.
    pub fn class_of(&self, f: ArrowId) -> Option<usize> {
        self.class_of.get(f).copied().flatten()
    }
}

/// Composable string of nonidentity arrows `a0 -> a1 -> ... -> ak`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowString {
    pub start: ObjId,
    pub arrows: Vec<ArrowId>,
}

impl ArrowString {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Objects visited, starting with `start`.
    pub fn objects(&self, cat: &FinCat) -> Vec<ObjId> {
        std::iter::once(self.start).chain(self.arrows.iter().map(|&f| cat.dst(f))).collect()
    }

    pub fn end(&self, cat: &FinCat) -> ObjId {
        self.arrows.last().map_or(self.start, |&f| cat.dst(f))
    }
}

/// Number of nonidentity strings of length `k` starting at `a`.
pub fn count_strings(cat: &FinCat, a: ObjId, k: usize) -> BigUint {
    // counts[b] = strings of the current length starting at b
    let mut counts = vec![BigUint::one(); cat.num_objects()];
    for _ in 0..k {
        counts = cat
            .objects()
            .map(|b| {
                cat.out_arrows(b)
                    .iter()
                    .filter(|&&f| !cat.is_identity(f))
                    .fold(BigUint::zero(), |acc, &f| acc + &counts[cat.dst(f)])
            })
            .collect();
    }
    counts.swap_remove(a)
}

/// All nonidentity strings of length `k` starting at `a`, in lexicographic order.
pub fn strings_from(cat: &FinCat, a: ObjId, k: usize) -> Vec<ArrowString> {
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k);
    fn rec(cat: &FinCat, at: ObjId, k: usize, start: ObjId, path: &mut Vec<ArrowId>, out: &mut Vec<ArrowString>) {
        if path.len() == k {
            out.push(ArrowString { start, arrows: path.clone() });
            return;
        }
        for &f in cat.out_arrows(at) {
            if !cat.is_identity(f) {
                path.push(f);
                rec(cat, cat.dst(f), k, start, path, out);
                path.pop();
            }
        }
    }
    rec(cat, a, k, a, &mut path, &mut out);
    out
}

/// All nonidentity strings of length `k`, grouped by start object in order.
pub fn all_strings(cat: &FinCat, k: usize) -> Vec<ArrowString> {
    cat.objects().flat_map(|a| strings_from(cat, a, k)).collect()
}

/// Length of the longest nonidentity string; requires strict homotopy finiteness.
pub fn max_string_length(cat: &FinCat) -> Result<usize, FinCatError> {
    if !cat.is_strictly_homotopy_finite() {
        return Err(FinCatError::NotStrictlyHoFin);
    }
    let mut k = 0;
    while cat.objects().any(|a| !count_strings(cat, a, k + 1).is_zero()) {
        k += 1;
    }
    Ok(k)
}

/// Arrows that cannot be written as a composite of two nonidentity arrows
/// (plus, inside endomorphism monoids, enough elements to generate them).
/// Every arrow is a composite of generators.
pub fn generating_arrows(cat: &FinCat) -> Vec<ArrowId> {
    let mut generated = vec![false; cat.num_arrows()];
    for a in cat.objects() {
        generated[cat.id(a)] = true;
    }
    let mut gens = Vec::new();
    loop {
        // close under composition
        let mut changed = true;
        while changed {
            changed = false;
            for f in cat.arrow_ids() {
                if !generated[f] {
                    continue;
                }
                for &g in cat.out_arrows(cat.dst(f)) {
                    if generated[g] {
                        let h = cat.compose(g, f);
                        if !generated[h] {
                            generated[h] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        match cat.arrow_ids().find(|&f| !generated[f]) {
            Some(f) => {
                generated[f] = true;
                gens.push(f);
            }
            None => return gens,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_strings() {
        let c = span();
        let a = c.object_by_name("a").unwrap();
        assert_eq!(count_strings(&c, a, 0), BigUint::from(1u32));
        assert_eq!(count_strings(&c, a, 1), BigUint::from(2u32));
        assert_eq!(count_strings(&c, a, 2), BigUint::from(0u32));
        assert_eq!(strings_from(&c, a, 1).len(), 2);
        assert_eq!(max_string_length(&c).unwrap(), 1);
    }

    #[test]
    fn idempotent_classes() {
        let e = free_idempotent();
        assert_eq!(e.conjugacy_classes().len(), 2);
        assert!(!e.is_ei());
    }

    #[test]
    fn s3_classes_match_group() {
        let c = bg(&FinGroup::symmetric(3));
        let cc = c.conjugacy_classes();
        assert_eq!(cc.len(), 3);
        assert!(c.is_ei());
        assert!(!c.is_strictly_homotopy_finite());
    }

    #[test]
    fn generators_of_dag_are_edges() {
        let c = walking_arrow();
        assert_eq!(generating_arrows(&c).len(), 1);
        let g = bg(&FinGroup::cyclic(4));
        assert_eq!(generating_arrows(&g).len(), 1);
    }
}
