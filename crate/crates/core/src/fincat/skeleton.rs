use std::collections::HashMap;

use super::{Arrow, ArrowId, ArrowString, FinCat, FinCatError, FinGroup, ObjId};

/// Full subcategory on one object per isomorphism class, with the data
/// needed to move between it and the original category.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub cat: FinCat,
    /// Skeleton object `i` is original object `reps[i]`.
    pub reps: Vec<ObjId>,
    /// Original object to skeleton object.
    pub obj_map: Vec<ObjId>,
    /// For each original object `a`, the chosen iso `a -> reps[obj_map[a]]`.
    pub to_rep: Vec<ArrowId>,
    /// Inverse of `to_rep`.
    pub from_rep: Vec<ArrowId>,
    /// Skeleton arrow to original arrow.
    pub embed: Vec<ArrowId>,
    /// Original arrow `α: a -> b` to `to_rep[b] ∘ α ∘ from_rep[a]`.
    pub arrow_map: Vec<ArrowId>,
}

pub fn skeletalize(cat: &FinCat) -> Skeleton {
    let n = cat.num_objects();
    let mut obj_map = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut to_rep = vec![0; n];
    let mut from_rep = vec![0; n];
    for a in cat.objects() {
        if obj_map[a] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(a);
        obj_map[a] = idx;
        to_rep[a] = cat.id(a);
        from_rep[a] = cat.id(a);
        for b in (a + 1)..n {
            if obj_map[b] == usize::MAX {
                if let Some(iso) = cat.iso_between(b, a) {
                    obj_map[b] = idx;
                    to_rep[b] = iso;
                    from_rep[b] = cat.inverse(iso).expect("iso has an inverse");
                }
            }
        }
    }
    let (sub, embed) = full_subcategory(cat, &reps);
    let mut back = vec![usize::MAX; cat.num_arrows()];
    for (i, &f) in embed.iter().enumerate() {
        back[f] = i;
    }
    let arrow_map = cat
        .arrow_ids()
        .map(|f| {
            let moved = cat.compose(to_rep[cat.dst(f)], cat.compose(f, from_rep[cat.src(f)]));
            back[moved]
        })
        .collect();
    Skeleton { cat: sub, reps, obj_map, to_rep, from_rep, embed, arrow_map }
}

/// Full subcategory on `objs` (in the given order) and its arrow embedding.
pub fn full_subcategory(cat: &FinCat, objs: &[ObjId]) -> (FinCat, Vec<ArrowId>) {
    let mut pos = vec![usize::MAX; cat.num_objects()];
    for (i, &a) in objs.iter().enumerate() {
        pos[a] = i;
    }
    let embed: Vec<ArrowId> =
        cat.arrow_ids().filter(|&f| pos[cat.src(f)] != usize::MAX && pos[cat.dst(f)] != usize::MAX).collect();
    let mut back = vec![usize::MAX; cat.num_arrows()];
    for (i, &f) in embed.iter().enumerate() {
        back[f] = i;
    }
    let arrows = embed
        .iter()
        .map(|&f| Arrow { name: cat.arrow_name(f).to_string(), src: pos[cat.src(f)], dst: pos[cat.dst(f)] })
        .collect();
    let ids = objs.iter().map(|&a| back[cat.id(a)]).collect();
    let names = objs.iter().map(|&a| cat.object_name(a).to_string()).collect();
    let sub = FinCat::from_fn(names, arrows, ids, |g, f| back[cat.compose(embed[g], embed[f])]);
    (sub, embed)
}

/// Preorder reflection of a skeletal EI category, which is a poset.
#[derive(Clone, Debug)]
pub struct PosetReflection {
    pub poset: FinCat,
    /// Each arrow of the input to the unique poset arrow between its endpoints.
    pub arrow_map: Vec<ArrowId>,
}

impl PosetReflection {
    pub fn leq(&self, a: ObjId, b: ObjId) -> bool {
        !self.poset.hom(a, b).is_empty()
    }

    pub fn lt(&self, a: ObjId, b: ObjId) -> bool {
        a != b && self.leq(a, b)
    }

    /// All strictly increasing chains `a_0 < ... < a_n`, shortest first.
    pub fn chains(&self) -> Vec<Vec<ObjId>> {
        let n = self.poset.num_objects();
        let mut out: Vec<Vec<ObjId>> = Vec::new();
        let mut layer: Vec<Vec<ObjId>> = (0..n).map(|a| vec![a]).collect();
        while !layer.is_empty() {
            out.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for c in &layer {
                let last = *c.last().expect("nonempty chain");
                for b in (0..n).filter(|&b| self.lt(last, b)) {
                    let mut d = c.clone();
                    d.push(b);
                    next.push(d);
                }
            }
            layer = next;
        }
        out
    }
}

pub fn poset_reflection(cat: &FinCat) -> Result<PosetReflection, FinCatError> {
    if !cat.is_ei() || !cat.is_skeletal() {
        return Err(FinCatError::NotSkeletalEI);
    }
    let n = cat.num_objects();
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    for a in cat.objects() {
        for b in cat.objects() {
            if !cat.hom(a, b).is_empty() {
                index.insert((a, b), arrows.len());
                let name = if a == b {
                    format!("id_{}", cat.object_name(a))
                } else {
                    format!("{}<={}", cat.object_name(a), cat.object_name(b))
                };
                arrows.push(Arrow { name, src: a, dst: b });
            }
        }
    }
    let ids = (0..n).map(|a| index[&(a, a)]).collect();
    let ends: Vec<(ObjId, ObjId)> = arrows.iter().map(|a| (a.src, a.dst)).collect();
    let poset = FinCat::from_fn(cat.object_names().to_vec(), arrows, ids, |g, f| index[&(ends[f].0, ends[g].1)]);
    let arrow_map = cat.arrow_ids().map(|f| index[&(cat.src(f), cat.dst(f))]).collect();
    Ok(PosetReflection { poset, arrow_map })
}

/// One isomorphism class of strings over a fixed object chain.
#[derive(Clone, Debug)]
pub struct StringClass {
    /// Least string in the orbit.
    pub rep: ArrowString,
    /// Stabiliser elements as tuples `(g_0, ..., g_n)` of automorphisms, sorted.
    pub stabilizer: Vec<Vec<ArrowId>>,
    /// The stabiliser as an abstract group; element `i` is `stabilizer[i]`.
    pub aut: FinGroup,
    pub orbit_size: usize,
}

/// Orbits of `Π Aut(a_i)` on strings over the chain `a_0 < ... < a_n`,
/// acting by `α_i ↦ g_i α_i g_{i-1}⁻¹`.
#[derive(Clone, Debug)]
pub struct StringOrbits {
    pub chain: Vec<ObjId>,
    pub classes: Vec<StringClass>,
    /// Order of the full group `Π Aut(a_i)`.
    pub group_order: usize,
    locate: HashMap<Vec<ArrowId>, (usize, Vec<ArrowId>)>,
}

impl StringOrbits {
    /// Class of a string, and a group element `g` with `g · rep = string`.
    pub fn locate(&self, arrows: &[ArrowId]) -> Option<(usize, &[ArrowId])> {
        self.locate.get(arrows).map(|(c, g)| (*c, g.as_slice()))
    }

    pub fn total_strings(&self) -> usize {
        self.locate.len()
    }
}

/// Applies `(g_i)` to a string over the chain.
pub fn act_on_string(cat: &FinCat, g: &[ArrowId], inv: &[ArrowId], z: &[ArrowId]) -> Vec<ArrowId> {
    z.iter().enumerate().map(|(i, &a)| cat.compose(g[i + 1], cat.compose(a, inv[i]))).collect()
}

pub fn string_iso_classes(cat: &FinCat, chain: &[ObjId]) -> Result<StringOrbits, FinCatError> {
    if chain.is_empty() {
        return Err(FinCatError::ChainNotIncreasing);
    }
    let refl = poset_reflection(cat)?;
    if chain.windows(2).any(|w| !refl.lt(w[0], w[1])) {
        return Err(FinCatError::ChainNotIncreasing);
    }
    let auts: Vec<Vec<ArrowId>> = chain.iter().map(|&a| cat.endos(a).to_vec()).collect();
    let group: Vec<Vec<ArrowId>> = cartesian(&auts);
    let inverses: Vec<Vec<ArrowId>> =
        group.iter().map(|g| g.iter().map(|&x| cat.inverse(x).expect("EI automorphism")).collect()).collect();
    let homs: Vec<Vec<ArrowId>> = chain.windows(2).map(|w| cat.hom(w[0], w[1]).to_vec()).collect();
    let strings = cartesian(&homs);
    let mut locate: HashMap<Vec<ArrowId>, (usize, Vec<ArrowId>)> = HashMap::new();
    let mut classes = Vec::new();
    for z in strings {
        if locate.contains_key(&z) {
            continue;
        }
        let idx = classes.len();
        let mut stabilizer = Vec::new();
        for (g, inv) in group.iter().zip(&inverses) {
            let moved = act_on_string(cat, g, inv, &z);
            if moved == z {
                stabilizer.push(g.clone());
            }
            locate.entry(moved).or_insert_with(|| (idx, g.clone()));
        }
        stabilizer.sort();
        let names =
            stabilizer.iter().map(|t| t.iter().map(|&x| cat.arrow_name(x)).collect::<Vec<_>>().join(",")).collect();
        let aut = FinGroup::from_elements(&stabilizer, names, |x: &Vec<ArrowId>, y: &Vec<ArrowId>| {
            x.iter().zip(y).map(|(&p, &q)| cat.compose(p, q)).collect()
        })?;
        let orbit_size = group.len() / stabilizer.len();
        classes.push(StringClass { rep: ArrowString { start: chain[0], arrows: z }, stabilizer, aut, orbit_size });
    }
    Ok(StringOrbits { chain: chain.to_vec(), classes, group_order: group.len(), locate })
}

/// Cartesian product in lexicographic order; a single empty tuple for no factors.
fn cartesian(factors: &[Vec<ArrowId>]) -> Vec<Vec<ArrowId>> {
    let mut out = vec![Vec::new()];
    for f in factors {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                f.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{bg, category_from_group_hom, disjoint_union, indiscrete, product, span};

    #[test]
    fn skeleton_of_connected_groupoid() {
        let c = product(&bg(&FinGroup::cyclic(2)), &indiscrete(2));
        assert!(!c.is_skeletal());
        let s = skeletalize(&c);
        assert_eq!(s.cat.num_objects(), 1);
        assert_eq!(s.cat.num_arrows(), 2);
        assert!(s.cat.violations().is_empty());
        // transport respects composition
        for f in c.arrow_ids() {
            for &g in c.out_arrows(c.dst(f)) {
                assert_eq!(s.arrow_map[c.compose(g, f)], s.cat.compose(s.arrow_map[g], s.arrow_map[f]));
            }
        }
    }

    #[test]
    fn reflection_of_group_hom_category() {
        let c2 = FinGroup::cyclic(2);
        let c = category_from_group_hom(&c2, &c2, &[0, 1]).unwrap();
        let r = poset_reflection(&c).unwrap();
        assert_eq!(r.poset.num_arrows(), 3);
        assert!(r.lt(0, 1));
        assert!(poset_reflection(&bg(&c2)).unwrap().poset.num_arrows() == 1);
        let u = disjoint_union(&[&bg(&c2), &bg(&c2)]);
        assert!(poset_reflection(&u).is_ok());
    }

    #[test]
    fn string_classes_identity_hom() {
        let c2 = FinGroup::cyclic(2);
        let c = category_from_group_hom(&c2, &c2, &[0, 1]).unwrap();
        let o = string_iso_classes(&c, &[0, 1]).unwrap();
        assert_eq!(o.classes.len(), 1);
        assert_eq!(o.classes[0].aut.order(), 2);
        let single = string_iso_classes(&c, &[0]).unwrap();
        assert_eq!(single.classes.len(), 1);
        assert_eq!(single.classes[0].aut.order(), 2);
    }

    #[test]
    fn string_classes_trivial_hom() {
        let c2 = FinGroup::cyclic(2);
        let c = category_from_group_hom(&c2, &c2, &[0, 0]).unwrap();
        let o = string_iso_classes(&c, &[0, 1]).unwrap();
        assert_eq!(o.classes.len(), 1);
        assert_eq!(o.classes[0].aut.order(), 2);
        assert_eq!(o.classes[0].orbit_size, 2);
    }

    #[test]
    fn rejects_bad_chain() {
        let c = span();
        assert_eq!(string_iso_classes(&c, &[1, 0]).unwrap_err(), FinCatError::ChainNotIncreasing);
    }
}
