use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use super::FinCatError;

/// Finite group on the elements `0..order` with an explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Builds a group from a multiplication closure, checking the axioms.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self, FinCatError> {
        let n = names.len();
        if n == 0 {
            return Err(FinCatError::NotAGroup("empty".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(FinCatError::NotAGroup(format!("product {a}*{b} out of range")));
                }
                table.push(c);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| FinCatError::NotAGroup("no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or_else(|| FinCatError::NotAGroup(format!("{} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(FinCatError::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FinGroup { names, table, identity, inverse })
    }

    /// Group structure on an explicit list of values closed under `mul`.
    pub fn from_elements<T: Clone + Eq + Hash>(
        elems: &[T],
        names: Vec<String>,
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self, FinCatError> {
        let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut products = HashMap::new();
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let p = mul(x, y);
                let k = *index.get(&p).ok_or_else(|| FinCatError::NotAGroup("not closed".into()))?;
                products.insert((i, j), k);
            }
        }
        Self::from_fn(names, |a, b| products[&(a, b)])
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` with elements `g^k`, identity first.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        Self::from_fn(names, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// `S_n` on permutations of `0..n` in lexicographic order (identity first),
    /// named in cycle notation.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        // (p*q)(i) = p(q(i))
        Self::from_elements(&perms, names, |p, q| q.iter().map(|&i| p[i]).collect()).expect("symmetric group")
    }

    pub fn product(g: &FinGroup, h: &FinGroup) -> Self {
        let m = h.order();
        let names = (0..g.order() * m).map(|i| format!("({},{})", g.name(i / m), h.name(i % m))).collect();
        Self::from_fn(names, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m)).expect("product group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conj_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(g, x)).collect();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    pub fn is_conjugation_closed(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.iter().all(|&x| self.elements().all(|g| s.contains(&self.conjugate(g, x))))
    }

    /// Smallest subgroup containing `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.identity) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_homomorphism(&self, target: &FinGroup, phi: &[usize]) -> bool {
        phi.len() == self.order()
            && phi.iter().all(|&x| x < target.order())
            && self.elements().all(|a| self.elements().all(|b| phi[self.mul(a, b)] == target.mul(phi[a], phi[b])))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            s.push_str(&i.to_string());
            i = p[i];
        }
        s.push(')');
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// Left action of a finite group on `0..size`, stored as `act[g][z] = g·z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FinGroup,
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: FinGroup, act: Vec<Vec<usize>>) -> Result<Self, FinCatError> {
        let bad = |m: &str| Err(FinCatError::BadInput(format!("group action: {m}")));
        if act.len() != group.order() {
            return bad("one permutation per group element expected");
        }
        let size = act.first().map_or(0, Vec::len);
        if act.iter().any(|p| p.len() != size || p.iter().any(|&z| z >= size)) {
            return bad("ragged or out-of-range table");
        }
        if act[group.identity()].iter().enumerate().any(|(z, &w)| z != w) {
            return bad("identity does not act trivially");
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..size).any(|z| act[gh][z] != act[g][act[h][z]]) {
                    return bad("not compatible with multiplication");
                }
            }
        }
        Ok(GroupAction { group, act })
    }

    /// Left multiplication on the cosets `gH` of a subgroup.
    pub fn cosets(group: &FinGroup, subgroup: &[usize]) -> Result<Self, FinCatError> {
        if !group.is_subgroup(subgroup) {
            return Err(FinCatError::BadInput("not a subgroup".into()));
        }
        let coset = |g: usize| -> BTreeSet<usize> { subgroup.iter().map(|&h| group.mul(g, h)).collect() };
        let mut reps: Vec<BTreeSet<usize>> = Vec::new();
        for g in group.elements() {
            let c = coset(g);
            if !reps.contains(&c) {
                reps.push(c);
            }
        }
        let act = group
            .elements()
            .map(|g| {
                reps.iter()
                    .map(|c| {
                        let moved = coset(group.mul(g, *c.iter().next().expect("nonempty coset")));
                        reps.iter().position(|r| *r == moved).expect("coset")
                    })
                    .collect()
            })
            .collect();
        GroupAction::new(group.clone(), act)
    }

    /// Disjoint union of actions of the same group.
    pub fn sum(parts: &[GroupAction]) -> Result<Self, FinCatError> {
        let group = parts.first().ok_or_else(|| FinCatError::BadInput("empty sum".into()))?.group.clone();
        if parts.iter().any(|p| p.group != group) {
            return Err(FinCatError::BadInput("actions of different groups".into()));
        }
        let act = group
            .elements()
            .map(|g| {
                let mut row = Vec::new();
                for p in parts {
                    let off = row.len();
                    row.extend(p.act[g].iter().map(|&z| z + off));
                }
                row
            })
            .collect();
        Ok(GroupAction { group, act })
    }

    pub fn size(&self) -> usize {
        self.act.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, g: usize, z: usize) -> usize {
        self.act[g][z]
    }

    pub fn fixed_points(&self, g: usize) -> usize {
        self.act[g].iter().enumerate().filter(|(z, &w)| *z == w).count()
    }

    pub fn stabilizer(&self, z: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act[g][z] == z).collect()
    }

    /// Orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for z in 0..self.size() {
            if seen[z] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.group.elements().map(|g| self.act[g][z]).collect();
            for &w in &orbit {
                seen[w] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_classes() {
        let g = FinGroup::symmetric(3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(g.identity()), "e");
        let sizes: Vec<usize> = g.conj_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(g.name(g.conj_classes()[1][0]), "(12)");
    }

    #[test]
    fn cyclic_is_abelian() {
        let g = FinGroup::cyclic(4);
        assert_eq!(g.conj_classes().len(), 4);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.generated(&[2]), vec![0, 2]);
        assert!(g.is_subgroup(&[0, 2]));
        assert!(!g.is_subgroup(&[0, 1]));
    }

    #[test]
    fn rejects_non_group() {
        assert!(FinGroup::from_fn(vec!["a".into(), "b".into()], |_, _| 0).is_err());
    }

    #[test]
    fn homomorphisms() {
        let c2 = FinGroup::cyclic(2);
        let c4 = FinGroup::cyclic(4);
        assert!(c2.is_homomorphism(&c4, &[0, 2]));
        assert!(!c2.is_homomorphism(&c4, &[0, 1]));
    }
}
