use num_bigint::BigInt;

use super::{CoeffError, CoeffVector};
use crate::exactalg::{int, Rational};
use crate::fincat::{
    bg, count_strings, max_string_length, poset_reflection, skeletalize, string_iso_classes, ArrowId, FinCat, FinGroup,
    ObjId,
};

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn signed(n: usize, x: Rational) -> Rational {
    if n.is_multiple_of(2) {
        x
    } else {
        -x
    }
}

/// `φ_a = Σ_k (-1)^k · #(length-k strings of nonidentity arrows from a)`.
pub fn coeff_hofin(cat: &FinCat) -> Result<CoeffVector, CoeffError> {
    if !cat.is_strictly_homotopy_finite() {
        return Err(CoeffError::NotHomotopyFinite);
    }
    let len = max_string_length(cat)?;
    let mut out = CoeffVector::zero(cat);
    for a in cat.objects() {
        let phi: Rational = (0..=len).map(|k| signed(k, Rational::from_integer(count_strings(cat, a, k).into()))).sum();
        out.add_at(cat.id(a), &phi);
    }
    Ok(out)
}

/// `φ_C = |C| / |G|` over the one-object category of `G`.
pub fn coeff_group(g: &FinGroup) -> CoeffVector {
    let base = bg(g);
    let mut out = CoeffVector::zero(&base);
    for class in g.conj_classes() {
        out.add_at(class[0], &ratio(class.len(), g.order()));
    }
    out
}

/// Per isomorphism class of objects, `|C| / |Aut(a)|` on each conjugacy
/// class of the chosen representative.
pub fn coeff_groupoid(cat: &FinCat) -> Result<CoeffVector, CoeffError> {
    if !cat.is_groupoid() {
        return Err(CoeffError::NotGroupoid);
    }
    let skel = skeletalize(cat);
    let mut out = CoeffVector::zero(cat);
    for r in skel.cat.objects() {
        let (group, arrows) = skel.cat.aut_group(r);
        for class in group.conj_classes() {
            out.add_at(skel.embed[arrows[class[0]]], &ratio(class.len(), group.order()));
        }
    }
    Ok(out)
}

/// Sums `(-1)^n |C⃗| / |Aut(α⃗)|` over chains `a_0 < ... < a_n` of the poset
/// reflection, isomorphism classes of strings over each chain, and conjugacy
/// classes of their automorphism groups, crediting the class of the first
/// component.
pub fn coeff_ei(cat: &FinCat) -> Result<CoeffVector, CoeffError> {
    if !cat.is_ei() {
        return Err(CoeffError::NotEI);
    }
    let skel = skeletalize(cat);
    let refl = poset_reflection(&skel.cat)?;
    let mut out = CoeffVector::zero(cat);
    for chain in refl.chains() {
        let n = chain.len() - 1;
        let orbits = string_iso_classes(&skel.cat, &chain)?;
        for class in &orbits.classes {
            for cc in class.aut.conj_classes() {
                let target = out.classes().class_of(skel.embed[class.stabilizer[cc[0]][0]]);
                let consistent =
                    cc.iter().all(|&h| out.classes().class_of(skel.embed[class.stabilizer[h][0]]) == target);
                if !consistent {
                    return Err(CoeffError::IllDefinedRestriction);
                }
                let v = signed(n, ratio(cc.len(), class.aut.order()));
                out.add_at(skel.embed[class.stabilizer[cc[0]][0]], &v);
            }
        }
    }
    Ok(out)
}

/// Per chain `a_0 < ... < a_n`, sums over class representatives `h_i` of
/// `Aut(a_i)` the number of strings `α⃗` with `h_i α_i = α_i h_{i-1}`, weighted
/// by `Π |[h_i]| / |Aut(a_i)|`.
pub fn coeff_ei_desouza(cat: &FinCat) -> Result<CoeffVector, CoeffError> {
    if !cat.is_ei() {
        return Err(CoeffError::NotEI);
    }
    let skel = skeletalize(cat);
    let s = &skel.cat;
    let refl = poset_reflection(s)?;
    // (representative arrow, |class| / |group|) for every conjugacy class at every object
    let reps: Vec<Vec<(ArrowId, Rational)>> = s
        .objects()
        .map(|a| {
            let (g, arrows) = s.aut_group(a);
            g.conj_classes().into_iter().map(|c| (arrows[c[0]], ratio(c.len(), g.order()))).collect()
        })
        .collect();
    let mut out = CoeffVector::zero(cat);
    for chain in refl.chains() {
        let n = chain.len() - 1;
        for (h0, w0) in &reps[chain[0]] {
            let total = desouza_tail(s, &chain, &reps, 1, *h0);
            out.add_at(skel.embed[*h0], &signed(n, w0 * total));
        }
    }
    Ok(out)
}

/// Sum over choices of `h_i, α_i` for `i >= k`, given `h_{k-1} = prev`.
fn desouza_tail(s: &FinCat, chain: &[ObjId], reps: &[Vec<(ArrowId, Rational)>], k: usize, prev: ArrowId) -> Rational {
    if k == chain.len() {
        return int(1);
    }
    let mut total = int(0);
    for (h, w) in &reps[chain[k]] {
        let fixed = s
            .hom(chain[k - 1], chain[k])
            .iter()
            .filter(|&&alpha| s.compose(*h, alpha) == s.compose(alpha, prev))
            .count();
        if fixed > 0 {
            total += w * Rational::from_integer(fixed.into()) * desouza_tail(s, chain, reps, k + 1, *h);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::fincat::{
        category_from_group_hom, delta_prime_op, disjoint_union, free_idempotent, indiscrete, parallel_arrows, product,
        span, walking_arrow,
    };

    #[test]
    fn hofin_values() {
        let v = coeff_hofin(&span()).unwrap();
        assert_eq!(v.values(), &[int(-1), int(1), int(1)]);
        let v = coeff_hofin(&parallel_arrows(4)).unwrap();
        assert_eq!(v.values(), &[int(-3), int(1)]);
        assert_eq!(coeff_hofin(&walking_arrow()).unwrap().values(), &[int(0), int(1)]);
        assert!(coeff_hofin(&free_idempotent()).is_err());
    }

    #[test]
    fn group_values() {
        let v = coeff_group(&FinGroup::symmetric(3));
        assert_eq!(v.values(), &[rat(1, 6), rat(1, 2), rat(1, 3)]);
        assert_eq!(v.sum(), int(1));
    }

    #[test]
    fn groupoid_skeleton() {
        let c2 = FinGroup::cyclic(2);
        let conn = product(&bg(&c2), &indiscrete(2));
        let v = coeff_groupoid(&conn).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.values(), &[rat(1, 2), rat(1, 2)]);
        let u = disjoint_union(&[&bg(&c2), &bg(&FinGroup::cyclic(3))]);
        let v = coeff_groupoid(&u).unwrap();
        assert_eq!(v.values(), &[rat(1, 2), rat(1, 2), rat(1, 3), rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn ei_formulas_agree_and_collapse() {
        let c2 = FinGroup::cyclic(2);
        let s3 = FinGroup::symmetric(3);
        assert_eq!(coeff_ei(&bg(&s3)).unwrap(), coeff_group(&s3));
        assert_eq!(coeff_ei(&span()).unwrap(), coeff_hofin(&span()).unwrap());
        let d = delta_prime_op(2);
        assert_eq!(coeff_ei(&d).unwrap(), coeff_hofin(&d).unwrap());
        let cats = [
            category_from_group_hom(&c2, &c2, &[0, 1]).unwrap(),
            category_from_group_hom(&c2, &c2, &[0, 0]).unwrap(),
            category_from_group_hom(&FinGroup::cyclic(3), &s3, &[0, 3, 4]).unwrap(),
            bg(&s3),
        ];
        for c in &cats {
            assert_eq!(coeff_ei(c).unwrap(), coeff_ei_desouza(c).unwrap());
        }
    }
}
