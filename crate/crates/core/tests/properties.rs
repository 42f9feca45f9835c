use std::sync::Arc;

use lintrace::coeffs::{coeff_hofin, CoeffVector};
use lintrace::diagrams::{diagram_to_json, parse_diagram, ChainDiagram, ChainEndo, IoError};
use lintrace::exactalg::{format_rational, lefschetz, parse_rational, rat, RatMatrix, Rational};
use lintrace::fincat::FinCat;
use lintrace::harness::{
    case_rng, gen_chain_diagram, gen_hofin_category, gen_hofin_with, random_chain_map, random_complex,
};
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |e| RatMatrix::from_i64(r, c, &e))
    })
}

fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max)
        .prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * n).prop_map(move |e| RatMatrix::from_i64(n, n, &e)))
}

fn same_diagram(a: &ChainDiagram, b: &ChainDiagram) -> bool {
    if a.complexes() != b.complexes() {
        return false;
    }
    let Some((lo, hi)) = a.degree_range() else { return true };
    a.cat().arrow_ids().all(|f| (lo..=hi).all(|n| a.map_at(f, n) == b.map_at(f, n)))
}

fn same_endo(x: &ChainDiagram, f: &ChainEndo, g: &ChainEndo) -> bool {
    let Some((lo, hi)) = x.degree_range() else { return true };
    x.cat().objects().all(|a| {
        (lo..=hi).all(|n| {
            let d = x.complex(a).dim(n);
            f.comps[a].at(n, d, d) == g.comps[a].at(n, d, d)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn rank_plus_nullity(m in matrix(5)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
    }

    #[test]
    fn trace_is_cyclic(a in matrix(4), b in matrix(4)) {
        let b = if a.cols() == b.rows() && b.cols() == a.rows() { b } else { a.transpose() };
        prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
    }

    #[test]
    fn kron_trace_multiplies(a in square(3), b in square(3)) {
        prop_assert_eq!(a.kron(&b).trace(), a.trace() * b.trace());
    }

    #[test]
    fn inverse_when_full_rank(a in square(4)) {
        match a.inverse() {
            Some(inv) => prop_assert!((&a * &inv).is_identity()),
            None => prop_assert!(a.rank() < a.rows()),
        }
    }

    #[test]
    fn chain_and_homology_lefschetz_agree(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        let x = random_complex(&mut rng, 3, 0, 3);
        let f = random_chain_map(&mut rng, &x, &x);
        prop_assert_eq!(lefschetz(&f).unwrap(), x.homology().lefschetz(&f));
    }

    #[test]
    fn category_json_round_trips(seed in any::<u64>()) {
        let cat = gen_hofin_category(seed, 5, 8);
        prop_assert!(FinCat::from_json(&cat.to_json()).unwrap() == cat);
    }

    #[test]
    fn diagram_json_round_trips(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 1);
        let cat = Arc::new(gen_hofin_with(&mut rng, 4, 6));
        let (x, f) = gen_chain_diagram(&mut rng, &cat, 2, (0, 2));
        let text = diagram_to_json(&x, Some(&f), None);
        let back = parse_diagram(&text, |n| Err(IoError::UnknownCategory(n.into()))).unwrap();
        prop_assert!(same_diagram(&x, &back.diagram));
        prop_assert!(same_endo(&x, &f, &back.endo));
    }

    #[test]
    fn coefficients_round_trip(seed in any::<u64>()) {
        let cat = gen_hofin_category(seed, 5, 8);
        let v = coeff_hofin(&cat).unwrap();
        let back = CoeffVector::from_json(&cat, &v.to_json()).unwrap();
        prop_assert_eq!(back.values(), v.values());
        // a free category on a graph has the graph's Euler characteristic
        let nonid: Vec<_> = cat.arrow_ids().filter(|&f| !cat.is_identity(f)).collect();
        let composite = |h| nonid.iter().any(|&f| nonid.iter().any(|&g| cat.dst(f) == cat.src(g) && cat.compose(g, f) == h));
        let edges = nonid.iter().filter(|&&h| !composite(h)).count() as i64;
        prop_assert_eq!(v.sum(), Rational::from_integer((cat.num_objects() as i64 - edges).into()));
    }
}
