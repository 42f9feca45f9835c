use lintrace::coeffs::{coeff_ei, coeff_group, coeff_hofin, leinster_weighting, WeightingResult};
use lintrace::exactalg::{int, rat};
use lintrace::fincat::{builtin, parallel_arrows, span, FinGroup};

#[test]
fn span_and_parallel_coefficients() {
    assert_eq!(coeff_hofin(&span()).unwrap().values(), &[int(-1), int(1), int(1)]);
    for n in 1..6 {
        let v = coeff_hofin(&parallel_arrows(n)).unwrap();
        assert_eq!(v.values(), &[int(1 - n as i64), int(1)]);
    }
}

#[test]
fn symmetric_group_coefficients_are_inverse_centralizer_orders() {
    let g = FinGroup::symmetric(3);
    let v = coeff_group(&g);
    // identity, transpositions, 3-cycles; centralizers of order 6, 2, 3
    let mut got = v.values().to_vec();
    got.sort();
    assert_eq!(got, vec![rat(1, 6), rat(1, 3), rat(1, 2)]);
    assert_eq!(v.sum(), int(1));
}

#[test]
fn ei_coefficients_on_group_and_orbit_categories() {
    let bs3 = builtin("BS3").unwrap();
    let direct = coeff_group(&FinGroup::symmetric(3));
    let mut a = coeff_ei(&bs3).unwrap().values().to_vec();
    let mut b = direct.values().to_vec();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    // G/G is terminal in the orbit category, so the coefficients sum to 1
    let oc2 = builtin("OC2").unwrap();
    assert_eq!(coeff_ei(&oc2).unwrap().sum(), int(1));
}

#[test]
fn free_idempotent_weighting_is_one_half() {
    let cat = builtin("free_idempotent").unwrap();
    match leinster_weighting(&cat) {
        WeightingResult::Found(w) => assert_eq!(w.values(), &[rat(1, 2)]),
        WeightingResult::None(_) => panic!("free idempotent has a weighting"),
    }
}
