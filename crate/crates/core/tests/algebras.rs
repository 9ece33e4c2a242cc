use bhl_core::algebra::{
    anyonic_line, compute_center, d_a_mu, dual_anyonic, taft, uqsl2, verify_associativity, AlgebraElement,
    AlgebraMorphism,
};
use bhl_core::hopf::{verify_bialgebra, HopfData};
use bhl_core::linalg::SparseVec;
use bhl_core::scalars::Cyclotomic;
use proptest::prelude::*;

fn q_pow(p: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(p, ((p as i64 - 1) / 2) * k)
}

#[test]
fn associativity_at_five() {
    for mu in 0..5 {
        let d = d_a_mu(5, mu).unwrap();
        assert!(verify_associativity(&d).unwrap().iter().all(|c| c.passed()), "μ = {mu}");
    }
    assert!(verify_associativity(&uqsl2(5).unwrap()).unwrap().iter().all(|c| c.passed()));
    for p in [5u64, 7] {
        assert!(verify_associativity(&anyonic_line(p).unwrap()).unwrap().iter().all(|c| c.passed()));
        assert!(verify_associativity(&dual_anyonic(p).unwrap()).unwrap().iter().all(|c| c.passed()));
    }
    assert!(verify_associativity(&taft(7).unwrap()).unwrap().iter().all(|c| c.passed()));
}

#[test]
fn center_of_uqsl2_five() {
    assert_eq!(compute_center(&uqsl2(5).unwrap()).unwrap().len(), 7);
}

#[test]
fn d_a_mu_is_uqsl2_at_five() {
    let p = 5;
    let u = uqsl2(p).unwrap();
    for mu in 0..5 {
        let d = d_a_mu(p, mu).unwrap();
        let w = |letters: &[(&str, i64)]| AlgebraElement::word(&u, letters).unwrap();
        let images = [
            ("x", w(&[("E", 1)]).scale(&q_pow(p, mu - 1))),
            ("z", w(&[("F", 1), ("K", 1)]).scale(&q_pow(p, 1 - mu))),
            ("g", w(&[("K", -1)]).scale(&q_pow(p, mu - 1))),
        ];
        let phi = AlgebraMorphism::new(&d, &u, &images).unwrap();
        for c in phi.verify() {
            assert!(c.passed(), "μ = {mu}: {c}");
        }
    }
}

#[test]
fn hopf_structures_at_seven() {
    assert!(verify_bialgebra(&HopfData::anyonic_line(7, 3).unwrap()).unwrap().iter().all(|c| c.passed()));
    assert!(verify_bialgebra(&HopfData::taft(7).unwrap()).unwrap().iter().all(|c| c.passed()));
}

fn arb_vec(dim: usize, p: u64) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec((0..dim, -3i64..4, 0..p as i64), 0..4).prop_map(move |t| {
        SparseVec::from_terms(
            t.into_iter().map(|(i, c, k)| (i, &Cyclotomic::integer(c) * &Cyclotomic::root_of_unity(p, k))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coproduct_is_braided_multiplicative(c in 1i64..5, a in arb_vec(5, 5), b in arb_vec(5, 5)) {
        let h = HopfData::anyonic_line(5, c).unwrap();
        let alg = h.algebra();
        let ab = AlgebraElement::from_vec(alg, a.clone()) * AlgebraElement::from_vec(alg, b.clone());
        let da = h.delta().apply(&a);
        let db = h.delta().apply(&b);
        let lhs = h.coproduct(&ab);
        let rhs = bhl_core::hopf::braided_product(&h, &da, &db);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_squared_of_taft_is_conjugation_by_g(
        (p, a) in prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| (Just(p), arb_vec((p * p) as usize, p)))
    ) {
        let h = HopfData::taft(p).unwrap();
        let alg = h.algebra();
        let el = AlgebraElement::from_vec(alg, a.clone());
        let g = AlgebraElement::generator(alg, "g").unwrap();
        let ginv = AlgebraElement::word(alg, &[("g", -1)]).unwrap();
        let conj = &(&ginv * &el) * &g;
        prop_assert_eq!(h.s_squared().apply(&a), conj.coeffs().clone());
    }
}
