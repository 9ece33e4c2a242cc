use super::*;
use proptest::prelude::*;

fn z(n: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

/// Numerical value under ζ_N ↦ exp(2πi/N); an independent oracle for exact results.
fn complex_value(c: &Cyclotomic) -> (f64, f64) {
    let n = c.order() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (i, r) in c.coefficients().iter().enumerate() {
        let v = r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap();
        let t = 2.0 * std::f64::consts::PI * i as f64 / n;
        re += v * t.cos();
        im += v * t.sin();
    }
    (re, im)
}

#[test]
fn roots_of_unity() {
    assert!(z(1, 0).is_one());
    assert_eq!(z(2, 1), Cyclotomic::integer(-1));
    assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::integer(-1));
    assert_eq!(z(7, 9), z(7, 2));
    assert_eq!(z(7, -1), z(7, 6));
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    // Φ_105 is the first with a coefficient of absolute value 2.
    assert!(cyclotomic_polynomial(105).iter().any(|c| c.abs() == 2));
}

#[test]
fn field_identities() {
    assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::integer(-1));
    assert!((&z(5, 1) * &z(5, 4)).is_one());
    assert_eq!(z(3, 1).inverse().unwrap(), z(3, 2));
    for n in [3u64, 5, 7, 8, 9, 12] {
        let zeta = z(n, 1);
        assert!(zeta.pow(n as i64).unwrap().is_one());
        for k in 1..n as i64 {
            assert!(!zeta.pow(k).unwrap().is_one(), "ζ_{n}^{k} = 1");
        }
        // Φ_N(ζ) = 0
        let f = field(n);
        let mut acc = f.zero();
        for (i, c) in cyclotomic_polynomial(n).iter().enumerate() {
            acc = &acc + &(&f.int(*c) * &zeta.pow(i as i64).unwrap());
        }
        assert!(acc.is_zero());
    }
}

#[test]
fn errors() {
    assert_eq!(z(5, 1).checked_div(&field(5).zero()), Err(ScalarError::DivisionByZero));
    assert_eq!(z(5, 1).checked_add(&z(7, 1)), Err(ScalarError::OrderMismatch { left: 5, right: 7 }));
    // rationals promote
    let half = parse_scalar("1/2").unwrap();
    assert_eq!((&half + &z(5, 1)).order(), 5);
}

#[test]
fn display_and_parse() {
    let x = parse_scalar("1/2*q(5,2) - q(5,3) + 3").unwrap();
    assert_eq!(x.to_string(), "3 + 1/2*q(5,2) - q(5,3)");
    assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    assert_eq!(parse_scalar("q(3,1)^-1").unwrap(), z(3, 2));
    assert_eq!(parse_scalar("-(2)^3").unwrap(), Cyclotomic::integer(-8));
    assert_eq!(field(7).zero().to_string(), "0");
    assert!(matches!(parse_scalar("1 +"), Err(ScalarError::Parse { .. })));
    assert!(matches!(parse_scalar("1/0"), Err(ScalarError::Parse { offset: 2, .. })));
    assert!(parse_scalar("q(3,1) + q(5,1)").is_err());
}

#[test]
fn big_values_spill_and_compare() {
    let two = Cyclotomic::integer(2);
    let big = two.pow(200).unwrap();
    let back = (&big / &two.pow(199).unwrap()).to_rational().unwrap();
    assert_eq!(back, Rational::from_integer(2.into()));
    let x = (&z(5, 1) + &field(5).int(3)).pow(80).unwrap();
    let y = x.inverse().unwrap();
    assert!((&x * &y).is_one());
    assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
}

#[test]
fn q_integers() {
    let xi = z(2, 1);
    assert!(q_int(0, &xi).is_zero());
    assert!(q_int(1, &xi).is_one());
    assert!(q_int(2, &xi).is_zero());
    let q5 = z(5, 1);
    assert!(balanced_q_int(1, &q5).unwrap().is_one());
    assert_eq!(balanced_q_int(2, &q5).unwrap(), &q5 + &q5.inverse().unwrap());
    assert_eq!(balanced_q_int(2, &Cyclotomic::integer(-1)), Err(ScalarError::DegenerateQ(2)));
    assert!(balanced_q_factorial(0, &q5).unwrap().is_one());
}

#[test]
fn factorial_conversion_identity() {
    // (n)_ξ! = q^{-n(n-1)/2} [n]_q! with q = ξ^m, p = 2m + 1
    for p in [3u64, 5, 7, 11, 13] {
        let m = (p - 1) / 2;
        let xi = z(p, 1);
        let q = z(p, m as i64);
        for n in 0..p {
            let lhs = q_factorial(n, &xi);
            let e = -((n * n.saturating_sub(1) / 2) as i64);
            let rhs = &q.pow(e).unwrap() * &balanced_q_factorial(n, &q).unwrap();
            assert_eq!(lhs, rhs, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn gauss_sums() {
    assert_eq!(gauss_sum(3, &z(3, 1), 1).unwrap(), parse_scalar("1 + 2*q(3,1)").unwrap());
    assert_eq!(gauss_sum(3, &z(3, 1), 0).unwrap(), Cyclotomic::integer(3));
    // Σ ζ_5^{4 i²} = 1 + 2ζ + 2ζ⁴, frozen in reduced power-basis form.
    let g = gauss_sum(5, &z(5, 2), 2).unwrap();
    assert_eq!(g, parse_scalar("-1 - 2*q(5,2) - 2*q(5,3)").unwrap());
    let (re, im) = complex_value(&g);
    assert!((re - 5f64.sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
    assert!(gauss_sum(4, &z(4, 1), 1).is_err());
    assert!(gauss_sum(5, &z(5, 0), 1).is_err());
    for p in [3u64, 5, 7, 11, 13] {
        for k in 1..p as i64 {
            let q = z(p, k);
            for m in 1..p {
                let g = gauss_sum(p, &q, m).unwrap();
                let norm = &g * &gauss_sum(p, &q.conj(), m).unwrap();
                assert!(norm.is_rational(), "p = {p}, k = {k}");
                assert_eq!(norm, Cyclotomic::integer(p as i64));
            }
        }
    }
}

fn arb_element(n: u64) -> impl Strategy<Value = Cyclotomic> {
    let d = field(n).degree();
    (proptest::collection::vec(-50i64..50, d), 1i64..20)
        .prop_map(move |(c, den)| Cyclotomic::from_coefficients(&field(n), &c, den).unwrap())
}

fn arb_pair() -> impl Strategy<Value = (Cyclotomic, Cyclotomic)> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(8), Just(12)]
        .prop_flat_map(|n| (arb_element(n), arb_element(n)))
}

proptest! {
    #[test]
    fn canonical_forms((a, b) in arb_pair()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a.clone());
    }

    #[test]
    fn matches_complex_embedding((a, b) in arb_pair()) {
        let (ar, ai) = complex_value(&a);
        let (br, bi) = complex_value(&b);
        let (pr, pi) = complex_value(&(&a * &b));
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6 * (1.0 + pr.abs()));
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6 * (1.0 + pi.abs()));
    }
}
