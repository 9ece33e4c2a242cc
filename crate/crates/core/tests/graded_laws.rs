use bhl_core::graded::{ev_coev, AntiTwist, Bicharacter, GradedMap, GradedSpace};
use bhl_core::linalg::SparseVec;
use bhl_core::scalars::Cyclotomic;
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Setup {
    n: u64,
    c: i64,
    dims: Vec<Vec<usize>>,
    seeds: Vec<i64>,
}

fn setup() -> impl Strategy<Value = Setup> {
    (2u64..=7).prop_flat_map(|n| {
        let space = proptest::collection::vec(0usize..=3, n as usize)
            .prop_filter("dims ≤ 3 and nonzero", |d| (1..=3).contains(&d.iter().sum::<usize>()));
        (
            Just(n),
            0..n as i64,
            proptest::collection::vec(space, 4),
            proptest::collection::vec(-3i64..4, 64),
        )
            .prop_map(|(n, c, dims, seeds)| Setup { n, c, dims, seeds })
    })
}

impl Setup {
    fn chi(&self) -> Bicharacter {
        Bicharacter::new(self.n, self.c)
    }

    fn space(&self, k: usize) -> GradedSpace {
        GradedSpace::atom(self.n, ["V", "W", "X", "M"][k], &self.dims[k])
    }

    /// A pseudo-random homogeneous map of the given shift.
    fn map(&self, s: &GradedSpace, t: &GradedSpace, shift: i64, salt: usize) -> GradedMap {
        let n = self.n;
        GradedMap::from_fn(s, t, shift, |j| {
            let want = (s.degree(j) as i64 + shift).rem_euclid(n as i64) as u64;
            SparseVec::from_terms((0..t.dim()).filter(|&i| t.degree(i) == want).map(|i| {
                let k = self.seeds[(i * 7 + j * 3 + salt) % self.seeds.len()];
                (i, &Cyclotomic::integer(k) + &Cyclotomic::root_of_unity(n, k + salt as i64))
            }))
        })
        .unwrap()
    }
}

fn then(a: &GradedMap, b: &GradedMap) -> GradedMap {
    a.then(b).unwrap()
}

fn ten(a: &GradedMap, b: &GradedMap) -> GradedMap {
    a.tensor(b).unwrap()
}

fn id(v: &GradedSpace) -> GradedMap {
    GradedMap::identity(v)
}

fn t(a: &GradedSpace, b: &GradedSpace) -> GradedSpace {
    a.tensor(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bicharacter_is_multiplicative(n in 1u64..12, c in 0i64..12, i in 0u64..12, i2 in 0u64..12, j in 0u64..12) {
        let chi = Bicharacter::new(n, c);
        prop_assert_eq!(chi.chi(i + i2, j), &chi.chi(i, j) * &chi.chi(i2, j));
        prop_assert_eq!(chi.chi(j, i + i2), &chi.chi(j, i) * &chi.chi(j, i2));
    }

    #[test]
    fn interchange_law(s in setup(), sh in 0i64..7) {
        let (v, w, x) = (s.space(0), s.space(1), s.space(2));
        let f1 = s.map(&v, &w, sh, 1);
        let f2 = s.map(&w, &x, -sh, 2);
        let g1 = s.map(&x, &v, 1, 3);
        let g2 = s.map(&v, &v, 0, 4);
        prop_assert_eq!(
            ten(&f2.compose(&f1).unwrap(), &g2.compose(&g1).unwrap()),
            ten(&f2, &g2).compose(&ten(&f1, &g1)).unwrap()
        );
        prop_assert_eq!(ten(&ten(&f1, &g1), &g2), ten(&f1, &ten(&g1, &g2)));
    }

    #[test]
    fn braiding_naturality(s in setup()) {
        let chi = s.chi();
        let (v, w, x, m) = (s.space(0), s.space(1), s.space(2), s.space(3));
        let f = s.map(&v, &x, 0, 5);
        let g = s.map(&w, &m, 0, 6);
        prop_assert_eq!(
            then(&ten(&f, &g), &chi.braiding(&x, &m)),
            then(&chi.braiding(&v, &w), &ten(&g, &f))
        );
    }

    #[test]
    fn yang_baxter_and_hexagons(s in setup()) {
        let chi = s.chi();
        let (u, v, w) = (s.space(0), s.space(1), s.space(2));
        let lhs = then(&then(&ten(&chi.braiding(&u, &v), &id(&w)), &ten(&id(&v), &chi.braiding(&u, &w))),
            &ten(&chi.braiding(&v, &w), &id(&u)));
        let rhs = then(&then(&ten(&id(&u), &chi.braiding(&v, &w)), &ten(&chi.braiding(&u, &w), &id(&v))),
            &ten(&id(&w), &chi.braiding(&u, &v)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            chi.braiding(&t(&u, &v), &w),
            then(&ten(&id(&u), &chi.braiding(&v, &w)), &ten(&chi.braiding(&u, &w), &id(&v)))
        );
        prop_assert_eq!(
            chi.braiding(&u, &t(&v, &w)),
            then(&ten(&chi.braiding(&u, &v), &id(&w)), &ten(&id(&v), &chi.braiding(&u, &w)))
        );
        let inv = chi.braiding_inverse(&u, &v);
        prop_assert_eq!(chi.braiding(&u, &v).inverse().unwrap(), inv);
    }

    #[test]
    fn twist_and_anti_twist_laws(s in setup(), mu in 0i64..7) {
        let chi = s.chi();
        let (v, w) = (s.space(0), s.space(1));
        let double = then(&chi.braiding(&v, &w), &chi.braiding(&w, &v));
        prop_assert_eq!(chi.twist(&t(&v, &w)), then(&ten(&chi.twist(&v), &chi.twist(&w)), &double));
        let sg = AntiTwist::with_mu(chi, mu);
        prop_assert!(sg.law_violation().is_none());
        let double_inv = then(&chi.braiding_inverse(&w, &v), &chi.braiding_inverse(&v, &w));
        prop_assert_eq!(sg.on(&t(&v, &w)), then(&ten(&sg.on(&v), &sg.on(&w)), &double_inv));
        prop_assert_eq!(double.inverse().unwrap(), double_inv);
    }

    #[test]
    fn braided_module_axioms(s in setup(), mu in 0i64..7) {
        let chi = s.chi();
        let sg = AntiTwist::with_mu(chi, mu);
        let (x, y, m) = (s.space(0), s.space(1), s.space(3));
        let e = |a: &GradedSpace, b: &GradedSpace| chi.braided_module_e(a, b, &sg);
        let xm = t(&x, &m);
        // E is τ^{-2} after ς on the first factor
        prop_assert_eq!(
            e(&x, &m),
            then(&then(&ten(&sg.on(&x), &id(&m)), &chi.braiding_inverse(&m, &x)), &chi.braiding_inverse(&x, &m))
        );
        // C1
        let rhs = then(&then(&ten(&chi.braiding_inverse(&x, &y), &id(&m)), &ten(&id(&x), &e(&y, &m))),
            &ten(&chi.braiding_inverse(&y, &x), &id(&m)));
        prop_assert_eq!(e(&y, &xm), rhs);
        // C2
        prop_assert_eq!(e(&t(&y, &x), &m), then(&ten(&id(&y), &e(&x, &m)), &e(&y, &xm)));
        // stability
        prop_assert_eq!(then(&ten(&id(&x), &sg.on(&m)), &e(&x, &m)), sg.on(&xm));
    }

    #[test]
    fn zig_zag_identities(s in setup()) {
        let v = s.space(0);
        let (ev, coev, ev_l, coev_l) = ev_coev(&v);
        let (rd, ld) = (v.right_dual(), v.left_dual());
        prop_assert_eq!(then(&ten(&coev, &id(&v)), &ten(&id(&v), &ev)), id(&v));
        prop_assert_eq!(then(&ten(&id(&rd), &coev), &ten(&ev, &id(&rd))), id(&rd));
        prop_assert_eq!(then(&ten(&id(&v), &coev_l), &ten(&ev_l, &id(&v))), id(&v));
        prop_assert_eq!(then(&ten(&coev_l, &id(&ld)), &ten(&id(&ld), &ev_l)), id(&ld));
        let vw = t(&v, &s.space(1));
        let (ev2, coev2, _, _) = ev_coev(&vw);
        prop_assert_eq!(then(&ten(&coev2, &id(&vw)), &ten(&id(&vw), &ev2)), id(&vw));
    }
}

#[test]
fn blocks_follow_degrees() {
    let v = GradedSpace::atom(3, "V", &[1, 2, 0]);
    let chi = Bicharacter::new(3, 1);
    let th = chi.twist(&v);
    let (b, rows, cols) = th.block(1);
    assert_eq!((b.rows(), b.cols()), (2, 2));
    assert_eq!(rows, cols);
    assert_eq!(b.get(0, 0), &Cyclotomic::root_of_unity(3, 1));
    let json = th.to_json();
    assert_eq!(json["shift"], 0);
    assert_eq!(json["blocks"][1]["entries"][0][0], "q(3,1)");
}
