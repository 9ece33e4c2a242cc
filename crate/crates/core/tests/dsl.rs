use std::path::PathBuf;

use bhl_core::dsl::{check_script, evaluate, parse, typecheck, Environment, MorExpr, ObjExpr, Prim, Stmt};
use proptest::prelude::*;

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "bdsl"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

#[test]
fn corpus_scripts() {
    let files = corpus();
    assert!(files.len() >= 7);
    for (n, c, mu) in [(3u64, 1i64, 0i64), (5, 2, 1), (7, 3, 4), (2, 1, 1)] {
        for (name, text) in &files {
            let checks = check_script(text, Environment::new(n, c, mu)).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!checks.is_empty(), "{name}");
            if name.starts_with("negative") {
                assert!(checks.iter().all(|k| !k.passed() && !k.witnesses.is_empty()), "{name} at N = {n}: {checks:?}");
            } else {
                assert!(checks.iter().all(|k| k.passed()), "{name} at N = {n}: {checks:?}");
            }
        }
    }
}

#[test]
fn corpus_round_trips() {
    for (name, text) in corpus() {
        let s = parse(&text).unwrap();
        assert_eq!(parse(&s.to_string()).unwrap().stmts, s.stmts, "{name}");
    }
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["V", "W", "Obj2", "x_1"]).prop_map(String::from)
}

fn obj_primary(inner: BoxedStrategy<ObjExpr>) -> impl Strategy<Value = ObjExpr> {
    prop_oneof![Just(ObjExpr::Unit), name().prop_map(ObjExpr::Name), inner.prop_map(|e| ObjExpr::Group(Box::new(e)))]
}

/// Object expressions in the image of the parser.
fn objexpr() -> BoxedStrategy<ObjExpr> {
    let leaf = prop_oneof![Just(ObjExpr::Unit), name().prop_map(ObjExpr::Name)].boxed();
    leaf.prop_recursive(3, 16, 3, |inner| {
        let factor = prop_oneof![
            obj_primary(inner.clone()),
            (obj_primary(inner.clone()), 1usize..3).prop_map(|(mut e, k)| {
                for _ in 0..k {
                    e = ObjExpr::RightDual(Box::new(e));
                }
                e
            }),
            (obj_primary(inner.clone()), 1usize..3).prop_map(|(mut e, k)| {
                for _ in 0..k {
                    e = ObjExpr::LeftDual(Box::new(e));
                }
                e
            }),
        ];
        prop_oneof![factor.clone(), prop::collection::vec(factor, 2..4).prop_map(ObjExpr::Tensor)]
    })
    .boxed()
}

fn prim() -> impl Strategy<Value = MorExpr> {
    (prop::sample::select(Prim::ALL.to_vec()), prop::collection::vec(objexpr(), 2))
        .prop_map(|(p, mut args)| {
            args.truncate(p.arity());
            MorExpr::Prim(p, args)
        })
}

/// Morphism expressions in the image of the parser.
fn morexpr() -> BoxedStrategy<MorExpr> {
    let leaf = prop_oneof![prim(), prop::sample::select(vec!["f", "Delta"]).prop_map(|s| MorExpr::Name(s.into()))].boxed();
    leaf.prop_recursive(3, 24, 3, |inner| {
        let factor = prop_oneof![prim(), inner.clone().prop_map(|e| MorExpr::Group(Box::new(e)))];
        let term = prop_oneof![factor.clone(), prop::collection::vec(factor, 2..4).prop_map(MorExpr::Tensor)];
        prop_oneof![term.clone(), prop::collection::vec(term, 2..4).prop_map(MorExpr::Compose)]
    })
    .boxed()
}

fn obj_decl(name: &str, dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().enumerate().map(|(d, k)| format!("deg {d}: {k}")).collect();
    format!("let {name} = obj {{ {} }}\n", parts.join(", "))
}

fn small_dims(n: u64) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..2, n as usize).prop_filter("dim ≤ 3", |d| d.iter().sum::<usize>() <= 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(lhs in morexpr(), rhs in morexpr(), obj in objexpr(), dims in prop::collection::vec((0u64..9, 0usize..4), 0..3)) {
        let mut seen = std::collections::BTreeSet::new();
        let dims: Vec<(u64, usize)> = dims.into_iter().filter(|(d, _)| seen.insert(*d)).collect();
        let stmts = vec![
            Stmt::Obj { name: "V".into(), dims },
            Stmt::Gen { name: "f".into(), source: obj.clone(), target: obj, shift: Some(-2), rows: vec![vec!["1".into(), "q(3,1) + -1/2".into()]] },
            Stmt::Assert { lhs, rhs },
        ];
        let text: String = stmts.iter().map(|s| format!("{s}\n")).collect();
        let parsed = parse(&text).unwrap();
        prop_assert_eq!(parsed.stmts, stmts);
    }

    #[test]
    fn zig_zags_on_random_objects(n in 2u64..8, c in 0i64..7, (dv, dw) in (2u64..8).prop_flat_map(|n| (small_dims(n), small_dims(n)))) {
        let mut text = obj_decl("V", &dv) + &obj_decl("W", &dw);
        for x in ["V", "W", "(V * W)"] {
            text += &format!("assert (coev[{x}] * id[{x}]) ; (id[{x}] * ev[{x}]) == id[{x}]\n");
            text += &format!("assert (id[{x}^] * coev[{x}]) ; (ev[{x}] * id[{x}^]) == id[{x}^]\n");
            text += &format!("assert (id[{x}] * coev_l[{x}]) ; (ev_l[{x}] * id[{x}]) == id[{x}]\n");
            text += &format!("assert (coev_l[{x}] * id[^{x}]) ; (id[^{x}] * ev_l[{x}]) == id[^{x}]\n");
        }
        for k in check_script(&text, Environment::new(n, c, 0)).unwrap() {
            prop_assert!(k.passed(), "{}", k);
        }
    }

    #[test]
    fn braiding_natural_in_random_generators(
        c in 0i64..5,
        entries in prop::collection::vec(-3i64..4, 5),
        k in 0i64..5,
    ) {
        let text = format!(
            "let V = obj {{ deg 0: 1, deg 1: 2 }}\n\
             let W = obj {{ deg 1: 1, deg 3: 1 }}\n\
             let f = gen (V -> V) {{ {}, 0, 0; 0, {}, {} * q(5,{k}); 0, {}, {} }}\n\
             assert (f * id[W]) ; braid[V,W] == braid[V,W] ; (id[W] * f)\n\
             assert (id[W] * f) ; braid[W,V] == braid[W,V] ; (f * id[W])\n\
             assert f ; antitwist[V] == antitwist[V] ; f\n",
            entries[0], entries[1], entries[2], entries[3], entries[4]
        );
        for chk in check_script(&text, Environment::new(5, c, k)).unwrap() {
            prop_assert!(chk.passed(), "{}", chk);
        }
    }

    #[test]
    fn evaluation_is_compositional(seq in prop::collection::vec(0usize..6, 1..5), right in 0usize..6) {
        let endo = [
            "(theta[V] * id[W])",
            "(id[V] * antitwist[W])",
            "module_e[V,W]",
            "(braid[V,W] ; braid[W,V])",
            "(antitwist_inv[V] * theta_inv[W])",
            "id[V * W]",
        ];
        let env = Environment::new(5, 2, 3);
        let mut text = String::from("let V = obj { deg 1: 1, deg 2: 1 }\nlet W = obj { deg 0: 1, deg 4: 2 }\n");
        for &i in &seq {
            text += &format!("assert {} == {}\n", endo[i], endo[i]);
        }
        let chain: Vec<&str> = seq.iter().map(|&i| endo[i]).collect();
        text += &format!("assert {} == id[V * W]\n", chain.join(" ; "));
        text += &format!("assert {} * theta[V] == id[V * W * V]\n", endo[right]);
        let t = typecheck(&parse(&text).unwrap(), env).unwrap();
        let parts: Vec<_> = t.assertions[..seq.len()].iter().map(|a| evaluate(&a.lhs, &t.env)).collect();
        let mut folded = parts[0].clone();
        for p in &parts[1..] {
            folded = folded.then(p).unwrap();
        }
        prop_assert_eq!(evaluate(&t.assertions[seq.len()].lhs, &t.env), folded);
        let tensor = &t.assertions[seq.len() + 1].lhs;
        let MorExpr::Tensor(factors) = tensor else { unreachable!() };
        let expected = evaluate(&factors[0], &t.env).tensor(&evaluate(&factors[1], &t.env)).unwrap();
        prop_assert_eq!(evaluate(tensor, &t.env), expected);
    }
}
