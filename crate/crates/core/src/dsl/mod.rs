//! A string-diagram language over (Vec_{Z/N}, χ).
//!
//! Scripts declare graded objects and homogeneous generators and assert
//! equalities of morphism expressions. `;` composes in diagram order (top to
//! bottom), `*` is the tensor product. Expressions are typechecked against
//! the environment and evaluated to exact graded maps.
//!
//! ```text
//! let V = obj { deg 1: 2 }
//! assert (coev[V] * id[V]) ; (id[V] * ev[V]) == id[V]
//! ```

mod ast;
mod check;
mod parse;

pub use ast::{MorExpr, ObjExpr, Pos, Prim, Script, Stmt};
pub use check::{check_assertions, eval_obj, evaluate, infer, typecheck, Environment, MorType, TypedAssertion, TypedScript};
pub use parse::{is_reserved, parse, LIBRARIES};

use thiserror::Error;

use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct DslError {
    pub pos: Pos,
    pub message: String,
}

impl DslError {
    pub fn new(pos: Pos, message: String) -> DslError {
        DslError { pos, message }
    }
}

/// Parses, typechecks and checks every assertion of `text`.
pub fn check_script(text: &str, env: Environment) -> Result<Vec<Check>, DslError> {
    let script = parse(text)?;
    let typed = typecheck(&script, env)?;
    Ok(check_assertions(&typed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::scalars::Cyclotomic;

    fn env3() -> Environment {
        Environment::new(3, 1, 0)
    }

    fn run(text: &str, env: Environment) -> Vec<Check> {
        check_script(text, env).unwrap_or_else(|e| panic!("{e}"))
    }

    #[test]
    fn parses_declarations() {
        let s = parse("let H = obj { deg 0: 1, deg 1: 1 }\nassert braid[H,H] ; braid_inv[H,H] == id[H*H]").unwrap();
        assert_eq!(s.stmts[0], Stmt::Obj { name: "H".into(), dims: vec![(0, 1), (1, 1)] });
        assert!(matches!(&s.stmts[1], Stmt::Assert { lhs: MorExpr::Compose(v), .. } if v.len() == 2));
        assert_eq!(s.positions[1], Pos { line: 2, col: 1 });
    }

    #[test]
    fn diagnostics() {
        let e = parse("let V = obj { deg 1: 1 }\nassert braid[V").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 13 });
        assert!(e.message.contains("unclosed `[`"));
        let e = parse("let V = obj { deg 1: 1 }\nlet V = obj { }").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 5 });
        assert!(e.message.contains("duplicate"));
        let e = parse("let f = gen (I -> I) { 1 + }").unwrap_err();
        assert!(e.message.contains("bad matrix entry"), "{e}");
        assert!(parse("assert id[V] = id[V]").is_err());
        assert!(parse("let id = obj { }").is_err());
    }

    #[test]
    fn typecheck_errors() {
        let e = check_script("let V = obj { deg 1: 1 }\nassert coev[V] ; ev[V] == id[I]", env3()).unwrap_err();
        assert!(e.message.contains("V * V^") && e.message.contains("V^ * V"), "{e}");
        let ok = run("let V = obj { deg 1: 1 }\nassert ev[V] ; coev[V] == ev[V] ; coev[V]", env3());
        assert!(ok[0].passed());
        let e = check_script("assert id[W] == id[W]", env3()).unwrap_err();
        assert!(e.message.contains("unknown object `W`"));
        let e = check_script("let V = obj { deg 1: 1 }\nassert id[V] == id[V*V]", env3()).unwrap_err();
        assert!(e.message.contains("sides differ"));
        let e = check_script("let V = obj { deg 0: 1, deg 1: 1 }\nlet f = gen (V -> V) { 0, 1; 0, 0 }\nassert f == id[V]", env3())
            .unwrap_err();
        assert!(e.message.contains("degree shift"), "{e}");
        let e = check_script("let V = obj { deg 0: 1, deg 1: 1 }\nlet f = gen (V -> V) { 1, 1; 0, 0 }", env3()).unwrap_err();
        assert!(e.message.contains("homogeneity"), "{e}");
        let t = typecheck(&parse("assert id[I] == id[I]").unwrap(), env3()).unwrap();
        assert_eq!(t.assertions[0].ty.source, GradedSpace::unit(3));
        assert_eq!(t.assertions[0].ty.target, GradedSpace::unit(3));
    }

    #[test]
    fn evaluation() {
        let script = parse("let V = obj { deg 1: 1 }\nlet W = obj { deg 1: 1 }\nassert braid[V,W] == braid[V,W]").unwrap();
        let t = typecheck(&script, env3()).unwrap();
        let b = evaluate(&t.assertions[0].lhs, &t.env);
        assert_eq!(b.image(0).get(0), Some(&Cyclotomic::root_of_unity(3, 1)));
        let t = typecheck(&parse("let V = obj { deg 1: 1 }\nassert antitwist[V] == id[V]").unwrap(), env3()).unwrap();
        assert_eq!(evaluate(&t.assertions[0].lhs, &t.env).image(0).get(0), Some(&Cyclotomic::root_of_unity(3, -1)));
        let zig = run("let V = obj { deg 0: 1, deg 1: 2 }\nassert (coev[V] * id[V]) ; (id[V] * ev[V]) == id[V]", env3());
        assert!(zig[0].passed());
        let bad = run("let V = obj { deg 1: 1 }\nassert theta[V] == id[V]", env3());
        assert!(!bad[0].passed());
        assert!(!bad[0].witnesses.is_empty());
    }

    #[test]
    fn generators_and_scalars() {
        let text = "let V = obj { deg 0: 1, deg 1: 1 }\n\
                    let f = gen (V -> V) { 0, 0; q(3,1) + 1/2, 0 }\n\
                    let g = gen (V -> V) deg 2 { 0, 0; 0, 0 }\n\
                    assert f ; f == g";
        let t = typecheck(&parse(text).unwrap(), env3()).unwrap();
        assert_eq!(t.env.generator("f").unwrap().shift(), 1);
        assert!(check_assertions(&t)[0].passed());
        let six = run("let V = obj { deg 0: 1 }\nlet f = gen (V -> V) { q(3,1) }\nlet g = gen (V -> V) { q(6,2) }\nassert f == g", Environment::new(6, 1, 0));
        assert!(six[0].passed());
    }

    #[test]
    fn anyonic_library() {
        let text = "use anyonic_line\n\
                    assert Delta ; (S * id[H]) ; m == eps ; u\n\
                    assert m ; Delta == (Delta * Delta) ; (id[H] * braid[H,H] * id[H]) ; (m * m)";
        let checks = run(text, Environment::new(3, 1, 0));
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
        assert!(check_script("use anyonic_line\nuse anyonic_line", env3()).is_err());
    }

    #[test]
    fn pretty_print_round_trip() {
        let text = "let V = obj { deg 0: 1, deg 2: 3 }\n\
                    let f = gen (V * ^V -> (V * V)^) deg 2 { 1, q(3,2) ; -1/2, 0 }\n\
                    use anyonic_line\n\
                    assert (coev[V^] * id[^(V * V^^)]) ; ((f)) == braid[I, V] ; module_e[V, I]";
        let s = parse(text).unwrap();
        let again = parse(&s.to_string()).unwrap();
        assert_eq!(s.stmts, again.stmts);
    }
}
