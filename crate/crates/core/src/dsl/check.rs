use std::collections::BTreeMap;

use super::ast::{MorExpr, ObjExpr, Pos, Prim, Script, Stmt};
use super::DslError;
use crate::graded::{ev_coev, AntiTwist, Bicharacter, GradedMap, GradedSpace};
use crate::hopf::HopfData;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::report::Check;
use crate::scalars::parse_scalar;

/// The ambient (Vec_{Z/N}, χ) with anti-twist ς_μ, plus named objects and generators.
#[derive(Debug, Clone)]
pub struct Environment {
    chi: Bicharacter,
    anti_twist: AntiTwist,
    objects: BTreeMap<String, GradedSpace>,
    generators: BTreeMap<String, GradedMap>,
}

impl Environment {
    pub fn new(n: u64, c: i64, mu: i64) -> Environment {
        let chi = Bicharacter::new(n, c);
        Environment { chi, anti_twist: AntiTwist::with_mu(chi, mu), objects: BTreeMap::new(), generators: BTreeMap::new() }
    }

    pub fn bicharacter(&self) -> Bicharacter {
        self.chi
    }

    pub fn anti_twist(&self) -> &AntiTwist {
        &self.anti_twist
    }

    pub fn object(&self, name: &str) -> Option<&GradedSpace> {
        self.objects.get(name)
    }

    pub fn generator(&self, name: &str) -> Option<&GradedMap> {
        self.generators.get(name)
    }

    pub fn insert_object(&mut self, name: &str, v: GradedSpace) {
        self.objects.insert(name.to_string(), v);
    }

    pub fn insert_generator(&mut self, name: &str, f: GradedMap) {
        self.generators.insert(name.to_string(), f);
    }

    fn n(&self) -> u64 {
        self.chi.n()
    }
}

/// Source, target and degree shift of a morphism expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorType {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub shift: u64,
}

#[derive(Debug, Clone)]
pub struct TypedAssertion {
    pub pos: Pos,
    pub lhs: MorExpr,
    pub rhs: MorExpr,
    pub ty: MorType,
}

impl TypedAssertion {
    pub fn text(&self) -> String {
        format!("{} == {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone)]
pub struct TypedScript {
    pub env: Environment,
    pub assertions: Vec<TypedAssertion>,
}

pub fn eval_obj(e: &ObjExpr, env: &Environment) -> Result<GradedSpace, String> {
    Ok(match e {
        ObjExpr::Unit => GradedSpace::unit(env.n()),
        ObjExpr::Name(n) => env.object(n).cloned().ok_or_else(|| format!("unknown object `{n}`"))?,
        ObjExpr::LeftDual(x) => eval_obj(x, env)?.left_dual(),
        ObjExpr::RightDual(x) => eval_obj(x, env)?.right_dual(),
        ObjExpr::Tensor(xs) => {
            let mut acc = GradedSpace::unit(env.n());
            for x in xs {
                acc = acc.tensor(&eval_obj(x, env)?).map_err(|e| e.to_string())?;
            }
            acc
        }
        ObjExpr::Group(x) => eval_obj(x, env)?,
    })
}

fn tensor(a: &GradedSpace, b: &GradedSpace) -> GradedSpace {
    a.tensor(b).expect("one grading group per environment")
}

/// Infers the type of `e`, rejecting unknown names and mismatched compositions.
pub fn infer(e: &MorExpr, env: &Environment) -> Result<MorType, String> {
    let endo = |v: GradedSpace| MorType { source: v.clone(), target: v, shift: 0 };
    Ok(match e {
        MorExpr::Prim(p, args) => {
            let objs = args.iter().map(|a| eval_obj(a, env)).collect::<Result<Vec<_>, _>>()?;
            let unit = GradedSpace::unit(env.n());
            let v = &objs[0];
            let ty = |source, target| MorType { source, target, shift: 0 };
            match p {
                Prim::Id | Prim::Theta | Prim::ThetaInv | Prim::AntiTwist | Prim::AntiTwistInv => endo(v.clone()),
                Prim::Braid => ty(tensor(v, &objs[1]), tensor(&objs[1], v)),
                Prim::BraidInv => ty(tensor(&objs[1], v), tensor(v, &objs[1])),
                Prim::Ev => ty(tensor(&v.right_dual(), v), unit),
                Prim::Coev => ty(unit, tensor(v, &v.right_dual())),
                Prim::EvL => ty(tensor(v, &v.left_dual()), unit),
                Prim::CoevL => ty(unit, tensor(&v.left_dual(), v)),
                Prim::ModuleE => endo(tensor(v, &objs[1])),
            }
        }
        MorExpr::Name(n) => {
            let f = env.generator(n).ok_or_else(|| format!("unknown generator `{n}`"))?;
            MorType { source: f.source().clone(), target: f.target().clone(), shift: f.shift() }
        }
        MorExpr::Tensor(xs) => {
            let mut acc = endo(GradedSpace::unit(env.n()));
            for x in xs {
                let t = infer(x, env)?;
                acc = MorType {
                    source: tensor(&acc.source, &t.source),
                    target: tensor(&acc.target, &t.target),
                    shift: (acc.shift + t.shift) % env.n(),
                };
            }
            acc
        }
        MorExpr::Compose(xs) => {
            let mut acc = infer(&xs[0], env)?;
            for (i, x) in xs.iter().enumerate().skip(1) {
                let t = infer(x, env)?;
                if t.source != acc.target {
                    return Err(format!(
                        "composition mismatch before factor {}: `{}` ends at {} but `{}` starts at {}",
                        i + 1,
                        MorExpr::Compose(xs[..i].to_vec()),
                        acc.target,
                        x,
                        t.source
                    ));
                }
                acc = MorType { source: acc.source, target: t.target, shift: (acc.shift + t.shift) % env.n() };
            }
            acc
        }
        MorExpr::Group(x) => infer(x, env)?,
    })
}

/// Evaluates a typechecked expression to its graded map.
pub fn evaluate(e: &MorExpr, env: &Environment) -> GradedMap {
    let ok = "typechecked expression";
    match e {
        MorExpr::Prim(p, args) => {
            let objs: Vec<GradedSpace> = args.iter().map(|a| eval_obj(a, env).expect(ok)).collect();
            let v = &objs[0];
            let chi = env.chi;
            match p {
                Prim::Id => GradedMap::identity(v),
                Prim::Braid => chi.braiding(v, &objs[1]),
                Prim::BraidInv => chi.braiding_inverse(v, &objs[1]),
                Prim::Ev => ev_coev(v).0,
                Prim::Coev => ev_coev(v).1,
                Prim::EvL => ev_coev(v).2,
                Prim::CoevL => ev_coev(v).3,
                Prim::Theta => chi.twist(v),
                Prim::ThetaInv => GradedMap::diagonal(v, |d| chi.theta(d).inverse().expect("root of unity")),
                Prim::AntiTwist => env.anti_twist.on(v),
                Prim::AntiTwistInv => {
                    GradedMap::diagonal(v, |d| env.anti_twist.value(d).inverse().expect("root of unity"))
                }
                Prim::ModuleE => chi.braided_module_e(v, &objs[1], &env.anti_twist),
            }
        }
        MorExpr::Name(n) => env.generator(n).expect(ok).clone(),
        MorExpr::Tensor(xs) => {
            let mut acc = GradedMap::identity(&GradedSpace::unit(env.n()));
            for x in xs {
                acc = acc.tensor(&evaluate(x, env)).expect(ok);
            }
            acc
        }
        MorExpr::Compose(xs) => {
            let mut acc = evaluate(&xs[0], env);
            for x in &xs[1..] {
                acc = acc.then(&evaluate(x, env)).expect(ok);
            }
            acc
        }
        MorExpr::Group(x) => evaluate(x, env),
    }
}

fn flat_row_major(rows: &[Vec<String>], n: u64, pos: Pos, source: &GradedSpace, target: &GradedSpace) -> Result<SparseMatrix, DslError> {
    let (r, c) = (target.dim(), source.dim());
    let shape = format!("{}x{}", rows.len(), rows.first().map_or(0, |row| row.len()));
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        if !(rows.is_empty() && (r == 0 || c == 0)) {
            return Err(DslError::new(pos, format!("matrix is {shape}, expected {r}x{c} for {source} -> {target}")));
        }
    }
    let mut cols = vec![SparseVec::zero(); c];
    for (i, row) in rows.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let v = parse_scalar(text).map_err(|e| DslError::new(pos, format!("entry ({i}, {j}): {e}")))?;
            if v.is_zero() {
                continue;
            }
            let v = v.in_order(n).map_err(|e| DslError::new(pos, format!("entry ({i}, {j}) `{text}`: {e}")))?;
            cols[j] = cols[j].add(&SparseVec::unit(i, v));
        }
    }
    Ok(SparseMatrix::from_columns(r, cols))
}

fn load_library(library: &str, env: &mut Environment, pos: Pos) -> Result<(), DslError> {
    match library {
        "anyonic_line" => {
            let chi = env.chi;
            let h = HopfData::anyonic_line(chi.n(), chi.c() as i64)
                .map_err(|e| DslError::new(pos, format!("anyonic_line over Z/{}: {e}", chi.n())))?;
            env.insert_object("H", h.space().clone());
            env.insert_generator("m", h.mult().clone());
            env.insert_generator("u", h.unit().clone());
            env.insert_generator("Delta", h.delta().clone());
            env.insert_generator("eps", h.counit().clone());
            env.insert_generator("S", h.antipode().clone());
            Ok(())
        }
        other => Err(DslError::new(pos, format!("unknown library `{other}`"))),
    }
}

/// Resolves declarations into `env` and types every assertion.
pub fn typecheck(script: &Script, mut env: Environment) -> Result<TypedScript, DslError> {
    let n = env.n();
    let mut assertions = Vec::new();
    for (stmt, &pos) in script.stmts.iter().zip(&script.positions) {
        let at = |m: String| DslError::new(pos, m);
        match stmt {
            Stmt::Obj { name, dims } => {
                let mut per_degree = vec![0usize; n as usize];
                for &(d, k) in dims {
                    per_degree[(d % n) as usize] += k;
                }
                env.insert_object(name, GradedSpace::atom(n, name, &per_degree));
            }
            Stmt::Gen { name, source, target, shift, rows } => {
                let s = eval_obj(source, &env).map_err(at)?;
                let t = eval_obj(target, &env).map_err(at)?;
                let m = flat_row_major(rows, n, pos, &s, &t)?;
                let shift = shift.unwrap_or_else(|| {
                    m.columns()
                        .iter()
                        .enumerate()
                        .find_map(|(j, col)| col.iter().next().map(|(i, _)| t.degree(*i) as i64 - s.degree(j) as i64))
                        .unwrap_or(0)
                });
                let f = GradedMap::new(s, t, shift, m).map_err(|e| at(format!("generator `{name}`: {e}")))?;
                env.insert_generator(name, f);
            }
            Stmt::Use { library } => load_library(library, &mut env, pos)?,
            Stmt::Assert { lhs, rhs } => {
                let lt = infer(lhs, &env).map_err(at)?;
                let rt = infer(rhs, &env).map_err(at)?;
                if lt.source != rt.source || lt.target != rt.target {
                    return Err(at(format!(
                        "sides differ: left is {} -> {}, right is {} -> {}",
                        lt.source, lt.target, rt.source, rt.target
                    )));
                }
                if lt.shift != rt.shift {
                    return Err(at(format!("sides differ in degree shift: {} vs {}", lt.shift, rt.shift)));
                }
                assertions.push(TypedAssertion { pos, lhs: lhs.clone(), rhs: rhs.clone(), ty: lt });
            }
        }
    }
    Ok(TypedScript { env, assertions })
}

/// One check per assertion; a failure carries the first basis vector where the sides differ.
pub fn check_assertions(typed: &TypedScript) -> Vec<Check> {
    typed
        .assertions
        .iter()
        .map(|a| {
            let l = evaluate(&a.lhs, &typed.env);
            let r = evaluate(&a.rhs, &typed.env);
            let details = format!("{} -> {}", a.ty.source, a.ty.target);
            Check::from_witness(format!("line {}: {}", a.pos.line, a.text()), details, l.difference(&r).map(|w| w.to_string()))
        })
        .collect()
}
