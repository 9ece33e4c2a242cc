use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjExpr {
    Unit,
    Name(String),
    /// `^V`
    LeftDual(Box<ObjExpr>),
    /// `V^`
    RightDual(Box<ObjExpr>),
    Tensor(Vec<ObjExpr>),
    Group(Box<ObjExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prim {
    Id,
    Braid,
    BraidInv,
    Ev,
    Coev,
    EvL,
    CoevL,
    Theta,
    ThetaInv,
    AntiTwist,
    AntiTwistInv,
    ModuleE,
}

impl Prim {
    pub const ALL: [Prim; 12] = [
        Prim::Id,
        Prim::Braid,
        Prim::BraidInv,
        Prim::Ev,
        Prim::Coev,
        Prim::EvL,
        Prim::CoevL,
        Prim::Theta,
        Prim::ThetaInv,
        Prim::AntiTwist,
        Prim::AntiTwistInv,
        Prim::ModuleE,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Prim::Id => "id",
            Prim::Braid => "braid",
            Prim::BraidInv => "braid_inv",
            Prim::Ev => "ev",
            Prim::Coev => "coev",
            Prim::EvL => "ev_l",
            Prim::CoevL => "coev_l",
            Prim::Theta => "theta",
            Prim::ThetaInv => "theta_inv",
            Prim::AntiTwist => "antitwist",
            Prim::AntiTwistInv => "antitwist_inv",
            Prim::ModuleE => "module_e",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Prim> {
        Prim::ALL.into_iter().find(|p| p.keyword() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Prim::Braid | Prim::BraidInv | Prim::ModuleE => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorExpr {
    Prim(Prim, Vec<ObjExpr>),
    Name(String),
    Tensor(Vec<MorExpr>),
    /// Diagrammatic order: the first factor is applied first.
    Compose(Vec<MorExpr>),
    Group(Box<MorExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Obj { name: String, dims: Vec<(u64, usize)> },
    Gen { name: String, source: ObjExpr, target: ObjExpr, shift: Option<i64>, rows: Vec<Vec<String>> },
    Use { library: String },
    Assert { lhs: MorExpr, rhs: MorExpr },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
    /// Start of each statement, parallel to `stmts`.
    pub positions: Vec<Pos>,
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::Unit => f.write_str("I"),
            ObjExpr::Name(n) => f.write_str(n),
            ObjExpr::LeftDual(x) => match **x {
                ObjExpr::Tensor(_) => write!(f, "^({x})"),
                _ => write!(f, "^{x}"),
            },
            ObjExpr::RightDual(x) => match **x {
                ObjExpr::Tensor(_) | ObjExpr::LeftDual(_) => write!(f, "({x})^"),
                _ => write!(f, "{x}^"),
            },
            ObjExpr::Tensor(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match x {
                        ObjExpr::Tensor(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            ObjExpr::Group(x) => write!(f, "({x})"),
        }
    }
}

impl fmt::Display for MorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorExpr::Prim(p, args) => {
                write!(f, "{}[", p.keyword())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str("]")
            }
            MorExpr::Name(n) => f.write_str(n),
            MorExpr::Tensor(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match x {
                        MorExpr::Tensor(_) | MorExpr::Compose(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            MorExpr::Compose(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ; ")?;
                    }
                    match x {
                        MorExpr::Compose(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            MorExpr::Group(x) => write!(f, "({x})"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Obj { name, dims } => {
                let parts: Vec<String> = dims.iter().map(|(d, k)| format!("deg {d}: {k}")).collect();
                write!(f, "let {name} = obj {{ {} }}", parts.join(", "))
            }
            Stmt::Gen { name, source, target, shift, rows } => {
                write!(f, "let {name} = gen ({source} -> {target})")?;
                if let Some(s) = shift {
                    write!(f, " deg {s}")?;
                }
                let rows: Vec<String> = rows.iter().map(|r| r.join(", ")).collect();
                write!(f, " {{ {} }}", rows.join("; "))
            }
            Stmt::Use { library } => write!(f, "use {library}"),
            Stmt::Assert { lhs, rhs } => write!(f, "assert {lhs} == {rhs}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
