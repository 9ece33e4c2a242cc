use std::collections::BTreeSet;

use super::ast::{MorExpr, ObjExpr, Pos, Prim, Script, Stmt};
use super::DslError;
use crate::scalars::parse_scalar;

/// Names bound by each `use` library.
pub const LIBRARIES: &[(&str, &[&str])] = &[("anyonic_line", &["H", "m", "u", "Delta", "eps", "S"])];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

const SYMBOLS: &[&str] = &["->", "==", "=", "{", "}", "(", ")", "[", "]", ",", ":", ";", "*", "^"];

struct Parser<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    col: usize,
    peeked: Option<(Tok, Pos)>,
    names: BTreeSet<String>,
}

pub fn parse(text: &str) -> Result<Script, DslError> {
    let mut p = Parser { src: text, offset: 0, line: 1, col: 1, peeked: None, names: BTreeSet::new() };
    let mut script = Script::default();
    loop {
        let (tok, pos) = p.peek()?;
        if tok == Tok::Eof {
            return Ok(script);
        }
        let stmt = p.stmt()?;
        script.stmts.push(stmt);
        script.positions.push(pos);
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Parser<'_> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn rest(&self) -> &str {
        &self.src[self.offset..]
    }

    fn advance(&mut self, bytes: usize) {
        for c in self.src[self.offset..self.offset + bytes].chars() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.offset += bytes;
    }

    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            let ws = rest.len() - rest.trim_start().len();
            if ws > 0 {
                self.advance(ws);
            } else if rest.starts_with('#') {
                let len = rest.find('\n').unwrap_or(rest.len());
                self.advance(len);
            } else {
                return;
            }
        }
    }

    fn lex(&mut self) -> Result<(Tok, Pos), DslError> {
        self.skip_trivia();
        let pos = self.pos();
        let rest = self.rest();
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::Eof, pos));
        };
        if is_ident_start(c) {
            let len = rest.find(|ch: char| !is_ident_char(ch)).unwrap_or(rest.len());
            let word = rest[..len].to_string();
            self.advance(len);
            return Ok((Tok::Ident(word), pos));
        }
        let digits_from = usize::from(c == '-');
        if rest[digits_from..].starts_with(|ch: char| ch.is_ascii_digit()) {
            let len = digits_from + rest[digits_from..].find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len() - digits_from);
            let value = rest[..len].parse().map_err(|_| DslError::new(pos, format!("integer `{}` out of range", &rest[..len])))?;
            self.advance(len);
            return Ok((Tok::Int(value), pos));
        }
        for s in SYMBOLS {
            if rest.starts_with(s) {
                self.advance(s.len());
                return Ok((Tok::Sym(s), pos));
            }
        }
        Err(DslError::new(pos, format!("unexpected character `{c}`")))
    }

    fn peek(&mut self) -> Result<(Tok, Pos), DslError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.clone().expect("filled"))
    }

    fn bump(&mut self) -> Result<(Tok, Pos), DslError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn at(&mut self, sym: &str) -> Result<bool, DslError> {
        Ok(matches!(self.peek()?.0, Tok::Sym(s) if s == sym))
    }

    fn eat(&mut self, sym: &str) -> Result<bool, DslError> {
        let hit = self.at(sym)?;
        if hit {
            self.bump()?;
        }
        Ok(hit)
    }

    fn unexpected<T>(&mut self, expected: &str) -> Result<T, DslError> {
        let (tok, pos) = self.peek()?;
        Err(DslError::new(pos, format!("expected {expected}, found {}", tok.describe())))
    }

    fn expect(&mut self, sym: &str) -> Result<Pos, DslError> {
        if self.at(sym)? {
            Ok(self.bump()?.1)
        } else {
            self.unexpected(&format!("`{sym}`"))
        }
    }

    /// A closing delimiter; end of input is reported at the opener.
    fn close(&mut self, sym: &str, open: &str, at: Pos) -> Result<(), DslError> {
        if self.eat(sym)? {
            return Ok(());
        }
        let (tok, pos) = self.peek()?;
        if tok == Tok::Eof {
            Err(DslError::new(at, format!("unclosed `{open}`")))
        } else {
            Err(DslError::new(pos, format!("expected `{sym}` to close `{open}` at {at}, found {}", tok.describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek()? {
            (Tok::Ident(s), pos) => {
                self.bump()?;
                Ok((s, pos))
            }
            _ => self.unexpected("a name"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek()? {
            (Tok::Ident(s), _) if s == kw => {
                self.bump()?;
                Ok(())
            }
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        match self.peek()? {
            (Tok::Int(v), _) => {
                self.bump()?;
                Ok(v)
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn declare(&mut self, name: &str, pos: Pos) -> Result<(), DslError> {
        if is_reserved(name) {
            return Err(DslError::new(pos, format!("`{name}` is reserved")));
        }
        if !self.names.insert(name.to_string()) {
            return Err(DslError::new(pos, format!("duplicate name `{name}`")));
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<Stmt, DslError> {
        let (tok, pos) = self.bump()?;
        match tok {
            Tok::Ident(k) if k == "let" => {
                let (name, npos) = self.ident()?;
                self.declare(&name, npos)?;
                self.expect("=")?;
                match self.ident()? {
                    (k, _) if k == "obj" => self.obj_body(name),
                    (k, _) if k == "gen" => self.gen_body(name),
                    (k, kpos) => Err(DslError::new(kpos, format!("expected `obj` or `gen`, found `{k}`"))),
                }
            }
            Tok::Ident(k) if k == "use" => {
                let (library, lpos) = self.ident()?;
                let Some((_, bound)) = LIBRARIES.iter().find(|(l, _)| *l == library) else {
                    return Err(DslError::new(lpos, format!("unknown library `{library}`")));
                };
                for n in bound.iter() {
                    self.declare(n, lpos)?;
                }
                Ok(Stmt::Use { library })
            }
            Tok::Ident(k) if k == "assert" => {
                let lhs = self.morexpr()?;
                self.expect("==")?;
                let rhs = self.morexpr()?;
                Ok(Stmt::Assert { lhs, rhs })
            }
            other => Err(DslError::new(pos, format!("expected `let`, `use` or `assert`, found {}", other.describe()))),
        }
    }

    fn obj_body(&mut self, name: String) -> Result<Stmt, DslError> {
        let open = self.expect("{")?;
        let mut dims: Vec<(u64, usize)> = Vec::new();
        if !self.at("}")? {
            loop {
                let (_, dpos) = self.peek()?;
                self.keyword("deg")?;
                let d = self.int()?;
                if d < 0 {
                    return Err(DslError::new(dpos, format!("negative degree {d}")));
                }
                self.expect(":")?;
                let k = self.int()?;
                if k < 0 {
                    return Err(DslError::new(dpos, format!("negative dimension {k}")));
                }
                if dims.iter().any(|(e, _)| *e == d as u64) {
                    return Err(DslError::new(dpos, format!("degree {d} listed twice")));
                }
                dims.push((d as u64, k as usize));
                if !self.eat(",")? {
                    break;
                }
            }
        }
        self.close("}", "{", open)?;
        Ok(Stmt::Obj { name, dims })
    }

    fn gen_body(&mut self, name: String) -> Result<Stmt, DslError> {
        let open = self.expect("(")?;
        let source = self.objexpr()?;
        self.expect("->")?;
        let target = self.objexpr()?;
        self.close(")", "(", open)?;
        let shift = match self.peek()? {
            (Tok::Ident(k), _) if k == "deg" => {
                self.bump()?;
                Some(self.int()?)
            }
            _ => None,
        };
        let open = self.expect("{")?;
        let rows = self.matrix(open)?;
        Ok(Stmt::Gen { name, source, target, shift, rows })
    }

    /// Raw matrix body after `{`: rows split by `;`, entries by `,`, both at
    /// parenthesis depth zero; each entry in scalar syntax.
    fn matrix(&mut self, open: Pos) -> Result<Vec<Vec<String>>, DslError> {
        debug_assert!(self.peeked.is_none());
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut row: Vec<String> = Vec::new();
        let mut entry = String::new();
        let mut entry_pos = self.pos();
        let mut depth = 0usize;
        let push = |entry: &mut String, entry_pos: Pos, row: &mut Vec<String>| -> Result<(), DslError> {
            let text = entry.split_whitespace().collect::<Vec<_>>().join(" ");
            entry.clear();
            parse_scalar(&text).map_err(|e| DslError::new(entry_pos, format!("bad matrix entry `{text}`: {e}")))?;
            row.push(text);
            Ok(())
        };
        loop {
            let Some(c) = self.rest().chars().next() else {
                return Err(DslError::new(open, "unclosed `{`".to_string()));
            };
            if c == '#' {
                let len = self.rest().find('\n').unwrap_or(self.rest().len());
                self.advance(len);
                continue;
            }
            if entry.trim().is_empty() && !c.is_whitespace() {
                entry_pos = self.pos();
            }
            let here = self.pos();
            self.advance(c.len_utf8());
            match c {
                '(' => {
                    depth += 1;
                    entry.push(c);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(|| DslError::new(here, "unbalanced `)`".to_string()))?;
                    entry.push(c);
                }
                ',' | ';' | '}' if depth == 0 => {
                    let blank = entry.trim().is_empty();
                    if c == '}' && blank && row.is_empty() && rows.is_empty() {
                        return Ok(rows);
                    }
                    if blank {
                        return Err(DslError::new(here, "empty matrix entry".to_string()));
                    }
                    push(&mut entry, entry_pos, &mut row)?;
                    if c != ',' {
                        rows.push(std::mem::take(&mut row));
                    }
                    if c == '}' {
                        return Ok(rows);
                    }
                }
                _ => entry.push(c),
            }
        }
    }

    fn objexpr(&mut self) -> Result<ObjExpr, DslError> {
        let mut parts = vec![self.objfactor()?];
        while self.eat("*")? {
            parts.push(self.objfactor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { ObjExpr::Tensor(parts) })
    }

    fn objfactor(&mut self) -> Result<ObjExpr, DslError> {
        if self.eat("^")? {
            return Ok(ObjExpr::LeftDual(Box::new(self.objfactor()?)));
        }
        let mut base = match self.peek()? {
            (Tok::Ident(s), pos) => {
                self.bump()?;
                if s == "I" {
                    ObjExpr::Unit
                } else if is_reserved(&s) {
                    return Err(DslError::new(pos, format!("`{s}` is not an object")));
                } else {
                    ObjExpr::Name(s)
                }
            }
            (Tok::Sym("("), pos) => {
                self.bump()?;
                let inner = self.objexpr()?;
                self.close(")", "(", pos)?;
                ObjExpr::Group(Box::new(inner))
            }
            _ => return self.unexpected("an object"),
        };
        while self.eat("^")? {
            base = ObjExpr::RightDual(Box::new(base));
        }
        Ok(base)
    }

    fn morexpr(&mut self) -> Result<MorExpr, DslError> {
        let mut parts = vec![self.morterm()?];
        while self.eat(";")? {
            parts.push(self.morterm()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { MorExpr::Compose(parts) })
    }

    fn morterm(&mut self) -> Result<MorExpr, DslError> {
        let mut parts = vec![self.morfactor()?];
        while self.eat("*")? {
            parts.push(self.morfactor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { MorExpr::Tensor(parts) })
    }

    fn morfactor(&mut self) -> Result<MorExpr, DslError> {
        match self.peek()? {
            (Tok::Ident(s), pos) => {
                self.bump()?;
                if let Some(prim) = Prim::from_keyword(&s) {
                    let open = self.expect("[")?;
                    let mut args = vec![self.objexpr()?];
                    while args.len() < prim.arity() {
                        if self.at("]")? || self.peek()?.0 == Tok::Eof {
                            break;
                        }
                        self.expect(",")?;
                        args.push(self.objexpr()?);
                    }
                    self.close("]", "[", open)?;
                    if args.len() != prim.arity() {
                        return Err(DslError::new(pos, format!("`{s}` takes {} objects, got {}", prim.arity(), args.len())));
                    }
                    Ok(MorExpr::Prim(prim, args))
                } else if is_reserved(&s) {
                    Err(DslError::new(pos, format!("`{s}` is not a morphism")))
                } else {
                    Ok(MorExpr::Name(s))
                }
            }
            (Tok::Sym("("), pos) => {
                self.bump()?;
                let inner = self.morexpr()?;
                self.close(")", "(", pos)?;
                Ok(MorExpr::Group(Box::new(inner)))
            }
            _ => self.unexpected("a morphism"),
        }
    }
}

pub fn is_reserved(name: &str) -> bool {
    matches!(name, "let" | "use" | "assert" | "obj" | "gen" | "deg" | "I") || Prim::from_keyword(name).is_some()
}
