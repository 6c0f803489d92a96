use std::fmt::Write as _;

use crate::algol::{Cmd, Exp, MaTy};

use super::{resolve, Cursor, Names, PResult, ParseError, ScopeError, SurfaceError, Tok, MAX_NUMERAL};

/// A parsed source file: a bare expression or a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaProgram {
    Exp(Exp),
    Cmd(Cmd),
}

const CMD_KEYWORDS: &[&str] = &["ret", "bnd", "while", "get", "set", "dcl"];

/// Parses a file as a command if it starts like one, else as an expression.
pub fn parse_ma(src: &str) -> Result<MaProgram, SurfaceError> {
    let mut p = Cursor::new(src)?;
    let is_cmd = *p.peek() == Tok::LBrace || CMD_KEYWORDS.iter().any(|k| p.peek().is_kw(k));
    let mut scope = Scope::default();
    let out = if is_cmd { MaProgram::Cmd(cmd(&mut p, &mut scope)?) } else { MaProgram::Exp(exp(&mut p, &mut scope)?) };
    p.finish()?;
    Ok(out)
}

pub fn parse_ma_exp(src: &str) -> Result<Exp, SurfaceError> {
    let mut p = Cursor::new(src)?;
    let e = exp(&mut p, &mut Scope::default())?;
    p.finish()?;
    Ok(e)
}

pub fn parse_ma_cmd(src: &str) -> Result<Cmd, SurfaceError> {
    let mut p = Cursor::new(src)?;
    let m = cmd(&mut p, &mut Scope::default())?;
    p.finish()?;
    Ok(m)
}

#[derive(Default)]
struct Scope {
    vars: Vec<String>,
    cells: Vec<String>,
}

impl Scope {
    fn with_var<T>(&mut self, name: String, f: impl FnOnce(&mut Self) -> T) -> T {
        self.vars.push(name);
        let out = f(self);
        self.vars.pop();
        out
    }

    fn with_cell<T>(&mut self, name: String, f: impl FnOnce(&mut Self) -> T) -> T {
        self.cells.push(name);
        let out = f(self);
        self.cells.pop();
        out
    }
}

fn ty(p: &mut Cursor) -> PResult<MaTy> {
    p.enter()?;
    let dom = match p.peek().clone() {
        Tok::LParen => {
            let (open, pos) = p.bump();
            let t = ty(p)?;
            p.close(&Tok::RParen, &open, pos)?;
            t
        }
        Tok::Ident(s) if s == "unit" || s == "bool" || s == "nat" => {
            p.bump();
            match s.as_str() {
                "unit" => MaTy::Unit,
                "bool" => MaTy::Bool,
                _ => MaTy::Nat,
            }
        }
        t if t.is_kw("cmd") => {
            p.bump();
            let (open, pos) = (Tok::LParen, p.expect(&Tok::LParen)?);
            let t = ty(p)?;
            p.close(&Tok::RParen, &open, pos)?;
            MaTy::cmd(t)
        }
        _ => return Err(p.error(&["a type"])),
    };
    let out = if p.eat(&Tok::Arrow) { MaTy::arrow(dom, ty(p)?) } else { dom };
    p.leave();
    Ok(out)
}

fn exp(p: &mut Cursor, scope: &mut Scope) -> PResult<Exp> {
    p.enter()?;
    let out = if p.peek().is_kw("fn") {
        p.bump();
        let (open, pos) = (Tok::LParen, p.expect(&Tok::LParen)?);
        let (name, _) = p.ident("a variable name")?;
        p.expect(&Tok::Colon)?;
        let dom = ty(p)?;
        p.close(&Tok::RParen, &open, pos)?;
        p.expect(&Tok::FatArrow)?;
        let body = scope.with_var(name, |s| exp(p, s))?;
        Exp::lam(dom, body)
    } else {
        let mut head = atom(p, scope)?;
        while starts_atom(p.peek()) {
            head = Exp::ap(head, atom(p, scope)?);
        }
        head
    };
    p.leave();
    Ok(out)
}

fn starts_atom(t: &Tok) -> bool {
    match t {
        Tok::LParen | Tok::Num(_) => true,
        Tok::Ident(s) => matches!(s.as_str(), "tt" | "ff" | "zero" | "succ" | "cmd" | "ifz") || !super::is_keyword(s),
        _ => false,
    }
}

fn atom(p: &mut Cursor, scope: &mut Scope) -> PResult<Exp> {
    p.enter()?;
    let out = atom_inner(p, scope);
    p.leave();
    out
}

fn atom_inner(p: &mut Cursor, scope: &mut Scope) -> PResult<Exp> {
    let (tok, pos) = (p.peek().clone(), p.pos());
    match tok {
        Tok::LParen => {
            let (open, pos) = p.bump();
            if p.eat(&Tok::RParen) {
                return Ok(Exp::Triv);
            }
            let e = exp(p, scope)?;
            p.close(&Tok::RParen, &open, pos)?;
            Ok(e)
        }
        Tok::Num(n) => {
            if n > MAX_NUMERAL {
                return Err(ParseError {
                    pos,
                    expected: vec![format!("a numeral no larger than {MAX_NUMERAL}")],
                    found: tok.to_string(),
                    unclosed: None,
                }
                .into());
            }
            p.bump();
            Ok(Exp::numeral(n))
        }
        Tok::Ident(name) => match name.as_str() {
            "tt" | "ff" => {
                p.bump();
                Ok(Exp::bool(name == "tt"))
            }
            "zero" => {
                p.bump();
                Ok(Exp::Zero)
            }
            "succ" => {
                p.bump();
                let (open, pos) = (Tok::LParen, p.expect(&Tok::LParen)?);
                let e = exp(p, scope)?;
                p.close(&Tok::RParen, &open, pos)?;
                Ok(Exp::suc(e))
            }
            "cmd" => {
                p.bump();
                let (open, pos) = (Tok::LBrace, p.expect(&Tok::LBrace)?);
                let m = cmd(p, scope)?;
                p.close(&Tok::RBrace, &open, pos)?;
                Ok(Exp::cmd(m))
            }
            "ifz" => {
                p.bump();
                let scrut = exp(p, scope)?;
                let (open, pos) = (Tok::LBrace, p.expect(&Tok::LBrace)?);
                p.expect_kw("zero")?;
                p.expect(&Tok::FatArrow)?;
                let z = exp(p, scope)?;
                p.expect(&Tok::Bar)?;
                p.expect_kw("succ")?;
                let (x, _) = p.ident("a variable name")?;
                p.expect(&Tok::FatArrow)?;
                let s = scope.with_var(x, |sc| exp(p, sc))?;
                p.close(&Tok::RBrace, &open, pos)?;
                Ok(Exp::ifz(scrut, z, s))
            }
            _ if super::is_keyword(&name) => Err(p.error(&["an expression"])),
            _ => {
                p.bump();
                match resolve(&scope.vars, &name) {
                    Some(i) if name != "_" => Ok(Exp::Var(i)),
                    _ => Err(ScopeError { pos, kind: "variable", name }.into()),
                }
            }
        },
        _ => Err(p.error(&["an expression"])),
    }
}

/// `[a]`: a declared assignable name or a literal index.
fn cell(p: &mut Cursor, scope: &Scope) -> PResult<usize> {
    let (open, pos) = (Tok::LBracket, p.expect(&Tok::LBracket)?);
    let ix = match p.peek().clone() {
        Tok::Num(n) => {
            p.bump();
            usize::try_from(n).unwrap_or(usize::MAX)
        }
        Tok::Ident(name) if !super::is_keyword(&name) => {
            let (_, at) = p.bump();
            match resolve(&scope.cells, &name) {
                Some(i) if name != "_" => i,
                _ => return Err(ScopeError { pos: at, kind: "assignable", name }.into()),
            }
        }
        _ => return Err(p.error(&["an assignable"])),
    };
    p.close(&Tok::RBracket, &open, pos)?;
    Ok(ix)
}

fn cmd(p: &mut Cursor, scope: &mut Scope) -> PResult<Cmd> {
    p.enter()?;
    let out = cmd_inner(p, scope);
    p.leave();
    out
}

fn cmd_inner(p: &mut Cursor, scope: &mut Scope) -> PResult<Cmd> {
    if *p.peek() == Tok::LBrace {
        let (open, pos) = p.bump();
        let m = cmd(p, scope)?;
        p.close(&Tok::RBrace, &open, pos)?;
        return Ok(m);
    }
    let kw = match p.peek() {
        Tok::Ident(s) if CMD_KEYWORDS.contains(&s.as_str()) => s.clone(),
        _ => return Err(p.error(&["a command"])),
    };
    p.bump();
    match kw.as_str() {
        "ret" => Ok(Cmd::ret(exp(p, scope)?)),
        "bnd" => {
            let (x, _) = p.ident("a variable name")?;
            p.expect(&Tok::LeftArrow)?;
            let e = exp(p, scope)?;
            p.expect(&Tok::Semi)?;
            let m = scope.with_var(x, |s| cmd(p, s))?;
            Ok(Cmd::bnd(e, m))
        }
        "while" => {
            let n = cell(p, scope)?;
            let (open, pos) = (Tok::LBrace, p.expect(&Tok::LBrace)?);
            let body = cmd(p, scope)?;
            p.close(&Tok::RBrace, &open, pos)?;
            Ok(Cmd::while_(n, body))
        }
        "get" => Ok(Cmd::Get(cell(p, scope)?)),
        "set" => {
            let n = cell(p, scope)?;
            let (open, pos) = (Tok::LParen, p.expect(&Tok::LParen)?);
            let e = exp(p, scope)?;
            p.close(&Tok::RParen, &open, pos)?;
            Ok(Cmd::set(n, e))
        }
        _ => {
            let (a, _) = p.ident("an assignable name")?;
            p.expect(&Tok::ColonEq)?;
            let e = exp(p, scope)?;
            p.expect_kw("in")?;
            let m = scope.with_cell(a, |s| cmd(p, s))?;
            Ok(Cmd::dcl(e, m))
        }
    }
}

pub fn print_ma_ty(t: &MaTy) -> String {
    match t {
        MaTy::Unit => "unit".into(),
        MaTy::Bool => "bool".into(),
        MaTy::Nat => "nat".into(),
        MaTy::Cmd(a) => format!("cmd({})", print_ma_ty(a)),
        MaTy::Arrow(a, b) => match **a {
            MaTy::Arrow(..) => format!("({}) -> {}", print_ma_ty(a), print_ma_ty(b)),
            _ => format!("{} -> {}", print_ma_ty(a), print_ma_ty(b)),
        },
    }
}

pub fn print_exp(e: &Exp) -> String {
    let mut out = String::new();
    Printer { out: &mut out }.exp(e, 0, 0);
    out
}

pub fn print_cmd(m: &Cmd) -> String {
    let mut out = String::new();
    Printer { out: &mut out }.cmd(m, 0, 0);
    out
}

/// `vars` and `cells` count the binders of each kind above the current node.
struct Printer<'a> {
    out: &'a mut String,
}

impl Printer<'_> {
    fn exp(&mut self, e: &Exp, vars: usize, cells: usize) {
        if let Some(n) = e.as_numeral() {
            if n == 0 {
                self.out.push_str("zero");
                return;
            }
            if n <= MAX_NUMERAL {
                let _ = write!(self.out, "{n}");
                return;
            }
        }
        match e {
            Exp::Var(i) if *i < vars => {
                let _ = write!(self.out, "{}", Names("x", vars - 1 - i));
            }
            Exp::Var(i) => {
                let _ = write!(self.out, "free{}", i - vars);
            }
            Exp::Triv => self.out.push_str("()"),
            Exp::Zero => self.out.push_str("zero"),
            Exp::TT => self.out.push_str("tt"),
            Exp::FF => self.out.push_str("ff"),
            Exp::Suc(inner) => {
                self.out.push_str("succ(");
                self.exp(inner, vars, cells);
                self.out.push(')');
            }
            Exp::Ifz(s, z, p) => {
                self.out.push_str("ifz ");
                self.exp(s, vars, cells);
                self.out.push_str(" { zero => ");
                self.exp(z, vars, cells);
                let _ = write!(self.out, " | succ {} => ", Names("x", vars));
                self.exp(p, vars + 1, cells);
                self.out.push_str(" }");
            }
            Exp::Lam(dom, body) => {
                let _ = write!(self.out, "fn ({}: {}) => ", Names("x", vars), print_ma_ty(dom));
                self.exp(body, vars + 1, cells);
            }
            Exp::Ap(f, a) => {
                self.paren_if(matches!(**f, Exp::Lam(..)), f, vars, cells);
                self.out.push(' ');
                self.paren_if(matches!(**a, Exp::Lam(..) | Exp::Ap(..)), a, vars, cells);
            }
            Exp::CmdVal(m) => {
                self.out.push_str("cmd { ");
                self.cmd(m, vars, cells);
                self.out.push_str(" }");
            }
        }
    }

    fn paren_if(&mut self, yes: bool, e: &Exp, vars: usize, cells: usize) {
        if yes {
            self.out.push('(');
        }
        self.exp(e, vars, cells);
        if yes {
            self.out.push(')');
        }
    }

    fn cell(&mut self, n: usize, cells: usize) {
        if n < cells {
            let _ = write!(self.out, "[{}]", Names("a", cells - 1 - n));
        } else {
            let _ = write!(self.out, "[{n}]");
        }
    }

    fn cmd(&mut self, m: &Cmd, vars: usize, cells: usize) {
        match m {
            Cmd::Ret(e) => {
                self.out.push_str("ret ");
                self.exp(e, vars, cells);
            }
            Cmd::Bnd(e, k) => {
                let _ = write!(self.out, "bnd {} <- ", Names("x", vars));
                self.exp(e, vars, cells);
                self.out.push_str("; ");
                self.cmd(k, vars + 1, cells);
            }
            Cmd::While(n, body) => {
                self.out.push_str("while");
                self.cell(*n, cells);
                self.out.push_str(" { ");
                self.cmd(body, vars, cells);
                self.out.push_str(" }");
            }
            Cmd::Get(n) => {
                self.out.push_str("get");
                self.cell(*n, cells);
            }
            Cmd::Set(n, e) => {
                self.out.push_str("set");
                self.cell(*n, cells);
                self.out.push('(');
                self.exp(e, vars, cells);
                self.out.push(')');
            }
            Cmd::Dcl(e, body) => {
                let _ = write!(self.out, "dcl {} := ", Names("a", cells));
                self.exp(e, vars, cells);
                self.out.push_str(" in ");
                self.cmd(body, vars, cells + 1);
            }
        }
    }
}
