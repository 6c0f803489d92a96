use std::fmt::Write as _;

use crate::stlc::{Tm, Ty};

use super::{resolve, Cursor, Names, PResult, ScopeError, SurfaceError, Tok};

pub fn parse_stlc(src: &str) -> Result<Tm, SurfaceError> {
    let mut p = Cursor::new(src)?;
    let tm = term(&mut p, &mut Vec::new())?;
    p.finish()?;
    Ok(tm)
}

fn ty(p: &mut Cursor) -> PResult<Ty> {
    p.enter()?;
    let dom = match p.peek().clone() {
        Tok::LParen => {
            let (open, pos) = p.bump();
            let t = ty(p)?;
            p.close(&Tok::RParen, &open, pos)?;
            t
        }
        t if t.is_kw("bool") => {
            p.bump();
            Ty::Bool
        }
        _ => return Err(p.error(&["a type"])),
    };
    let out = if p.eat(&Tok::Arrow) { Ty::arrow(dom, ty(p)?) } else { dom };
    p.leave();
    Ok(out)
}

fn term(p: &mut Cursor, scope: &mut Vec<String>) -> PResult<Tm> {
    p.enter()?;
    let out = if p.peek().is_kw("fn") {
        p.bump();
        let (open, pos) = (Tok::LParen, p.expect(&Tok::LParen)?);
        let (name, _) = p.ident("a variable name")?;
        p.expect(&Tok::Colon)?;
        let dom = ty(p)?;
        p.close(&Tok::RParen, &open, pos)?;
        p.expect(&Tok::FatArrow)?;
        scope.push(name);
        let body = term(p, scope);
        scope.pop();
        Tm::lam(dom, body?)
    } else {
        let mut head = atom(p, scope)?;
        while starts_atom(p.peek()) {
            head = Tm::ap(head, atom(p, scope)?);
        }
        head
    };
    p.leave();
    Ok(out)
}

fn starts_atom(t: &Tok) -> bool {
    match t {
        Tok::LParen => true,
        Tok::Ident(s) => s == "tt" || s == "ff" || !super::is_keyword(s),
        _ => false,
    }
}

fn atom(p: &mut Cursor, scope: &mut Vec<String>) -> PResult<Tm> {
    match p.peek().clone() {
        Tok::LParen => {
            let (open, pos) = p.bump();
            let t = term(p, scope)?;
            p.close(&Tok::RParen, &open, pos)?;
            Ok(t)
        }
        t if t.is_kw("tt") => {
            p.bump();
            Ok(Tm::TT)
        }
        t if t.is_kw("ff") => {
            p.bump();
            Ok(Tm::FF)
        }
        Tok::Ident(name) if !super::is_keyword(&name) => {
            let (_, pos) = p.bump();
            match resolve(scope, &name) {
                Some(i) if name != "_" => Ok(Tm::Var(i)),
                _ => Err(ScopeError { pos, kind: "variable", name }.into()),
            }
        }
        _ => Err(p.error(&["a term"])),
    }
}

pub fn print_stlc_ty(t: &Ty) -> String {
    match t {
        Ty::Bool => "bool".into(),
        Ty::Arrow(a, b) => match **a {
            Ty::Arrow(..) => format!("({}) -> {}", print_stlc_ty(a), print_stlc_ty(b)),
            Ty::Bool => format!("bool -> {}", print_stlc_ty(b)),
        },
    }
}

/// Prints a term whose free variables are at most the `depth` binders the
/// caller supplies names for; closed terms print with `depth = 0`.
pub fn print_stlc(t: &Tm) -> String {
    let mut out = String::new();
    write_term(&mut out, t, 0);
    out
}

fn write_term(out: &mut String, t: &Tm, depth: usize) {
    match t {
        Tm::Lam(dom, body) => {
            let _ = write!(out, "fn ({}: {}) => ", Names("x", depth), print_stlc_ty(dom));
            write_term(out, body, depth + 1);
        }
        Tm::Ap(f, a) => {
            match **f {
                Tm::Lam(..) => write_parens(out, f, depth),
                _ => write_term(out, f, depth),
            }
            out.push(' ');
            match **a {
                Tm::Lam(..) | Tm::Ap(..) => write_parens(out, a, depth),
                _ => write_term(out, a, depth),
            }
        }
        Tm::Var(i) if *i < depth => {
            let _ = write!(out, "{}", Names("x", depth - 1 - i));
        }
        Tm::Var(i) => {
            let _ = write!(out, "free{}", i - depth);
        }
        Tm::TT => out.push_str("tt"),
        Tm::FF => out.push_str("ff"),
    }
}

fn write_parens(out: &mut String, t: &Tm, depth: usize) {
    out.push('(');
    write_term(out, t, depth);
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{ParseError, Pos};

    #[test]
    fn identity() {
        assert_eq!(parse_stlc("fn (x: bool) => x"), Ok(Tm::lam(Ty::Bool, Tm::Var(0))));
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse_stlc("fn (f: bool -> bool -> bool) => f tt ff").unwrap();
        let ft = Ty::arrow(Ty::Bool, Ty::arrow(Ty::Bool, Ty::Bool));
        assert_eq!(t, Tm::lam(ft, Tm::ap(Tm::ap(Tm::Var(0), Tm::TT), Tm::FF)));
    }

    #[test]
    fn shadowing_picks_innermost() {
        let t = parse_stlc("fn (x: bool) => fn (x: bool) => x").unwrap();
        assert_eq!(t, Tm::lam(Ty::Bool, Tm::lam(Ty::Bool, Tm::Var(0))));
    }

    #[test]
    fn unclosed_paren_is_reported_where_it_opened() {
        let err = parse_stlc("(fn (x: bool => x) tt").unwrap_err();
        let SurfaceError::Parse(ParseError { pos, unclosed, .. }) = err else { panic!("{err:?}") };
        assert_eq!(pos, Pos { line: 1, col: 14 });
        assert_eq!(unclosed, Some(("`(`".into(), Pos { line: 1, col: 5 })));
    }

    #[test]
    fn unbound_variable() {
        let err = parse_stlc("fn (x: bool) => y").unwrap_err();
        assert!(matches!(err, SurfaceError::Scope(ScopeError { ref name, .. }) if name == "y"));
    }

    #[test]
    fn trailing_garbage() {
        assert!(parse_stlc("tt )").is_err());
        assert!(parse_stlc("").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "(fn (x0: bool) => x0) tt",
            "fn (x0: (bool -> bool) -> bool) => x0 (fn (x1: bool) => x1)",
            "fn (x0: bool -> bool) => fn (x1: bool) => x0 (x0 x1)",
        ] {
            let t = parse_stlc(src).unwrap();
            assert_eq!(print_stlc(&t), src);
            assert_eq!(parse_stlc(&print_stlc(&t)), Ok(t));
        }
    }
}
