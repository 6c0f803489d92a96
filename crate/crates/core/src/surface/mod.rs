//! Concrete syntax for both languages. Binders are named in source text and
//! resolved to de Bruijn indices while parsing; the printers invent names
//! (`x0`, `x1`, … for variables and `a0`, `a1`, … for assignables) from
//! binder depth, so printing never captures.
//!
//! ```text
//! stlc ty   ::= bool | ty -> ty | ( ty )
//! stlc term ::= fn ( x : ty ) => term | term term | x | tt | ff | ( term )
//!
//! ma ty  ::= unit | bool | nat | cmd ( ty ) | ty -> ty | ( ty )
//! ma exp ::= fn ( x : ty ) => exp | exp exp | x | () | tt | ff | zero | NUM
//!          | succ ( exp ) | cmd { cmd }
//!          | ifz exp { zero => exp | succ x => exp } | ( exp )
//! ma cmd ::= ret exp | bnd x <- exp ; cmd | while [ a ] { cmd } | get [ a ]
//!          | set [ a ] ( exp ) | dcl a := exp in cmd | { cmd }
//! ```
//!
//! An assignable reference `a` is either a declared name or a literal index.

mod lexer;
pub mod ma;
pub mod stlc;

use std::fmt;

use thiserror::Error;

pub use lexer::{Pos, Tok};
pub use ma::{parse_ma, parse_ma_cmd, parse_ma_exp, print_cmd, print_exp, print_ma_ty, MaProgram};
pub use stlc::{parse_stlc, print_stlc, print_stlc_ty};

/// Nesting deeper than this is rejected rather than risking the stack.
pub const MAX_DEPTH: usize = 256;
/// Numeric literals desugar to chains of `succ`; larger ones are rejected.
pub const MAX_NUMERAL: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: expected {}, found {found}{}", expected_list(.expected), unclosed_note(.unclosed))]
pub struct ParseError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub found: String,
    /// The opening delimiter left unmatched, if that is what went wrong.
    pub unclosed: Option<(String, Pos)>,
}

impl ParseError {
    pub fn line(&self) -> usize {
        self.pos.line
    }

    pub fn col(&self) -> usize {
        self.pos.col
    }
}

fn expected_list(items: &[String]) -> String {
    match items {
        [] => "something else".into(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} or {last}", init.join(", ")),
    }
}

fn unclosed_note(u: &Option<(String, Pos)>) -> String {
    match u {
        Some((delim, pos)) => format!(" (unclosed {delim} opened at {pos})"),
        None => String::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: unbound {kind} `{name}`")]
pub struct ScopeError {
    pub pos: Pos,
    pub kind: &'static str,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("scope error at {0}")]
    Scope(#[from] ScopeError),
}

/// Token cursor shared by both parsers.
pub(crate) struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    depth: usize,
}

pub(crate) type PResult<T> = Result<T, SurfaceError>;

impl Cursor {
    pub(crate) fn new(src: &str) -> PResult<Self> {
        let toks = lexer::lex(src).map_err(|e| ParseError {
            pos: e.pos,
            expected: vec!["a token".into()],
            found: format!("`{}`", e.found),
            unclosed: None,
        })?;
        Ok(Cursor { toks, at: 0, depth: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    pub(crate) fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: &[&str]) -> SurfaceError {
        ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
            unclosed: None,
        }
        .into()
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_kw(&mut self, kw: &str) -> bool {
        if self.peek().is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, t: &Tok) -> PResult<Pos> {
        let pos = self.pos();
        if self.eat(t) {
            Ok(pos)
        } else {
            Err(self.error(&[&t.to_string()]))
        }
    }

    pub(crate) fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    /// Expects the closer matching an opener seen at `open`.
    pub(crate) fn close(&mut self, t: &Tok, opener: &Tok, open: Pos) -> PResult<()> {
        if self.eat(t) {
            return Ok(());
        }
        let SurfaceError::Parse(mut e) = self.error(&[&t.to_string()]) else { unreachable!() };
        e.unclosed = Some((opener.to_string(), open));
        Err(e.into())
    }

    pub(crate) fn ident(&mut self, what: &str) -> PResult<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                let (_, pos) = self.bump();
                Ok((s, pos))
            }
            _ => Err(self.error(&[what])),
        }
    }

    pub(crate) fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(&["less deeply nested input"]));
        }
        Ok(())
    }

    pub(crate) fn leave(&mut self) {
        self.depth -= 1;
    }

    pub(crate) fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "fn", "tt", "ff", "bool", "unit", "nat", "cmd", "ifz", "zero", "succ", "ret", "bnd", "while", "get", "set",
    "dcl", "in",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Looks `name` up in a scope whose last entry is the innermost binder.
pub(crate) fn resolve(scope: &[String], name: &str) -> Option<usize> {
    scope.iter().rev().position(|n| n == name)
}

pub(crate) struct Names<'a>(pub &'a str, pub usize);

impl fmt::Display for Names<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}
