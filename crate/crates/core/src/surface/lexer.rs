use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Bar,
    FatArrow,
    Arrow,
    LeftArrow,
    ColonEq,
    Eof,
}

impl Tok {
    pub fn is_kw(&self, kw: &str) -> bool {
        matches!(self, Tok::Ident(s) if s == kw)
    }
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Num(n) => return write!(f, "`{n}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Colon => "`:`",
            Tok::Semi => "`;`",
            Tok::Bar => "`|`",
            Tok::FatArrow => "`=>`",
            Tok::Arrow => "`->`",
            Tok::LeftArrow => "`<-`",
            Tok::ColonEq => "`:=`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

/// A lexing failure: the offending character and where it sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub found: char,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. `--` starts a comment running to end of line.
pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, LexError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! advance {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance!();
            continue;
        }
        if ident_start(c) {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !ident_continue(d) {
                    break;
                }
                s.push(d);
                advance!();
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(v) = d.to_digit(10) else { break };
                n = n.saturating_mul(10).saturating_add(v as u64);
                advance!();
            }
            out.push((Tok::Num(n), pos));
            continue;
        }
        advance!();
        let next = chars.peek().copied();
        let tok = match (c, next) {
            ('-', Some('-')) => {
                while let Some(d) = advance!() {
                    if d == '\n' {
                        break;
                    }
                }
                continue;
            }
            ('=', Some('>')) => {
                advance!();
                Tok::FatArrow
            }
            ('-', Some('>')) => {
                advance!();
                Tok::Arrow
            }
            ('<', Some('-')) => {
                advance!();
                Tok::LeftArrow
            }
            (':', Some('=')) => {
                advance!();
                Tok::ColonEq
            }
            ('(', _) => Tok::LParen,
            (')', _) => Tok::RParen,
            ('{', _) => Tok::LBrace,
            ('}', _) => Tok::RBrace,
            ('[', _) => Tok::LBracket,
            (']', _) => Tok::RBracket,
            (':', _) => Tok::Colon,
            (';', _) => Tok::Semi,
            ('|', _) => Tok::Bar,
            (found, _) => return Err(LexError { pos, found }),
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
