//! Expressions and commands, with the three structural operations the
//! dynamics and the metatheory rely on: variable shifting, weakening along
//! a signature extension, and simultaneous substitution.
//!
//! Variables and assignables are both de Bruijn indices, in separate
//! scopes. `Lam`, the second branch of `Ifz` and the body of `Bnd` bind a
//! variable; `Dcl` binds an assignable.

use super::types::MaTy;
use super::world::{sh, GeProof};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exp {
    Var(usize),
    Triv,
    Zero,
    Suc(Box<Exp>),
    /// `ifz e { zero => e1 | succ x => e2 }`, `x` bound in `e2`.
    Ifz(Box<Exp>, Box<Exp>, Box<Exp>),
    TT,
    FF,
    Lam(MaTy, Box<Exp>),
    Ap(Box<Exp>, Box<Exp>),
    CmdVal(Box<Cmd>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cmd {
    Ret(Box<Exp>),
    /// `bnd x <- e; m`, `x` bound in `m`.
    Bnd(Box<Exp>, Box<Cmd>),
    While(usize, Box<Cmd>),
    Get(usize),
    Set(usize, Box<Exp>),
    /// `dcl a := e in m`; `a` is assignable 0 inside `m`.
    Dcl(Box<Exp>, Box<Cmd>),
}

impl Exp {
    pub fn suc(e: Exp) -> Exp {
        Exp::Suc(Box::new(e))
    }

    pub fn ifz(e: Exp, zero: Exp, succ: Exp) -> Exp {
        Exp::Ifz(Box::new(e), Box::new(zero), Box::new(succ))
    }

    pub fn lam(dom: MaTy, body: Exp) -> Exp {
        Exp::Lam(dom, Box::new(body))
    }

    pub fn ap(f: Exp, a: Exp) -> Exp {
        Exp::Ap(Box::new(f), Box::new(a))
    }

    pub fn cmd(m: Cmd) -> Exp {
        Exp::CmdVal(Box::new(m))
    }

    pub fn bool(b: bool) -> Exp {
        if b {
            Exp::TT
        } else {
            Exp::FF
        }
    }

    pub fn numeral(n: u64) -> Exp {
        (0..n).fold(Exp::Zero, |e, _| Exp::suc(e))
    }

    /// The number `n` if this is `suc^n(zero)`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match cur {
                Exp::Zero => return Some(n),
                Exp::Suc(e) => {
                    n += 1;
                    cur = e;
                }
                _ => return None,
            }
        }
    }

    pub fn is_value(&self) -> bool {
        match self {
            Exp::Triv | Exp::Zero | Exp::TT | Exp::FF | Exp::Lam(..) | Exp::CmdVal(_) => true,
            Exp::Suc(e) => e.is_value(),
            Exp::Var(_) | Exp::Ifz(..) | Exp::Ap(..) => false,
        }
    }

    /// A closed value of strictly positive type.
    pub fn is_positive_value(&self) -> bool {
        matches!(self, Exp::Triv | Exp::TT | Exp::FF) || self.as_numeral().is_some()
    }

    pub fn size(&self) -> usize {
        match self {
            Exp::Var(_) | Exp::Triv | Exp::Zero | Exp::TT | Exp::FF => 1,
            Exp::Suc(e) => 1 + e.size(),
            Exp::Ifz(e, z, s) => 1 + e.size() + z.size() + s.size(),
            Exp::Lam(_, b) => 1 + b.size(),
            Exp::Ap(f, a) => 1 + f.size() + a.size(),
            Exp::CmdVal(m) => 1 + m.size(),
        }
    }

    /// Adds `by` to every variable at or above `cutoff`.
    pub fn shift(&self, cutoff: usize, by: usize) -> Exp {
        self.rename(0, &|i, d| Some(if i >= cutoff + d { i + by } else { i }))
            .expect("shifting never fails")
    }

    /// Removes `by` variable binders at `cutoff`; `None` if one is used.
    pub fn unshift(&self, cutoff: usize, by: usize) -> Option<Exp> {
        self.rename(0, &|i, d| unshift_ix(i, cutoff + d, by))
    }

    /// Renames every variable occurrence; `f` receives the index and the
    /// number of binders crossed.
    fn rename(&self, depth: usize, f: &dyn Fn(usize, usize) -> Option<usize>) -> Option<Exp> {
        Some(match self {
            Exp::Var(i) => Exp::Var(f(*i, depth)?),
            Exp::Triv => Exp::Triv,
            Exp::Zero => Exp::Zero,
            Exp::TT => Exp::TT,
            Exp::FF => Exp::FF,
            Exp::Suc(e) => Exp::suc(e.rename(depth, f)?),
            Exp::Ifz(e, z, s) => Exp::ifz(e.rename(depth, f)?, z.rename(depth, f)?, s.rename(depth + 1, f)?),
            Exp::Lam(t, b) => Exp::lam(t.clone(), b.rename(depth + 1, f)?),
            Exp::Ap(g, a) => Exp::ap(g.rename(depth, f)?, a.rename(depth, f)?),
            Exp::CmdVal(m) => Exp::cmd(m.rename(depth, f)?),
        })
    }

    /// `⇑^p e`: re-index assignables into a larger signature.
    pub fn weaken(&self, p: &GeProof) -> Exp {
        match self {
            Exp::Var(_) | Exp::Triv | Exp::Zero | Exp::TT | Exp::FF => self.clone(),
            Exp::Suc(e) => Exp::suc(e.weaken(p)),
            Exp::Ifz(e, z, s) => Exp::ifz(e.weaken(p), z.weaken(p), s.weaken(p)),
            Exp::Lam(t, b) => Exp::lam(t.clone(), b.weaken(p)),
            Exp::Ap(f, a) => Exp::ap(f.weaken(p), a.weaken(p)),
            Exp::CmdVal(m) => Exp::cmd(m.weaken(p)),
        }
    }

    /// Removes `by` assignable binders at `cutoff`; `None` if one is used.
    pub fn strengthen_assignables(&self, cutoff: usize, by: usize) -> Option<Exp> {
        Some(match self {
            Exp::Var(_) | Exp::Triv | Exp::Zero | Exp::TT | Exp::FF => self.clone(),
            Exp::Suc(e) => Exp::suc(e.strengthen_assignables(cutoff, by)?),
            Exp::Ifz(e, z, s) => Exp::ifz(
                e.strengthen_assignables(cutoff, by)?,
                z.strengthen_assignables(cutoff, by)?,
                s.strengthen_assignables(cutoff, by)?,
            ),
            Exp::Lam(t, b) => Exp::lam(t.clone(), b.strengthen_assignables(cutoff, by)?),
            Exp::Ap(f, a) => Exp::ap(f.strengthen_assignables(cutoff, by)?, a.strengthen_assignables(cutoff, by)?),
            Exp::CmdVal(m) => Exp::cmd(m.strengthen_assignables(cutoff, by)?),
        })
    }

    pub fn subst(&self, sub: &Sub) -> Exp {
        match self {
            Exp::Var(i) => sub.get(*i).clone(),
            Exp::Triv | Exp::Zero | Exp::TT | Exp::FF => self.clone(),
            Exp::Suc(e) => Exp::suc(e.subst(sub)),
            Exp::Ifz(e, z, s) => Exp::ifz(e.subst(sub), z.subst(sub), s.subst(&sub.lift())),
            Exp::Lam(t, b) => Exp::lam(t.clone(), b.subst(&sub.lift())),
            Exp::Ap(f, a) => Exp::ap(f.subst(sub), a.subst(sub)),
            Exp::CmdVal(m) => Exp::cmd(m.subst(sub)),
        }
    }

    /// `self[e]` for a body over `A :: Γ` with `|Γ| = outer`.
    pub fn instantiate(&self, e: &Exp, outer: usize) -> Exp {
        self.subst(&Sub::cons(e.clone(), Sub::identity(outer)))
    }
}

impl Cmd {
    pub fn ret(e: Exp) -> Cmd {
        Cmd::Ret(Box::new(e))
    }

    pub fn bnd(e: Exp, m: Cmd) -> Cmd {
        Cmd::Bnd(Box::new(e), Box::new(m))
    }

    pub fn while_(n: usize, m: Cmd) -> Cmd {
        Cmd::While(n, Box::new(m))
    }

    pub fn set(n: usize, e: Exp) -> Cmd {
        Cmd::Set(n, Box::new(e))
    }

    pub fn dcl(e: Exp, m: Cmd) -> Cmd {
        Cmd::Dcl(Box::new(e), Box::new(m))
    }

    /// `ret v` with `v` a value.
    pub fn is_final(&self) -> bool {
        matches!(self, Cmd::Ret(e) if e.is_value())
    }

    pub fn size(&self) -> usize {
        match self {
            Cmd::Ret(e) => 1 + e.size(),
            Cmd::Bnd(e, m) => 1 + e.size() + m.size(),
            Cmd::While(_, m) => 1 + m.size(),
            Cmd::Get(_) => 1,
            Cmd::Set(_, e) => 1 + e.size(),
            Cmd::Dcl(e, m) => 1 + e.size() + m.size(),
        }
    }

    pub fn shift(&self, cutoff: usize, by: usize) -> Cmd {
        self.rename(0, &|i, d| Some(if i >= cutoff + d { i + by } else { i }))
            .expect("shifting never fails")
    }

    pub fn unshift(&self, cutoff: usize, by: usize) -> Option<Cmd> {
        self.rename(0, &|i, d| unshift_ix(i, cutoff + d, by))
    }

    fn rename(&self, depth: usize, f: &dyn Fn(usize, usize) -> Option<usize>) -> Option<Cmd> {
        Some(match self {
            Cmd::Ret(e) => Cmd::ret(e.rename(depth, f)?),
            Cmd::Bnd(e, m) => Cmd::bnd(e.rename(depth, f)?, m.rename(depth + 1, f)?),
            Cmd::While(n, m) => Cmd::while_(*n, m.rename(depth, f)?),
            Cmd::Get(n) => Cmd::Get(*n),
            Cmd::Set(n, e) => Cmd::set(*n, e.rename(depth, f)?),
            Cmd::Dcl(e, m) => Cmd::dcl(e.rename(depth, f)?, m.rename(depth, f)?),
        })
    }

    /// `⇑^p m`; the body of a `dcl` is weakened along `mono(p)`.
    pub fn weaken(&self, p: &GeProof) -> Cmd {
        match self {
            Cmd::Ret(e) => Cmd::ret(e.weaken(p)),
            Cmd::Bnd(e, m) => Cmd::bnd(e.weaken(p), m.weaken(p)),
            Cmd::While(n, m) => Cmd::while_(sh(p, *n), m.weaken(p)),
            Cmd::Get(n) => Cmd::Get(sh(p, *n)),
            Cmd::Set(n, e) => Cmd::set(sh(p, *n), e.weaken(p)),
            Cmd::Dcl(e, m) => Cmd::dcl(e.weaken(p), m.weaken(&GeProof::mono(p.clone()))),
        }
    }

    pub fn strengthen_assignables(&self, cutoff: usize, by: usize) -> Option<Cmd> {
        let ix = |n: usize| -> Option<usize> {
            if n < cutoff {
                Some(n)
            } else if n >= cutoff + by {
                Some(n - by)
            } else {
                None
            }
        };
        Some(match self {
            Cmd::Ret(e) => Cmd::ret(e.strengthen_assignables(cutoff, by)?),
            Cmd::Bnd(e, m) => Cmd::bnd(e.strengthen_assignables(cutoff, by)?, m.strengthen_assignables(cutoff, by)?),
            Cmd::While(n, m) => Cmd::while_(ix(*n)?, m.strengthen_assignables(cutoff, by)?),
            Cmd::Get(n) => Cmd::Get(ix(*n)?),
            Cmd::Set(n, e) => Cmd::set(ix(*n)?, e.strengthen_assignables(cutoff, by)?),
            Cmd::Dcl(e, m) => {
                Cmd::dcl(e.strengthen_assignables(cutoff, by)?, m.strengthen_assignables(cutoff + 1, by)?)
            }
        })
    }

    /// Substitution at a fixed signature. Images entering a `dcl` body are
    /// weakened past the new assignable.
    pub fn subst(&self, sub: &Sub) -> Cmd {
        match self {
            Cmd::Ret(e) => Cmd::ret(e.subst(sub)),
            Cmd::Bnd(e, m) => Cmd::bnd(e.subst(sub), m.subst(&sub.lift())),
            Cmd::While(n, m) => Cmd::while_(*n, m.subst(sub)),
            Cmd::Get(n) => Cmd::Get(*n),
            Cmd::Set(n, e) => Cmd::set(*n, e.subst(sub)),
            Cmd::Dcl(e, m) => Cmd::dcl(e.subst(sub), m.subst(&sub.weaken(&GeProof::extend(GeProof::Refl)))),
        }
    }

    pub fn instantiate(&self, e: &Exp, outer: usize) -> Cmd {
        self.subst(&Sub::cons(e.clone(), Sub::identity(outer)))
    }
}

fn unshift_ix(i: usize, cutoff: usize, by: usize) -> Option<usize> {
    if i < cutoff {
        Some(i)
    } else if i >= cutoff + by {
        Some(i - by)
    } else {
        None
    }
}

/// A simultaneous substitution for expression variables at a fixed
/// signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sub {
    images: Vec<Exp>,
}

impl Sub {
    pub fn new(images: Vec<Exp>) -> Self {
        Sub { images }
    }

    pub fn identity(len: usize) -> Self {
        Sub { images: (0..len).map(Exp::Var).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[Exp] {
        &self.images
    }

    pub fn get(&self, ix: usize) -> &Exp {
        self.images
            .get(ix)
            .unwrap_or_else(|| panic!("substitution of length {} applied to variable {ix}", self.images.len()))
    }

    pub fn cons(e: Exp, sub: Sub) -> Sub {
        let mut images = Vec::with_capacity(sub.images.len() + 1);
        images.push(e);
        images.extend(sub.images);
        Sub { images }
    }

    /// `↑σ`.
    pub fn lift(&self) -> Sub {
        let mut images = Vec::with_capacity(self.images.len() + 1);
        images.push(Exp::Var(0));
        images.extend(self.images.iter().map(|e| e.shift(0, 1)));
        Sub { images }
    }

    /// `⇑^p σ`.
    pub fn weaken(&self, p: &GeProof) -> Sub {
        Sub { images: self.images.iter().map(|e| e.weaken(p)).collect() }
    }
}

/// Transport of a closed positive value to another signature. Such values
/// mention no assignables, so the term is unchanged.
pub fn coer(v: &Exp) -> Exp {
    debug_assert!(v.is_positive_value(), "coer applied to {v:?}");
    v.clone()
}
