//! Types, de Bruijn terms, type synthesis and simultaneous substitution.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Bool,
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        Ty::Arrow(Box::new(dom), Box::new(cod))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Bool => f.write_str("bool"),
            Ty::Arrow(a, b) => match **a {
                Ty::Arrow(..) => write!(f, "({a}) -> {b}"),
                Ty::Bool => write!(f, "{a} -> {b}"),
            },
        }
    }
}

/// A term; `Var(0)` is the innermost binder. Lambda binders carry the
/// domain type so synthesis never has to guess.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tm {
    Var(usize),
    Lam(Ty, Box<Tm>),
    Ap(Box<Tm>, Box<Tm>),
    TT,
    FF,
}

impl Tm {
    pub fn lam(dom: Ty, body: Tm) -> Tm {
        Tm::Lam(dom, Box::new(body))
    }

    pub fn ap(f: Tm, a: Tm) -> Tm {
        Tm::Ap(Box::new(f), Box::new(a))
    }

    pub fn bool(b: bool) -> Tm {
        if b {
            Tm::TT
        } else {
            Tm::FF
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Tm::Lam(..) | Tm::TT | Tm::FF)
    }

    /// Number of AST nodes (types not counted).
    pub fn size(&self) -> usize {
        match self {
            Tm::Var(_) | Tm::TT | Tm::FF => 1,
            Tm::Lam(_, b) => 1 + b.size(),
            Tm::Ap(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Adds `by` to every variable at or above `cutoff`.
    pub fn shift(&self, cutoff: usize, by: usize) -> Tm {
        match self {
            Tm::Var(i) if *i >= cutoff => Tm::Var(i + by),
            Tm::Var(i) => Tm::Var(*i),
            Tm::Lam(t, b) => Tm::lam(t.clone(), b.shift(cutoff + 1, by)),
            Tm::Ap(f, a) => Tm::ap(f.shift(cutoff, by), a.shift(cutoff, by)),
            Tm::TT => Tm::TT,
            Tm::FF => Tm::FF,
        }
    }

    /// Removes `by` binders at `cutoff`, failing if any of them is referenced.
    pub fn unshift(&self, cutoff: usize, by: usize) -> Option<Tm> {
        Some(match self {
            Tm::Var(i) if *i >= cutoff + by => Tm::Var(i - by),
            Tm::Var(i) if *i >= cutoff => return None,
            Tm::Var(i) => Tm::Var(*i),
            Tm::Lam(t, b) => Tm::lam(t.clone(), b.unshift(cutoff + 1, by)?),
            Tm::Ap(f, a) => Tm::ap(f.unshift(cutoff, by)?, a.unshift(cutoff, by)?),
            Tm::TT => Tm::TT,
            Tm::FF => Tm::FF,
        })
    }

    pub fn subst(&self, sub: &Sub) -> Tm {
        match self {
            Tm::Var(i) => sub.get(*i).clone(),
            Tm::Lam(t, b) => Tm::lam(t.clone(), b.subst(&sub.lift())),
            Tm::Ap(f, a) => Tm::ap(f.subst(sub), a.subst(sub)),
            Tm::TT => Tm::TT,
            Tm::FF => Tm::FF,
        }
    }

    /// `self[e]`: replaces variable 0 of a term over `A :: Γ` by `e`, where
    /// `Γ` has `outer` entries.
    pub fn instantiate(&self, e: &Tm, outer: usize) -> Tm {
        self.subst(&Sub::cons(e.clone(), Sub::identity(outer)))
    }
}

/// A simultaneous substitution: variable `i` of the source context is sent
/// to `images[i]`, a term over the target context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sub {
    images: Vec<Tm>,
}

impl Sub {
    pub fn new(images: Vec<Tm>) -> Self {
        Sub { images }
    }

    pub fn identity(len: usize) -> Self {
        Sub { images: (0..len).map(Tm::Var).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn get(&self, ix: usize) -> &Tm {
        self.images
            .get(ix)
            .unwrap_or_else(|| panic!("substitution of length {} applied to variable {ix}", self.images.len()))
    }

    /// `cons(e, σ)`: `e` for the new variable, `σ` for the rest.
    pub fn cons(e: Tm, sub: Sub) -> Sub {
        let mut images = Vec::with_capacity(sub.images.len() + 1);
        images.push(e);
        images.extend(sub.images);
        Sub { images }
    }

    /// `↑σ`: the substitution under one more binder.
    pub fn lift(&self) -> Sub {
        let mut images = Vec::with_capacity(self.images.len() + 1);
        images.push(Tm::Var(0));
        images.extend(self.images.iter().map(|t| t.shift(0, 1)));
        Sub { images }
    }

    pub fn images(&self) -> &[Tm] {
        &self.images
    }
}

/// Synthesizes the type of `e` under `ctx` (innermost binder first).
pub fn check(ctx: &[Ty], e: &Tm) -> Option<Ty> {
    match e {
        Tm::Var(i) => ctx.get(*i).cloned(),
        Tm::TT | Tm::FF => Some(Ty::Bool),
        Tm::Lam(dom, body) => {
            let mut inner = Vec::with_capacity(ctx.len() + 1);
            inner.push(dom.clone());
            inner.extend_from_slice(ctx);
            let cod = check(&inner, body)?;
            Some(Ty::arrow(dom.clone(), cod))
        }
        Tm::Ap(f, a) => match check(ctx, f)? {
            Ty::Arrow(dom, cod) if check(ctx, a)? == *dom => Some(*cod),
            _ => None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id_bool() -> Tm {
        Tm::lam(Ty::Bool, Tm::Var(0))
    }

    #[test]
    fn synthesis() {
        assert_eq!(check(&[], &id_bool()), Some(Ty::arrow(Ty::Bool, Ty::Bool)));
        assert_eq!(check(&[], &Tm::ap(Tm::TT, Tm::TT)), None);
        assert_eq!(check(&[Ty::Bool], &Tm::Var(0)), Some(Ty::Bool));
        assert_eq!(check(&[], &Tm::Var(0)), None);
        let bad_arg = Tm::ap(Tm::lam(Ty::arrow(Ty::Bool, Ty::Bool), Tm::Var(0)), Tm::TT);
        assert_eq!(check(&[], &bad_arg), None);
    }

    #[test]
    fn substitution() {
        assert_eq!(Tm::Var(0).subst(&Sub::cons(Tm::TT, Sub::identity(0))), Tm::TT);
        let sigma = Sub::new(vec![Tm::FF]);
        assert_eq!(id_bool().subst(&sigma), id_bool());
        // (Var 1)[↑σ][e'] = (Var 1)[cons(e', σ)] = σ(0)
        let lhs = Tm::Var(1).subst(&sigma.lift()).instantiate(&Tm::TT, 0);
        let rhs = Tm::Var(1).subst(&Sub::cons(Tm::TT, sigma.clone()));
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, Tm::FF);
    }

    #[test]
    fn capture_avoidance() {
        // (λy. x)[x := Var 0 of the outer scope] keeps the outer reference free.
        let t = Tm::lam(Ty::Bool, Tm::Var(1));
        let out = t.subst(&Sub::new(vec![Tm::Var(0)]));
        assert_eq!(out, Tm::lam(Ty::Bool, Tm::Var(1)));
    }

    #[test]
    fn unshift_rejects_captured() {
        assert_eq!(Tm::Var(0).unshift(0, 1), None);
        assert_eq!(Tm::Var(2).unshift(0, 1), Some(Tm::Var(1)));
        assert_eq!(Tm::lam(Ty::Bool, Tm::Var(0)).unshift(0, 3), Some(Tm::lam(Ty::Bool, Tm::Var(0))));
    }

    #[test]
    fn sizes() {
        assert_eq!(Tm::TT.size(), 1);
        assert_eq!(Tm::ap(id_bool(), Tm::TT).size(), 4);
    }
}
