//! Greedy typed shrinking. A candidate replaces one subterm by something
//! strictly smaller of the same type: a minimal inhabitant, a constant, or
//! a descendant lifted out of the binders in between. The first candidate
//! that keeps the whole program well typed and still failing is taken, and
//! the search restarts until no candidate applies.

use crate::algol::{check_cmd, check_exp, Cmd, Exp, MaTy, PosTy};
use crate::stlc::{check, Tm, Ty};

use super::gen::{minimal_cmd, minimal_exp, minimal_tm};

fn cons<T: Clone>(x: T, xs: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len() + 1);
    out.push(x);
    out.extend_from_slice(xs);
    out
}

// ---------------------------------------------------------------- STLC

struct TmSite {
    path: Vec<usize>,
    ctx: Vec<Ty>,
    ty: Ty,
    tm: Tm,
}

fn tm_sites(t: &Tm, ctx: &[Ty], path: &mut Vec<usize>, out: &mut Vec<TmSite>) {
    let Some(ty) = check(ctx, t) else { return };
    out.push(TmSite { path: path.clone(), ctx: ctx.to_vec(), ty, tm: t.clone() });
    let mut visit = |i: usize, child: &Tm, ctx: &[Ty], out: &mut Vec<TmSite>| {
        path.push(i);
        tm_sites(child, ctx, path, out);
        path.pop();
    };
    match t {
        Tm::Lam(dom, body) => visit(0, body, &cons(dom.clone(), ctx), out),
        Tm::Ap(f, a) => {
            visit(0, f, ctx, out);
            visit(1, a, ctx, out);
        }
        Tm::Var(_) | Tm::TT | Tm::FF => {}
    }
}

fn tm_replace(t: &Tm, path: &[usize], new: &Tm) -> Tm {
    let Some((&i, rest)) = path.split_first() else { return new.clone() };
    match (t, i) {
        (Tm::Lam(dom, body), 0) => Tm::lam(dom.clone(), tm_replace(body, rest, new)),
        (Tm::Ap(f, a), 0) => Tm::ap(tm_replace(f, rest, new), (**a).clone()),
        (Tm::Ap(f, a), 1) => Tm::ap((**f).clone(), tm_replace(a, rest, new)),
        _ => unreachable!("path leaves the term"),
    }
}

fn tm_candidates(site: &TmSite, sites: &[TmSite]) -> Vec<Tm> {
    let mut out = vec![minimal_tm(&site.ctx, &site.ty)];
    if site.ty == Ty::Bool {
        out.extend([Tm::TT, Tm::FF]);
    }
    for d in sites {
        if d.path.len() > site.path.len() && d.path.starts_with(&site.path) && d.ty == site.ty {
            if let Some(t) = d.tm.unshift(0, d.ctx.len() - site.ctx.len()) {
                out.push(t);
            }
        }
    }
    let size = site.tm.size();
    out.retain(|c| c.size() < size);
    out.sort_by_key(Tm::size);
    out.dedup();
    out
}

/// Shrinks a closed boolean term while `fails` keeps holding.
pub fn shrink_stlc(t: &Tm, fails: impl Fn(&Tm) -> bool) -> Tm {
    let mut cur = t.clone();
    'outer: loop {
        let mut sites = Vec::new();
        tm_sites(&cur, &[], &mut Vec::new(), &mut sites);
        for site in &sites {
            for cand in tm_candidates(site, &sites) {
                let next = tm_replace(&cur, &site.path, &cand);
                if check(&[], &next) == Some(Ty::Bool) && fails(&next) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

// ---------------------------------------------------------------- MA

#[derive(Clone, Debug, PartialEq, Eq)]
enum Phrase {
    E(Exp),
    C(Cmd),
}

impl Phrase {
    fn size(&self) -> usize {
        match self {
            Phrase::E(e) => e.size(),
            Phrase::C(m) => m.size(),
        }
    }
}

struct MaSite {
    path: Vec<usize>,
    sig: Vec<PosTy>,
    ctx: Vec<MaTy>,
    ty: MaTy,
    phrase: Phrase,
}

struct MaWalk<'a> {
    path: Vec<usize>,
    out: &'a mut Vec<MaSite>,
}

impl MaWalk<'_> {
    fn child(&mut self, i: usize, f: impl FnOnce(&mut Self)) {
        self.path.push(i);
        f(self);
        self.path.pop();
    }

    fn exp(&mut self, e: &Exp, sig: &[PosTy], ctx: &[MaTy]) {
        let Some(ty) = check_exp(sig, ctx, e) else { return };
        self.out.push(MaSite {
            path: self.path.clone(),
            sig: sig.to_vec(),
            ctx: ctx.to_vec(),
            ty,
            phrase: Phrase::E(e.clone()),
        });
        match e {
            Exp::Suc(x) => self.child(0, |w| w.exp(x, sig, ctx)),
            Exp::Ifz(s, z, p) => {
                self.child(0, |w| w.exp(s, sig, ctx));
                self.child(1, |w| w.exp(z, sig, ctx));
                self.child(2, |w| w.exp(p, sig, &cons(MaTy::Nat, ctx)));
            }
            Exp::Lam(dom, body) => self.child(0, |w| w.exp(body, sig, &cons(dom.clone(), ctx))),
            Exp::Ap(f, a) => {
                self.child(0, |w| w.exp(f, sig, ctx));
                self.child(1, |w| w.exp(a, sig, ctx));
            }
            Exp::CmdVal(m) => self.child(0, |w| w.cmd(m, sig, ctx)),
            Exp::Var(_) | Exp::Triv | Exp::Zero | Exp::TT | Exp::FF => {}
        }
    }

    fn cmd(&mut self, m: &Cmd, sig: &[PosTy], ctx: &[MaTy]) {
        let Some(ty) = check_cmd(sig, ctx, m) else { return };
        self.out.push(MaSite {
            path: self.path.clone(),
            sig: sig.to_vec(),
            ctx: ctx.to_vec(),
            ty,
            phrase: Phrase::C(m.clone()),
        });
        match m {
            Cmd::Ret(e) | Cmd::Set(_, e) => self.child(0, |w| w.exp(e, sig, ctx)),
            Cmd::Bnd(e, k) => {
                self.child(0, |w| w.exp(e, sig, ctx));
                if let Some(MaTy::Cmd(a)) = check_exp(sig, ctx, e) {
                    self.child(1, |w| w.cmd(k, sig, &cons(*a, ctx)));
                }
            }
            Cmd::While(_, body) => self.child(0, |w| w.cmd(body, sig, ctx)),
            Cmd::Dcl(e, body) => {
                self.child(0, |w| w.exp(e, sig, ctx));
                if let Some(p) = check_exp(sig, ctx, e).and_then(|t| t.positive()) {
                    self.child(1, |w| w.cmd(body, &cons(p, sig), ctx));
                }
            }
            Cmd::Get(_) => {}
        }
    }
}

fn replace_exp(e: &Exp, path: &[usize], new: &Phrase) -> Exp {
    let Some((&i, rest)) = path.split_first() else {
        let Phrase::E(n) = new else { unreachable!("kind mismatch") };
        return n.clone();
    };
    let r = |x: &Exp| replace_exp(x, rest, new);
    match (e, i) {
        (Exp::Suc(x), 0) => Exp::suc(r(x)),
        (Exp::Ifz(s, z, p), 0) => Exp::ifz(r(s), (**z).clone(), (**p).clone()),
        (Exp::Ifz(s, z, p), 1) => Exp::ifz((**s).clone(), r(z), (**p).clone()),
        (Exp::Ifz(s, z, p), 2) => Exp::ifz((**s).clone(), (**z).clone(), r(p)),
        (Exp::Lam(dom, body), 0) => Exp::lam(dom.clone(), r(body)),
        (Exp::Ap(f, a), 0) => Exp::ap(r(f), (**a).clone()),
        (Exp::Ap(f, a), 1) => Exp::ap((**f).clone(), r(a)),
        (Exp::CmdVal(m), 0) => Exp::cmd(replace_cmd(m, rest, new)),
        _ => unreachable!("path leaves the expression"),
    }
}

fn replace_cmd(m: &Cmd, path: &[usize], new: &Phrase) -> Cmd {
    let Some((&i, rest)) = path.split_first() else {
        let Phrase::C(n) = new else { unreachable!("kind mismatch") };
        return n.clone();
    };
    match (m, i) {
        (Cmd::Ret(e), 0) => Cmd::ret(replace_exp(e, rest, new)),
        (Cmd::Set(n, e), 0) => Cmd::set(*n, replace_exp(e, rest, new)),
        (Cmd::Bnd(e, k), 0) => Cmd::bnd(replace_exp(e, rest, new), (**k).clone()),
        (Cmd::Bnd(e, k), 1) => Cmd::bnd((**e).clone(), replace_cmd(k, rest, new)),
        (Cmd::While(n, body), 0) => Cmd::while_(*n, replace_cmd(body, rest, new)),
        (Cmd::Dcl(e, body), 0) => Cmd::dcl(replace_exp(e, rest, new), (**body).clone()),
        (Cmd::Dcl(e, body), 1) => Cmd::dcl((**e).clone(), replace_cmd(body, rest, new)),
        _ => unreachable!("path leaves the command"),
    }
}

/// Moves `d` out past `vars` variable binders and `cells` declarations.
fn hoist(d: &Phrase, vars: usize, cells: usize) -> Option<Phrase> {
    Some(match d {
        Phrase::E(e) => Phrase::E(e.unshift(0, vars)?.strengthen_assignables(0, cells)?),
        Phrase::C(m) => Phrase::C(m.unshift(0, vars)?.strengthen_assignables(0, cells)?),
    })
}

fn ma_candidates(site: &MaSite, sites: &[MaSite]) -> Vec<Phrase> {
    let mut out = Vec::new();
    match site.phrase {
        Phrase::E(_) => {
            out.push(Phrase::E(minimal_exp(&site.sig, &site.ctx, &site.ty)));
            if site.ty == MaTy::Bool {
                out.extend([Phrase::E(Exp::TT), Phrase::E(Exp::FF)]);
            }
        }
        Phrase::C(_) => {
            out.push(Phrase::C(minimal_cmd(&site.sig, &site.ctx, &site.ty)));
            out.push(Phrase::C(Cmd::ret(minimal_exp(&site.sig, &site.ctx, &site.ty))));
            if site.ty == MaTy::Bool {
                out.extend([Phrase::C(Cmd::ret(Exp::TT)), Phrase::C(Cmd::ret(Exp::FF))]);
            }
        }
    }
    for d in sites {
        if d.path.len() <= site.path.len() || !d.path.starts_with(&site.path) || d.ty != site.ty {
            continue;
        }
        let Some(h) = hoist(&d.phrase, d.ctx.len() - site.ctx.len(), d.sig.len() - site.sig.len()) else {
            continue;
        };
        match (&site.phrase, h) {
            (Phrase::E(_), h @ Phrase::E(_)) | (Phrase::C(_), h @ Phrase::C(_)) => out.push(h),
            (Phrase::C(_), Phrase::E(e)) => out.push(Phrase::C(Cmd::ret(e))),
            (Phrase::E(_), Phrase::C(_)) => {}
        }
    }
    let size = site.phrase.size();
    out.retain(|c| c.size() < size);
    out.sort_by_key(Phrase::size);
    out.dedup();
    out
}

/// Shrinks a closed boolean command while `fails` keeps holding.
pub fn shrink_ma(m: &Cmd, fails: impl Fn(&Cmd) -> bool) -> Cmd {
    let mut cur = m.clone();
    'outer: loop {
        let mut sites = Vec::new();
        MaWalk { path: Vec::new(), out: &mut sites }.cmd(&cur, &[], &[]);
        for site in &sites {
            for cand in ma_candidates(site, &sites) {
                let next = replace_cmd(&cur, &site.path, &cand);
                if check_cmd(&[], &[], &next) == Some(MaTy::Bool) && fails(&next) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stlc_shrinks_to_a_single_redex() {
        let id = Tm::lam(Ty::Bool, Tm::Var(0));
        let big = Tm::ap(
            Tm::lam(Ty::Bool, Tm::ap(id.clone(), Tm::Var(0))),
            Tm::ap(Tm::lam(Ty::Bool, Tm::FF), Tm::TT),
        );
        let has_redex = |t: &Tm| crate::stlc::step_once(t).is_some();
        let small = shrink_stlc(&big, has_redex);
        assert_eq!(small.size(), 4);
    }

    #[test]
    fn ma_shrinks_through_declarations() {
        // Fails whenever a `get` survives.
        fn has_get(m: &Cmd) -> bool {
            match m {
                Cmd::Get(_) => true,
                Cmd::Ret(e) | Cmd::Set(_, e) => exp_has_get(e),
                Cmd::Bnd(e, k) | Cmd::Dcl(e, k) => exp_has_get(e) || has_get(k),
                Cmd::While(_, b) => has_get(b),
            }
        }
        fn exp_has_get(e: &Exp) -> bool {
            matches!(e, Exp::CmdVal(m) if has_get(m))
        }
        let m = Cmd::dcl(
            Exp::TT,
            Cmd::dcl(
                Exp::numeral(3),
                Cmd::bnd(Exp::cmd(Cmd::set(0, Exp::suc(Exp::Zero))), Cmd::Get(1)),
            ),
        );
        let small = shrink_ma(&m, has_get);
        assert_eq!(small, Cmd::dcl(Exp::TT, Cmd::Get(0)));
    }
}
