//! Type synthesis for expressions and commands.
//!
//! `set[n](e)` has the type of cell `n` (it returns the previous contents),
//! and `dcl(e, m)` is a command whose result may be any positive type.

use super::syntax::{Cmd, Exp};
use super::types::{MaTy, PosTy};

fn extend(ctx: &[MaTy], ty: MaTy) -> Vec<MaTy> {
    let mut inner = Vec::with_capacity(ctx.len() + 1);
    inner.push(ty);
    inner.extend_from_slice(ctx);
    inner
}

pub fn check_exp(sig: &[PosTy], ctx: &[MaTy], e: &Exp) -> Option<MaTy> {
    match e {
        Exp::Var(i) => ctx.get(*i).cloned(),
        Exp::Triv => Some(MaTy::Unit),
        Exp::Zero => Some(MaTy::Nat),
        Exp::TT | Exp::FF => Some(MaTy::Bool),
        Exp::Suc(e) => (check_exp(sig, ctx, e)? == MaTy::Nat).then_some(MaTy::Nat),
        Exp::Ifz(e, z, s) => {
            if check_exp(sig, ctx, e)? != MaTy::Nat {
                return None;
            }
            let ty = check_exp(sig, ctx, z)?;
            (check_exp(sig, &extend(ctx, MaTy::Nat), s)? == ty).then_some(ty)
        }
        Exp::Lam(dom, body) => {
            let cod = check_exp(sig, &extend(ctx, dom.clone()), body)?;
            Some(MaTy::arrow(dom.clone(), cod))
        }
        Exp::Ap(f, a) => match check_exp(sig, ctx, f)? {
            MaTy::Arrow(dom, cod) if check_exp(sig, ctx, a)? == *dom => Some(*cod),
            _ => None,
        },
        Exp::CmdVal(m) => Some(MaTy::cmd(check_cmd(sig, ctx, m)?)),
    }
}

pub fn check_cmd(sig: &[PosTy], ctx: &[MaTy], m: &Cmd) -> Option<MaTy> {
    match m {
        Cmd::Ret(e) => check_exp(sig, ctx, e),
        Cmd::Bnd(e, m) => match check_exp(sig, ctx, e)? {
            MaTy::Cmd(a) => check_cmd(sig, &extend(ctx, *a), m),
            _ => None,
        },
        Cmd::While(n, body) => {
            if *sig.get(*n)? != PosTy::Bool {
                return None;
            }
            (check_cmd(sig, ctx, body)? == MaTy::Unit).then_some(MaTy::Unit)
        }
        Cmd::Get(n) => sig.get(*n).map(|p| p.ty()),
        Cmd::Set(n, e) => {
            let cell = sig.get(*n)?.ty();
            (check_exp(sig, ctx, e)? == cell).then_some(cell)
        }
        Cmd::Dcl(e, m) => {
            let cell = check_exp(sig, ctx, e)?.positive()?;
            let mut inner = Vec::with_capacity(sig.len() + 1);
            inner.push(cell);
            inner.extend_from_slice(sig);
            let result = check_cmd(&inner, ctx, m)?;
            result.is_positive().then_some(result)
        }
    }
}

/// Whether `store` holds closed values of the types `sig` declares.
pub fn store_matches(sig: &[PosTy], store: &[Exp]) -> bool {
    sig.len() == store.len()
        && sig
            .iter()
            .zip(store)
            .all(|(p, v)| v.is_value() && check_exp(&[], &[], v) == Some(p.ty()))
}
