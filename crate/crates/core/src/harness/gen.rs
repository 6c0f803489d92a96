//! Goal-directed generators. Every recursive call receives a node budget no
//! smaller than the least size of a term of its goal type, so generation
//! never dead-ends and never overshoots `max_size`.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::algol::{Cmd, Exp, GeProof, MaTy, PosTy};
use crate::stlc::{Tm, Ty};

use super::GenConfig;

fn cons<T: Clone>(x: T, xs: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len() + 1);
    out.push(x);
    out.extend_from_slice(xs);
    out
}

/// Picks an index with probability proportional to its weight; zero
/// weights are never picked. At least one weight must be positive.
fn pick(rng: &mut impl Rng, weights: &[u32]) -> usize {
    let total: u32 = weights.iter().sum();
    let mut roll = rng.random_range(0..total);
    for (i, w) in weights.iter().enumerate() {
        if roll < *w {
            return i;
        }
        roll -= w;
    }
    unreachable!("roll below total weight")
}

/// Splits `spare` nodes between two children at random.
fn split(rng: &mut impl Rng, spare: usize) -> (usize, usize) {
    let a = rng.random_range(0..=spare);
    (a, rng.random_range(0..=spare - a))
}

// ---------------------------------------------------------------- STLC

pub fn gen_stlc(cfg: &GenConfig, rng: &mut impl Rng) -> Tm {
    let budget = rng.random_range(1..=cfg.max_size.max(1));
    StlcGen { rng }.tm(&[], &Ty::Bool, budget)
}

/// A term of type `ty` under `ctx` with at most `budget` nodes, or the
/// least such term when `budget` is too small for anything else.
pub fn gen_tm_in(rng: &mut impl Rng, ctx: &[Ty], ty: &Ty, budget: usize) -> Tm {
    StlcGen { rng }.tm(ctx, ty, budget.max(min_tm(ctx, ty)))
}

fn stlc_var(ctx: &[Ty], ty: &Ty) -> Option<usize> {
    ctx.iter().position(|t| t == ty)
}

/// Size of the smallest term `minimal_tm` builds at `ty`.
pub fn min_tm(ctx: &[Ty], ty: &Ty) -> usize {
    if stlc_var(ctx, ty).is_some() {
        return 1;
    }
    match ty {
        Ty::Bool => 1,
        Ty::Arrow(a, b) => 1 + min_tm(&cons((**a).clone(), ctx), b),
    }
}

pub fn minimal_tm(ctx: &[Ty], ty: &Ty) -> Tm {
    if let Some(i) = stlc_var(ctx, ty) {
        return Tm::Var(i);
    }
    match ty {
        Ty::Bool => Tm::TT,
        Ty::Arrow(a, b) => Tm::lam((**a).clone(), minimal_tm(&cons((**a).clone(), ctx), b)),
    }
}

pub fn random_stlc_ty(rng: &mut impl Rng, depth: usize) -> Ty {
    if depth == 0 || rng.random_bool(0.6) {
        Ty::Bool
    } else {
        Ty::arrow(random_stlc_ty(rng, depth - 1), random_stlc_ty(rng, depth - 1))
    }
}

struct StlcGen<'r, R> {
    rng: &'r mut R,
}

impl<R: Rng> StlcGen<'_, R> {
    fn tm(&mut self, ctx: &[Ty], ty: &Ty, budget: usize) -> Tm {
        debug_assert!(budget >= min_tm(ctx, ty));
        let vars: Vec<usize> = (0..ctx.len()).filter(|i| ctx[*i] == *ty).collect();
        let leaf_ok = !vars.is_empty() || *ty == Ty::Bool;
        let lam_ok = matches!(ty, Ty::Arrow(a, b) if min_tm(&cons((**a).clone(), ctx), b) < budget);
        let app_ok = budget >= 3;
        let small = budget < 4;
        let w = [
            if leaf_ok { if small { 4 } else { 1 } } else { 0 },
            if lam_ok { 4 } else { 0 },
            if app_ok { 5 } else { 0 },
        ];
        if w.iter().all(|x| *x == 0) {
            return minimal_tm(ctx, ty);
        }
        match pick(self.rng, &w) {
            0 => {
                if !vars.is_empty() && (*ty != Ty::Bool || self.rng.random_bool(0.5)) {
                    Tm::Var(*vars.choose(self.rng).expect("non-empty"))
                } else {
                    Tm::bool(self.rng.random())
                }
            }
            1 => {
                let Ty::Arrow(a, b) = ty else { unreachable!() };
                Tm::lam((**a).clone(), self.tm(&cons((**a).clone(), ctx), b, budget - 1))
            }
            _ => self.app(ctx, ty, budget).unwrap_or_else(|| minimal_tm(ctx, ty)),
        }
    }

    fn app(&mut self, ctx: &[Ty], ty: &Ty, budget: usize) -> Option<Tm> {
        // Prefer argument types that let a context variable be applied.
        let heads: Vec<Ty> = ctx
            .iter()
            .filter_map(|t| match t {
                Ty::Arrow(a, b) if **b == *ty => Some((**a).clone()),
                _ => None,
            })
            .collect();
        for _ in 0..4 {
            let dom = match heads.choose(self.rng) {
                Some(d) if self.rng.random_bool(0.5) => d.clone(),
                _ => random_stlc_ty(self.rng, 2),
            };
            let fty = Ty::arrow(dom.clone(), ty.clone());
            let (mf, ma) = (min_tm(ctx, &fty), min_tm(ctx, &dom));
            if 1 + mf + ma > budget {
                continue;
            }
            let (ef, ea) = split(self.rng, budget - 1 - mf - ma);
            return Some(Tm::ap(self.tm(ctx, &fty, mf + ef), self.tm(ctx, &dom, ma + ea)));
        }
        None
    }
}

// ---------------------------------------------------------------- MA

pub fn gen_ma(cfg: &GenConfig, rng: &mut impl Rng) -> Cmd {
    let budget = rng.random_range(2..=cfg.max_size.max(2));
    MaGen { rng, max_sig: cfg.max_sig }.cmd(&[], &[], &MaTy::Bool, budget)
}

pub fn gen_exp_in(rng: &mut impl Rng, sig: &[PosTy], ctx: &[MaTy], ty: &MaTy, budget: usize, max_sig: usize) -> Exp {
    MaGen { rng, max_sig }.exp(sig, ctx, ty, budget.max(min_exp(sig, ctx, ty)))
}

pub fn gen_cmd_in(rng: &mut impl Rng, sig: &[PosTy], ctx: &[MaTy], ty: &MaTy, budget: usize, max_sig: usize) -> Cmd {
    MaGen { rng, max_sig }.cmd(sig, ctx, ty, budget.max(min_cmd(sig, ctx, ty)))
}

/// A random `p : Σ' ≥ Σ` adding at most `extra` cells, together with `Σ'`.
pub fn random_extension(rng: &mut impl Rng, sig: &[PosTy], extra: usize) -> (GeProof, Vec<PosTy>) {
    match rng.random_range(0..4) {
        1 if !sig.is_empty() => {
            let (p, rest) = random_extension(rng, &sig[1..], extra);
            (GeProof::mono(p), cons(sig[0], &rest))
        }
        2 | 3 if extra > 0 => {
            let (p, rest) = random_extension(rng, sig, extra - 1);
            (GeProof::extend(p), cons(random_pos(rng), &rest))
        }
        _ => (GeProof::Refl, sig.to_vec()),
    }
}

fn ma_var(ctx: &[MaTy], ty: &MaTy) -> Option<usize> {
    ctx.iter().position(|t| t == ty)
}

fn cell_of(sig: &[PosTy], ty: &MaTy) -> Option<usize> {
    let p = ty.positive()?;
    sig.iter().position(|c| *c == p)
}

pub fn min_exp(sig: &[PosTy], ctx: &[MaTy], ty: &MaTy) -> usize {
    if ma_var(ctx, ty).is_some() {
        return 1;
    }
    match ty {
        MaTy::Unit | MaTy::Bool | MaTy::Nat => 1,
        MaTy::Arrow(a, b) => 1 + min_exp(sig, &cons((**a).clone(), ctx), b),
        MaTy::Cmd(a) => 1 + min_cmd(sig, ctx, a),
    }
}

pub fn min_cmd(sig: &[PosTy], ctx: &[MaTy], ty: &MaTy) -> usize {
    if cell_of(sig, ty).is_some() {
        1
    } else {
        1 + min_exp(sig, ctx, ty)
    }
}

pub fn minimal_exp(sig: &[PosTy], ctx: &[MaTy], ty: &MaTy) -> Exp {
    if let Some(i) = ma_var(ctx, ty) {
        return Exp::Var(i);
    }
    match ty {
        MaTy::Unit => Exp::Triv,
        MaTy::Bool => Exp::TT,
        MaTy::Nat => Exp::Zero,
        MaTy::Arrow(a, b) => Exp::lam((**a).clone(), minimal_exp(sig, &cons((**a).clone(), ctx), b)),
        MaTy::Cmd(a) => Exp::cmd(minimal_cmd(sig, ctx, a)),
    }
}

pub fn minimal_cmd(sig: &[PosTy], ctx: &[MaTy], ty: &MaTy) -> Cmd {
    match cell_of(sig, ty) {
        Some(n) => Cmd::Get(n),
        None => Cmd::ret(minimal_exp(sig, ctx, ty)),
    }
}

pub fn random_pos(rng: &mut impl Rng) -> PosTy {
    [PosTy::Bool, PosTy::Bool, PosTy::Nat, PosTy::Nat, PosTy::Unit][rng.random_range(0..5)]
}

pub fn random_ma_ty(rng: &mut impl Rng, depth: usize) -> MaTy {
    match if depth == 0 { 0 } else { rng.random_range(0..10) } {
        0..=6 => random_pos(rng).ty(),
        7 | 8 => MaTy::arrow(random_pos(rng).ty(), random_ma_ty(rng, depth - 1)),
        _ => MaTy::cmd(random_ma_ty(rng, depth - 1)),
    }
}

struct MaGen<'r, R> {
    rng: &'r mut R,
    max_sig: usize,
}

impl<R: Rng> MaGen<'_, R> {
    fn exp(&mut self, sig: &[PosTy], ctx: &[MaTy], ty: &MaTy, budget: usize) -> Exp {
        debug_assert!(budget >= min_exp(sig, ctx, ty));
        let vars: Vec<usize> = (0..ctx.len()).filter(|i| ctx[*i] == *ty).collect();
        let small = budget < 4;
        let leaf_ok = !vars.is_empty() || ty.is_positive();
        let suc_ok = *ty == MaTy::Nat && budget >= 2;
        let nat_ctx = cons(MaTy::Nat, ctx);
        let ifz_ok = 2 + min_exp(sig, ctx, ty) + min_exp(sig, &nat_ctx, ty) <= budget;
        let lam_ok = matches!(ty, MaTy::Arrow(a, b) if min_exp(sig, &cons((**a).clone(), ctx), b) < budget);
        let cmd_ok = matches!(ty, MaTy::Cmd(a) if min_cmd(sig, ctx, a) < budget);
        let app_ok = budget >= 3;
        let w = [
            if leaf_ok { if small { 6 } else { 2 } } else { 0 },
            if suc_ok { 1 } else { 0 },
            if ifz_ok { 3 } else { 0 },
            if lam_ok { 4 } else { 0 },
            if cmd_ok { 4 } else { 0 },
            if app_ok { 3 } else { 0 },
        ];
        if w.iter().all(|x| *x == 0) {
            return minimal_exp(sig, ctx, ty);
        }
        match pick(self.rng, &w) {
            0 => {
                if !vars.is_empty() && (!ty.is_positive() || self.rng.random_bool(0.4)) {
                    return Exp::Var(*vars.choose(self.rng).expect("non-empty"));
                }
                match ty {
                    MaTy::Unit => Exp::Triv,
                    MaTy::Bool => Exp::bool(self.rng.random()),
                    _ => Exp::numeral(self.rng.random_range(0..budget.min(4)) as u64),
                }
            }
            1 => Exp::suc(self.exp(sig, ctx, ty, budget - 1)),
            2 => {
                let (mz, ms) = (min_exp(sig, ctx, ty), min_exp(sig, &nat_ctx, ty));
                let spare = budget - 2 - mz - ms;
                let es = self.rng.random_range(0..=spare.min(4));
                let (ez, ep) = split(self.rng, spare - es);
                let scrut = self.exp(sig, ctx, &MaTy::Nat, 1 + es);
                Exp::ifz(scrut, self.exp(sig, ctx, ty, mz + ez), self.exp(sig, &nat_ctx, ty, ms + ep))
            }
            3 => {
                let MaTy::Arrow(a, b) = ty else { unreachable!() };
                Exp::lam((**a).clone(), self.exp(sig, &cons((**a).clone(), ctx), b, budget - 1))
            }
            4 => {
                let MaTy::Cmd(a) = ty else { unreachable!() };
                Exp::cmd(self.cmd(sig, ctx, a, budget - 1))
            }
            _ => self.app(sig, ctx, ty, budget).unwrap_or_else(|| minimal_exp(sig, ctx, ty)),
        }
    }

    fn app(&mut self, sig: &[PosTy], ctx: &[MaTy], ty: &MaTy, budget: usize) -> Option<Exp> {
        for _ in 0..4 {
            let dom = random_ma_ty(self.rng, 1);
            let fty = MaTy::arrow(dom.clone(), ty.clone());
            let (mf, ma) = (min_exp(sig, ctx, &fty), min_exp(sig, ctx, &dom));
            if 1 + mf + ma > budget {
                continue;
            }
            let (ef, ea) = split(self.rng, budget - 1 - mf - ma);
            return Some(Exp::ap(self.exp(sig, ctx, &fty, mf + ef), self.exp(sig, ctx, &dom, ma + ea)));
        }
        None
    }

    fn cmd(&mut self, sig: &[PosTy], ctx: &[MaTy], ty: &MaTy, budget: usize) -> Cmd {
        debug_assert!(budget >= min_cmd(sig, ctx, ty));
        let cell = ty.positive();
        let same_cells: Vec<usize> = (0..sig.len()).filter(|n| Some(sig[*n]) == cell).collect();
        let guards: Vec<usize> = (0..sig.len()).filter(|n| sig[*n] == PosTy::Bool).collect();
        let ret_ok = min_exp(sig, ctx, ty) < budget;
        let get_ok = !same_cells.is_empty();
        let set_ok = !same_cells.is_empty() && budget >= 2;
        let bnd_ok = budget >= 3;
        let dcl_ok = cell.is_some() && sig.len() < self.max_sig && budget >= 3;
        let while_ok = *ty == MaTy::Unit && !guards.is_empty() && budget >= 2;
        let w = [
            if ret_ok { if budget < 4 { 5 } else { 2 } } else { 0 },
            if get_ok { 2 } else { 0 },
            if set_ok { 2 } else { 0 },
            if bnd_ok { 5 } else { 0 },
            if dcl_ok { if sig.is_empty() { 8 } else { 3 } } else { 0 },
            if while_ok { 6 } else { 0 },
        ];
        if w.iter().all(|x| *x == 0) {
            return minimal_cmd(sig, ctx, ty);
        }
        let out = match pick(self.rng, &w) {
            0 => Some(Cmd::ret(self.exp(sig, ctx, ty, budget - 1))),
            1 => Some(Cmd::Get(*same_cells.choose(self.rng).expect("non-empty"))),
            2 => Some(Cmd::set(*same_cells.choose(self.rng).expect("non-empty"), self.exp(sig, ctx, ty, budget - 1))),
            3 => self.bnd(sig, ctx, ty, budget),
            4 => self.dcl(sig, ctx, cell.expect("positive"), budget),
            _ => {
                let guard = *guards.choose(self.rng).expect("non-empty");
                Some(self.while_(sig, ctx, guard, budget))
            }
        };
        out.unwrap_or_else(|| minimal_cmd(sig, ctx, ty))
    }

    fn bnd(&mut self, sig: &[PosTy], ctx: &[MaTy], ty: &MaTy, budget: usize) -> Option<Cmd> {
        for _ in 0..4 {
            // Unit-typed commands are where loops live.
            let a = if self.rng.random_bool(0.35) { MaTy::Unit } else { random_ma_ty(self.rng, 1) };
            let inner = cons(a.clone(), ctx);
            let (me, mk) = (min_exp(sig, ctx, &MaTy::cmd(a.clone())), min_cmd(sig, &inner, ty));
            if 1 + me + mk > budget {
                continue;
            }
            let (ee, ek) = split(self.rng, budget - 1 - me - mk);
            let e = self.exp(sig, ctx, &MaTy::cmd(a), me + ee);
            return Some(Cmd::bnd(e, self.cmd(sig, &inner, ty, mk + ek)));
        }
        None
    }

    fn dcl(&mut self, sig: &[PosTy], ctx: &[MaTy], result: PosTy, budget: usize) -> Option<Cmd> {
        for _ in 0..4 {
            let cell = random_pos(self.rng);
            let inner = cons(cell, sig);
            let (me, mb) = (min_exp(sig, ctx, &cell.ty()), min_cmd(&inner, ctx, &result.ty()));
            if 1 + me + mb > budget {
                continue;
            }
            let spare = budget - 1 - me - mb;
            let ee = self.rng.random_range(0..=spare.min(4));
            let e = self.exp(sig, ctx, &cell.ty(), me + ee);
            return Some(Cmd::dcl(e, self.cmd(&inner, ctx, &result.ty(), mb + spare - ee)));
        }
        None
    }

    /// Loop bodies come from three templates: one that clears the guard
    /// after an optional prefix, a countdown over a `nat` cell, and an
    /// arbitrary body that may spin forever.
    fn while_(&mut self, sig: &[PosTy], ctx: &[MaTy], guard: usize, budget: usize) -> Cmd {
        let counters: Vec<usize> = (0..sig.len()).filter(|n| sig[*n] == PosTy::Nat).collect();
        let body_budget = budget - 1;
        const CLEAR: usize = 6;
        const COUNTDOWN: usize = 19;
        let w = [
            if body_budget >= CLEAR { 5 } else { 0 },
            if body_budget >= COUNTDOWN && !counters.is_empty() { 3 } else { 0 },
            if body_budget >= min_cmd(sig, ctx, &MaTy::Unit) { 2 } else { 0 },
        ];
        if w.iter().all(|x| *x == 0) {
            return Cmd::while_(guard, minimal_cmd(sig, ctx, &MaTy::Unit));
        }
        let body = match pick(self.rng, &w) {
            0 => {
                let spare = body_budget - CLEAR;
                let ex = self.rng.random_range(0..=spare.min(5));
                let clear = |e: Exp| Cmd::bnd(Exp::cmd(Cmd::set(guard, e)), Cmd::ret(Exp::Triv));
                let rest = spare - ex;
                let prefix_ty = random_ma_ty(self.rng, 0);
                let pmin = 2 + min_cmd(sig, ctx, &prefix_ty);
                if rest >= pmin && self.rng.random_bool(0.5) {
                    let m = self.cmd(sig, ctx, &prefix_ty, rest - 2);
                    let inner = cons(prefix_ty, ctx);
                    let e = self.exp(sig, &inner, &MaTy::Bool, 1 + ex);
                    Cmd::bnd(Exp::cmd(m), clear(e))
                } else {
                    clear(self.exp(sig, ctx, &MaTy::Bool, 1 + ex))
                }
            }
            1 => countdown(guard, *counters.choose(self.rng).expect("non-empty")),
            _ => self.cmd(sig, ctx, &MaTy::Unit, body_budget),
        };
        Cmd::while_(guard, body)
    }
}

/// `bnd x <- cmd{get[k]}; bnd _ <- cmd{set[k](pred x)};
///  bnd _ <- cmd{set[guard](x ≠ 0)}; ret ()`
pub(crate) fn countdown(guard: usize, counter: usize) -> Cmd {
    let pred = |x: usize| Exp::ifz(Exp::Var(x), Exp::Zero, Exp::Var(0));
    let nonzero = |x: usize| Exp::ifz(Exp::Var(x), Exp::FF, Exp::TT);
    Cmd::bnd(
        Exp::cmd(Cmd::Get(counter)),
        Cmd::bnd(
            Exp::cmd(Cmd::set(counter, pred(0))),
            Cmd::bnd(Exp::cmd(Cmd::set(guard, nonzero(1))), Cmd::ret(Exp::Triv)),
        ),
    )
}
