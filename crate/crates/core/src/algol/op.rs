//! Small-step dynamics. Expressions reduce by substitution, left to right;
//! commands transform a store. Every transition costs one step, including
//! expression transitions taken in a command's expression position.
//!
//! Command transitions:
//!
//! * `ret e`, `bnd e; m`, `set[n](e)` and `dcl e; m` first reduce `e`.
//! * `bnd cmd(m1); m` runs `m1` in place, then `bnd cmd(ret v); m ⟼ m[v]`.
//! * `while[n](m)` becomes `ret ()` when cell `n` is false, and otherwise
//!   `bnd cmd(m); while[n](m)` (with the loop weakened past the binder).
//! * `get[n] ⟼ ret μ[n]`; `set[n](v)` stores `v` and returns the old value.
//! * `dcl v; m` runs `m` against the store extended by `v` (the current
//!   contents live in the `dcl` node) and pops with one final transition
//!   once `m` is `ret b`.

use crate::kernel::Cost;

use super::syntax::{coer, Cmd, Exp};

/// One transition of a closed expression, or `None` on values.
pub fn exp_step_once(e: &Exp) -> Option<Exp> {
    match e {
        Exp::Suc(inner) => exp_step_once(inner).map(Exp::suc),
        Exp::Ifz(s, z, p) => {
            if !s.is_value() {
                return exp_step_once(s).map(|s2| Exp::ifz(s2, (**z).clone(), (**p).clone()));
            }
            match &**s {
                Exp::Zero => Some((**z).clone()),
                Exp::Suc(pred) => Some(p.instantiate(pred, 0)),
                _ => None,
            }
        }
        Exp::Ap(f, a) => {
            if !f.is_value() {
                return exp_step_once(f).map(|f2| Exp::ap(f2, (**a).clone()));
            }
            if !a.is_value() {
                return exp_step_once(a).map(|a2| Exp::ap((**f).clone(), a2));
            }
            match &**f {
                Exp::Lam(_, body) => Some(body.instantiate(a, 0)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// A store paired with a command over the same signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    /// Cell `i` holds the value of assignable `i`.
    pub store: Vec<Exp>,
    pub cmd: Cmd,
}

impl State {
    pub fn new(store: Vec<Exp>, cmd: Cmd) -> Self {
        State { store, cmd }
    }

    pub fn is_final(&self) -> bool {
        self.cmd.is_final()
    }
}

pub fn cmd_step_once(state: &State) -> Option<State> {
    let mut store = state.store.clone();
    let cmd = step_cmd(&mut store, &state.cmd)?;
    Some(State { store, cmd })
}

/// Steps `m` against `store` in place. The store is left untouched when no
/// transition applies.
fn step_cmd(store: &mut Vec<Exp>, m: &Cmd) -> Option<Cmd> {
    match m {
        Cmd::Ret(e) => exp_step_once(e).map(Cmd::ret),
        Cmd::Bnd(e, k) => {
            if !e.is_value() {
                return exp_step_once(e).map(|e2| Cmd::bnd(e2, (**k).clone()));
            }
            let Exp::CmdVal(inner) = &**e else { return None };
            match &**inner {
                Cmd::Ret(v) if v.is_value() => Some(k.instantiate(v, 0)),
                _ => step_cmd(store, inner).map(|i2| Cmd::bnd(Exp::cmd(i2), (**k).clone())),
            }
        }
        Cmd::While(n, body) => match store.get(*n)? {
            Exp::FF => Some(Cmd::ret(Exp::Triv)),
            Exp::TT => Some(Cmd::bnd(Exp::cmd((**body).clone()), m.shift(0, 1))),
            _ => None,
        },
        Cmd::Get(n) => store.get(*n).map(|v| Cmd::ret(v.clone())),
        Cmd::Set(n, e) => {
            if !e.is_value() {
                return exp_step_once(e).map(|e2| Cmd::set(*n, e2));
            }
            let cell = store.get_mut(*n)?;
            let old = std::mem::replace(cell, (**e).clone());
            Some(Cmd::ret(old))
        }
        Cmd::Dcl(e, body) => {
            if !e.is_value() {
                return exp_step_once(e).map(|e2| Cmd::dcl(e2, (**body).clone()));
            }
            if let Cmd::Ret(v) = &**body {
                if v.is_value() {
                    return Some(Cmd::ret(coer(v)));
                }
            }
            store.insert(0, (**e).clone());
            let stepped = step_cmd(store, body);
            let cell = store.remove(0);
            stepped.map(|b2| Cmd::dcl(cell, b2))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmdOutcome {
    Converged { cost: Cost, store: Vec<Exp>, value: Exp },
    /// No transition from a non-final state; unreachable for well-typed input.
    Stuck { cost: Cost, state: State },
    FuelExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpOutcome {
    Value { cost: Cost, value: Exp },
    Stuck { cost: Cost, term: Exp },
    FuelExhausted,
}

/// Runs at most `fuel` transitions.
pub fn eval_cmd_op(state: &State, fuel: u64) -> CmdOutcome {
    drive_cmd(state, fuel, |_| ())
}

/// `eval_cmd_op` recording every visited state, the initial one included.
pub fn trace_cmd(state: &State, fuel: u64) -> (Vec<State>, CmdOutcome) {
    let mut states = Vec::new();
    let out = drive_cmd(state, fuel, |s| states.push(s.clone()));
    (states, out)
}

fn drive_cmd(state: &State, fuel: u64, mut visit: impl FnMut(&State)) -> CmdOutcome {
    let mut store = state.store.clone();
    let mut cmd = state.cmd.clone();
    let mut steps = 0;
    loop {
        visit(&State { store: store.clone(), cmd: cmd.clone() });
        if let Cmd::Ret(v) = &cmd {
            if v.is_value() {
                return CmdOutcome::Converged { cost: Cost(steps), store, value: (**v).clone() };
            }
        }
        if steps == fuel {
            return CmdOutcome::FuelExhausted;
        }
        match step_cmd(&mut store, &cmd) {
            Some(next) => {
                cmd = next;
                steps += 1;
            }
            None => return CmdOutcome::Stuck { cost: Cost(steps), state: State { store, cmd } },
        }
    }
}

pub fn eval_exp_op(e: &Exp, fuel: u64) -> ExpOutcome {
    trace_exp_inner(e, fuel, |_| ())
}

pub fn trace_exp(e: &Exp, fuel: u64) -> (Vec<Exp>, ExpOutcome) {
    let mut states = Vec::new();
    let out = trace_exp_inner(e, fuel, |t| states.push(t.clone()));
    (states, out)
}

fn trace_exp_inner(e: &Exp, fuel: u64, mut visit: impl FnMut(&Exp)) -> ExpOutcome {
    let mut cur = e.clone();
    let mut steps = 0;
    loop {
        visit(&cur);
        if cur.is_value() {
            return ExpOutcome::Value { cost: Cost(steps), value: cur };
        }
        if steps == fuel {
            return ExpOutcome::FuelExhausted;
        }
        match exp_step_once(&cur) {
            Some(next) => {
                cur = next;
                steps += 1;
            }
            None => return ExpOutcome::Stuck { cost: Cost(steps), term: cur },
        }
    }
}
