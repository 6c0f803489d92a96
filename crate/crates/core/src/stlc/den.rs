//! Cost-aware denotational semantics: terms denote free computations over
//! semantic values, with one step charged at each application.

use std::fmt;
use std::rc::Rc;

use crate::kernel::{Comp, Cost};
use crate::mutation::{Mutation, StepSite};

use super::syntax::Tm;

pub type SemFn = Rc<dyn Fn(SemVal) -> Comp<SemVal>>;

/// A semantic value. Functions are only ever observed by application.
#[derive(Clone)]
pub enum SemVal {
    B(bool),
    Fn(SemFn),
}

impl SemVal {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            SemVal::B(b) => Some(*b),
            SemVal::Fn(_) => None,
        }
    }
}

impl fmt::Debug for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemVal::B(b) => write!(f, "B({b})"),
            SemVal::Fn(_) => f.write_str("Fn(..)"),
        }
    }
}

/// `env[i]` interprets variable `i`.
pub fn denote(e: &Tm, env: &[SemVal]) -> Comp<SemVal> {
    denote_with(e, env, Mutation::NONE)
}

pub fn denote_with(e: &Tm, env: &[SemVal], mutation: Mutation) -> Comp<SemVal> {
    match e {
        Tm::Var(i) => Comp::ret(env[*i].clone()),
        Tm::TT => Comp::ret(SemVal::B(true)),
        Tm::FF => Comp::ret(SemVal::B(false)),
        Tm::Lam(_, body) => {
            let body: Rc<Tm> = Rc::new((**body).clone());
            let captured: Rc<[SemVal]> = env.into();
            Comp::ret(SemVal::Fn(Rc::new(move |a| {
                let mut inner = Vec::with_capacity(captured.len() + 1);
                inner.push(a);
                inner.extend(captured.iter().cloned());
                denote_with(&body, &inner, mutation)
            })))
        }
        Tm::Ap(f, a) => denote_with(f, env, mutation).bind(|fv| {
            denote_with(a, env, mutation).bind(|av| match fv {
                SemVal::Fn(func) => func(av).step(mutation.charge(StepSite::Ap, 1)),
                SemVal::B(_) => panic!("application of a boolean; term is ill-typed"),
            })
        }),
    }
}

/// Convenience for closed boolean programs.
pub fn denote_closed_bool(e: &Tm, mutation: Mutation) -> Option<(Cost, bool)> {
    let Comp { cost, value } = denote_with(e, &[], mutation);
    value.as_bool().map(|b| (cost, b))
}
