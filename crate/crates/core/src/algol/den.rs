//! Possible-worlds denotational semantics.
//!
//! Every interpretation takes a future world: the signature `Σ'` it runs
//! at, and a proof `p : Σ' ≥ Σ` from the signature `Σ` the phrase was
//! checked at. Assignable `n` of the phrase is cell `sh(p, n)` of the
//! semantic store. Expressions denote free computations; commands denote
//! lifted computations over the store, with `while` realized by `iter`.

use std::fmt;
use std::rc::Rc;

use crate::kernel::{Comp, Cost};
use crate::lift::{iter, lift_bind, lift_of_comp, lift_step, Lift, Step, StepFn};
use crate::mutation::{Mutation, StepSite};

use super::syntax::{Cmd, Exp};
use super::types::{PosTy, Sig};
use super::world::{sh, tr, GeProof};

pub type SemFn = Rc<dyn Fn(&[PosTy], &GeProof, SemVal) -> Comp<SemVal>>;
pub type SemCmd = Rc<dyn Fn(&[PosTy], &GeProof, SemStore) -> Lift<(SemVal, SemStore)>>;

/// Semantic values at some world. Functions and commands are families
/// indexed by a future world and only ever observed by running them.
#[derive(Clone)]
pub enum SemVal {
    U,
    B(bool),
    N(u64),
    Fn(SemFn),
    C(SemCmd),
}

/// Cell `i` holds assignable `i`; only positive values are stored.
pub type SemStore = Vec<SemVal>;

impl SemVal {
    pub fn positive_type(&self) -> Option<PosTy> {
        match self {
            SemVal::U => Some(PosTy::Unit),
            SemVal::B(_) => Some(PosTy::Bool),
            SemVal::N(_) => Some(PosTy::Nat),
            SemVal::Fn(_) | SemVal::C(_) => None,
        }
    }

    /// The closed value this positive semantic value stands for.
    pub fn to_exp(&self) -> Option<Exp> {
        match self {
            SemVal::U => Some(Exp::Triv),
            SemVal::B(b) => Some(Exp::bool(*b)),
            SemVal::N(n) => Some(Exp::numeral(*n)),
            SemVal::Fn(_) | SemVal::C(_) => None,
        }
    }

    pub fn from_exp(v: &Exp) -> Option<SemVal> {
        match v {
            Exp::Triv => Some(SemVal::U),
            Exp::TT => Some(SemVal::B(true)),
            Exp::FF => Some(SemVal::B(false)),
            other => other.as_numeral().map(SemVal::N),
        }
    }
}

impl fmt::Debug for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemVal::U => f.write_str("U"),
            SemVal::B(b) => write!(f, "B({b})"),
            SemVal::N(n) => write!(f, "N({n})"),
            SemVal::Fn(_) => f.write_str("Fn(..)"),
            SemVal::C(_) => f.write_str("C(..)"),
        }
    }
}

/// Moves a value along `p : Σ' ≥ Σ`. Positive values are unchanged;
/// families are re-indexed by pre-composing with `p`.
pub fn up(p: &GeProof, v: &SemVal) -> SemVal {
    match v {
        SemVal::U | SemVal::B(_) | SemVal::N(_) => v.clone(),
        SemVal::Fn(f) => {
            let (f, p) = (Rc::clone(f), p.clone());
            SemVal::Fn(Rc::new(move |w, q, a| f(w, &tr(q, &p), a)))
        }
        SemVal::C(c) => {
            let (c, p) = (Rc::clone(c), p.clone());
            SemVal::C(Rc::new(move |w, q, s| c(w, &tr(q, &p), s)))
        }
    }
}

pub fn up_env(p: &GeProof, env: &[SemVal]) -> Vec<SemVal> {
    env.iter().map(|v| up(p, v)).collect()
}

fn cons(v: SemVal, env: &[SemVal]) -> Vec<SemVal> {
    let mut out = Vec::with_capacity(env.len() + 1);
    out.push(v);
    out.extend_from_slice(env);
    out
}

pub fn denote_exp(e: &Exp, world: &[PosTy], p: &GeProof, env: &[SemVal]) -> Comp<SemVal> {
    Denoter::default().exp(e, world, p, env)
}

pub fn denote_cmd(
    m: &Cmd,
    world: &[PosTy],
    p: &GeProof,
    env: &[SemVal],
    store: SemStore,
) -> Lift<(SemVal, SemStore)> {
    Denoter::default().cmd(m, world, p, env, store)
}

/// The denotational evaluator, optionally with one step site knocked out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Denoter {
    pub mutation: Mutation,
}

impl Denoter {
    pub fn new(mutation: Mutation) -> Self {
        Denoter { mutation }
    }

    fn charge(self, site: StepSite, c: u64) -> Cost {
        self.mutation.charge(site, c)
    }

    pub fn exp(self, e: &Exp, world: &[PosTy], p: &GeProof, env: &[SemVal]) -> Comp<SemVal> {
        match e {
            Exp::Var(i) => Comp::ret(env[*i].clone()),
            Exp::Triv => Comp::ret(SemVal::U),
            Exp::TT => Comp::ret(SemVal::B(true)),
            Exp::FF => Comp::ret(SemVal::B(false)),
            Exp::Zero => Comp::ret(SemVal::N(0)),
            Exp::Suc(e) => self.exp(e, world, p, env).map(|n| match n {
                SemVal::N(n) => SemVal::N(n + 1),
                other => panic!("suc of {other:?}; term is ill-typed"),
            }),
            Exp::Ifz(s, z, succ) => self.exp(s, world, p, env).bind(|n| match n {
                SemVal::N(0) => self.exp(z, world, p, env).step(self.charge(StepSite::Ifz, 1)),
                SemVal::N(k) => self
                    .exp(succ, world, p, &cons(SemVal::N(k - 1), env))
                    .step(self.charge(StepSite::Ifz, 1)),
                other => panic!("ifz on {other:?}; term is ill-typed"),
            }),
            Exp::Lam(_, body) => {
                let body = Rc::new((**body).clone());
                let (p, env) = (p.clone(), env.to_vec());
                SemVal::Fn(Rc::new(move |w2, p2, a| {
                    self.exp(&body, w2, &tr(p2, &p), &cons(a, &up_env(p2, &env)))
                }))
                .pipe(Comp::ret)
            }
            Exp::Ap(f, a) => self.exp(f, world, p, env).bind(|fv| {
                self.exp(a, world, p, env).bind(|av| match fv {
                    SemVal::Fn(func) => func(world, &GeProof::Refl, av).step(self.charge(StepSite::Ap, 1)),
                    other => panic!("application of {other:?}; term is ill-typed"),
                })
            }),
            Exp::CmdVal(m) => {
                let m = Rc::new((**m).clone());
                let (p, env) = (p.clone(), env.to_vec());
                SemVal::C(Rc::new(move |w2, p2, store| self.cmd(&m, w2, &tr(p2, &p), &up_env(p2, &env), store)))
                    .pipe(Comp::ret)
            }
        }
    }

    pub fn cmd(
        self,
        m: &Cmd,
        world: &[PosTy],
        p: &GeProof,
        env: &[SemVal],
        store: SemStore,
    ) -> Lift<(SemVal, SemStore)> {
        debug_assert_eq!(world.len(), store.len(), "store does not match its world");
        match m {
            Cmd::Ret(e) => lift_of_comp(self.exp(e, world, p, env).map(|v| (v, store))),
            Cmd::Bnd(e, k) => {
                let k = Rc::new((**k).clone());
                let world: Sig = world.to_vec();
                let (p, env) = (p.clone(), env.to_vec());
                lift_bind(lift_of_comp(self.exp(e, &world, &p, &env)), move |m1| {
                    let SemVal::C(run) = m1 else { panic!("bnd of {m1:?}; term is ill-typed") };
                    let (k, world, p, env) = (Rc::clone(&k), world.clone(), p.clone(), env.clone());
                    lift_bind(run(&world, &GeProof::Refl, store.clone()), move |(a, s1)| {
                        lift_step(self.charge(StepSite::Bnd, 1), self.cmd(&k, &world, &p, &cons(a, &env), s1))
                    })
                })
            }
            Cmd::While(n, body) => {
                let cell = sh(p, *n);
                let body = Rc::new((**body).clone());
                let world: Sig = world.to_vec();
                let (p, env) = (p.clone(), env.to_vec());
                let round: StepFn<SemStore, (SemVal, SemStore)> = Rc::new(move |s: SemStore| match s[cell] {
                    SemVal::B(false) => Lift::Now(self.charge(StepSite::WhileFf, 1), Step::Done((SemVal::U, s))),
                    SemVal::B(true) => lift_bind(self.cmd(&body, &world, &p, &env, s), move |(_, s1)| {
                        Lift::Now(self.charge(StepSite::WhileIter, 2), Step::Continue(s1))
                    }),
                    ref other => panic!("loop guard holds {other:?}; store is ill-typed"),
                });
                iter(round, store)
            }
            Cmd::Get(n) => {
                let v = store[sh(p, *n)].clone();
                Lift::Now(self.charge(StepSite::Get, 1), (v, store))
            }
            Cmd::Set(n, e) => {
                let cell = sh(p, *n);
                lift_bind(lift_of_comp(self.exp(e, world, p, env)), move |a| {
                    let mut s = store.clone();
                    let old = std::mem::replace(&mut s[cell], a);
                    Lift::Now(self.charge(StepSite::Set, 1), (old, s))
                })
            }
            Cmd::Dcl(e, body) => {
                let body = Rc::new((**body).clone());
                let world: Sig = world.to_vec();
                let (p, env) = (p.clone(), env.to_vec());
                lift_bind(lift_of_comp(self.exp(e, &world, &p, &env)), move |a| {
                    let cell = a.positive_type().expect("declared a non-positive assignable");
                    let mut inner_world = Vec::with_capacity(world.len() + 1);
                    inner_world.push(cell);
                    inner_world.extend_from_slice(&world);
                    let inner_env = up_env(&GeProof::extend(GeProof::Refl), &env);
                    let inner_store = cons(a, &store);
                    let run = self.cmd(&body, &inner_world, &GeProof::mono(p.clone()), &inner_env, inner_store);
                    lift_bind(run, move |(b, mut s1)| {
                        s1.remove(0);
                        Lift::Now(self.charge(StepSite::Dcl, 1), (b, s1))
                    })
                })
            }
        }
    }

    /// A closed command at the empty world and store.
    pub fn closed_cmd(self, m: &Cmd) -> Lift<(SemVal, SemStore)> {
        self.cmd(m, &[], &GeProof::Refl, &[], Vec::new())
    }
}

trait Pipe: Sized {
    fn pipe<R>(self, f: impl FnOnce(Self) -> R) -> R {
        f(self)
    }
}

impl<T> Pipe for T {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algol::types::MaTy;
    use crate::lift::{run, RunOutcome};
    use PosTy::*;

    fn run_cmd(m: &Cmd, world: &[PosTy], store: SemStore) -> Option<(Cost, SemVal, SemStore)> {
        run(denote_cmd(m, world, &GeProof::Refl, &[], store), 1000)
            .converged()
            .map(|(c, (v, s))| (c, v, s))
    }

    fn obs(v: &SemVal) -> Exp {
        v.to_exp().expect("positive")
    }

    #[test]
    fn expression_costs() {
        let e = Exp::ifz(Exp::Zero, Exp::TT, Exp::FF);
        let r = denote_exp(&e, &[], &GeProof::Refl, &[]);
        assert_eq!((r.cost, obs(&r.value)), (Cost(1), Exp::TT));
        let e = Exp::ap(Exp::lam(MaTy::Bool, Exp::Var(0)), Exp::TT);
        let r = denote_exp(&e, &[], &GeProof::Refl, &[]);
        assert_eq!((r.cost, obs(&r.value)), (Cost(1), Exp::TT));
        let r = denote_exp(&Exp::suc(Exp::Zero), &[], &GeProof::Refl, &[]);
        assert_eq!((r.cost, obs(&r.value)), (Cost(0), Exp::numeral(1)));
        let e = Exp::ifz(Exp::numeral(4), Exp::Zero, Exp::Var(0));
        let r = denote_exp(&e, &[], &GeProof::Refl, &[]);
        assert_eq!((r.cost, obs(&r.value)), (Cost(1), Exp::numeral(3)));
    }

    #[test]
    fn get_set_while() {
        let (c, v, s) = run_cmd(&Cmd::Get(0), &[Bool], vec![SemVal::B(true)]).unwrap();
        assert_eq!((c, obs(&v), obs(&s[0])), (Cost(1), Exp::TT, Exp::TT));

        let (c, v, s) = run_cmd(&Cmd::set(0, Exp::FF), &[Bool], vec![SemVal::B(true)]).unwrap();
        assert_eq!((c, obs(&v), obs(&s[0])), (Cost(1), Exp::TT, Exp::FF));

        let w = Cmd::while_(0, Cmd::ret(Exp::Triv));
        let (c, v, s) = run_cmd(&w, &[Bool], vec![SemVal::B(false)]).unwrap();
        assert_eq!((c, obs(&v), obs(&s[0])), (Cost(1), Exp::Triv, Exp::FF));
    }

    #[test]
    fn dcl_pops_its_cell() {
        let m = Cmd::dcl(Exp::FF, Cmd::while_(0, Cmd::ret(Exp::Triv)));
        let (c, v, s) = run_cmd(&m, &[], vec![]).unwrap();
        assert_eq!((c, obs(&v), s.len()), (Cost(2), Exp::Triv, 0));
    }

    #[test]
    fn loop_that_runs_once() {
        let body = Cmd::bnd(Exp::cmd(Cmd::set(0, Exp::FF)), Cmd::ret(Exp::Triv));
        let m = Cmd::dcl(Exp::TT, Cmd::while_(0, body));
        let (c, v, _) = run_cmd(&m, &[], vec![]).unwrap();
        assert_eq!((c, obs(&v)), (Cost(6), Exp::Triv));
    }

    #[test]
    fn spinning_loop_never_converges() {
        let m = Cmd::dcl(Exp::TT, Cmd::while_(0, Cmd::ret(Exp::Triv)));
        for fuel in [0, 1, 100, 5000] {
            let out = run(denote_cmd(&m, &[], &GeProof::Refl, &[], vec![]), fuel);
            assert!(matches!(out, RunOutcome::FuelExhausted));
        }
    }

    #[test]
    fn command_value_runs_at_a_later_world() {
        // bnd c <- ret cmd(get[0]) ; dcl a := ff in bnd x <- c ; ret x
        // The outer cell (true) must be read, not the inner one.
        let m = Cmd::bnd(
            Exp::cmd(Cmd::ret(Exp::cmd(Cmd::Get(0)))),
            Cmd::dcl(Exp::FF, Cmd::bnd(Exp::Var(0), Cmd::ret(Exp::Var(0)))),
        );
        let (_, v, _) = run_cmd(&m, &[Bool], vec![SemVal::B(true)]).unwrap();
        assert_eq!(obs(&v), Exp::TT);
    }

    #[test]
    fn up_is_identity_on_positive_values() {
        let p = GeProof::extend(GeProof::Refl);
        assert_eq!(obs(&up(&p, &SemVal::B(true))), Exp::TT);
        assert_eq!(obs(&up(&p, &SemVal::N(3))), Exp::numeral(3));
    }

    #[test]
    fn mutation_drops_one_site() {
        let m = Cmd::dcl(Exp::TT, Cmd::Get(0));
        let healthy = run(Denoter::default().closed_cmd(&m), 10).converged().unwrap().0;
        let mutated = run(Denoter::new(Mutation::drop(StepSite::Get)).closed_cmd(&m), 10).converged().unwrap().0;
        assert_eq!(healthy, Cost(2));
        assert_eq!(mutated, Cost(1));
    }
}
