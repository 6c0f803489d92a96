//! Lifted, possibly divergent computations.
//!
//! A [`Lift`] is a lazily produced chain of delay nodes that may end in a
//! cost/value pair. Each delay node records the cost paid before it, so
//! charging a step in front of a delayed computation never adds a layer. Divergence is never decided; it is only observed up to a
//! fuel budget, where one unit of fuel forces one delay node. Suspensions
//! must be pure so that re-forcing a value always yields the same chain.

use std::fmt;
use std::rc::Rc;

use crate::kernel::{Comp, Cost};

/// Default fuel bound for observational comparison of lifted values.
pub const OBSERVATION_BOUND: u64 = 1 << 16;

pub type Suspension<V> = Rc<dyn Fn() -> Lift<V>>;

pub enum Lift<V> {
    Now(Cost, V),
    /// `Later(c, s)`: pay `c`, wait one delay, continue as `s()`.
    Later(Cost, Suspension<V>),
}

impl<V: Clone> Clone for Lift<V> {
    fn clone(&self) -> Self {
        match self {
            Lift::Now(c, v) => Lift::Now(*c, v.clone()),
            Lift::Later(c, s) => Lift::Later(*c, Rc::clone(s)),
        }
    }
}

impl<V: fmt::Debug> fmt::Debug for Lift<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lift::Now(c, v) => f.debug_tuple("Now").field(c).field(v).finish(),
            Lift::Later(c, _) => f.debug_tuple("Later").field(c).field(&"..").finish(),
        }
    }
}

impl<V: 'static> Lift<V> {
    pub fn later(thunk: impl Fn() -> Lift<V> + 'static) -> Self {
        Lift::Later(Cost::ZERO, Rc::new(thunk))
    }

    /// Forces a single delay node; `Now` is returned unchanged.
    pub fn force(self) -> Self {
        match self {
            Lift::Later(c, s) => lift_step(c, s()),
            now => now,
        }
    }
}

/// Result of observing a lifted computation under a fuel budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome<V> {
    Converged(Cost, V),
    FuelExhausted,
}

impl<V> RunOutcome<V> {
    pub fn converged(self) -> Option<(Cost, V)> {
        match self {
            RunOutcome::Converged(c, v) => Some((c, v)),
            RunOutcome::FuelExhausted => None,
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, RunOutcome::Converged(..))
    }
}

/// One round of an iteration: finished with `B`, or go again from `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step<B, A> {
    Done(B),
    Continue(A),
}

pub fn lift_ret<V>(v: V) -> Lift<V> {
    Lift::Now(Cost::ZERO, v)
}

pub fn lift_of_comp<V>(e: Comp<V>) -> Lift<V> {
    Lift::Now(e.cost, e.value)
}

/// Adds `c` to the eventual cost without changing the number of delays.
pub fn lift_step<V>(c: Cost, e: Lift<V>) -> Lift<V> {
    match e {
        Lift::Now(c2, v) => Lift::Now(c + c2, v),
        Lift::Later(c2, s) => Lift::Later(c + c2, s),
    }
}

pub fn lift_bind<A: 'static, B: 'static>(
    e: Lift<A>,
    f: impl Fn(A) -> Lift<B> + 'static,
) -> Lift<B> {
    bind_rc(e, Rc::new(f))
}

fn bind_rc<A: 'static, B: 'static>(e: Lift<A>, f: Rc<dyn Fn(A) -> Lift<B>>) -> Lift<B> {
    match e {
        Lift::Now(c, a) => lift_step(c, f(a)),
        Lift::Later(c, s) => Lift::Later(c, Rc::new(move || bind_rc(s(), Rc::clone(&f)))),
    }
}

pub type StepFn<A, B> = Rc<dyn Fn(A) -> Lift<Step<B, A>>>;

/// Runs `f` from `a` until it yields `Done`. Every `Continue` costs one
/// delay node, so a loop needs exactly as much fuel as it has rounds
/// (plus whatever delays `f` itself produces).
pub fn iter<A: Clone + 'static, B: 'static>(f: StepFn<A, B>, a: A) -> Lift<B> {
    let again = Rc::clone(&f);
    lift_bind(f(a), move |s| match s {
        Step::Done(b) => lift_ret(b),
        Step::Continue(next) => {
            let again = Rc::clone(&again);
            Lift::later(move || iter(Rc::clone(&again), next.clone()))
        }
    })
}

/// The `k`-round prefix of `iter(f)`; `Continue` if `k` rounds did not finish.
pub fn seq<A: Clone + 'static, B: Clone + 'static>(
    f: StepFn<A, B>,
    k: u64,
    a: A,
) -> Lift<Step<B, A>> {
    if k == 0 {
        return lift_ret(Step::Continue(a));
    }
    let again = Rc::clone(&f);
    lift_bind(f(a), move |s| match s {
        Step::Done(b) => lift_ret(Step::Done(b)),
        Step::Continue(next) => seq(Rc::clone(&again), k - 1, next),
    })
}

/// Forces at most `fuel` delay nodes.
pub fn run<V: 'static>(e: Lift<V>, fuel: u64) -> RunOutcome<V> {
    match observe(e, fuel) {
        Observation::Converged { cost, value, .. } => RunOutcome::Converged(cost, value),
        Observation::Unresolved => RunOutcome::FuelExhausted,
    }
}

/// Everything `run` can see of a lifted value at fuels up to some bound:
/// the number of delays before the result, and the result itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observation<V> {
    Converged { delays: u64, cost: Cost, value: V },
    Unresolved,
}

pub fn observe<V: 'static>(mut e: Lift<V>, bound: u64) -> Observation<V> {
    let (mut delays, mut paid) = (0, Cost::ZERO);
    loop {
        match e {
            Lift::Now(cost, value) => return Observation::Converged { delays, cost: paid + cost, value },
            Lift::Later(c, s) => {
                if delays == bound {
                    return Observation::Unresolved;
                }
                delays += 1;
                paid += c;
                e = s();
            }
        }
    }
}

/// Equal outcomes under `run` at every fuel up to `bound`.
pub fn observationally_eq<V: PartialEq + 'static>(a: Lift<V>, b: Lift<V>, bound: u64) -> bool {
    observe(a, bound) == observe(b, bound)
}

/// When `iter(f, a)` converges within `fuel`, the least `k <= fuel` whose
/// prefix `seq(f, k, a)` converges to the same cost with `Done` of the same
/// value. A prefix that finishes stays finished as `k` grows, so the least
/// such `k` is found by bisection.
pub fn compactness_witness<A, B>(f: StepFn<A, B>, a: A, fuel: u64) -> Option<u64>
where
    A: Clone + 'static,
    B: Clone + PartialEq + 'static,
{
    let (cost, value) = run(iter(Rc::clone(&f), a.clone()), fuel).converged()?;
    let finished =
        |k: u64| matches!(run(seq(Rc::clone(&f), k, a.clone()), fuel), RunOutcome::Converged(_, Step::Done(_)));
    if !finished(fuel) {
        return None;
    }
    let (mut lo, mut hi) = (0, fuel);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if finished(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    match run(seq(f, lo, a), fuel) {
        RunOutcome::Converged(c, Step::Done(b)) if c == cost && b == value => Some(lo),
        _ => None,
    }
}
