//! Cost monoid, evaluation phase, sealed cost observations and the free
//! computation monad carrying the cost effect.
//!
//! A free computation is kept in writer normal form: a cost paired with a
//! value. `step` adds to the cost component, so `step 0 e = e` and
//! `step c1 (step c2 e) = step (c1 + c2) e` hold on the representation.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// A count of evaluation steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cost(pub u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const ONE: Cost = Cost(1);

    pub fn get(self) -> u64 {
        self.0
    }

    /// Inverse of addition: `b` such that `self = a + b`, when it exists.
    pub fn checked_sub(self, a: Cost) -> Option<Cost> {
        self.0.checked_sub(a.0).map(Cost)
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl From<u64> for Cost {
    fn from(n: u64) -> Self {
        Cost(n)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Whether costs are observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Intensional,
    /// The phase in which the cost effect is trivial.
    Extensional,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Intensional => "intensional",
            Phase::Extensional => "extensional",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "intensional" => Ok(Phase::Intensional),
            "extensional" => Ok(Phase::Extensional),
            other => Err(format!("unknown phase `{other}`")),
        }
    }
}

/// A cost as seen from a phase. Every erased cost is equal to every other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SealedCost {
    Counted(Cost),
    Erased,
}

impl SealedCost {
    pub fn counted(self) -> Option<Cost> {
        match self {
            SealedCost::Counted(c) => Some(c),
            SealedCost::Erased => None,
        }
    }
}

impl Add for SealedCost {
    type Output = SealedCost;

    fn add(self, rhs: SealedCost) -> SealedCost {
        match (self, rhs) {
            (SealedCost::Counted(a), SealedCost::Counted(b)) => SealedCost::Counted(a + b),
            _ => SealedCost::Erased,
        }
    }
}

pub fn seal(phase: Phase, c: Cost) -> SealedCost {
    match phase {
        Phase::Intensional => SealedCost::Counted(c),
        Phase::Extensional => SealedCost::Erased,
    }
}

/// A total computation that incurred `cost` and produced `value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comp<V> {
    pub cost: Cost,
    pub value: V,
}

impl<V> Comp<V> {
    pub fn new(cost: Cost, value: V) -> Self {
        Comp { cost, value }
    }

    pub fn ret(value: V) -> Self {
        Comp { cost: Cost::ZERO, value }
    }

    pub fn step(self, c: Cost) -> Self {
        Comp { cost: c + self.cost, value: self.value }
    }

    pub fn bind<W>(self, f: impl FnOnce(V) -> Comp<W>) -> Comp<W> {
        let next = f(self.value);
        Comp { cost: self.cost + next.cost, value: next.value }
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> Comp<W> {
        Comp { cost: self.cost, value: f(self.value) }
    }
}

pub fn comp_ret<V>(v: V) -> Comp<V> {
    Comp::ret(v)
}

pub fn comp_step<V>(c: Cost, e: Comp<V>) -> Comp<V> {
    e.step(c)
}

pub fn comp_bind<A, B>(e: Comp<A>, f: impl FnOnce(A) -> Comp<B>) -> Comp<B> {
    e.bind(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ret_has_zero_cost() {
        assert_eq!(comp_ret(true), Comp::new(Cost(0), true));
        assert_eq!(comp_ret(7), Comp::new(Cost(0), 7));
        assert_ne!(comp_step(Cost(3), comp_ret('x')), comp_ret('x'));
    }

    #[test]
    fn step_laws() {
        assert_eq!(comp_step(Cost(0), Comp::new(Cost(5), 'v')), Comp::new(Cost(5), 'v'));
        assert_eq!(
            comp_step(Cost(2), comp_step(Cost(3), Comp::new(Cost(0), 'v'))),
            Comp::new(Cost(5), 'v')
        );
        assert_eq!(comp_step(Cost(1), Comp::new(Cost(0), true)), Comp::new(Cost(1), true));
    }

    #[test]
    fn bind_adds_costs() {
        let r = comp_bind(Comp::new(Cost(2), 10), |a| Comp::new(Cost(3), a * 2));
        assert_eq!(r, Comp::new(Cost(5), 20));
        let f = |a: i32| Comp::new(Cost(4), a + 1);
        assert_eq!(comp_bind(comp_ret(1), f), f(1));
    }

    #[test]
    fn sealing() {
        assert_eq!(seal(Phase::Intensional, Cost(4)), SealedCost::Counted(Cost(4)));
        assert_eq!(seal(Phase::Extensional, Cost(4)), SealedCost::Erased);
        assert_eq!(seal(Phase::Extensional, Cost(0)), seal(Phase::Extensional, Cost(99)));
        assert_ne!(SealedCost::Counted(Cost(0)), SealedCost::Erased);
        assert_eq!(SealedCost::Counted(Cost(1)) + SealedCost::Erased, SealedCost::Erased);
        assert_eq!(
            SealedCost::Counted(Cost(1)) + SealedCost::Counted(Cost(2)),
            SealedCost::Counted(Cost(3))
        );
    }

    #[test]
    fn phase_parses() {
        assert_eq!("extensional".parse::<Phase>(), Ok(Phase::Extensional));
        assert!("both".parse::<Phase>().is_err());
    }
}
