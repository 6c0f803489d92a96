//! A workbench for cost-aware semantics.
//!
//! Two object languages, the simply-typed lambda calculus ([`stlc`]) and
//! Modernized Algol ([`algol`]), each get a step-counting small-step
//! semantics and a denotational semantics that charges cost through the
//! free computation monad of [`kernel`] (and, for loops, the lifted
//! computations of [`lift`]). The [`harness`] generates well-typed programs
//! and checks that both semantics agree on value and exact cost.

pub mod algol;
pub mod harness;
pub mod kernel;
pub mod lift;
pub mod mutation;
pub mod stlc;
pub mod surface;

pub use kernel::{seal, Comp, Cost, Phase, SealedCost};
pub use lift::{Lift, RunOutcome};
pub use mutation::{Mutation, StepSite};
