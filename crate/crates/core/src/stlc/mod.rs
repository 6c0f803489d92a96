//! Simply-typed lambda calculus over booleans.

pub mod den;
pub mod op;
pub mod syntax;

pub use den::{denote, denote_closed_bool, denote_with, SemVal};
pub use op::{eval_op, step_once, trace, EvalResult};
pub use syntax::{check, Sub, Tm, Ty};
