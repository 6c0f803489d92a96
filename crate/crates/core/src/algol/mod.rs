//! Modernized Algol: a total expression language with reified commands
//! over a first-order, stack-allocated store.

pub mod den;
pub mod op;
pub mod statics;
pub mod syntax;
pub mod types;
pub mod world;

pub use den::{denote_cmd, denote_exp, up, Denoter, SemStore, SemVal};
pub use op::{cmd_step_once, eval_cmd_op, eval_exp_op, exp_step_once, trace_cmd, trace_exp, CmdOutcome, ExpOutcome, State};
pub use statics::{check_cmd, check_exp, store_matches};
pub use syntax::{coer, Cmd, Exp, Sub};
pub use types::{MaTy, PosTy, Sig};
pub use world::{sh, tr, GeProof};
