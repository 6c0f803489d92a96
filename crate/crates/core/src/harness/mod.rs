//! Typed program generation and the differential adequacy oracle: run the
//! small-step machine and the denotation side by side and compare value,
//! final store and (phase-sealed) cost.

mod campaign;
pub mod gen;
pub mod shrink;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algol::{self, CmdOutcome, Denoter, ExpOutcome, GeProof, SemVal, State};
use crate::kernel::{seal, Cost, Phase, SealedCost};
use crate::lift::{run, RunOutcome};
use crate::mutation::Mutation;
use crate::stlc::{self, EvalResult, Tm};
use crate::surface::{print_cmd, print_exp, print_stlc};

pub use campaign::{fuzz_campaign, fuzz_campaign_with, CampaignSummary, Failure, Language, Program};
pub use gen::{gen_ma, gen_stlc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Upper bound on AST nodes. MA commands need at least two.
    pub max_size: usize,
    /// Upper bound on simultaneously live assignables.
    pub max_sig: usize,
    pub fuel: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_size: 20, max_sig: 4, fuel: 1_000_000 }
    }
}

impl GenConfig {
    /// The generator state for case `index` of a campaign; cases do not
    /// share randomness, so they can be produced in any order.
    pub fn case_rng(&self, index: u64) -> ChaCha8Rng {
        let mut z = self.seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    CostMismatch,
    ValueMismatch,
    StoreMismatch,
    #[serde(rename = "both-fuel")]
    BothFuelExhausted,
}

impl Verdict {
    /// Agreement, counting joint divergence as vacuous agreement.
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Match | Verdict::BothFuelExhausted)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::CostMismatch => "cost-mismatch",
            Verdict::ValueMismatch => "value-mismatch",
            Verdict::StoreMismatch => "store-mismatch",
            Verdict::BothFuelExhausted => "both-fuel",
        }
    }
}

/// What one evaluator observed. Values and store cells are printed closed
/// values; `store` is absent for languages without one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Value { cost: SealedCost, value: String, store: Option<Vec<String>> },
    Fuel,
}

impl Outcome {
    pub fn cost(&self) -> Option<Cost> {
        match self {
            Outcome::Value { cost, .. } => cost.counted(),
            Outcome::Fuel => None,
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Outcome", 4)?;
        match self {
            Outcome::Value { cost, value, store } => {
                st.serialize_field("status", "value")?;
                st.serialize_field("cost", &cost.counted().map(Cost::get))?;
                st.serialize_field("value", value)?;
                st.serialize_field("store", store)?;
            }
            Outcome::Fuel => {
                st.serialize_field("status", "fuel")?;
                st.serialize_field("cost", &None::<u64>)?;
                st.serialize_field("value", &None::<String>)?;
                st.serialize_field("store", &None::<Vec<String>>)?;
            }
        }
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdequacyReport {
    pub program: String,
    pub phase: Phase,
    pub operational: Outcome,
    pub denotational: Outcome,
    pub verdict: Verdict,
}

impl AdequacyReport {
    pub fn new(program: String, phase: Phase, operational: Outcome, denotational: Outcome) -> Self {
        let verdict = verdict(&operational, &denotational);
        AdequacyReport { program, phase, operational, denotational, verdict }
    }
}

/// Value disagreement outranks store disagreement, which outranks cost.
/// One side diverging while the other converges is a value disagreement.
pub fn verdict(op: &Outcome, den: &Outcome) -> Verdict {
    match (op, den) {
        (Outcome::Fuel, Outcome::Fuel) => Verdict::BothFuelExhausted,
        (Outcome::Fuel, _) | (_, Outcome::Fuel) => Verdict::ValueMismatch,
        (
            Outcome::Value { cost: c1, value: v1, store: s1 },
            Outcome::Value { cost: c2, value: v2, store: s2 },
        ) => {
            if v1 != v2 {
                Verdict::ValueMismatch
            } else if s1 != s2 {
                Verdict::StoreMismatch
            } else if c1 != c2 {
                Verdict::CostMismatch
            } else {
                Verdict::Match
            }
        }
    }
}

fn sem_to_string(v: &SemVal) -> String {
    match v.to_exp() {
        Some(e) => print_exp(&e),
        None => format!("{v:?}"),
    }
}

pub fn differential_stlc(e: &Tm, phase: Phase, fuel: u64) -> AdequacyReport {
    differential_stlc_with(e, phase, fuel, Mutation::NONE)
}

/// The denotation is total on well-typed terms, so only the machine can
/// run out of fuel.
pub fn differential_stlc_with(e: &Tm, phase: Phase, fuel: u64, mutation: Mutation) -> AdequacyReport {
    let op = match stlc::eval_op(e, fuel) {
        EvalResult::Value { cost, value } => {
            Outcome::Value { cost: seal(phase, cost), value: print_stlc(&value), store: None }
        }
        EvalResult::Stuck { cost, term } => {
            Outcome::Value { cost: seal(phase, cost), value: format!("stuck: {}", print_stlc(&term)), store: None }
        }
        EvalResult::FuelExhausted => Outcome::Fuel,
    };
    let den = stlc::denote_with(e, &[], mutation);
    let value = match den.value.as_bool() {
        Some(b) => print_stlc(&Tm::bool(b)),
        None => format!("{:?}", den.value),
    };
    let den = Outcome::Value { cost: seal(phase, den.cost), value, store: None };
    AdequacyReport::new(print_stlc(e), phase, op, den)
}

pub fn differential_ma(m: &algol::Cmd, phase: Phase, fuel: u64) -> AdequacyReport {
    differential_ma_with(m, phase, fuel, Mutation::NONE)
}

/// Runs a closed command from the empty store on both sides.
///
/// The two budgets count different things (transitions against delay
/// nodes), so a side that runs dry while the other converged is retried
/// with the budget the other side's result warrants: the converged cost
/// for the machine, and as many delay nodes as the machine took steps
/// for the denotation (every delay node is paid for by at least one step).
pub fn differential_ma_with(m: &algol::Cmd, phase: Phase, fuel: u64, mutation: Mutation) -> AdequacyReport {
    let den_run = |fuel: u64| run(Denoter::new(mutation).closed_cmd(m), fuel);
    let op_run = |fuel: u64| algol::eval_cmd_op(&State::new(Vec::new(), m.clone()), fuel);
    let mut op = op_run(fuel);
    let mut den = den_run(fuel);
    match (&op, &den) {
        (CmdOutcome::FuelExhausted, RunOutcome::Converged(c, _)) if c.get() > fuel => op = op_run(c.get()),
        (CmdOutcome::Converged { cost, .. }, RunOutcome::FuelExhausted) if cost.get() > fuel => {
            den = den_run(cost.get())
        }
        _ => {}
    }
    let op = match op {
        CmdOutcome::Converged { cost, store, value } => Outcome::Value {
            cost: seal(phase, cost),
            value: print_exp(&value),
            store: Some(store.iter().map(print_exp).collect()),
        },
        CmdOutcome::Stuck { cost, state } => Outcome::Value {
            cost: seal(phase, cost),
            value: format!("stuck: {}", print_cmd(&state.cmd)),
            store: Some(state.store.iter().map(print_exp).collect()),
        },
        CmdOutcome::FuelExhausted => Outcome::Fuel,
    };
    let den = match den {
        RunOutcome::Converged(cost, (value, store)) => Outcome::Value {
            cost: seal(phase, cost),
            value: sem_to_string(&value),
            store: Some(store.iter().map(sem_to_string).collect()),
        },
        RunOutcome::FuelExhausted => Outcome::Fuel,
    };
    AdequacyReport::new(print_cmd(m), phase, op, den)
}

/// Closed expressions: the denotation is a free computation and is total.
pub fn differential_ma_exp(e: &algol::Exp, phase: Phase, fuel: u64) -> AdequacyReport {
    let op = match algol::eval_exp_op(e, fuel) {
        ExpOutcome::Value { cost, value } => {
            Outcome::Value { cost: seal(phase, cost), value: print_exp(&value), store: None }
        }
        ExpOutcome::Stuck { cost, term } => {
            Outcome::Value { cost: seal(phase, cost), value: format!("stuck: {}", print_exp(&term)), store: None }
        }
        ExpOutcome::FuelExhausted => Outcome::Fuel,
    };
    let den = Denoter::default().exp(e, &[], &GeProof::Refl, &[]);
    let den = Outcome::Value { cost: seal(phase, den.cost), value: sem_to_string(&den.value), store: None };
    AdequacyReport::new(print_exp(e), phase, op, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algol::{Cmd, Exp};
    use crate::mutation::StepSite;
    use crate::stlc::Ty;

    fn counted(report: &AdequacyReport) -> (Option<Cost>, Option<Cost>) {
        (report.operational.cost(), report.denotational.cost())
    }

    #[test]
    fn stlc_identity_application() {
        let e = Tm::ap(Tm::lam(Ty::Bool, Tm::Var(0)), Tm::TT);
        let r = differential_stlc(&e, Phase::Intensional, 100);
        assert_eq!(r.verdict, Verdict::Match);
        assert_eq!(counted(&r), (Some(Cost(1)), Some(Cost(1))));
        let r = differential_stlc_with(&e, Phase::Intensional, 100, Mutation::drop(StepSite::Ap));
        assert_eq!(r.verdict, Verdict::CostMismatch);
    }

    #[test]
    fn extensional_costs_are_erased() {
        let r = differential_stlc(&Tm::TT, Phase::Extensional, 100);
        assert_eq!(r.verdict, Verdict::Match);
        assert_eq!(r.operational, Outcome::Value { cost: SealedCost::Erased, value: "tt".into(), store: None });
    }

    #[test]
    fn ma_examples() {
        let r = differential_ma(&Cmd::ret(Exp::TT), Phase::Intensional, 100);
        assert_eq!((r.verdict, counted(&r)), (Verdict::Match, (Some(Cost(0)), Some(Cost(0)))));
        let m = Cmd::dcl(Exp::FF, Cmd::while_(0, Cmd::ret(Exp::Triv)));
        let r = differential_ma(&m, Phase::Intensional, 100);
        assert_eq!((r.verdict, counted(&r)), (Verdict::Match, (Some(Cost(2)), Some(Cost(2)))));
    }

    #[test]
    fn spinning_loop_exhausts_both_sides_at_every_budget() {
        let m = Cmd::dcl(Exp::TT, Cmd::while_(0, Cmd::ret(Exp::Triv)));
        for fuel in [1, 10, 1000, 20_000] {
            assert_eq!(differential_ma(&m, Phase::Intensional, fuel).verdict, Verdict::BothFuelExhausted);
        }
    }

    #[test]
    fn long_loop_is_retried_on_the_starved_side() {
        // Ten iterations of a countdown cost far more transitions than
        // delay nodes, so a budget of 30 starves only the machine.
        let body = gen::countdown(0, 1);
        let m = Cmd::dcl(
            Exp::numeral(10),
            Cmd::dcl(Exp::TT, Cmd::bnd(Exp::cmd(Cmd::while_(0, body)), Cmd::ret(Exp::TT))),
        );
        let r = differential_ma(&m, Phase::Intensional, 30);
        assert_eq!(r.verdict, Verdict::Match, "{r:?}");
        assert!(r.operational.cost().unwrap() > Cost(30));
    }

    #[test]
    fn json_schema() {
        let r = differential_ma(&Cmd::ret(Exp::TT), Phase::Extensional, 100);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "program": "ret tt",
                "phase": "extensional",
                "operational": {"status": "value", "cost": null, "value": "tt", "store": []},
                "denotational": {"status": "value", "cost": null, "value": "tt", "store": []},
                "verdict": "match"
            })
        );
        let m = Cmd::dcl(Exp::TT, Cmd::while_(0, Cmd::ret(Exp::Triv)));
        let v = serde_json::to_value(differential_ma(&m, Phase::Intensional, 10)).unwrap();
        assert_eq!(v["verdict"], "both-fuel");
        assert_eq!(v["operational"]["status"], "fuel");
        assert!(v["operational"]["cost"].is_null());
    }
}
