//! `costsem`: parse, check, evaluate and cross-check programs.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use costsem_core::algol::{
    self, check_cmd, check_exp, eval_cmd_op, eval_exp_op, trace_cmd, trace_exp, CmdOutcome,
    Denoter, ExpOutcome, GeProof, MaTy, SemVal, State,
};
use costsem_core::harness::{
    differential_ma, differential_ma_exp, differential_stlc, fuzz_campaign_with, AdequacyReport,
    GenConfig, Language, Outcome, Verdict,
};
use costsem_core::lift::{run, RunOutcome};
use costsem_core::stlc::{self, check, EvalResult, Tm, Ty};
use costsem_core::surface::{
    parse_ma, parse_stlc, print_cmd, print_exp, print_ma_ty, print_stlc, MaProgram, SurfaceError,
};
use costsem_core::{seal, Mutation, Phase, SealedCost};
use serde_json::{json, Value};

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const PARSE: u8 = 2;
const FUEL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "costsem",
    version,
    about = "Step-counting semantics for STLC and Modernized Algol"
)]
struct Cli {
    /// Step budget for the machine; delay budget for the denotation.
    #[arg(long, global = true, env = "COSTSEM_FUEL", default_value_t = 1_000_000)]
    fuel: u64,
    #[arg(long, global = true, value_enum, default_value_t = PhaseArg::Intensional)]
    phase: PhaseArg,
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Intensional,
    Extensional,
}

impl From<PhaseArg> for Phase {
    fn from(p: PhaseArg) -> Phase {
        match p {
            PhaseArg::Intensional => Phase::Intensional,
            PhaseArg::Extensional => Phase::Extensional,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LangArg {
    Stlc,
    Ma,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and type-check a program.
    Check { file: PathBuf },
    /// Run the small-step machine.
    RunOp {
        file: PathBuf,
        /// Print every machine state, one per line.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate the denotation.
    RunDen { file: PathBuf },
    /// Run both and compare.
    Adequacy { file: PathBuf },
    /// Differential testing on generated programs.
    Fuzz {
        #[arg(long, value_enum)]
        lang: LangArg,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_size: usize,
        #[arg(long, default_value_t = 4)]
        max_sig: usize,
    },
}

/// A parsed and type-checked source file.
enum Source {
    Stlc(Tm, Ty),
    MaExp(algol::Exp, MaTy),
    MaCmd(algol::Cmd, MaTy),
}

impl Source {
    fn printed(&self) -> String {
        match self {
            Source::Stlc(t, _) => print_stlc(t),
            Source::MaExp(e, _) => print_exp(e),
            Source::MaCmd(m, _) => print_cmd(m),
        }
    }

    fn ty(&self) -> String {
        match self {
            Source::Stlc(_, t) => t.to_string(),
            Source::MaExp(_, t) | Source::MaCmd(_, t) => print_ma_ty(t),
        }
    }

    fn observable(&self) -> bool {
        match self {
            Source::Stlc(_, t) => *t == Ty::Bool,
            Source::MaExp(_, t) | Source::MaCmd(_, t) => t.is_positive(),
        }
    }
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn fail(code: u8, kind: &'static str, message: impl Display) -> Failure {
    Failure {
        code,
        kind,
        message: message.to_string(),
    }
}

fn load(path: &Path) -> Result<Source, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(PARSE, "io", format!("{}: {e}", path.display())))?;
    let located = |e: SurfaceError| fail(PARSE, "parse", format!("{}: {e}", path.display()));
    match path.extension().and_then(|e| e.to_str()) {
        Some("stlc") => {
            let t = parse_stlc(&text).map_err(located)?;
            let ty =
                check(&[], &t).ok_or_else(|| fail(MISMATCH, "type", "program is ill-typed"))?;
            Ok(Source::Stlc(t, ty))
        }
        Some("ma") => match parse_ma(&text).map_err(located)? {
            MaProgram::Exp(e) => {
                let ty = check_exp(&[], &[], &e)
                    .ok_or_else(|| fail(MISMATCH, "type", "program is ill-typed"))?;
                Ok(Source::MaExp(e, ty))
            }
            MaProgram::Cmd(m) => {
                let ty = check_cmd(&[], &[], &m)
                    .ok_or_else(|| fail(MISMATCH, "type", "program is ill-typed"))?;
                Ok(Source::MaCmd(m, ty))
            }
        },
        _ => Err(fail(
            PARSE,
            "io",
            format!("{}: expected a .stlc or .ma file", path.display()),
        )),
    }
}

fn sem(v: &SemVal) -> String {
    v.to_exp()
        .map(|e| print_exp(&e))
        .unwrap_or_else(|| "<function>".into())
}

fn cost_text(c: &SealedCost) -> String {
    c.counted()
        .map(|c| c.get().to_string())
        .unwrap_or_else(|| "erased".into())
}

fn outcome_text(o: &Outcome) -> String {
    match o {
        Outcome::Value { cost, value, store } => {
            let mut s = format!("value {value}, cost {}", cost_text(cost));
            if let Some(store) = store {
                s.push_str(&format!(", store [{}]", store.join(", ")));
            }
            s
        }
        Outcome::Fuel => "fuel exhausted".into(),
    }
}

fn outcome_code(o: &Outcome) -> u8 {
    match o {
        Outcome::Fuel => FUEL,
        Outcome::Value { .. } => OK,
    }
}

fn state_line(s: &State) -> String {
    let cells: Vec<String> = s.store.iter().map(print_exp).collect();
    format!("[{}] | {}", cells.join(", "), print_cmd(&s.cmd))
}

/// States are only recorded when `trace` is set.
fn run_op(src: &Source, phase: Phase, fuel: u64, trace: bool) -> (Vec<String>, Outcome) {
    let value = |cost, value: String, store| Outcome::Value {
        cost: seal(phase, cost),
        value,
        store,
    };
    match src {
        Source::Stlc(t, _) => {
            let (states, r) = if trace {
                stlc::trace(t, fuel)
            } else {
                (Vec::new(), stlc::eval_op(t, fuel))
            };
            let out = match r {
                EvalResult::Value { cost, value: v } => value(cost, print_stlc(&v), None),
                EvalResult::Stuck { cost, term } => {
                    value(cost, format!("stuck: {}", print_stlc(&term)), None)
                }
                EvalResult::FuelExhausted => Outcome::Fuel,
            };
            (states.iter().map(print_stlc).collect(), out)
        }
        Source::MaExp(e, _) => {
            let (states, r) = if trace {
                trace_exp(e, fuel)
            } else {
                (Vec::new(), eval_exp_op(e, fuel))
            };
            let out = match r {
                ExpOutcome::Value { cost, value: v } => value(cost, print_exp(&v), None),
                ExpOutcome::Stuck { cost, term } => {
                    value(cost, format!("stuck: {}", print_exp(&term)), None)
                }
                ExpOutcome::FuelExhausted => Outcome::Fuel,
            };
            (states.iter().map(print_exp).collect(), out)
        }
        Source::MaCmd(m, _) => {
            let start = State::new(Vec::new(), m.clone());
            let (states, r) = if trace {
                trace_cmd(&start, fuel)
            } else {
                (Vec::new(), eval_cmd_op(&start, fuel))
            };
            let out = match r {
                CmdOutcome::Converged {
                    cost,
                    store,
                    value: v,
                } => value(
                    cost,
                    print_exp(&v),
                    Some(store.iter().map(print_exp).collect()),
                ),
                CmdOutcome::Stuck { cost, state } => {
                    value(cost, format!("stuck: {}", state_line(&state)), None)
                }
                CmdOutcome::FuelExhausted => Outcome::Fuel,
            };
            (states.iter().map(state_line).collect(), out)
        }
    }
}

fn run_den(src: &Source, phase: Phase, fuel: u64) -> Outcome {
    match src {
        Source::Stlc(t, _) => {
            let c = stlc::denote(t, &[]);
            let value = c
                .value
                .as_bool()
                .map(|b| print_stlc(&Tm::bool(b)))
                .unwrap_or_else(|| "<function>".into());
            Outcome::Value {
                cost: seal(phase, c.cost),
                value,
                store: None,
            }
        }
        Source::MaExp(e, _) => {
            let c = Denoter::default().exp(e, &[], &GeProof::Refl, &[]);
            Outcome::Value {
                cost: seal(phase, c.cost),
                value: sem(&c.value),
                store: None,
            }
        }
        Source::MaCmd(m, _) => match run(Denoter::new(Mutation::NONE).closed_cmd(m), fuel) {
            RunOutcome::Converged(cost, (v, store)) => Outcome::Value {
                cost: seal(phase, cost),
                value: sem(&v),
                store: Some(store.iter().map(sem).collect()),
            },
            RunOutcome::FuelExhausted => Outcome::Fuel,
        },
    }
}

fn adequacy(src: &Source, phase: Phase, fuel: u64) -> Result<AdequacyReport, Failure> {
    if !src.observable() {
        return Err(fail(
            MISMATCH,
            "type",
            format!("adequacy needs a program of base type, not {}", src.ty()),
        ));
    }
    Ok(match src {
        Source::Stlc(t, _) => differential_stlc(t, phase, fuel),
        Source::MaExp(e, _) => differential_ma_exp(e, phase, fuel),
        Source::MaCmd(m, _) => differential_ma(m, phase, fuel),
    })
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Match => OK,
        Verdict::BothFuelExhausted => FUEL,
        Verdict::CostMismatch | Verdict::ValueMismatch | Verdict::StoreMismatch => MISMATCH,
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn execute(cli: &Cli) -> Result<u8, Failure> {
    let phase = Phase::from(cli.phase);
    match &cli.command {
        Command::Check { file } => {
            let src = load(file)?;
            if cli.json {
                print_json(&json!({ "program": src.printed(), "type": src.ty() }));
            } else {
                println!("{} : {}", src.printed(), src.ty());
            }
            Ok(OK)
        }
        Command::RunOp { file, trace } => {
            let src = load(file)?;
            let (states, out) = run_op(&src, phase, cli.fuel, *trace);
            if cli.json {
                let mut obj = json!({ "program": src.printed(), "phase": phase, "result": out });
                if *trace {
                    obj["trace"] = Value::from(states);
                }
                print_json(&obj);
            } else if *trace {
                // Exactly one line per state on stdout.
                for s in &states {
                    println!("{s}");
                }
                eprintln!("{}", outcome_text(&out));
            } else {
                println!("{}", outcome_text(&out));
            }
            Ok(outcome_code(&out))
        }
        Command::RunDen { file } => {
            let src = load(file)?;
            let out = run_den(&src, phase, cli.fuel);
            if cli.json {
                print_json(&json!({ "program": src.printed(), "phase": phase, "result": out }));
            } else {
                println!("{}", outcome_text(&out));
            }
            Ok(outcome_code(&out))
        }
        Command::Adequacy { file } => {
            let src = load(file)?;
            let report = adequacy(&src, phase, cli.fuel)?;
            if cli.json {
                print_json(&report);
            } else {
                println!("program      {}", report.program);
                println!("operational  {}", outcome_text(&report.operational));
                println!("denotational {}", outcome_text(&report.denotational));
                println!("verdict      {}", report.verdict.as_str());
            }
            Ok(verdict_code(report.verdict))
        }
        Command::Fuzz {
            lang,
            count,
            seed,
            max_size,
            max_sig,
        } => {
            let lang = match lang {
                LangArg::Stlc => Language::Stlc,
                LangArg::Ma => Language::Ma,
            };
            let cfg = GenConfig {
                seed: *seed,
                max_size: *max_size,
                max_sig: *max_sig,
                fuel: cli.fuel,
            };
            let summary = fuzz_campaign_with(&cfg, lang, phase, *count, Mutation::NONE, 8);
            if cli.json {
                print_json(&summary);
            } else {
                println!(
                    "{lang} seed {seed}: {count} cases, {} match, {} both-fuel, {} mismatches",
                    summary.matches, summary.both_fuel, summary.mismatches
                );
                for f in &summary.failures {
                    println!(
                        "case {}: {} {}",
                        f.index,
                        f.report.verdict.as_str(),
                        f.report.program
                    );
                    if let Some(s) = &f.shrunk {
                        println!("  shrunk: {}", s.program);
                    }
                }
            }
            Ok(if summary.passed() { OK } else { MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if cli.json {
                print_json(&json!({ "error": f.kind, "message": f.message }));
            }
            eprintln!("costsem: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
