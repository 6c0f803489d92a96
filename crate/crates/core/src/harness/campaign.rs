use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algol::Cmd;
use crate::kernel::Phase;
use crate::mutation::Mutation;
use crate::stlc::Tm;

use super::shrink::{shrink_ma, shrink_stlc};
use super::{differential_ma_with, differential_stlc_with, gen_ma, gen_stlc, AdequacyReport, GenConfig, Verdict};

/// Shrinking re-runs the differential many times; candidates get at most
/// this much fuel so that a spinning candidate cannot stall the search.
pub const SHRINK_FUEL: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Stlc,
    Ma,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Stlc => "stlc",
            Language::Ma => "ma",
        })
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stlc" => Ok(Language::Stlc),
            "ma" => Ok(Language::Ma),
            other => Err(format!("unknown language `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Program {
    Stlc(Tm),
    Ma(Cmd),
}

impl Program {
    pub fn generate(lang: Language, cfg: &GenConfig, index: u64) -> Program {
        let mut rng = cfg.case_rng(index);
        match lang {
            Language::Stlc => Program::Stlc(gen_stlc(cfg, &mut rng)),
            Language::Ma => Program::Ma(gen_ma(cfg, &mut rng)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Program::Stlc(t) => t.size(),
            Program::Ma(m) => m.size(),
        }
    }

    pub fn differential(&self, phase: Phase, fuel: u64, mutation: Mutation) -> AdequacyReport {
        match self {
            Program::Stlc(t) => differential_stlc_with(t, phase, fuel, mutation),
            Program::Ma(m) => differential_ma_with(m, phase, fuel, mutation),
        }
    }

    /// Shrinks towards a smaller program with a failing verdict.
    pub fn shrink(&self, phase: Phase, fuel: u64, mutation: Mutation) -> Program {
        let fuel = fuel.min(SHRINK_FUEL);
        match self {
            Program::Stlc(t) => Program::Stlc(shrink_stlc(t, |c| {
                !differential_stlc_with(c, phase, fuel, mutation).verdict.is_ok()
            })),
            Program::Ma(m) => {
                Program::Ma(shrink_ma(m, |c| !differential_ma_with(c, phase, fuel, mutation).verdict.is_ok()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: u64,
    pub report: AdequacyReport,
    /// Present for the first few failures only; see `fuzz_campaign_with`.
    pub shrunk: Option<AdequacyReport>,
    pub shrunk_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub language: Language,
    pub phase: Phase,
    pub seed: u64,
    pub count: u64,
    pub matches: u64,
    pub both_fuel: u64,
    pub mismatches: u64,
    /// Reports carrying a numeric cost on either side.
    pub counted_costs: u64,
    pub failures: Vec<Failure>,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn smallest_shrunk(&self) -> Option<usize> {
        self.failures.iter().filter_map(|f| f.shrunk_size).min()
    }
}

pub fn fuzz_campaign(cfg: &GenConfig, lang: Language, phase: Phase, count: u64) -> CampaignSummary {
    fuzz_campaign_with(cfg, lang, phase, count, Mutation::NONE, 8)
}

/// Runs `count` generated cases in parallel. Results are merged by case
/// index, so the summary depends only on the arguments. The first
/// `shrink_limit` failures are shrunk.
pub fn fuzz_campaign_with(
    cfg: &GenConfig,
    lang: Language,
    phase: Phase,
    count: u64,
    mutation: Mutation,
    shrink_limit: usize,
) -> CampaignSummary {
    let reports: Vec<(AdequacyReport, Option<Program>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let prog = Program::generate(lang, cfg, i);
            let report = prog.differential(phase, cfg.fuel, mutation);
            let keep = (!report.verdict.is_ok()).then_some(prog);
            (report, keep)
        })
        .collect();

    let mut summary = CampaignSummary {
        language: lang,
        phase,
        seed: cfg.seed,
        count,
        matches: 0,
        both_fuel: 0,
        mismatches: 0,
        counted_costs: 0,
        failures: Vec::new(),
    };
    let mut to_shrink = Vec::new();
    for (i, (report, prog)) in reports.into_iter().enumerate() {
        if report.operational.cost().is_some() || report.denotational.cost().is_some() {
            summary.counted_costs += 1;
        }
        match report.verdict {
            Verdict::Match => summary.matches += 1,
            Verdict::BothFuelExhausted => summary.both_fuel += 1,
            _ => {
                summary.mismatches += 1;
                if to_shrink.len() < shrink_limit {
                    to_shrink.push((summary.failures.len(), prog.expect("kept on failure")));
                }
                summary.failures.push(Failure { index: i as u64, report, shrunk: None, shrunk_size: None });
            }
        }
    }
    let shrunk: Vec<(usize, Program)> =
        to_shrink.into_par_iter().map(|(slot, p)| (slot, p.shrink(phase, cfg.fuel, mutation))).collect();
    for (slot, p) in shrunk {
        let f = &mut summary.failures[slot];
        f.shrunk = Some(p.differential(phase, cfg.fuel.min(SHRINK_FUEL), mutation));
        f.shrunk_size = Some(p.size());
    }
    summary
}
