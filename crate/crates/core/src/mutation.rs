//! Step sites of the denotational evaluators, used to knock out a single
//! cost insertion when checking that the differential harness notices.

use std::fmt;

/// A place where a denotational evaluator charges cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepSite {
    /// Function application (both languages).
    Ap,
    Ifz,
    Bnd,
    Get,
    Set,
    Dcl,
    WhileFf,
    WhileIter,
}

impl StepSite {
    pub const ALGOL: [StepSite; 8] = [
        StepSite::Ap,
        StepSite::Ifz,
        StepSite::Bnd,
        StepSite::Get,
        StepSite::Set,
        StepSite::Dcl,
        StepSite::WhileFf,
        StepSite::WhileIter,
    ];

    pub const STLC: [StepSite; 1] = [StepSite::Ap];

    pub fn name(self) -> &'static str {
        match self {
            StepSite::Ap => "ap",
            StepSite::Ifz => "ifz",
            StepSite::Bnd => "bnd",
            StepSite::Get => "get",
            StepSite::Set => "set",
            StepSite::Dcl => "dcl",
            StepSite::WhileFf => "while-ff",
            StepSite::WhileIter => "while-iter",
        }
    }
}

impl fmt::Display for StepSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which step site, if any, is knocked out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mutation(pub Option<StepSite>);

impl Mutation {
    pub const NONE: Mutation = Mutation(None);

    pub fn drop(site: StepSite) -> Self {
        Mutation(Some(site))
    }

    /// The cost actually charged at `site`.
    pub fn charge(self, site: StepSite, c: u64) -> crate::kernel::Cost {
        if self.0 == Some(site) {
            crate::kernel::Cost::ZERO
        } else {
            crate::kernel::Cost(c)
        }
    }
}
