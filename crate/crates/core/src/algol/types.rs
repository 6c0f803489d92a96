use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MaTy {
    Unit,
    Bool,
    Nat,
    Arrow(Box<MaTy>, Box<MaTy>),
    Cmd(Box<MaTy>),
}

impl MaTy {
    pub fn arrow(dom: MaTy, cod: MaTy) -> MaTy {
        MaTy::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn cmd(result: MaTy) -> MaTy {
        MaTy::Cmd(Box::new(result))
    }

    pub fn positive(&self) -> Option<PosTy> {
        match self {
            MaTy::Unit => Some(PosTy::Unit),
            MaTy::Bool => Some(PosTy::Bool),
            MaTy::Nat => Some(PosTy::Nat),
            MaTy::Arrow(..) | MaTy::Cmd(_) => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.positive().is_some()
    }
}

impl fmt::Display for MaTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaTy::Unit => f.write_str("unit"),
            MaTy::Bool => f.write_str("bool"),
            MaTy::Nat => f.write_str("nat"),
            MaTy::Cmd(a) => write!(f, "cmd({a})"),
            MaTy::Arrow(a, b) => match **a {
                MaTy::Arrow(..) => write!(f, "({a}) -> {b}"),
                _ => write!(f, "{a} -> {b}"),
            },
        }
    }
}

/// A strictly positive type: something that may be stored in an assignable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosTy {
    Unit,
    Bool,
    Nat,
}

impl PosTy {
    pub const ALL: [PosTy; 3] = [PosTy::Unit, PosTy::Bool, PosTy::Nat];

    pub fn ty(self) -> MaTy {
        match self {
            PosTy::Unit => MaTy::Unit,
            PosTy::Bool => MaTy::Bool,
            PosTy::Nat => MaTy::Nat,
        }
    }
}

impl From<PosTy> for MaTy {
    fn from(p: PosTy) -> MaTy {
        p.ty()
    }
}

impl fmt::Display for PosTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ty().fmt(f)
    }
}

/// Declared assignables; index 0 is the most recently declared.
pub type Sig = Vec<PosTy>;
