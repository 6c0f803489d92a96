//! Call-by-value small-step dynamics; cost is the number of transitions.

use crate::kernel::Cost;

use super::syntax::Tm;

/// One transition of a closed term, left to right: function position,
/// then argument, then β. `None` on values and stuck terms.
pub fn step_once(e: &Tm) -> Option<Tm> {
    match e {
        Tm::Ap(f, a) => {
            if !f.is_value() {
                return step_once(f).map(|f2| Tm::ap(f2, (**a).clone()));
            }
            if !a.is_value() {
                return step_once(a).map(|a2| Tm::ap((**f).clone(), a2));
            }
            match &**f {
                Tm::Lam(_, body) => Some(body.instantiate(a, 0)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    Value { cost: Cost, value: Tm },
    /// A non-value with no transition; unreachable for well-typed input.
    Stuck { cost: Cost, term: Tm },
    FuelExhausted,
}

/// Iterates `step_once`, allowing at most `fuel` transitions.
pub fn eval_op(e: &Tm, fuel: u64) -> EvalResult {
    drive(e, fuel, |_| ())
}

/// Like `eval_op`, also returning every state visited (the initial term
/// included), so a converged run of cost `c` has `c + 1` states.
pub fn trace(e: &Tm, fuel: u64) -> (Vec<Tm>, EvalResult) {
    let mut states = Vec::new();
    let result = drive(e, fuel, |t| states.push(t.clone()));
    (states, result)
}

fn drive(e: &Tm, fuel: u64, mut visit: impl FnMut(&Tm)) -> EvalResult {
    let mut cur = e.clone();
    let mut steps = 0;
    loop {
        visit(&cur);
        if cur.is_value() {
            return EvalResult::Value { cost: Cost(steps), value: cur };
        }
        if steps == fuel {
            return EvalResult::FuelExhausted;
        }
        match step_once(&cur) {
            Some(next) => {
                cur = next;
                steps += 1;
            }
            None => return EvalResult::Stuck { cost: Cost(steps), term: cur },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stlc::syntax::Ty;

    fn id() -> Tm {
        Tm::lam(Ty::Bool, Tm::Var(0))
    }

    #[test]
    fn single_steps() {
        assert_eq!(step_once(&Tm::ap(id(), Tm::TT)), Some(Tm::TT));
        assert_eq!(step_once(&Tm::TT), None);
        let id_fn = Tm::lam(Ty::arrow(Ty::Bool, Ty::Bool), Tm::Var(0));
        let e = Tm::ap(Tm::ap(id_fn, id()), Tm::TT);
        assert_eq!(step_once(&e), Some(Tm::ap(id(), Tm::TT)));
    }

    #[test]
    fn argument_after_function() {
        let e = Tm::ap(id(), Tm::ap(id(), Tm::FF));
        assert_eq!(step_once(&e), Some(Tm::ap(id(), Tm::FF)));
    }

    #[test]
    fn evaluation_counts_transitions() {
        assert_eq!(eval_op(&Tm::ap(id(), Tm::TT), 10), EvalResult::Value { cost: Cost(1), value: Tm::TT });
        assert_eq!(eval_op(&Tm::TT, 10), EvalResult::Value { cost: Cost(0), value: Tm::TT });
        let e = Tm::ap(id(), Tm::ap(id(), Tm::FF));
        assert_eq!(eval_op(&e, 10), EvalResult::Value { cost: Cost(2), value: Tm::FF });
        assert_eq!(eval_op(&e, 1), EvalResult::FuelExhausted);
        assert_eq!(eval_op(&e, 2), EvalResult::Value { cost: Cost(2), value: Tm::FF });
    }

    #[test]
    fn stuck_is_reported() {
        let e = Tm::ap(Tm::TT, Tm::FF);
        assert_eq!(eval_op(&e, 5), EvalResult::Stuck { cost: Cost(0), term: e.clone() });
    }

    #[test]
    fn trace_length() {
        let e = Tm::ap(id(), Tm::ap(id(), Tm::FF));
        let (states, result) = trace(&e, 10);
        assert_eq!(states.len(), 3);
        assert!(matches!(result, EvalResult::Value { cost: Cost(2), .. }));
    }
}
