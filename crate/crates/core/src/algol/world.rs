//! The preorder on signatures. `Σ' ≥ Σ` holds when `Σ` occurs as a
//! subsequence of `Σ'`; a [`GeProof`] records which positions survive.

use super::types::PosTy;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeProof {
    Refl,
    /// Both sides gain the same head.
    Mono(Box<GeProof>),
    /// Only the larger side gains a head.
    Extend(Box<GeProof>),
}

impl GeProof {
    pub fn mono(p: GeProof) -> GeProof {
        GeProof::Mono(Box::new(p))
    }

    pub fn extend(p: GeProof) -> GeProof {
        GeProof::Extend(Box::new(p))
    }

    /// Whether `self` witnesses `larger ≥ smaller`.
    pub fn relates(&self, larger: &[PosTy], smaller: &[PosTy]) -> bool {
        match self {
            GeProof::Refl => larger == smaller,
            GeProof::Mono(p) => match (larger.split_first(), smaller.split_first()) {
                (Some((a, l)), Some((b, s))) => a == b && p.relates(l, s),
                _ => false,
            },
            GeProof::Extend(p) => match larger.split_first() {
                Some((_, l)) => p.relates(l, smaller),
                None => false,
            },
        }
    }
}

/// Where assignable `n` of the smaller signature sits in the larger one.
pub fn sh(p: &GeProof, n: usize) -> usize {
    match p {
        GeProof::Refl => n,
        GeProof::Mono(_) if n == 0 => 0,
        GeProof::Mono(q) => sh(q, n - 1) + 1,
        GeProof::Extend(q) => sh(q, n) + 1,
    }
}

/// Transitivity: from `p : Σ'' ≥ Σ'` and `q : Σ' ≥ Σ`, a proof of `Σ'' ≥ Σ`.
pub fn tr(p: &GeProof, q: &GeProof) -> GeProof {
    match (p, q) {
        (GeProof::Refl, q) => q.clone(),
        (GeProof::Extend(p), q) => GeProof::extend(tr(p, q)),
        (GeProof::Mono(p), GeProof::Refl) => GeProof::Mono(p.clone()),
        (GeProof::Mono(p), GeProof::Mono(q)) => GeProof::mono(tr(p, q)),
        (GeProof::Mono(p), GeProof::Extend(q)) => GeProof::extend(tr(p, q)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PosTy::*;

    #[test]
    fn shift_clauses() {
        assert_eq!(sh(&GeProof::Refl, 5), 5);
        assert_eq!(sh(&GeProof::extend(GeProof::Refl), 0), 1);
        assert_eq!(sh(&GeProof::mono(GeProof::extend(GeProof::Refl)), 1), 2);
        assert_eq!(sh(&GeProof::mono(GeProof::extend(GeProof::Refl)), 0), 0);
    }

    #[test]
    fn relates_subsequence() {
        let p = GeProof::mono(GeProof::extend(GeProof::Refl));
        assert!(p.relates(&[Bool, Nat, Unit], &[Bool, Unit]));
        assert!(!p.relates(&[Bool, Nat, Unit], &[Nat, Unit]));
        assert!(GeProof::Refl.relates(&[], &[]));
        assert!(!GeProof::extend(GeProof::Refl).relates(&[], &[]));
    }

    #[test]
    fn transitivity_composes_shifts() {
        let p = GeProof::extend(GeProof::mono(GeProof::Refl));
        let q = GeProof::mono(GeProof::extend(GeProof::Refl));
        let pq = tr(&p, &q);
        for n in 0..6 {
            assert_eq!(sh(&pq, n), sh(&p, sh(&q, n)));
        }
        assert!(q.relates(&[Bool, Nat, Unit], &[Bool, Unit]));
        assert!(p.relates(&[Nat, Bool, Nat, Unit], &[Bool, Nat, Unit]));
        assert!(pq.relates(&[Nat, Bool, Nat, Unit], &[Bool, Unit]));
    }
}
