//! The two candidates `e₁, e₂` for a program `p`: each behaves like `p`
//! until the oracle proves it equivalent to `p`, after which `e₁` adds one
//! and `e₂` outputs zero.

use crate::basesys::{Asm, Machine, Prim, RunOutcome};
use crate::combinators::{if_then_else, krt};
use crate::logic::{Sentence, SystemKind, SystemTag, Template, TemplateKind};
use crate::numcode::{set_encode, Nat, SetCode};

use super::Branch;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1 {
    pub p: Nat,
    pub e1: Nat,
    pub e2: Nat,
    /// Code of the set `{e₁, e₂}`.
    pub g_code: SetCode,
}

/// Guard on `⟨self, p, x⟩`: does `T ⊢_x «φ_self = φ_p»`?
fn guard() -> Nat {
    let mut a = Asm::new();
    a.unpair(1, 2, 0).unpair(3, 4, 2);
    a.set(5, Template::new(TemplateKind::Equiv, SystemKind::Phi).id());
    a.pair(6, 1, 3).pair(5, 5, 6).ext(Prim::Sentence, 5, 5);
    a.pair(5, 5, 4).ext(Prim::Oracle, 0, 5).halt(0);
    a.code()
}

/// `⟨self, p, x⟩ ↦ φ_p(x) + bump`.
fn run_param(bump: bool) -> Nat {
    let mut a = Asm::new();
    a.unpair(1, 2, 0).ext(Prim::Sim, 0, 2);
    if bump {
        a.inc(0);
    }
    a.halt(0);
    a.code()
}

/// Build both candidates; codes do not depend on any oracle.
pub fn theorem1_candidates(p: &Nat) -> Theorem1 {
    let g = guard();
    let plain = run_param(false);
    let e1 = krt(p, &if_then_else(&g, &run_param(true), &plain));
    let e2 = krt(p, &if_then_else(&g, &crate::programs::zero(), &plain));
    let g_code = set_encode(&[e1.clone(), e2.clone()].into()).expect("two elements");
    Theorem1 { p: p.clone(), e1, e2, g_code }
}

impl Theorem1 {
    /// The sentence `«φ_e = φ_p»` quoted by candidate `e`.
    pub fn quoted(&self, e: &Nat) -> Sentence {
        Sentence::equiv(e.clone(), self.p.clone(), SystemTag::Phi)
    }

    pub fn branch(&self, m: &Machine, e: &Nat, x: &Nat) -> Branch {
        if m.oracle().proves_within(&self.quoted(e), x) {
            Branch::Diagonal
        } else {
            Branch::NotFired
        }
    }

    pub fn run(&self, m: &Machine, which: u8, x: &Nat, budget: u64) -> RunOutcome {
        let e = if which == 1 { &self.e1 } else { &self.e2 };
        m.run(e, x, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{make_scripted, OracleScript, SentencePattern};
    use crate::numcode::set_decode;
    use crate::programs::succ;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn silent_candidates_follow_p() {
        let t = theorem1_candidates(&succ());
        let m = Machine::default();
        for x in 0..20 {
            assert_eq!(t.run(&m, 1, &n(x), 1_000_000).value(), Some(&n(x + 1)));
            assert_eq!(t.run(&m, 2, &n(x), 1_000_000).value(), Some(&n(x + 1)));
        }
        assert_eq!(set_decode(&t.g_code), [t.e1.clone(), t.e2.clone()].into());
    }

    #[test]
    fn scripted_e1_adds_one() {
        let t = theorem1_candidates(&succ());
        let pat = SentencePattern::exact(&t.quoted(&t.e1));
        let m = Machine::new(make_scripted(OracleScript::new().with(pat, 5u32)));
        for x in 0..5 {
            assert_eq!(t.run(&m, 1, &n(x), 1_000_000).value(), Some(&n(x + 1)));
        }
        for x in 5..10 {
            assert_eq!(t.run(&m, 1, &n(x), 1_000_000).value(), Some(&n(x + 2)));
            assert_eq!(t.branch(&m, &t.e1, &n(x)), Branch::Diagonal);
            // Only e₁'s sentence was scripted.
            assert_eq!(t.run(&m, 2, &n(x), 1_000_000).value(), Some(&n(x + 1)));
        }
    }
}
