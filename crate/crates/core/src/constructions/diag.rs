//! The ψ, η and θ systems: `sys_p(x) = p` once the oracle proves the
//! system's self-describing sentence within `x`, otherwise `φ_p(x)`.

use std::sync::Arc;

use super::{Branch, DerivedSystem};
use crate::basesys::{Asm, Prim};
use crate::combinators::krt_plain;
use crate::logic::{Oracle, Sentence, SystemKind, SystemTag, Template, TemplateKind};
use crate::numcode::Nat;

/// Task on `⟨self, ⟨p, x⟩⟩`. With `exempt_self`, `p = self` always takes
/// the φ branch.
fn task(template: Template, exempt_self: bool) -> Nat {
    let mut a = Asm::new();
    let run = a.label();
    a.unpair(1, 2, 0).unpair(3, 4, 2);
    if exempt_self {
        a.jeq(1, 3, run);
    }
    a.set(5, template.id()).pair(5, 5, 1).ext(Prim::Sentence, 5, 5);
    a.pair(5, 5, 4).ext(Prim::Oracle, 5, 5);
    a.jz(5, run);
    a.halt(3);
    a.bind(run);
    a.pair(6, 3, 4).ext(Prim::Sim, 0, 6).halt(0);
    a.code()
}

/// `ψ_p(x) = p` if `T ⊢_x (∃q ≠ r)[ψ_q = ψ_r]`, else `φ_p(x)`.
pub fn psi_build(oracle: Arc<dyn Oracle>) -> DerivedSystem {
    let e = krt_plain(&task(Template::new(TemplateKind::ExistsDistinctEquiv, SystemKind::Psi), false));
    DerivedSystem::new(SystemTag::Psi(e.clone()), e, None, oracle)
}

/// `η_p(x) = p` if `p ≠ e` and `T ⊢_x (∃q ≠ r)[η_q = η_r]`, else `φ_p(x)`.
pub fn eta_build(oracle: Arc<dyn Oracle>) -> DerivedSystem {
    let e = krt_plain(&task(Template::new(TemplateKind::ExistsDistinctEquiv, SystemKind::Eta), true));
    DerivedSystem::new(SystemTag::Eta(e.clone()), e, None, oracle)
}

/// `θ_p(x) = p` if `T ⊢_x (∃u)[u is universal in θ]`, else `φ_p(x)`.
pub fn theta_build(oracle: Arc<dyn Oracle>) -> DerivedSystem {
    let e = krt_plain(&task(Template::new(TemplateKind::ExistsUniversal, SystemKind::Theta), false));
    DerivedSystem::new(SystemTag::Theta(e.clone()), e, None, oracle)
}

/// The sentence a ψ/η/θ build quotes.
pub fn quoted_sentence(sys: &DerivedSystem) -> Sentence {
    match &sys.tag {
        SystemTag::Theta(_) => Sentence::exists_universal(sys.tag.clone()),
        tag => Sentence::exists_distinct_equiv(tag.clone()),
    }
}

pub(super) fn branch(sys: &DerivedSystem, p: &Nat, x: &Nat) -> Branch {
    let fired = sys.oracle().proves_within(&quoted_sentence(sys), x);
    match (&sys.tag, fired) {
        (_, false) => Branch::NotFired,
        (SystemTag::Eta(e), true) if e == p => Branch::Exempt,
        _ => Branch::Diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{make_scripted, make_silent, OracleScript};
    use crate::programs::{double, succ};

    const B: u64 = 1_000_000;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn script(pattern: &str, x0: u64) -> Arc<dyn Oracle> {
        make_scripted(OracleScript::new().with(pattern.parse().unwrap(), x0))
    }

    #[test]
    fn silent_systems_are_phi() {
        for sys in [psi_build(make_silent()), eta_build(make_silent()), theta_build(make_silent())] {
            for x in 0..5 {
                assert_eq!(sys.eval(&succ(), &n(x), B).value(), Some(&n(x + 1)));
                assert_eq!(sys.branch(&succ(), &n(x)), Branch::NotFired);
            }
        }
    }

    #[test]
    fn psi_fires_from_threshold() {
        let sys = psi_build(script("ExistsDistinctEquiv[psi:*]()", 3));
        for p in [succ(), double(), n(5)] {
            for x in 3..10 {
                assert_eq!(sys.eval(&p, &n(x), B).value(), Some(&p));
            }
        }
        assert_eq!(sys.eval(&succ(), &n(2), B).value(), Some(&n(3)));
    }

    #[test]
    fn eta_exempts_itself() {
        let sys = eta_build(script("ExistsDistinctEquiv[eta:*]()", 3));
        assert_eq!(sys.eval(&double(), &n(4), B).value(), Some(&double()));
        assert_eq!(sys.branch(&sys.e, &n(4)), Branch::Exempt);
        // η_e(⟨p, x⟩) = φ_e(⟨p, x⟩).
        let arg = crate::numcode::pair(&double(), &n(4));
        assert_eq!(sys.eval(&sys.e, &arg, B).value(), sys.machine().run(&sys.e, &arg, B).value());
    }

    #[test]
    fn theta_fires_for_every_program() {
        let sys = theta_build(script("ExistsUniversal[theta:*]()", 3));
        assert_eq!(sys.eval(&sys.e, &n(3), B).value(), Some(&sys.e));
        assert_eq!(sys.eval(&succ(), &n(3), B).value(), Some(&succ()));
    }
}
