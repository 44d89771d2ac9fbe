//! Fixed point of a program transformer `d`: a `p₀` with
//! `φ_{p₀} = φ_{φ_d(p₀)}`.

use crate::basesys::{Machine, RunOutcome};
use crate::combinators::{comp_m, krt_plain};
use crate::numcode::Nat;
use crate::programs::{proj_first, proj_second};
use crate::universal::{emit_certificate, universal_code, Certificate};

#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub p0: Nat,
    /// Certificate for `φ_d(p₀)↓ = q₀`, or how the run of `d` ended.
    pub q0: Result<Certificate, RunOutcome>,
}

impl FixedPoint {
    pub fn q0_value(&self) -> Option<&Nat> {
        self.q0.as_ref().ok().map(|c| &c.y)
    }
}

/// `p₀ = krt_plain(comp(u, [comp(d, [first]), second]))`: on `x`, `p₀`
/// computes `φ_{φ_d(p₀)}(x)`. Then `d` is run on `p₀` within `budget`.
pub fn fixed_point_demo(m: &Machine, d: &Nat, budget: u64) -> FixedPoint {
    let apply_d_to_self = comp_m(d, &[proj_first()]).expect("non-empty");
    let task = comp_m(&universal_code(), &[apply_d_to_self, proj_second()]).expect("non-empty");
    let p0 = krt_plain(&task);
    let q0 = emit_certificate(m, d, &p0, budget);
    FixedPoint { p0, q0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::programs::{diverge, identity};
    use crate::universal::verify_certificate;

    #[test]
    fn identity_fixed_point() {
        let m = Machine::default();
        let fp = fixed_point_demo(&m, &identity(), 100_000);
        assert_eq!(fp.q0_value(), Some(&fp.p0));
        assert!(verify_certificate(&m, fp.q0.as_ref().unwrap()));
    }

    #[test]
    fn diverging_transformer() {
        let m = Machine::default();
        let fp = fixed_point_demo(&m, &diverge(), 10_000);
        assert!(matches!(fp.q0, Err(RunOutcome::OutOfBudget { .. })));
        // φ_{p₀} diverges everywhere, as φ_{φ_d(p₀)} is undefined.
        assert!(!m.run(&fp.p0, &Nat::from(3u8), 10_000).halted());
    }
}
