//! Universal simulation inside φ and halting certificates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basesys::{Asm, Machine, Prim, RunOutcome};
use crate::numcode::{pair, parse_nat, Nat};
use crate::Error;

/// The universal program: `φ_u(⟨p, x⟩) = φ_p(x)`.
pub fn universal_code() -> Nat {
    let mut a = Asm::new();
    a.ext(Prim::Sim, 0, 0).halt(0);
    a.code()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimMode {
    /// Run `p` directly, replaying repeated nested simulations from a memo.
    Accelerated,
    /// Run the universal program on `⟨p, x⟩` step by step.
    Pure,
}

impl FromStr for SimMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "accelerated" => Ok(SimMode::Accelerated),
            "pure" => Ok(SimMode::Pure),
            _ => Err(Error::Usage(format!("unknown mode {s:?}"))),
        }
    }
}

/// Budgeted simulation of `p` on `x`. Both modes agree on halting status
/// and value; step counts differ by the universal program's overhead.
pub fn simulate(m: &Machine, p: &Nat, x: &Nat, budget: u64, mode: SimMode) -> RunOutcome {
    match mode {
        SimMode::Accelerated => m.run_memo(p, x, budget),
        SimMode::Pure => m.run(&universal_code(), &pair(p, x), budget),
    }
}

/// Witness that `φ_p(x)↓ = y` within `t` steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "decimal")]
    pub p: Nat,
    #[serde(with = "decimal")]
    pub x: Nat,
    #[serde(with = "decimal")]
    pub y: Nat,
    #[serde(with = "decimal")]
    pub t: Nat,
}

mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::numcode::Nat;

    pub fn serialize<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
        let s = String::deserialize(d)?;
        Nat::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom(format!("not a decimal numeral: {s:?}")))
    }
}

impl Certificate {
    /// One JSON record, no trailing newline.
    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_record(line: &str) -> Result<Self, Error> {
        serde_json::from_str(line).map_err(|e| Error::Usage(format!("bad certificate record: {e}")))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi_{}({}) = {} within {} steps", self.p, self.x, self.y, self.t)
    }
}

/// Run `p` on `x`; on halting, certify the value with the exact step count.
pub fn emit_certificate(m: &Machine, p: &Nat, x: &Nat, budget: u64) -> Result<Certificate, RunOutcome> {
    match m.run(p, x, budget) {
        RunOutcome::Halted { value, steps } => {
            Ok(Certificate { p: p.clone(), x: x.clone(), y: value, t: Nat::from(steps) })
        }
        other => Err(other),
    }
}

/// Recompute the run with budget `t`; the value and the exact step count
/// must both match.
pub fn verify_certificate(m: &Machine, c: &Certificate) -> bool {
    let Ok(t) = u64::try_from(&c.t) else {
        return false;
    };
    matches!(m.run(&c.p, &c.x, t), RunOutcome::Halted { value, steps } if value == c.y && steps == t)
}

/// Parse a numeral or a named stock program.
pub fn resolve_code(s: &str) -> Option<Nat> {
    parse_nat(s).or_else(|| crate::programs::by_name(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::programs::{diverge, identity, succ};

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn universal_runs_programs() {
        let m = Machine::default();
        let u = universal_code();
        assert_eq!(m.run(&u, &pair(&identity(), &n(7)), 1000).value(), Some(&n(7)));
        for b in [10, 1000, 100_000] {
            assert!(matches!(m.run(&u, &pair(&diverge(), &n(0)), b), RunOutcome::OutOfBudget { .. }));
        }
        let inner = pair(&succ(), &n(4));
        assert_eq!(m.run(&u, &pair(&u, &inner), 1000).value(), m.run(&u, &inner, 1000).value());
    }

    #[test]
    fn modes() {
        let m = Machine::default();
        for mode in [SimMode::Accelerated, SimMode::Pure] {
            assert_eq!(simulate(&m, &identity(), &n(5), 10_000, mode).value(), Some(&n(5)));
            assert!(matches!(simulate(&m, &identity(), &n(5), 0, mode), RunOutcome::OutOfBudget { .. }));
        }
    }

    #[test]
    fn certificates() {
        let m = Machine::default();
        let c = emit_certificate(&m, &identity(), &n(9), 10_000).unwrap();
        assert_eq!(c.y, n(9));
        assert!(verify_certificate(&m, &c));
        let back = Certificate::from_record(&c.to_record()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_record().contains("\"y\":\"9\""));

        let tampered = [
            Certificate { y: n(10), ..c.clone() },
            Certificate { x: n(8), ..c.clone() },
            Certificate { p: succ(), ..c.clone() },
            Certificate { t: n(0), ..c.clone() },
            Certificate { t: &c.t + 1u8, ..c.clone() },
        ];
        for bad in tampered {
            assert!(!verify_certificate(&m, &bad), "{bad}");
        }
        assert!(emit_certificate(&m, &diverge(), &n(0), 1000).is_err());
    }

    #[test]
    fn certificate_step_count_is_minimal() {
        let m = Machine::default();
        let c = emit_certificate(&m, &succ(), &n(41), 10_000).unwrap();
        let first_ok = (0..100u64).find(|&t| m.run(&succ(), &n(41), t).halted()).unwrap();
        assert_eq!(Nat::from(first_ok), c.t);
    }
}
