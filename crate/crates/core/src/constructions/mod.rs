//! Executable builds of the diagonal constructions.
//!
//! Every derived system `sys` is given by a defining φ-code `e` with
//! `sys_p(x) = φ_e(⟨p, x⟩)`. Codes never depend on the oracle; the oracle
//! only decides which clause a run takes.

mod diag;
mod fixed_point;
mod theorem1;
pub mod zeta;

use std::fmt;
use std::sync::Arc;

pub use diag::{eta_build, psi_build, theta_build};
pub use fixed_point::{fixed_point_demo, FixedPoint};
pub use theorem1::{theorem1_candidates, Theorem1};
pub use zeta::{zeta_build, zeta_codes, ZetaCodes};

use crate::basesys::{Machine, RunOutcome};
use crate::logic::{Oracle, SystemTag};
use crate::numcode::{pair, Nat};

/// Which defining clause a derived system takes on an input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// The oracle fired and the diagonal value was produced.
    Diagonal,
    /// The oracle did not fire; the program ran as in φ.
    NotFired,
    /// The oracle fired but the program is exempt from diagonalization
    /// (η: `p = e`; ζ: `p = w` or `p ∈ ρ(φ_w)`).
    Exempt,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Diagonal => "diagonal",
            Branch::NotFired => "otherwise",
            Branch::Exempt => "exempt",
        })
    }
}

/// A programming system defined from φ by a self-referential code.
#[derive(Clone, Debug)]
pub struct DerivedSystem {
    pub tag: SystemTag,
    pub e: Nat,
    /// Auxiliary codes of a ζ build.
    pub zeta: Option<ZetaCodes>,
    machine: Machine,
}

impl DerivedSystem {
    fn new(tag: SystemTag, e: Nat, zeta: Option<ZetaCodes>, oracle: Arc<dyn Oracle>) -> Self {
        DerivedSystem { tag, e, zeta, machine: Machine::new(oracle) }
    }

    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn oracle(&self) -> &dyn Oracle {
        self.machine.oracle().as_ref()
    }

    /// `sys_p(x) = φ_e(⟨p, x⟩)`.
    pub fn eval(&self, p: &Nat, x: &Nat, budget: u64) -> RunOutcome {
        self.machine.run(&self.e, &pair(p, x), budget)
    }

    /// The clause `sys_p(x)` takes, decided on the host from the same
    /// oracle query the program makes.
    pub fn branch(&self, p: &Nat, x: &Nat) -> Branch {
        match &self.tag {
            SystemTag::Zeta(_) => self.zeta.as_ref().expect("zeta build").branch(self.oracle(), p, x),
            _ => diag::branch(self, p, x),
        }
    }
}
