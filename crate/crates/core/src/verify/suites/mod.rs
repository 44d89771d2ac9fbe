pub mod basesys;
pub mod krt;
pub mod logic;
pub mod pad;
pub mod pairing;
pub mod zeta;

use crate::basesys::RunOutcome;

/// Same halting status and, when halted, the same value.
pub fn same_io(a: &RunOutcome, b: &RunOutcome) -> bool {
    a.halted() == b.halted() && a.value() == b.value()
}

pub fn show(o: &RunOutcome) -> String {
    match o {
        RunOutcome::Halted { value, steps } => format!("halted({}, {steps})", super::short(value)),
        RunOutcome::OutOfBudget { budget } => format!("out-of-budget({budget})"),
        RunOutcome::AbnormalDivergence => "abnormal".into(),
    }
}

/// Smallest integer `k` with `num ≤ k·den`.
pub fn ceil_ratio(num: u64, den: u64) -> u64 {
    num.div_ceil(den.max(1))
}
