//! A numerically coded programming system with executable recursion-theorem
//! constructions.
//!
//! - [`numcode`]: pairing, tuples, set codes, primes.
//! - [`basesys`]: the register machine φ, its program numbering and the
//!   step-counting measure.
//! - [`universal`]: the universal program, simulation modes, certificates.
//! - [`combinators`]: S-m-n, composition, if-then-else, the recursion
//!   theorems, padding.
//! - [`logic`]: sentence templates and the budgeted provability oracle.
//! - [`constructions`]: the diagonal systems built on top of all of the above.
//! - [`verify`]: seed-deterministic property suites.

mod bits;

pub mod basesys;
pub mod combinators;
pub mod constructions;
pub mod logic;
pub mod numcode;
pub mod programs;
pub mod universal;
pub mod verify;

pub use basesys::{classify, decode_program, encode_program, CodeClass, Instr, Machine, ProgramBody, RunOutcome};
pub use logic::{Oracle, OracleScript, Sentence, SystemTag};
pub use numcode::{Nat, SetCode};
pub use universal::Certificate;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("set of {0} elements has no code; at most two are allowed")]
    SetTooLarge(usize),
    #[error("malformed sentence: {0}")]
    BadSentence(String),
    #[error("oracle script line {line}: {msg}")]
    Script { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
}
