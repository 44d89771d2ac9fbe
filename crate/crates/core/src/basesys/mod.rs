//! The base programming system φ: a register machine with an `EXT` escape
//! to host primitives, its numbering of programs, and the step-counting
//! measure Φ.

mod asm;
mod isa;
mod machine;
mod prim;

pub use asm::{Asm, Label};
pub use isa::{classify, decode_program, encode_instrs, encode_program, CodeClass, Instr, ProgramBody, Reg, NUM_REGS};
pub use machine::{Execution, Machine, RunOutcome};
pub use prim::Prim;
