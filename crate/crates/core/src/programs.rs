//! Small named programs used as building blocks, test subjects and CLI
//! shorthands.

use crate::basesys::{Asm, Instr, Prim};
use crate::numcode::Nat;

/// `x ↦ x`.
pub fn identity() -> Nat {
    let mut a = Asm::new();
    a.halt(0);
    a.code()
}

/// `x ↦ x + 1`.
pub fn succ() -> Nat {
    let mut a = Asm::new();
    a.inc(0).halt(0);
    a.code()
}

/// `x ↦ k`.
pub fn constant(k: impl Into<Nat>) -> Nat {
    let mut a = Asm::new();
    a.set(0, k).halt(0);
    a.code()
}

/// `x ↦ 0`.
pub fn zero() -> Nat {
    constant(0u32)
}

/// Loops forever on every input.
pub fn diverge() -> Nat {
    let mut a = Asm::new();
    let top = a.label();
    a.bind(top);
    a.jmp(top);
    a.code()
}

/// `⟨a, b⟩ ↦ a`.
pub fn proj_first() -> Nat {
    let mut a = Asm::new();
    a.unpair(0, 1, 0).halt(0);
    a.code()
}

/// `⟨a, b⟩ ↦ b`.
pub fn proj_second() -> Nat {
    let mut a = Asm::new();
    a.unpair(1, 0, 0).halt(0);
    a.code()
}

/// `x ↦ 2x`.
pub fn double() -> Nat {
    let mut a = Asm::new();
    a.add(0, 0, 0).halt(0);
    a.code()
}

/// `x ↦ x mod 2`, by a loop costing about `x` steps.
pub fn parity() -> Nat {
    let mut a = Asm::new();
    let (top, odd, done) = (a.label(), a.label(), a.label());
    a.set(1, 0u32).set(2, 1u32);
    a.bind(top);
    a.jz(0, done);
    a.push(Instr::Dec(0));
    a.jz(0, odd);
    a.push(Instr::Dec(0));
    a.jmp(top);
    a.bind(odd);
    a.halt(2);
    a.bind(done);
    a.halt(1);
    a.code()
}

/// Halts with `x` when `x` is even, diverges otherwise: a program with an
/// infinite, co-infinite domain.
pub fn even_or_diverge() -> Nat {
    let mut a = Asm::new();
    let (top, spin, ok) = (a.label(), a.label(), a.label());
    a.copy(1, 0);
    a.bind(top);
    a.jz(1, ok);
    a.push(Instr::Dec(1));
    a.jz(1, spin);
    a.push(Instr::Dec(1));
    a.jmp(top);
    a.bind(spin);
    a.jmp(spin);
    a.bind(ok);
    a.halt(0);
    a.code()
}

/// `p ↦ pad(p)` through the `PAD` primitive.
pub fn pad_program() -> Nat {
    let mut a = Asm::new();
    a.ext(Prim::Pad, 0, 0).halt(0);
    a.code()
}

/// Programs addressable by name on the command line.
pub fn by_name(name: &str) -> Option<Nat> {
    Some(match name {
        "identity" | "id" => identity(),
        "succ" => succ(),
        "zero" => zero(),
        "diverge" => diverge(),
        "first" => proj_first(),
        "second" => proj_second(),
        "double" => double(),
        "parity" => parity(),
        "even-or-diverge" => even_or_diverge(),
        "pad" => pad_program(),
        "universal" | "u" => crate::universal::universal_code(),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &[
    "identity",
    "succ",
    "zero",
    "diverge",
    "first",
    "second",
    "double",
    "parity",
    "even-or-diverge",
    "pad",
    "universal",
];
