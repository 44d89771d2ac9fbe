//! Seeded generators for programs, inputs and codes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::basesys::{encode_program, Instr, Prim, ProgramBody, Reg};
use crate::numcode::Nat;
use crate::programs;

/// Registers random programs touch.
const REGS: Reg = 5;

fn reg(rng: &mut impl Rng) -> Reg {
    rng.gen_range(0..REGS)
}

/// A straight-line or arithmetic instruction; no control flow.
fn plain_instr(rng: &mut impl Rng) -> Instr {
    match rng.gen_range(0..8) {
        0 => Instr::Inc(reg(rng)),
        1 => Instr::Dec(reg(rng)),
        2 => Instr::Copy(reg(rng), reg(rng)),
        3 => Instr::Set(reg(rng), Nat::from(rng.gen_range(0u32..64))),
        4 => Instr::Add(reg(rng), reg(rng), reg(rng)),
        5 => Instr::Sub(reg(rng), reg(rng), reg(rng)),
        6 => Instr::Pair(reg(rng), reg(rng), reg(rng)),
        _ => Instr::Unpair(reg(rng), reg(rng), reg(rng)),
    }
}

fn body(rng: &mut impl Rng, backward: bool) -> ProgramBody {
    let len = rng.gen_range(1..=8);
    let mut instrs = Vec::with_capacity(len + 1);
    for i in 0..len {
        // Targets lie in (i, len] unless loops are allowed; `len` is the final halt.
        let target = |rng: &mut _| {
            if backward && Rng::gen_bool(rng, 0.3) {
                Rng::gen_range(rng, 0..=i)
            } else {
                Rng::gen_range(rng, i + 1..=len)
            }
        };
        let ins = match rng.gen_range(0..10) {
            0 => Instr::Jz(reg(rng), target(rng)),
            1 => Instr::Jeq(reg(rng), reg(rng), target(rng)),
            2 if backward => Instr::Jmp(target(rng)),
            _ => plain_instr(rng),
        };
        instrs.push(ins);
    }
    instrs.push(Instr::Halt(reg(rng)));
    let mut b = ProgramBody::new(instrs);
    if rng.gen_bool(0.2) {
        b.padcount = Nat::from(rng.gen_range(1u32..4));
    }
    b
}

/// A program that halts on every input: all jumps go forward.
pub fn halting_program(rng: &mut impl Rng) -> Nat {
    encode_program(&body(rng, false))
}

/// A program that may loop, and may simulate stock programs.
pub fn any_program(rng: &mut impl Rng) -> Nat {
    let mut b = body(rng, true);
    if rng.gen_bool(0.3) {
        // Run a stock program on register 0 before the body proper.
        let stock = [programs::succ(), programs::double(), programs::parity(), programs::identity()];
        let code = stock.choose(rng).expect("non-empty").clone();
        let shift = |i: &mut Instr| match i {
            Instr::Jz(_, t) | Instr::Jeq(_, _, t) | Instr::Jmp(t) => *t += 3,
            _ => {}
        };
        b.instrs.iter_mut().for_each(shift);
        let prefix = [Instr::Set(6, code), Instr::Pair(6, 6, 0), Instr::Ext(Prim::Sim, 0, 6)];
        b.instrs.splice(0..0, prefix);
    }
    encode_program(&b)
}

/// A halting program, sometimes a stock one.
pub fn halting_subject(rng: &mut impl Rng) -> Nat {
    match rng.gen_range(0..4) {
        0 => [programs::succ(), programs::double(), programs::identity(), programs::parity(), programs::zero()]
            .choose(rng)
            .expect("non-empty")
            .clone(),
        _ => halting_program(rng),
    }
}

pub fn small_input(rng: &mut impl Rng) -> Nat {
    Nat::from(rng.gen_range(0u32..1 << 12))
}

/// A code of either class: random numbers are almost always abnormal.
pub fn any_code(rng: &mut impl Rng) -> Nat {
    if rng.gen_bool(0.5) {
        any_program(rng)
    } else {
        let bits = rng.gen_range(1..=64);
        Nat::from(rng.gen::<u64>() >> (64 - bits))
    }
}

/// A random natural with up to `max_bits` bits.
pub fn nat(rng: &mut impl Rng, max_bits: u64) -> Nat {
    let bits = rng.gen_range(0..=max_bits);
    rand::distributions::Distribution::sample(&num_bigint::RandomBits::new(bits), rng)
}
