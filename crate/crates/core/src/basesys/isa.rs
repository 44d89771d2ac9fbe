//! Instruction set and the numbering of programs.
//!
//! A program body is a non-empty instruction list plus a padding counter.
//! The list is written as a bitstring `1 (1 instr)* 0 1`: a leading sentinel,
//! a continuation bit before every instruction, an end marker and a final
//! `1`, so the list number `L` is always odd. Every numeric field uses a
//! self-delimiting literal (Elias-gamma length prefix, then the digits).
//! The program code is `8·⟨L, padcount⟩`; all other numbers are abnormal.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use super::prim::Prim;
use crate::bits::{BitReader, BitWriter};
use crate::numcode::{pair, unpair, Nat};

/// Number of registers. Register 0 holds the input.
pub const NUM_REGS: usize = 32;

pub type Reg = u8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instr {
    /// Stop and output the register.
    Halt(Reg),
    Inc(Reg),
    /// Saturating decrement.
    Dec(Reg),
    /// `dst ← src`.
    Copy(Reg, Reg),
    /// `dst ← literal`.
    Set(Reg, Nat),
    /// `dst ← a + b`.
    Add(Reg, Reg, Reg),
    /// `dst ← a ∸ b`.
    Sub(Reg, Reg, Reg),
    /// Jump if the register is zero.
    Jz(Reg, usize),
    /// Jump if the two registers are equal.
    Jeq(Reg, Reg, usize),
    Jmp(usize),
    /// `dst ← ⟨a, b⟩`.
    Pair(Reg, Reg, Reg),
    /// `(d1, d2) ← unpair(src)`; `d2` wins if they coincide.
    Unpair(Reg, Reg, Reg),
    /// `dst ← prim(src)`.
    Ext(Prim, Reg, Reg),
}

impl Instr {
    fn opcode(&self) -> u8 {
        match self {
            Instr::Halt(_) => 0,
            Instr::Inc(_) => 1,
            Instr::Dec(_) => 2,
            Instr::Copy(..) => 3,
            Instr::Set(..) => 4,
            Instr::Add(..) => 5,
            Instr::Sub(..) => 6,
            Instr::Jz(..) => 7,
            Instr::Jeq(..) => 8,
            Instr::Jmp(_) => 9,
            Instr::Pair(..) => 10,
            Instr::Unpair(..) => 11,
            Instr::Ext(..) => 12,
        }
    }

    fn regs(&self) -> Vec<Reg> {
        match *self {
            Instr::Halt(r) | Instr::Inc(r) | Instr::Dec(r) | Instr::Set(r, _) | Instr::Jz(r, _) => vec![r],
            Instr::Copy(a, b) | Instr::Jeq(a, b, _) | Instr::Ext(_, a, b) => vec![a, b],
            Instr::Add(a, b, c) | Instr::Sub(a, b, c) | Instr::Pair(a, b, c) | Instr::Unpair(a, b, c) => {
                vec![a, b, c]
            }
            Instr::Jmp(_) => vec![],
        }
    }

    fn target(&self) -> Option<usize> {
        match *self {
            Instr::Jz(_, t) | Instr::Jeq(_, _, t) | Instr::Jmp(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Halt(r) => write!(f, "halt r{r}"),
            Instr::Inc(r) => write!(f, "inc r{r}"),
            Instr::Dec(r) => write!(f, "dec r{r}"),
            Instr::Copy(d, s) => write!(f, "copy r{d}, r{s}"),
            Instr::Set(d, k) => {
                if k.bits() > 64 {
                    write!(f, "set r{d}, <{}-bit literal>", k.bits())
                } else {
                    write!(f, "set r{d}, {k}")
                }
            }
            Instr::Add(d, a, b) => write!(f, "add r{d}, r{a}, r{b}"),
            Instr::Sub(d, a, b) => write!(f, "sub r{d}, r{a}, r{b}"),
            Instr::Jz(r, t) => write!(f, "jz r{r}, @{t}"),
            Instr::Jeq(a, b, t) => write!(f, "jeq r{a}, r{b}, @{t}"),
            Instr::Jmp(t) => write!(f, "jmp @{t}"),
            Instr::Pair(d, a, b) => write!(f, "pair r{d}, r{a}, r{b}"),
            Instr::Unpair(d1, d2, s) => write!(f, "unpair r{d1}, r{d2}, r{s}"),
            Instr::Ext(p, d, s) => write!(f, "ext {} r{d}, r{s}", p.name()),
        }
    }
}

/// Decoded program: instructions plus a semantics-free padding counter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProgramBody {
    pub instrs: Vec<Instr>,
    pub padcount: Nat,
}

impl ProgramBody {
    pub fn new(instrs: Vec<Instr>) -> Self {
        ProgramBody { instrs, padcount: Nat::zero() }
    }

    /// Non-empty, registers in range, jump targets inside the program.
    pub fn is_valid(&self) -> bool {
        !self.instrs.is_empty()
            && self.instrs.iter().all(|i| {
                i.regs().iter().all(|&r| (r as usize) < NUM_REGS)
                    && i.target().is_none_or(|t| t < self.instrs.len())
            })
    }

    pub fn listing(&self) -> String {
        let mut s = String::new();
        for (i, ins) in self.instrs.iter().enumerate() {
            s.push_str(&format!("{i:4}  {ins}\n"));
        }
        s.push_str(&format!("      ; padcount {}\n", self.padcount));
        s
    }
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeClass {
    Normal(ProgramBody),
    Abnormal,
}

impl CodeClass {
    pub fn is_normal(&self) -> bool {
        matches!(self, CodeClass::Normal(_))
    }
}

fn write_instr(w: &mut BitWriter, ins: &Instr) {
    w.push_fixed(ins.opcode() as u64, 4);
    let reg = |w: &mut BitWriter, r: Reg| w.push_fixed(r as u64, 5);
    match ins {
        Instr::Halt(r) | Instr::Inc(r) | Instr::Dec(r) => reg(w, *r),
        Instr::Copy(a, b) => {
            reg(w, *a);
            reg(w, *b);
        }
        Instr::Set(d, k) => {
            reg(w, *d);
            w.push_literal(k);
        }
        Instr::Add(a, b, c) | Instr::Sub(a, b, c) | Instr::Pair(a, b, c) | Instr::Unpair(a, b, c) => {
            reg(w, *a);
            reg(w, *b);
            reg(w, *c);
        }
        Instr::Jz(r, t) => {
            reg(w, *r);
            w.push_small(*t as u64);
        }
        Instr::Jeq(a, b, t) => {
            reg(w, *a);
            reg(w, *b);
            w.push_small(*t as u64);
        }
        Instr::Jmp(t) => w.push_small(*t as u64),
        Instr::Ext(p, d, s) => {
            w.push_small(p.id());
            reg(w, *d);
            reg(w, *s);
        }
    }
}

fn read_instr(r: &mut BitReader<'_>) -> Option<Instr> {
    let op = r.fixed(4)?;
    let reg = |r: &mut BitReader<'_>| r.fixed(5).map(|v| v as Reg);
    let target = |r: &mut BitReader<'_>| r.small().and_then(|t| usize::try_from(t).ok());
    Some(match op {
        0 => Instr::Halt(reg(r)?),
        1 => Instr::Inc(reg(r)?),
        2 => Instr::Dec(reg(r)?),
        3 => Instr::Copy(reg(r)?, reg(r)?),
        4 => Instr::Set(reg(r)?, r.literal()?),
        5 => Instr::Add(reg(r)?, reg(r)?, reg(r)?),
        6 => Instr::Sub(reg(r)?, reg(r)?, reg(r)?),
        7 => Instr::Jz(reg(r)?, target(r)?),
        8 => Instr::Jeq(reg(r)?, reg(r)?, target(r)?),
        9 => Instr::Jmp(target(r)?),
        10 => Instr::Pair(reg(r)?, reg(r)?, reg(r)?),
        11 => Instr::Unpair(reg(r)?, reg(r)?, reg(r)?),
        12 => {
            let p = Prim::from_id(r.small()?)?;
            Instr::Ext(p, reg(r)?, reg(r)?)
        }
        _ => return None,
    })
}

/// The odd list number `L` of an instruction sequence.
pub fn encode_instrs(instrs: &[Instr]) -> Nat {
    let mut w = BitWriter::new();
    w.push(true);
    for ins in instrs {
        w.push(true);
        write_instr(&mut w, ins);
    }
    w.push(false);
    w.push(true);
    w.into_nat()
}

fn decode_instrs(l: &Nat) -> Option<Vec<Instr>> {
    let mut r = BitReader::new(l);
    if !r.bit()? {
        return None;
    }
    let mut instrs = Vec::new();
    while r.bit()? {
        instrs.push(read_instr(&mut r)?);
    }
    if r.bit()? && r.remaining() == 0 {
        Some(instrs)
    } else {
        None
    }
}

/// `8·⟨L, padcount⟩`. Panics on an invalid body, which no builder produces.
pub fn encode_program(body: &ProgramBody) -> Nat {
    assert!(body.is_valid(), "encoding an invalid program body");
    pair(&encode_instrs(&body.instrs), &body.padcount) << 3u32
}

/// Decode a program code, or `None` when the code is abnormal.
pub fn decode_program(p: &Nat) -> Option<ProgramBody> {
    if p.is_zero() || !(p % 8u32).is_zero() {
        return None;
    }
    let (l, padcount) = unpair(&(p >> 3u32));
    if l.is_even() {
        return None;
    }
    let instrs = decode_instrs(&l)?;
    let body = ProgramBody { instrs, padcount };
    body.is_valid().then_some(body)
}

pub fn classify(p: &Nat) -> CodeClass {
    match decode_program(p) {
        Some(b) => CodeClass::Normal(b),
        None => CodeClass::Abnormal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn halt_only_round_trip() {
        let body = ProgramBody::new(vec![Instr::Halt(0)]);
        let code = encode_program(&body);
        assert!((&code % 8u32).is_zero());
        assert_eq!(classify(&code), CodeClass::Normal(body));
    }

    #[test]
    fn tiny_codes_are_abnormal() {
        for v in 0..64u64 {
            assert_eq!(classify(&n(v)), CodeClass::Abnormal, "{v}");
        }
    }

    #[test]
    fn every_instruction_round_trips() {
        let instrs = vec![
            Instr::Inc(1),
            Instr::Dec(2),
            Instr::Copy(3, 4),
            Instr::Set(5, n(0)),
            Instr::Set(6, Nat::from(u128::MAX)),
            Instr::Add(7, 8, 9),
            Instr::Sub(10, 11, 12),
            Instr::Jz(13, 0),
            Instr::Jeq(14, 15, 12),
            Instr::Jmp(1),
            Instr::Pair(16, 17, 18),
            Instr::Unpair(19, 20, 21),
            Instr::Ext(Prim::Sim, 22, 31),
            Instr::Halt(0),
        ];
        let body = ProgramBody { instrs, padcount: n(77) };
        assert_eq!(decode_program(&encode_program(&body)), Some(body));
    }

    #[test]
    fn padcount_changes_code_only() {
        let mut body = ProgramBody::new(vec![Instr::Inc(0), Instr::Halt(0)]);
        let a = encode_program(&body);
        body.padcount = n(1);
        let b = encode_program(&body);
        assert!(b > a);
        assert_eq!(decode_program(&b).unwrap().instrs, decode_program(&a).unwrap().instrs);
    }

    #[test]
    fn out_of_range_jump_is_abnormal() {
        let l = encode_instrs(&[Instr::Jmp(5)]);
        let code = pair(&l, &n(0)) << 3u32;
        assert_eq!(classify(&code), CodeClass::Abnormal);
    }

    #[test]
    fn set_literal_orders_codes() {
        let code = |k: u64| encode_program(&ProgramBody::new(vec![Instr::Set(1, n(k)), Instr::Halt(1)]));
        for k in 0..200 {
            assert!(code(k) < code(k + 1));
        }
    }
}
