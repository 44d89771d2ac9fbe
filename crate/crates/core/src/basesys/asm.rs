//! A tiny assembler with forward labels, used to write the combinator and
//! construction programs.

use super::isa::{encode_program, Instr, ProgramBody, Reg};
use super::prim::Prim;
use crate::numcode::Nat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Label(usize);

/// Builder for instruction lists. Jump targets are labels until
/// [`Asm::finish`] resolves them.
#[derive(Default)]
pub struct Asm {
    instrs: Vec<Instr>,
    /// Instruction index bound to each label.
    bound: Vec<Option<usize>>,
    /// `(instruction index, label)` pairs awaiting resolution.
    fixups: Vec<(usize, Label)>,
}

impl Asm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn label(&mut self) -> Label {
        self.bound.push(None);
        Label(self.bound.len() - 1)
    }

    pub fn bind(&mut self, l: Label) {
        assert!(self.bound[l.0].is_none(), "label bound twice");
        self.bound[l.0] = Some(self.instrs.len());
    }

    pub fn push(&mut self, i: Instr) -> &mut Self {
        self.instrs.push(i);
        self
    }

    pub fn halt(&mut self, r: Reg) -> &mut Self {
        self.push(Instr::Halt(r))
    }

    pub fn inc(&mut self, r: Reg) -> &mut Self {
        self.push(Instr::Inc(r))
    }

    pub fn copy(&mut self, d: Reg, s: Reg) -> &mut Self {
        self.push(Instr::Copy(d, s))
    }

    pub fn set(&mut self, d: Reg, k: impl Into<Nat>) -> &mut Self {
        self.push(Instr::Set(d, k.into()))
    }

    pub fn add(&mut self, d: Reg, a: Reg, b: Reg) -> &mut Self {
        self.push(Instr::Add(d, a, b))
    }

    pub fn sub(&mut self, d: Reg, a: Reg, b: Reg) -> &mut Self {
        self.push(Instr::Sub(d, a, b))
    }

    pub fn pair(&mut self, d: Reg, a: Reg, b: Reg) -> &mut Self {
        self.push(Instr::Pair(d, a, b))
    }

    pub fn unpair(&mut self, d1: Reg, d2: Reg, s: Reg) -> &mut Self {
        self.push(Instr::Unpair(d1, d2, s))
    }

    pub fn ext(&mut self, p: Prim, d: Reg, s: Reg) -> &mut Self {
        self.push(Instr::Ext(p, d, s))
    }

    /// `d ← φ_code(arg)` where `code` is a literal.
    pub fn sim_lit(&mut self, d: Reg, code: &Nat, arg: Reg, scratch: Reg) -> &mut Self {
        self.set(scratch, code.clone());
        self.pair(scratch, scratch, arg);
        self.ext(Prim::Sim, d, scratch)
    }

    fn jump(&mut self, l: Label, i: Instr) -> &mut Self {
        self.fixups.push((self.instrs.len(), l));
        self.push(i)
    }

    pub fn jz(&mut self, r: Reg, l: Label) -> &mut Self {
        self.jump(l, Instr::Jz(r, 0))
    }

    pub fn jeq(&mut self, a: Reg, b: Reg, l: Label) -> &mut Self {
        self.jump(l, Instr::Jeq(a, b, 0))
    }

    pub fn jmp(&mut self, l: Label) -> &mut Self {
        self.jump(l, Instr::Jmp(0))
    }

    pub fn finish(mut self) -> ProgramBody {
        for (at, l) in std::mem::take(&mut self.fixups) {
            let t = self.bound[l.0].expect("unbound label");
            match &mut self.instrs[at] {
                Instr::Jz(_, x) | Instr::Jeq(_, _, x) | Instr::Jmp(x) => *x = t,
                _ => unreachable!(),
            }
        }
        ProgramBody::new(self.instrs)
    }

    pub fn code(self) -> Nat {
        encode_program(&self.finish())
    }
}
