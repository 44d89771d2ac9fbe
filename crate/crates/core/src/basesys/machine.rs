//! Small-step interpreter with exact step counting.
//!
//! Every dispatched instruction costs one step; `PAIR` and `UNPAIR` add the
//! bit lengths of their operands and `EXT` adds the primitive's declared
//! cost. `SIM` pushes a frame instead of recursing on the host
//! stack, and the simulated steps are counted one by one as they happen.
//! Falling off the end of a program halts with register 0.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use super::isa::{decode_program, Instr, ProgramBody, Reg, NUM_REGS};
use super::prim::Prim;
use crate::logic::{Oracle, Sentence, SilentOracle};
use crate::numcode::{bitlen, nth_prime, pair, set_encode, unpair, Nat};
use crate::{combinators, constructions::zeta};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RunOutcome {
    /// Halted with `value` after exactly `steps` steps.
    Halted { value: Nat, steps: u64 },
    OutOfBudget { budget: u64 },
    /// Top-level abnormal code: computes the everywhere-divergent function.
    AbnormalDivergence,
}

impl RunOutcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            RunOutcome::Halted { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn steps(&self) -> Option<u64> {
        match self {
            RunOutcome::Halted { steps, .. } => Some(*steps),
            _ => None,
        }
    }

    pub fn halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }
}

/// The base programming system φ together with the oracle its `ORACLE`
/// primitive consults. Program codes never depend on the oracle.
#[derive(Clone, Debug)]
pub struct Machine {
    oracle: Arc<dyn Oracle>,
}

impl Default for Machine {
    fn default() -> Self {
        Machine::new(Arc::new(SilentOracle))
    }
}

impl Machine {
    pub fn new(oracle: Arc<dyn Oracle>) -> Self {
        Machine { oracle }
    }

    pub fn oracle(&self) -> &Arc<dyn Oracle> {
        &self.oracle
    }

    /// Run `p` on `x` for at most `budget` steps.
    pub fn run(&self, p: &Nat, x: &Nat, budget: u64) -> RunOutcome {
        self.run_with(p, x, budget, false)
    }

    /// Like [`Machine::run`], but nested `SIM` calls on a repeated
    /// `(program, input)` pair replay the recorded result and step count.
    pub fn run_memo(&self, p: &Nat, x: &Nat, budget: u64) -> RunOutcome {
        self.run_with(p, x, budget, true)
    }

    fn run_with(&self, p: &Nat, x: &Nat, budget: u64, memo: bool) -> RunOutcome {
        match self.start(p, x, budget, memo) {
            Ok(mut exec) => loop {
                if let Some(done) = exec.step() {
                    return done;
                }
            },
            Err(outcome) => outcome,
        }
    }

    /// Φ_p(x), when the run halts within `budget`.
    pub fn blum_cost(&self, p: &Nat, x: &Nat, budget: u64) -> Option<u64> {
        self.run(p, x, budget).steps()
    }

    /// Initial state of a run, for callers that want to single-step.
    pub fn start(&self, p: &Nat, x: &Nat, budget: u64, memo: bool) -> Result<Execution<'_>, RunOutcome> {
        let body = decode_program(p).ok_or(RunOutcome::AbnormalDivergence)?;
        Ok(Execution {
            machine: self,
            frames: vec![Frame::new(Arc::new(body), x.clone(), 0, None, 0)],
            steps: 0,
            budget,
            memo: memo.then(HashMap::new),
        })
    }

    /// Host side of every primitive except `SIM`. Returns the output and the
    /// declared cost, or `None` when the cost would exceed `remaining`.
    fn eval_prim(&self, prim: Prim, arg: &Nat, remaining: u64) -> Option<(Nat, u64)> {
        let out = match prim {
            Prim::Sim => unreachable!("SIM is interpreted"),
            Prim::Smn => {
                let (p, a) = unpair(arg);
                let cost = bitlen(&p) + bitlen(&a);
                (combinators::smn(&p, &a), cost)
            }
            Prim::Oracle => {
                let (s, x) = unpair(arg);
                let cost = bitlen(&s) + bitlen(&x);
                let fired = Sentence::from_code(&s).is_some_and(|s| self.oracle.proves_within(&s, &x));
                (Nat::from(fired as u8), cost)
            }
            Prim::Sentence => {
                let (template, args) = unpair(arg);
                let code = Sentence::from_template(&template, &args).map(|s| s.code()).unwrap_or_default();
                let cost = bitlen(arg) + bitlen(&code);
                (code, cost)
            }
            Prim::Pad => {
                let out = combinators::pad(arg);
                let cost = bitlen(&out);
                (out, cost)
            }
            Prim::PrimePow => {
                let (n, x) = unpair(arg);
                let n = n.to_u64().filter(|&n| n < remaining)?;
                let x = x.to_u64()?;
                let est_bits = x.checked_mul(2 * (64 - n.leading_zeros() as u64) + 3)?;
                if est_bits > remaining {
                    return None;
                }
                let out = num_traits::pow::pow(nth_prime(&Nat::from(n)), x as usize);
                let cost = n + 1 + bitlen(&out);
                (out, cost)
            }
            Prim::Bitlen => (Nat::from(bitlen(arg)), bitlen(arg)),
            Prim::SetCode => {
                let (a, b) = unpair(arg);
                let code = set_encode(&[a, b].into()).expect("two elements").0;
                (code, bitlen(arg))
            }
            Prim::ZetaRange | Prim::ZetaWPrime | Prim::ZetaW => zeta::eval_prim(prim, arg),
        };
        (out.1 <= remaining).then_some(out)
    }
}

struct Frame {
    body: Arc<ProgramBody>,
    pc: usize,
    regs: Vec<Nat>,
    /// Parent register receiving this frame's output.
    dest: Reg,
    /// `(program, input)` for the memo table.
    key: Option<(Nat, Nat)>,
    started_at: u64,
}

impl Frame {
    fn new(body: Arc<ProgramBody>, input: Nat, dest: Reg, key: Option<(Nat, Nat)>, started_at: u64) -> Self {
        let mut regs = vec![Nat::zero(); NUM_REGS];
        regs[0] = input;
        Frame { body, pc: 0, regs, dest, key, started_at }
    }
}

/// A run in progress.
pub struct Execution<'m> {
    machine: &'m Machine,
    frames: Vec<Frame>,
    steps: u64,
    budget: u64,
    memo: Option<HashMap<(Nat, Nat), (Nat, u64)>>,
}

impl Execution<'_> {
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Nesting depth of `SIM` frames; 1 at top level.
    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    fn charge(&mut self, cost: u64) -> bool {
        match self.steps.checked_add(cost) {
            Some(s) if s <= self.budget => {
                self.steps = s;
                true
            }
            _ => false,
        }
    }

    fn out_of_budget(&self) -> Option<RunOutcome> {
        Some(RunOutcome::OutOfBudget { budget: self.budget })
    }

    /// Execute one instruction. Returns the final outcome once the run ends.
    pub fn step(&mut self) -> Option<RunOutcome> {
        let depth = self.frames.len();
        let frame = self.frames.last_mut().expect("live execution has a frame");
        let ins = frame.body.instrs.get(frame.pc).cloned().unwrap_or(Instr::Halt(0));

        if let Instr::Ext(prim, d, s) = ins {
            if prim == Prim::Sim {
                return self.sim(d, s);
            }
            let remaining = self.budget.saturating_sub(self.steps).saturating_sub(1);
            let frame = self.frames.last().unwrap();
            let Some((out, cost)) = self.machine.eval_prim(prim, &frame.regs[s as usize], remaining) else {
                return self.out_of_budget();
            };
            if !self.charge(1 + cost) {
                return self.out_of_budget();
            }
            let frame = self.frames.last_mut().unwrap();
            frame.regs[d as usize] = out;
            frame.pc += 1;
            return None;
        }

        let width = |i: Reg| bitlen(&frame.regs[i as usize]);
        let cost = match ins {
            Instr::Pair(_, a, b) => 1 + width(a) + width(b),
            Instr::Unpair(_, _, s) => 1 + width(s),
            _ => 1,
        };
        if !self.charge(cost) {
            return self.out_of_budget();
        }
        let frame = self.frames.last_mut().unwrap();
        let r = |i: Reg| i as usize;
        let mut next = frame.pc + 1;
        match ins {
            Instr::Halt(reg) => {
                let value = std::mem::take(&mut frame.regs[r(reg)]);
                return self.ret(value, depth);
            }
            Instr::Inc(d) => frame.regs[r(d)] += 1u8,
            Instr::Dec(d) => {
                if !frame.regs[r(d)].is_zero() {
                    frame.regs[r(d)] -= 1u8;
                }
            }
            Instr::Copy(d, s) => frame.regs[r(d)] = frame.regs[r(s)].clone(),
            Instr::Set(d, k) => frame.regs[r(d)] = k,
            Instr::Add(d, a, b) => frame.regs[r(d)] = &frame.regs[r(a)] + &frame.regs[r(b)],
            Instr::Sub(d, a, b) => {
                let (x, y) = (&frame.regs[r(a)], &frame.regs[r(b)]);
                frame.regs[r(d)] = if x > y { x - y } else { Nat::zero() };
            }
            Instr::Jz(c, t) => {
                if frame.regs[r(c)].is_zero() {
                    next = t;
                }
            }
            Instr::Jeq(a, b, t) => {
                if frame.regs[r(a)] == frame.regs[r(b)] {
                    next = t;
                }
            }
            Instr::Jmp(t) => next = t,
            Instr::Pair(d, a, b) => frame.regs[r(d)] = pair(&frame.regs[r(a)], &frame.regs[r(b)]),
            Instr::Unpair(d1, d2, s) => {
                let (x, y) = unpair(&frame.regs[r(s)]);
                frame.regs[r(d1)] = x;
                frame.regs[r(d2)] = y;
            }
            Instr::Ext(..) => unreachable!(),
        }
        frame.pc = next;
        None
    }

    fn sim(&mut self, d: Reg, s: Reg) -> Option<RunOutcome> {
        if !self.charge(1) {
            return self.out_of_budget();
        }
        let (p, x) = unpair(&self.frames.last().unwrap().regs[s as usize]);
        let key = (p, x);
        if let Some((value, cost)) = self.memo.as_ref().and_then(|m| m.get(&key)).cloned() {
            if !self.charge(cost) {
                return self.out_of_budget();
            }
            let frame = self.frames.last_mut().unwrap();
            frame.regs[d as usize] = value;
            frame.pc += 1;
            return None;
        }
        let Some(body) = decode_program(&key.0) else {
            // A nested abnormal program never returns.
            self.steps = self.budget;
            return self.out_of_budget();
        };
        let input = key.1.clone();
        let key = self.memo.is_some().then_some(key);
        self.frames.push(Frame::new(Arc::new(body), input, d, key, self.steps));
        None
    }

    fn ret(&mut self, value: Nat, depth: usize) -> Option<RunOutcome> {
        let done = self.frames.pop().unwrap();
        if depth == 1 {
            return Some(RunOutcome::Halted { value, steps: self.steps });
        }
        if let (Some(memo), Some(key)) = (self.memo.as_mut(), done.key) {
            memo.insert(key, (value.clone(), self.steps - done.started_at));
        }
        let parent = self.frames.last_mut().unwrap();
        parent.regs[done.dest as usize] = value;
        parent.pc += 1;
        None
    }
}
