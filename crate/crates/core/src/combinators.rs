//! Program-building control structures: S-m-n, composition, if-then-else,
//! the recursion theorems, and padding.
//!
//! All combinators are code-to-code transformations: none of them runs the
//! programs it is given.
//!
//! Calling conventions for tasks:
//! - [`krt`] task: input `⟨self, p, x⟩`;
//! - [`krt_plain`] task: input `⟨self, x⟩`;
//! - [`mixed_rt`] task `ξᵢ`: input `⟨e₁, …, eₙ, c, y⟩`; delayed task `ξ`:
//!   input `⟨e₁, …, eₙ, c, x, y⟩`.

use num_integer::Integer;
use num_traits::Zero;

use crate::basesys::{decode_program, encode_program, Asm, Instr, Prim};
use crate::numcode::Nat;
use crate::Error;

/// Code `q` with `φ_q(x) = φ_p(⟨a, x⟩)`. Strictly increasing in `a`.
pub fn smn(p: &Nat, a: &Nat) -> Nat {
    let mut asm = Asm::new();
    asm.set(1, a.clone())
        .pair(0, 1, 0)
        .set(1, p.clone())
        .pair(0, 1, 0)
        .ext(Prim::Sim, 0, 0)
        .halt(0);
    asm.code()
}

/// Recover `(p, a)` from a code produced by [`smn`].
pub fn smn_decode(q: &Nat) -> Option<(Nat, Nat)> {
    let body = decode_program(q)?;
    if !body.padcount.is_zero() {
        return None;
    }
    match body.instrs.as_slice() {
        [Instr::Set(1, a), Instr::Pair(0, 1, 0), Instr::Set(1, p), Instr::Pair(0, 1, 0), Instr::Ext(Prim::Sim, 0, 0), Instr::Halt(0)] => {
            Some((p.clone(), a.clone()))
        }
        _ => None,
    }
}

/// `φ_{comp_m(p₀, p₁…pₘ)}(x) = φ_{p₀}(⟨φ_{p₁}(x), …, φ_{pₘ}(x)⟩)`; for
/// `m = 1` the argument is the single value.
pub fn comp_m(p0: &Nat, ps: &[Nat]) -> Result<Nat, Error> {
    let (last, rest) = ps.split_last().ok_or(Error::Arity { expected: 1, got: 0 })?;
    let mut a = Asm::new();
    a.copy(1, 0);
    a.sim_lit(2, last, 1, 3);
    for p in rest.iter().rev() {
        a.sim_lit(4, p, 1, 3);
        a.pair(2, 4, 2);
    }
    a.sim_lit(0, p0, 2, 3).halt(0);
    Ok(a.code())
}

/// `φ_{p₁}(x)` if `φ_{p₀}(x) ≠ 0`, `φ_{p₂}(x)` if it is `0`, divergent if
/// the guard diverges.
pub fn if_then_else(p0: &Nat, p1: &Nat, p2: &Nat) -> Nat {
    let mut a = Asm::new();
    let other = a.label();
    a.copy(1, 0);
    a.sim_lit(3, p0, 1, 2);
    a.jz(3, other);
    a.sim_lit(0, p1, 1, 2).halt(0);
    a.bind(other);
    a.sim_lit(0, p2, 1, 2).halt(0);
    a.code()
}

/// The self-copying stage shared by [`krt`] and [`krt_plain`]: on input
/// `⟨y, x⟩` it rebuilds `self = smn(y, y)` and runs `r` on
/// `⟨self, p, x⟩`, or `⟨self, x⟩` when there is no parameter.
fn self_copier(param: Option<&Nat>, r: &Nat) -> Nat {
    let mut a = Asm::new();
    a.unpair(1, 2, 0);
    a.pair(3, 1, 1).ext(Prim::Smn, 3, 3);
    match param {
        Some(p) => {
            a.set(4, p.clone()).pair(5, 4, 2).pair(5, 3, 5);
        }
        None => {
            a.pair(5, 3, 2);
        }
    }
    a.sim_lit(0, r, 5, 6).halt(0);
    a.code()
}

/// `φ_{krt(p, r)}(x) = φ_r(⟨krt(p, r), p, x⟩)`.
pub fn krt(p: &Nat, r: &Nat) -> Nat {
    let t = self_copier(Some(p), r);
    smn(&t, &t)
}

/// `φ_{krt_plain(r)}(x) = φ_r(⟨krt_plain(r), x⟩)`.
pub fn krt_plain(r: &Nat) -> Nat {
    let t = self_copier(None, r);
    smn(&t, &t)
}

/// Output of [`mixed_rt`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRt {
    /// The self-referential programs `e₁ … eₙ`.
    pub e: Vec<Nat>,
    /// Total program producing delayed codes.
    pub c: Nat,
    /// The dispatcher shared by all of them.
    pub hub: Nat,
}

impl MixedRt {
    /// `φ_c(x)`, computed without running anything.
    pub fn delayed(&self, x: &Nat) -> Nat {
        smn(&self.hub, &(x + (self.e.len() + 1)))
    }

    /// The `x` with `delayed(x) = q`, if any.
    pub fn delayed_preimage(&self, q: &Nat) -> Option<Nat> {
        let (hub, sel) = smn_decode(q)?;
        let first = Nat::from(self.e.len() + 1);
        (hub == self.hub && sel >= first).then(|| sel - first)
    }
}

/// Most tasks [`mixed_rt`] accepts.
pub const MAX_MIXED_TASKS: usize = 16;

/// Mixed recursion theorem: programs `e₁ … eₙ` and a total `c` with
/// `φ_{eᵢ}(y) = ξᵢ(e₁, …, eₙ, c, y)` and
/// `φ_{φ_c(x)}(y) = ξ(e₁, …, eₙ, c, x, y)`.
///
/// All of them are S-m-n instances `smn(hub, sel)` of one self-referential
/// dispatcher: `sel = i` selects `ξᵢ₊₁`, `sel = n` is `c`, and
/// `sel = n + 1 + x` is the delayed program for `x`.
pub fn mixed_rt(tasks: &[Nat], delayed: &Nat) -> Result<MixedRt, Error> {
    let n = tasks.len();
    if n == 0 || n > MAX_MIXED_TASKS {
        return Err(Error::Arity { expected: n.clamp(1, MAX_MIXED_TASKS), got: n });
    }
    // r1 = self, r3 = sel, r4 = y; r10.. hold e₁…eₙ and then c.
    let code_reg = |i: usize| (10 + i) as u8;
    let mut a = Asm::new();
    a.unpair(1, 2, 0).unpair(3, 4, 2);
    for i in 0..=n {
        a.set(5, i as u64).pair(5, 1, 5).ext(Prim::Smn, code_reg(i), 5);
    }
    let branches: Vec<_> = (0..n).map(|_| a.label()).collect();
    let make_delayed = a.label();
    for (i, &l) in branches.iter().enumerate() {
        a.set(5, i as u64).jeq(3, 5, l);
    }
    a.set(5, n as u64).jeq(3, 5, make_delayed);

    // sel > n: run ξ on ⟨e⃗, c, sel − (n+1), y⟩.
    a.set(5, (n + 1) as u64).sub(6, 3, 5);
    a.pair(7, 6, 4);
    for i in (0..=n).rev() {
        a.pair(7, code_reg(i), 7);
    }
    a.sim_lit(0, delayed, 7, 8).halt(0);

    for (task, &l) in tasks.iter().zip(&branches) {
        a.bind(l);
        a.copy(7, 4);
        for i in (0..=n).rev() {
            a.pair(7, code_reg(i), 7);
        }
        a.sim_lit(0, task, 7, 8).halt(0);
    }

    // sel = n: this is c; output smn(self, n + 1 + y).
    a.bind(make_delayed);
    a.set(5, (n + 1) as u64).add(5, 5, 4).pair(5, 1, 5).ext(Prim::Smn, 0, 5).halt(0);

    let hub = krt_plain(&a.code());
    let e = (0..n).map(|i| smn(&hub, &Nat::from(i))).collect();
    let c = smn(&hub, &Nat::from(n));
    Ok(MixedRt { e, c, hub })
}

/// Strictly larger, even, equivalent code: the next even abnormal code for
/// abnormal input, the padding counter bumped for normal input.
pub fn pad(p: &Nat) -> Nat {
    if let Some(mut body) = decode_program(p) {
        body.padcount += 1u8;
        return encode_program(&body);
    }
    let mut q = p + 1u8;
    loop {
        if q.is_even() && decode_program(&q).is_none() {
            return q;
        }
        q += 1u8;
    }
}

/// Which case of the padding-once definition produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PadOnceBranch {
    /// `f(p) ≠ p`: the result is `f(p)`.
    SelfTestPassed,
    /// `f(p) = p`: the result is `p + 1`.
    FixedPoint,
}

/// Task for the padding-once `f`: on `⟨self, p, x⟩` run `p` on `x` unless
/// `self = p`, in which case run `p + 1`.
fn pad_once_task() -> Nat {
    let mut a = Asm::new();
    let same = a.label();
    a.unpair(1, 2, 0).unpair(3, 4, 2);
    a.jeq(1, 3, same);
    a.pair(5, 3, 4).ext(Prim::Sim, 0, 5).halt(0);
    a.bind(same);
    a.inc(3).pair(5, 3, 4).ext(Prim::Sim, 0, 5).halt(0);
    a.code()
}

/// `f(p) = krt(p, task)`: behaves like `p` when it differs from `p`, like
/// `p + 1` otherwise.
pub fn pad_once_f(p: &Nat) -> Nat {
    krt(p, &pad_once_task())
}

/// Padding-once with the branch taken.
pub fn pad_once_traced(p: &Nat) -> (Nat, PadOnceBranch) {
    let f = pad_once_f(p);
    if &f != p {
        (f, PadOnceBranch::SelfTestPassed)
    } else {
        (p + 1u8, PadOnceBranch::FixedPoint)
    }
}

/// A code different from `p` computing the same function.
pub fn pad_once(p: &Nat) -> Nat {
    pad_once_traced(p).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basesys::{Machine, RunOutcome};
    use crate::numcode::{pair, tuple_encode};
    use crate::programs::*;

    const B: u64 = 1_000_000;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn val(m: &Machine, p: &Nat, x: &Nat) -> Option<Nat> {
        m.run(p, x, B).value().cloned()
    }

    #[test]
    fn smn_specializes() {
        let m = Machine::default();
        let q = smn(&proj_second(), &n(99));
        assert_eq!(val(&m, &q, &n(5)), Some(n(5)));
        let q = smn(&proj_first(), &n(7));
        for x in 0..10 {
            assert_eq!(val(&m, &q, &n(x)), Some(n(7)));
        }
        assert_eq!(smn_decode(&q), Some((proj_first(), n(7))));
        assert!(smn(&succ(), &n(4)) < smn(&succ(), &n(5)));
    }

    #[test]
    fn composition() {
        let m = Machine::default();
        let c = comp_m(&succ(), &[succ()]).unwrap();
        assert_eq!(val(&m, &c, &n(3)), Some(n(5)));
        let c = comp_m(&succ(), &[diverge()]).unwrap();
        assert!(matches!(m.run(&c, &n(3), 10_000), RunOutcome::OutOfBudget { .. }));
        let c = comp_m(&identity(), &[succ(), double(), identity()]).unwrap();
        assert_eq!(val(&m, &c, &n(4)), Some(tuple_encode(&[n(5), n(8), n(4)], 3).unwrap()));
        assert!(comp_m(&identity(), &[]).is_err());
    }

    #[test]
    fn conditional() {
        let m = Machine::default();
        let p = if_then_else(&constant(1u32), &succ(), &double());
        assert_eq!(val(&m, &p, &n(10)), Some(n(11)));
        let p = if_then_else(&zero(), &succ(), &double());
        assert_eq!(val(&m, &p, &n(10)), Some(n(20)));
        let p = if_then_else(&diverge(), &succ(), &double());
        assert!(!m.run(&p, &n(10), 50_000).halted());
    }

    #[test]
    fn krt_quine_and_echo() {
        let m = Machine::default();
        let p = n(1234);
        let q = krt(&p, &proj_first());
        for x in 0..5 {
            assert_eq!(val(&m, &q, &n(x)), Some(q.clone()));
        }
        let q = krt(&p, &identity());
        assert_eq!(val(&m, &q, &n(9)), Some(tuple_encode(&[q.clone(), p.clone(), n(9)], 3).unwrap()));
        let q = krt_plain(&identity());
        assert_eq!(val(&m, &q, &n(9)), Some(pair(&q, &n(9))));
    }

    #[test]
    fn mixed_rt_equations() {
        let m = Machine::default();
        // ξ₁ = project e₁; ξ = output x.
        let proj_e1 = proj_first();
        let out_x = {
            let mut a = Asm::new();
            a.unpair(1, 0, 0).unpair(1, 0, 0).unpair(0, 1, 0).halt(0);
            a.code()
        };
        let mr = mixed_rt(&[proj_e1], &out_x).unwrap();
        assert_eq!(val(&m, &mr.e[0], &n(3)), Some(mr.e[0].clone()));
        for x in 0..6 {
            let d = val(&m, &mr.c, &n(x)).unwrap();
            assert_eq!(d, mr.delayed(&n(x)));
            assert_eq!(mr.delayed_preimage(&d), Some(n(x)));
            assert_eq!(val(&m, &d, &n(77)), Some(n(x)));
        }
        assert!(mixed_rt(&[], &out_x).is_err());
    }

    #[test]
    fn pad_small_codes() {
        assert_eq!(pad(&n(1)), n(2));
        assert_eq!(pad(&n(2)), n(4));
        // 8 = 8·⟨0, 1⟩ and an even L is never a program, so 8 is abnormal.
        assert_eq!(pad(&n(7)), n(8));
        let q = succ();
        let padded = pad(&q);
        assert!(padded > q && (&padded % 8u32).is_zero());
        assert_eq!(decode_program(&padded).unwrap().instrs, decode_program(&q).unwrap().instrs);
    }

    #[test]
    fn pad_once_differs() {
        let m = Machine::default();
        for p in [n(0), n(3), succ(), identity()] {
            let (q, branch) = pad_once_traced(&p);
            assert_ne!(q, p);
            assert_eq!(branch, PadOnceBranch::SelfTestPassed);
            for x in 0..4 {
                assert_eq!(m.run(&q, &n(x), B).value(), m.run(&p, &n(x), B).value());
            }
        }
    }
}
