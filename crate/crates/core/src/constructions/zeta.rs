//! The ζ system with its composition witness `w`.
//!
//! One application of the mixed recursion theorem with three tasks yields
//! `e, w′, w` and the total `c`:
//!
//! - `ζ_p(x) = φ_e(⟨p, x⟩)` is `φ_p(x)` when `p = w`, when `p ∈ ρ(φ_w)`, or
//!   when the oracle has not proved `(∃r ≠ t)[ζ_r = ζ_t]` within `x`;
//!   otherwise it is `prime(p+1)^x`.
//! - `φ_{φ_c(⟨p, q⟩)}(x) = ζ_p(ζ_q(x))`.
//! - `φ_{w′}(z)` pads `φ_c(z)` until it is even, differs from `w`, exceeds
//!   `z` and `φ_{w′}(z−1)`, and neither half of `unpair(v)` is an earlier
//!   `w′` value.
//! - `φ_w(⟨p, q⟩)` re-associates when `q` is itself a `w` output and is
//!   `φ_{w′}(⟨p, q⟩)` otherwise.
//!
//! `w′` and `w` refer to their own earlier values. Two interchangeable
//! history providers answer those queries:
//!
//! - [`Structural`] uses the fact that under this numbering `c` is an S-m-n
//!   family, so `φ_c(z)` and its inverse are computed symbolically and the
//!   padding search always stops at once. The `ZETA_*` primitives use it;
//!   every evaluation re-checks that no padding was needed and panics
//!   otherwise.
//! - [`materialize`] computes the tables literally below a cutoff `N`,
//!   running `c` on the machine and scanning all earlier values.
//!
//! Tests check that the two agree on `[0, N)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use super::{Branch, DerivedSystem};
use crate::basesys::{Asm, Machine, Prim, RunOutcome};
use crate::combinators::{mixed_rt, pad, smn, smn_decode, MixedRt};
use crate::logic::{Oracle, Sentence, SystemKind, SystemTag, Template, TemplateKind};
use crate::numcode::{bitlen, pair, tuple_decode, tuple_encode, unpair, Nat};

/// Tasks in the mixed recursion theorem application.
const TASKS: usize = 3;

/// Smallest budget ζ evaluations are given. The defining codes are about
/// 100 kbit long, so a single ζ evaluation costs millions of steps and
/// each further link of a composite multiplies that by about four.
pub const EVAL_BUDGET: u64 = 100_000_000_000;

/// Hard cap on the padding search in `w′`.
pub const PAD_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaCodes {
    pub e: Nat,
    pub w_prime: Nat,
    pub w: Nat,
    pub c: Nat,
    pub rt: MixedRt,
}

/// `e`'s task on `⟨e, w′, w, c, ⟨p, x⟩⟩`.
fn e_task() -> Nat {
    let mut a = Asm::new();
    let (run, diag) = (a.label(), a.label());
    a.unpair(1, 9, 0).unpair(2, 9, 9).unpair(3, 9, 9).unpair(4, 5, 9).unpair(6, 7, 5);
    a.jeq(6, 3, run);
    a.set(8, Template::new(TemplateKind::ExistsDistinctEquiv, SystemKind::Zeta).id());
    a.pair(8, 8, 1).ext(Prim::Sentence, 8, 8);
    a.pair(8, 8, 7).ext(Prim::Oracle, 8, 8);
    a.jz(8, run);
    a.pair(10, 4, 6).pair(10, 3, 10).pair(10, 2, 10).pair(10, 1, 10);
    a.ext(Prim::ZetaRange, 10, 10);
    a.jz(10, diag);
    a.bind(run);
    a.pair(11, 6, 7).ext(Prim::Sim, 0, 11).halt(0);
    a.bind(diag);
    a.copy(12, 6).inc(12).pair(12, 12, 7).ext(Prim::PrimePow, 0, 12).halt(0);
    a.code()
}

/// A task that hands its whole input to a host primitive.
fn host_task(prim: Prim) -> Nat {
    let mut a = Asm::new();
    a.ext(prim, 0, 0).halt(0);
    a.code()
}

/// Delayed task on `⟨e, w′, w, c, ⟨p, q⟩, x⟩`: `ζ_p(ζ_q(x))`.
fn compose_task() -> Nat {
    let mut a = Asm::new();
    a.unpair(1, 9, 0).unpair(9, 9, 9).unpair(8, 9, 9).unpair(8, 9, 9);
    a.unpair(2, 3, 9).unpair(4, 5, 2);
    a.pair(6, 5, 3).pair(6, 1, 6).ext(Prim::Sim, 6, 6);
    a.pair(7, 4, 6).pair(7, 1, 7).ext(Prim::Sim, 0, 7).halt(0);
    a.code()
}

/// The oracle-independent codes.
pub fn zeta_codes() -> ZetaCodes {
    let rt = mixed_rt(&[e_task(), host_task(Prim::ZetaWPrime), host_task(Prim::ZetaW)], &compose_task())
        .expect("three tasks");
    ZetaCodes { e: rt.e[0].clone(), w_prime: rt.e[1].clone(), w: rt.e[2].clone(), c: rt.c.clone(), rt }
}

pub fn zeta_build(oracle: Arc<dyn Oracle>) -> DerivedSystem {
    let codes = zeta_codes();
    DerivedSystem::new(SystemTag::Zeta(codes.e.clone()), codes.e.clone(), Some(codes), oracle)
}

impl ZetaCodes {
    fn from_context(ctx: &[Nat]) -> Option<ZetaCodes> {
        let [e, w_prime, w, c] = ctx else { return None };
        let (hub, sel) = smn_decode(c)?;
        if sel != Nat::from(TASKS) {
            return None;
        }
        let rt = MixedRt {
            e: (0..TASKS).map(|i| smn(&hub, &Nat::from(i))).collect(),
            c: c.clone(),
            hub,
        };
        (rt.e == [e.clone(), w_prime.clone(), w.clone()]).then(|| ZetaCodes {
            e: e.clone(),
            w_prime: w_prime.clone(),
            w: w.clone(),
            c: c.clone(),
            rt,
        })
    }

    /// `⟨e, w′, w, c, last⟩`, the argument layout of the `ZETA_*` primitives.
    pub fn context_with(&self, last: &Nat) -> Nat {
        tuple_encode(&[self.e.clone(), self.w_prime.clone(), self.w.clone(), self.c.clone(), last.clone()], 5)
            .expect("arity 5")
    }

    pub fn structural(&self) -> Structural<'_> {
        Structural { codes: self }
    }

    /// The sentence `e` quotes.
    pub fn quoted(&self) -> Sentence {
        Sentence::exists_distinct_equiv(SystemTag::Zeta(self.e.clone()))
    }

    pub fn branch(&self, oracle: &dyn Oracle, p: &Nat, x: &Nat) -> Branch {
        if p == &self.w {
            return if oracle.proves_within(&self.quoted(), x) { Branch::Exempt } else { Branch::NotFired };
        }
        if !oracle.proves_within(&self.quoted(), x) {
            Branch::NotFired
        } else if self.structural().in_range_w(p) {
            Branch::Exempt
        } else {
            Branch::Diagonal
        }
    }
}

/// Work counter for the primitives' declared cost.
#[derive(Default)]
struct Meter(u64);

/// Symbolic answers to `w′`/`w` history queries. See the module docs.
pub struct Structural<'a> {
    codes: &'a ZetaCodes,
}

impl Structural<'_> {
    /// `φ_c(z)`.
    pub fn phi_c(&self, z: &Nat) -> Nat {
        self.codes.rt.delayed(z)
    }

    /// The `z` with `φ_{w′}(z) = v`, if any.
    pub fn w_prime_preimage(&self, v: &Nat) -> Option<Nat> {
        self.codes.rt.delayed_preimage(v)
    }

    /// `φ_{w′}(z)` by the literal padding search, with history from
    /// [`Structural::phi_c`]. Returns the value and the padding count.
    pub fn w_prime_search(&self, z: &Nat) -> (Nat, u64) {
        let previous = (!z.is_zero()).then(|| self.phi_c(&(z - 1u8)));
        let earlier = |val: &Nat| self.w_prime_preimage(val).is_some_and(|x| &x < z);
        pad_search(self.phi_c(z), z, &self.codes.w, previous.as_ref(), earlier)
    }

    pub fn w_prime(&self, z: &Nat) -> Nat {
        let (v, k) = self.w_prime_search(z);
        assert_eq!(k, 0, "history lemma violated: w' needed {k} padding steps at {z}");
        v
    }

    /// Is `q ∈ ρ(φ_w)`?
    pub fn in_range_w(&self, q: &Nat) -> bool {
        self.canonical_preimage(q).is_some()
    }

    /// The `(r, s)` with minimal `s`, then minimal `r`, such that
    /// `φ_w(⟨r, s⟩) = q`.
    pub fn canonical_preimage(&self, q: &Nat) -> Option<(Nat, Nat)> {
        let z = self.w_prime_preimage(q)?;
        let (r, s) = unpair(&z);
        (!self.in_range_w(&s)).then_some((r, s))
    }

    /// `φ_w(z)`.
    pub fn w(&self, z: &Nat) -> Nat {
        self.w_metered(z, &mut Meter::default())
    }

    fn w_metered(&self, z: &Nat, meter: &mut Meter) -> Nat {
        meter.0 += 1;
        let (p, q) = unpair(z);
        match self.canonical_preimage(&q) {
            Some((r, s)) => {
                let inner = self.w_metered(&pair(&p, &r), meter);
                self.w_metered(&pair(&inner, &s), meter)
            }
            None => self.w_prime(z),
        }
    }

    /// `chain(p)`: the factors of `p` under `w`.
    pub fn chain(&self, p: &Nat) -> Vec<Nat> {
        match self.canonical_preimage(p) {
            Some((r, s)) => {
                let mut v = self.chain(&r);
                v.push(s);
                v
            }
            None => vec![p.clone()],
        }
    }

    /// `unchain(v)`: recompose with `w`. Panics on an empty sequence.
    pub fn unchain(&self, v: &[Nat]) -> Nat {
        let (last, init) = v.split_last().expect("non-empty chain");
        if init.is_empty() {
            last.clone()
        } else {
            self.w(&pair(&self.unchain(init), last))
        }
    }
}

/// Pad `start` until it satisfies the `w′` side conditions at `z`.
/// `earlier(val)` answers "is `val = φ_{w′}(x)` for some `x < z`".
fn pad_search(
    start: Nat,
    z: &Nat,
    w: &Nat,
    previous: Option<&Nat>,
    earlier: impl Fn(&Nat) -> bool,
) -> (Nat, u64) {
    let mut v = start;
    for k in 0..PAD_SEARCH_CAP {
        let acceptable = &v != w
            && v.is_even()
            && &v > z
            && previous.is_none_or(|prev| &v > prev)
            && {
                let (r, s) = unpair(&v);
                !earlier(&r) && !earlier(&s)
            };
        if acceptable {
            return (v, k);
        }
        v = pad(&v);
    }
    panic!("w' padding search exceeded {PAD_SEARCH_CAP} iterations at {z}");
}

/// Host side of the `ZETA_*` primitives. Malformed contexts yield 0.
pub(crate) fn eval_prim(prim: Prim, arg: &Nat) -> (Nat, u64) {
    let parts = tuple_decode(arg, 5).expect("arity 5");
    let Some(codes) = ZetaCodes::from_context(&parts[..4]) else {
        return (Nat::zero(), bitlen(arg));
    };
    let s = codes.structural();
    let last = &parts[4];
    let mut meter = Meter::default();
    let out = match prim {
        Prim::ZetaRange => Nat::from(s.in_range_w(last) as u8),
        Prim::ZetaWPrime => s.w_prime(last),
        Prim::ZetaW => s.w_metered(last, &mut meter),
        _ => unreachable!("not a zeta primitive"),
    };
    let cost = bitlen(arg) + bitlen(&out) * (1 + meter.0);
    (out, cost)
}

/// Literal tables of `φ_{w′}` and `φ_w` on `[0, N)`.
#[derive(Clone, Debug)]
pub struct ExploredRange {
    pub w_prime: Vec<Nat>,
    pub w: Vec<Nat>,
    /// Padding steps the `w′` search took at each point.
    pub pad_steps: Vec<u64>,
    /// Values below `N` with more than one `w`-preimage below them.
    pub ties: usize,
}

/// Materialize the tables by running `c` on the machine and scanning all
/// earlier values. Points whose first `w` clause would need a value
/// outside the table are delegated to [`Structural`].
pub fn materialize(codes: &ZetaCodes, machine: &Machine, n: usize, budget: u64) -> ExploredRange {
    let mut w_prime: Vec<Nat> = Vec::with_capacity(n);
    let mut seen: HashMap<Nat, usize> = HashMap::new();
    let mut pad_steps = Vec::with_capacity(n);
    for zi in 0..n {
        let z = Nat::from(zi);
        let start = match machine.run(&codes.c, &z, budget) {
            RunOutcome::Halted { value, .. } => value,
            other => panic!("c is total but its run on {zi} ended with {other:?}"),
        };
        let earlier = |val: &Nat| seen.get(val).is_some_and(|&x| x < zi);
        let (v, k) = pad_search(start, &z, &codes.w, w_prime.last(), earlier);
        seen.insert(v.clone(), zi);
        w_prime.push(v);
        pad_steps.push(k);
    }

    let mut w: Vec<Nat> = Vec::with_capacity(n);
    let mut ties = 0;
    for (zi, padded) in w_prime.iter().enumerate() {
        let (p, q) = unpair(&Nat::from(zi));
        let q_idx: usize = (&q).try_into().expect("q < N");
        // All ⟨r, s⟩ < q with φ_w(⟨r, s⟩) = q.
        let preimages: Vec<(Nat, Nat)> =
            (0..q_idx).filter(|&y| w[y] == q).map(|y| unpair(&Nat::from(y))).collect();
        if preimages.len() > 1 {
            ties += 1;
        }
        let value = match preimages.into_iter().min_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0))) {
            Some((r, s)) => {
                let s_ = codes.structural();
                let inner = s_.w(&pair(&p, &r));
                s_.w(&pair(&inner, &s))
            }
            None => padded.clone(),
        };
        w.push(value);
    }
    ExploredRange { w_prime, w, pad_steps, ties }
}

impl ExploredRange {
    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// `q ∈ ρ(φ_w)` restricted to the table.
    pub fn in_range_w(&self, q: &Nat) -> bool {
        self.w.contains(q)
    }
}

/// `prime(p+1)^x`, the diagonal value.
pub fn diagonal_value(p: &Nat, x: u32) -> Nat {
    num_traits::pow::pow(crate::numcode::nth_prime(&(p + 1u8)), x as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{make_scripted, make_silent, OracleScript};
    use crate::programs::{double, succ};

    const B: u64 = 100_000_000;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn codes_are_distinct_and_normal() {
        let z = zeta_codes();
        let all = [&z.e, &z.w_prime, &z.w, &z.c];
        for (i, a) in all.iter().enumerate() {
            assert!(crate::basesys::classify(a).is_normal());
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn silent_zeta_is_phi() {
        let sys = zeta_build(make_silent());
        for x in 0..5 {
            assert_eq!(sys.eval(&succ(), &n(x), B).value(), Some(&n(x + 1)));
        }
    }

    #[test]
    fn w_prime_agrees_with_machine() {
        let sys = zeta_build(make_silent());
        let codes = sys.zeta.as_ref().unwrap();
        for z in 0..8u64 {
            let on_machine = sys.machine().run(&codes.w_prime, &n(z), B);
            assert_eq!(on_machine.value(), Some(&codes.structural().w_prime(&n(z))));
            assert_eq!(codes.structural().w_prime_search(&n(z)).1, 0);
        }
    }

    #[test]
    fn composition_witness() {
        let sys = zeta_build(make_silent());
        let codes = sys.zeta.as_ref().unwrap();
        let y = sys.eval(&codes.w, &pair(&succ(), &double()), B).value().unwrap().clone();
        assert!(y.is_even());
        assert!(codes.structural().in_range_w(&y));
        for x in 0..4 {
            assert_eq!(sys.eval(&y, &n(x), B).value(), Some(&n(2 * x + 1)));
        }
        assert_eq!(codes.structural().chain(&y), vec![succ(), double()]);
    }

    #[test]
    fn diagonal_clause() {
        let script = OracleScript::new().with("ExistsDistinctEquiv[zeta:*]()".parse().unwrap(), 3u32);
        let sys = zeta_build(make_scripted(script));
        let codes = sys.zeta.as_ref().unwrap();
        for p in 0..4u64 {
            for x in 3..6u32 {
                assert_eq!(sys.eval(&n(p), &n(x as u64), B).value(), Some(&diagonal_value(&n(p), x)));
                assert_eq!(sys.branch(&n(p), &n(x as u64)), Branch::Diagonal);
            }
        }
        // w and its outputs are exempt.
        assert_eq!(sys.branch(&codes.w, &n(4)), Branch::Exempt);
        let y = codes.structural().w(&pair(&succ(), &succ()));
        assert_eq!(sys.branch(&y, &n(4)), Branch::Exempt);
        // Below the threshold y composes the plain successors.
        assert_eq!(sys.eval(&y, &n(1), B).value(), Some(&n(3)));
    }

    #[test]
    fn small_table_matches_structural() {
        let codes = zeta_codes();
        let table = materialize(&codes, &Machine::default(), 32, B);
        let s = codes.structural();
        for z in 0..32u64 {
            assert_eq!(table.w_prime[z as usize], s.w_prime(&n(z)));
            assert_eq!(table.w[z as usize], s.w(&n(z)));
        }
        assert!(table.pad_steps.iter().all(|&k| k == 0));
        assert_eq!(table.ties, 0);
    }
}
