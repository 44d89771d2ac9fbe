use num_integer::Integer;
use rand::Rng;

use super::super::{gen, short, Check, Config, Suite, Tally};
use super::{same_io, show};
use crate::basesys::{classify, Machine};
use crate::combinators::{pad, pad_once_traced, PadOnceBranch};
use crate::numcode::Nat;

const S: Suite = Suite::Pad;

/// Budget for the sampled I/O comparisons.
const IO_BUDGET: u64 = 2_000;

/// Next even abnormal code above `p`, found by scanning with `classify`.
fn scan_next_even_abnormal(p: &Nat) -> Nat {
    let mut q = p + 1u8;
    while q.is_odd() || classify(&q).is_normal() {
        q += 1u8;
    }
    q
}

pub fn run(rng: &mut impl Rng, _cfg: &Config) -> Vec<Check> {
    let m = Machine::default();
    let mut checks = Vec::new();
    let codes: Vec<Nat> = (0..1_000).map(|_| gen::any_code(rng)).collect();

    let mut t = Tally::new(S, "pad");
    for (p, want) in [(1u8, 2u8), (2, 4)] {
        let got = pad(&Nat::from(p));
        t.case(got == Nat::from(want), || format!("pad({p}) = {got}"));
    }
    let mut normal = 0;
    for p in &codes {
        let q = pad(p);
        t.case(q.is_even() && &q > p, || format!("pad({}) = {} not even and larger", short(p), short(&q)));
        let (cp, cq) = (classify(p).is_normal(), classify(&q).is_normal());
        if cp {
            normal += 1;
            t.case(cq && (&q % 8u8) == Nat::from(0u8), || format!("normal {} padded to abnormal", short(p)));
        } else {
            let want = scan_next_even_abnormal(p);
            t.case(q == want, || format!("pad({}) = {}, scan gives {}", short(p), short(&q), short(&want)));
        }
        for _ in 0..20 {
            let x = gen::small_input(rng);
            let (a, b) = (m.run(p, &x, IO_BUDGET), m.run(&q, &x, IO_BUDGET));
            t.case(same_io(&a, &b), || format!("pad({}) on {x}: {} vs {}", short(p), show(&a), show(&b)));
        }
    }
    checks.push(t.finish(format!("{normal} normal and {} abnormal codes; I/O preserved on 20 inputs each", codes.len() - normal)));

    let mut t = Tally::new(S, "pad-once");
    let (mut passed_self_test, mut fixed) = (0, 0);
    for p in &codes {
        let (g, branch) = pad_once_traced(p);
        match branch {
            PadOnceBranch::SelfTestPassed => passed_self_test += 1,
            PadOnceBranch::FixedPoint => fixed += 1,
        }
        t.case(&g != p, || format!("pad_once({}) = itself", short(p)));
        for _ in 0..20 {
            let x = gen::small_input(rng);
            let direct = m.run(p, &x, IO_BUDGET);
            // g runs p as a subroutine, so it needs p's budget plus overhead.
            let slack = if direct.halted() { 100 * IO_BUDGET } else { IO_BUDGET };
            let via = m.run(&g, &x, slack);
            t.case(same_io(&direct, &via), || format!("pad_once({}) on {x}: {} vs {}", short(p), show(&direct), show(&via)));
        }
    }
    let note = if fixed == 0 { "; f(p) = p never occurred" } else { "" };
    checks.push(t.finish(format!("branches: self-test passed {passed_self_test}, fixed point {fixed}{note}")));

    checks
}
