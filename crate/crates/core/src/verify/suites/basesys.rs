use rand::Rng;

use super::super::{gen, short, Check, Config, Suite, Tally};
use super::{same_io, show};
use crate::basesys::{classify, decode_program, encode_program, Instr, Machine, ProgramBody, RunOutcome};
use crate::numcode::{pair, Nat};
use crate::universal::{emit_certificate, simulate, universal_code, verify_certificate, Certificate, SimMode};

const S: Suite = Suite::Basesys;

/// Budget for the cheap per-body checks.
const SMALL: u64 = 5_000;

pub fn run(rng: &mut impl Rng, cfg: &Config) -> Vec<Check> {
    let m = Machine::default();
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "classify");
    let halt_only = encode_program(&ProgramBody::new(vec![Instr::Halt(0)]));
    t.case(classify(&halt_only).is_normal(), || "HALT r0 is abnormal".into());
    for k in [1u8, 2, 3, 5] {
        t.case(!classify(&Nat::from(k)).is_normal(), || format!("{k} is normal"));
    }
    let mut normal = 0;
    for _ in 0..10_000 {
        let p = gen::any_code(rng);
        match decode_program(&p) {
            Some(body) => {
                normal += 1;
                let ok = (&p % 8u8) == Nat::from(0u8) && body.is_valid() && encode_program(&body) == p;
                t.case(ok, || format!("normal {} fails to re-encode", short(&p)));
            }
            None => t.case(!classify(&p).is_normal(), || format!("{} undecodable but normal", short(&p))),
        }
        if (&p % 8u8) != Nat::from(0u8) {
            t.case(!classify(&p).is_normal(), || format!("{} not divisible by 8 but normal", short(&p)));
        }
    }
    checks.push(t.finish(format!("{normal} normal codes re-encode exactly; non-multiples of 8 abnormal")));

    let mut t = Tally::new(S, "encode-round-trip");
    for _ in 0..1_000 {
        let p = gen::any_program(rng);
        let body = decode_program(&p).expect("generated programs are normal");
        let mut bumped = body.clone();
        bumped.padcount += 1u8;
        let q = encode_program(&bumped);
        t.case(decode_program(&q) == Some(bumped), || "padded body does not round-trip".into());
        t.case(q > p, || "encoding not increasing in padcount".into());
    }
    t.case(decode_program(&Nat::from(3u8)).is_none(), || "3 decodes".into());
    checks.push(t.finish("decode∘encode = id; codes increase with padcount"));

    let mut t = Tally::new(S, "padcount-invariance");
    for _ in 0..1_000 {
        let p = gen::any_program(rng);
        let mut body = decode_program(&p).expect("normal");
        body.padcount += rng.gen_range(1u32..1000);
        let q = encode_program(&body);
        for _ in 0..20 {
            let x = gen::small_input(rng);
            let (a, b) = (m.run(&p, &x, SMALL), m.run(&q, &x, SMALL));
            t.case(a == b, || format!("{} vs {} on {x}", show(&a), show(&b)));
        }
    }
    checks.push(t.finish("identical outcomes and step counts"));

    let mut det = Tally::new(S, "determinism");
    let mut blum = Tally::new(S, "blum-step-exactness");
    for _ in 0..500 {
        let p = gen::any_program(rng);
        let x = gen::small_input(rng);
        let a = m.run(&p, &x, SMALL);
        det.case(a == m.run(&p, &x, SMALL), || format!("rerun of {} differs", short(&p)));
        if let RunOutcome::Halted { value, steps } = &a {
            let exact = m.run(&p, &x, *steps);
            blum.case(exact == a, || format!("budget {steps} gives {}", show(&exact)));
            let short_run = m.run(&p, &x, steps - 1);
            blum.case(matches!(short_run, RunOutcome::OutOfBudget { .. }), || {
                format!("budget {} gives {} (value {})", steps - 1, show(&short_run), short(value))
            });
            blum.case(m.blum_cost(&p, &x, SMALL) == Some(*steps), || "blum_cost disagrees with run".into());
        }
    }
    blum.case(m.blum_cost(&halt_only, &Nat::from(0u8), 10) == Some(1), || "HALT-only cost is not 1".into());
    let with_noop = encode_program(&ProgramBody::new(vec![Instr::Inc(1), Instr::Halt(0)]));
    blum.case(m.blum_cost(&with_noop, &Nat::from(0u8), 10) == Some(2), || "no-op before HALT".into());
    checks.push(det.finish("identical (p, x, budget) give identical outcomes"));
    checks.push(blum.finish("halting at t reproduces with budget t and fails with t-1"));

    let mut t = Tally::new(S, "abnormal-divergence");
    for _ in 0..1_000 {
        let p = gen::nat(rng, 64) * 2u8 + 1u8;
        let r = m.run(&p, &gen::small_input(rng), cfg.budget);
        t.case(r == RunOutcome::AbnormalDivergence, || format!("{} gives {}", short(&p), show(&r)));
    }
    checks.push(t.finish("odd codes diverge immediately"));

    let mut t = Tally::new(S, "universality");
    let u = universal_code();
    while t.cases < 200 {
        let p = gen::halting_subject(rng);
        let x = gen::small_input(rng);
        let direct = m.run(&p, &x, cfg.budget);
        let via_u = m.run(&u, &pair(&p, &x), cfg.budget);
        t.case(direct.halted() && same_io(&direct, &via_u), || format!("{} vs {}", show(&direct), show(&via_u)));
    }
    let inner = pair(&crate::programs::succ(), &Nat::from(4u8));
    let nested = m.run(&u, &pair(&u, &inner), cfg.budget);
    t.case(nested.value() == Some(&Nat::from(5u8)), || format!("u on <u, <succ, 4>> gives {}", show(&nested)));
    for b in [10, 1_000, 100_000] {
        let r = m.run(&u, &pair(&crate::programs::diverge(), &Nat::from(0u8)), b);
        t.case(matches!(r, RunOutcome::OutOfBudget { .. }), || format!("diverger halts at budget {b}"));
    }
    checks.push(t.finish("φ_u(<p, x>) = φ_p(x) on halting pairs; self-application agrees"));

    let mut t = Tally::new(S, "mode-conformance");
    let mut max_gap = 0u64;
    let mut halted = 0;
    for _ in 0..100 {
        let p = gen::any_program(rng);
        for _ in 0..5 {
            let x = gen::small_input(rng);
            let acc = simulate(&m, &p, &x, SMALL, SimMode::Accelerated);
            let pure = simulate(&m, &p, &x, SMALL, SimMode::Pure);
            // Near the budget edge one mode may halt where the other cannot:
            // recheck a halted side against the other with its overhead allowed.
            let ok = match (&acc, &pure) {
                (RunOutcome::Halted { steps: a, .. }, RunOutcome::Halted { steps: b, .. }) => {
                    halted += 1;
                    max_gap = max_gap.max(b.abs_diff(*a));
                    same_io(&acc, &pure)
                }
                (RunOutcome::Halted { .. }, _) => {
                    same_io(&acc, &simulate(&m, &p, &x, SMALL + 100, SimMode::Pure))
                }
                (_, RunOutcome::Halted { .. }) => {
                    same_io(&pure, &simulate(&m, &p, &x, SMALL, SimMode::Accelerated))
                }
                _ => true,
            };
            t.case(ok, || format!("accelerated {} vs pure {}", show(&acc), show(&pure)));
        }
    }
    let zero_budget = simulate(&m, &crate::programs::identity(), &Nat::from(5u8), 0, SimMode::Accelerated);
    t.case(matches!(zero_budget, RunOutcome::OutOfBudget { .. }), || "budget 0 halts".into());
    checks.push(t.finish(format!("{halted} halting runs agree; pure mode costs at most {max_gap} extra steps")));

    let mut t = Tally::new(S, "certificates");
    let mut truthful_x = 0;
    for _ in 0..100 {
        let p = gen::halting_subject(rng);
        let x = gen::small_input(rng);
        let Ok(c) = emit_certificate(&m, &p, &x, cfg.budget) else { continue };
        t.case(verify_certificate(&m, &c), || format!("fresh certificate rejected: {c}"));
        t.case(Certificate::from_record(&c.to_record()).as_ref() == Ok(&c), || "record round trip".into());
        let tampered = [
            Certificate { p: &c.p + 1u8, ..c.clone() },
            Certificate { y: &c.y + 1u8, ..c.clone() },
            Certificate { t: &c.t + 1u8, ..c.clone() },
            Certificate { t: &c.t - 1u8, ..c.clone() },
        ];
        for bad in &tampered {
            t.case(!verify_certificate(&m, bad), || format!("tampered certificate accepted: {bad}"));
        }
        // A changed input can leave a true statement; only false ones must fail.
        let moved = Certificate { x: &c.x + 1u8, ..c.clone() };
        let still_true = matches!(m.run(&moved.p, &moved.x, cfg.budget),
            RunOutcome::Halted { ref value, steps } if value == &moved.y && Nat::from(steps) == moved.t);
        truthful_x += still_true as u32;
        t.case(verify_certificate(&m, &moved) == still_true, || format!("x-tampered certificate misjudged: {moved}"));
    }
    checks.push(t.finish(format!("emitted certificates verify; tampering rejected ({truthful_x} x-shifts stayed true)")));

    let mut t = Tally::new(S, "certificate-scan");
    for _ in 0..50 {
        let p = gen::halting_program(rng);
        let x = gen::small_input(rng);
        let c = emit_certificate(&m, &p, &x, cfg.budget).expect("forward-jump programs halt");
        let scanned = (0..).find(|&b| m.run(&p, &x, b).halted()).expect("halts");
        t.case(c.t == Nat::from(scanned), || format!("emit t = {}, scan t = {scanned}", c.t));
    }
    checks.push(t.finish("emitted t equals the least halting budget"));

    checks
}
