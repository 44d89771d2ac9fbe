use rand::Rng;

use super::super::{gen, short, Check, Config, Suite, Tally};
use super::{ceil_ratio, same_io, show};
use crate::basesys::{Asm, Machine, RunOutcome};
use crate::combinators::{comp_m, if_then_else, krt, krt_plain, mixed_rt, smn};
use crate::constructions::fixed_point_demo;
use crate::numcode::{bitlen, pair, tuple_encode, Nat};
use crate::programs::{constant, diverge, identity, pad_program, proj_first, proj_second, succ};
use crate::universal::verify_certificate;

const S: Suite = Suite::Krt;

/// Largest fitted constant the linear-overhead checks accept.
const FIT_CAP: u64 = 1_000;

/// Headroom for the mixed dispatcher, which splices and pairs every
/// generated code before simulating a task.
const MIXED_OVERHEAD: u64 = 100_000_000;

/// Budget for runs expected to diverge.
const DIVERGE_BUDGET: u64 = 20_000;

pub fn run(rng: &mut impl Rng, cfg: &Config) -> Vec<Check> {
    let m = Machine::default();
    let b = cfg.budget;
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "smn");
    for _ in 0..50 {
        let p = gen::halting_subject(rng);
        let a = gen::small_input(rng);
        let q = smn(&p, &a);
        for _ in 0..5 {
            let x = gen::small_input(rng);
            let (lhs, rhs) = (m.run(&q, &x, b), m.run(&p, &pair(&a, &x), b));
            t.case(same_io(&lhs, &rhs), || format!("{} vs {}", show(&lhs), show(&rhs)));
        }
    }
    let seven = Nat::from(7u8);
    for x in 0..5u8 {
        let x = Nat::from(x);
        t.case(m.run(&smn(&proj_first(), &seven), &x, b).value() == Some(&seven), || "smn(first, 7)".into());
        t.case(m.run(&smn(&proj_second(), &seven), &x, b).value() == Some(&x), || "smn(second, 7)".into());
    }
    checks.push(t.finish("φ_smn(p,a)(x) = φ_p(<a, x>)"));

    let mut t = Tally::new(S, "composition");
    for _ in 0..50 {
        let arity = rng.gen_range(1..=3);
        let ps: Vec<Nat> = (0..arity).map(|_| gen::halting_subject(rng)).collect();
        let p0 = gen::halting_subject(rng);
        let code = comp_m(&p0, &ps).expect("non-empty");
        for _ in 0..4 {
            let x = gen::small_input(rng);
            let parts: Vec<Nat> = ps.iter().map(|p| m.run(p, &x, b).value().expect("halting").clone()).collect();
            let arg = if arity == 1 { parts[0].clone() } else { tuple_encode(&parts, arity).expect("arity") };
            let (lhs, rhs) = (m.run(&code, &x, b), m.run(&p0, &arg, b));
            t.case(same_io(&lhs, &rhs), || format!("m={arity}: {} vs {}", show(&lhs), show(&rhs)));
        }
    }
    let plus2 = comp_m(&succ(), &[succ()]).expect("non-empty");
    t.case(m.run(&plus2, &Nat::from(5u8), b).value() == Some(&Nat::from(7u8)), || "succ∘succ".into());
    let stuck = comp_m(&succ(), &[diverge()]).expect("non-empty");
    t.case(!m.run(&stuck, &Nat::from(5u8), DIVERGE_BUDGET).halted(), || "composition with a diverger halts".into());
    checks.push(t.finish("host-level composition agrees for m = 1..3"));

    checks.push(if_then_else_check(rng, &m, b));
    checks.push(krt_check(rng, &m, b));

    let mut t = Tally::new(S, "krt-examples");
    let p = Nat::from(12345u32);
    let quine = krt(&p, &proj_first());
    let echo = krt(&p, &identity());
    let lifted = krt_plain(&proj_first());
    let plain_echo = krt_plain(&identity());
    for x in 0..10u8 {
        let x = Nat::from(x);
        t.case(m.run(&quine, &x, b).value() == Some(&quine), || "krt quine".into());
        let want = tuple_encode(&[echo.clone(), p.clone(), x.clone()], 3).expect("arity");
        t.case(m.run(&echo, &x, b).value() == Some(&want), || "krt echo".into());
        t.case(m.run(&lifted, &x, b).value() == Some(&lifted), || "plain quine".into());
        t.case(m.run(&plain_echo, &x, b).value() == Some(&pair(&plain_echo, &x)), || "plain echo".into());
    }
    checks.push(t.finish("quines output their own code; echoes output <self, p, x> and <self, x>"));

    checks.push(mixed_rt_check(rng, &m, b));
    checks.push(fixed_point_check(rng, &m, b));
    checks
}

fn if_then_else_check(rng: &mut impl Rng, m: &Machine, b: u64) -> Check {
    let mut t = Tally::new(S, "if-then-else");
    let mut clauses = [0u32; 3];
    let mut fit = 0;
    for _ in 0..50 {
        let (p1, p2) = (gen::halting_subject(rng), gen::halting_subject(rng));
        let guards = [gen::halting_subject(rng), constant(1u8), constant(0u8), diverge()];
        let x = gen::small_input(rng);
        for g in &guards {
            let code = if_then_else(g, &p1, &p2);
            let guard = m.run(g, &x, DIVERGE_BUDGET);
            let got = m.run(&code, &x, b);
            match guard.value() {
                Some(v) => {
                    let (clause, chosen) = if v != &Nat::from(0u8) { (0, &p1) } else { (1, &p2) };
                    clauses[clause] += 1;
                    let want = m.run(chosen, &x, b);
                    t.case(same_io(&got, &want), || format!("clause {}: {} vs {}", clause + 1, show(&got), show(&want)));
                    if let (Some(total), Some(g_cost), Some(c_cost)) = (got.steps(), guard.steps(), want.steps()) {
                        fit = fit.max(ceil_ratio(total, (g_cost + c_cost).max(1)));
                    }
                }
                None => {
                    clauses[2] += 1;
                    let r = m.run(&code, &x, DIVERGE_BUDGET);
                    t.case(!r.halted(), || format!("diverging guard gave {}", show(&r)));
                }
            }
        }
    }
    t.case(clauses.iter().all(|&c| c > 0), || format!("clause coverage {clauses:?}"));
    t.case(fit <= FIT_CAP, || format!("fitted a = {fit} exceeds {FIT_CAP}"));
    t.finish(format!("clauses hit {clauses:?}; fitted a = {fit}"))
}

fn krt_check(rng: &mut impl Rng, m: &Machine, b: u64) -> Check {
    let mut t = Tally::new(S, "krt");
    let mut fit = 0;
    let mut halted = 0;
    for i in 0..100 {
        let p = gen::nat(rng, 64);
        let r = if i % 4 == 0 { gen::any_program(rng) } else { gen::halting_subject(rng) };
        let x = gen::small_input(rng);
        let e = krt(&p, &r);
        let arg = tuple_encode(&[e.clone(), p.clone(), x.clone()], 3).expect("arity");
        let (lhs, rhs) = (m.run(&e, &x, b), m.run(&r, &arg, b));
        // The right side can halt just inside the budget while the left needs
        // its own overhead on top.
        let ok = same_io(&lhs, &rhs) || (!lhs.halted() && rhs.halted() && same_io(&m.run(&e, &x, 2 * b), &rhs));
        t.case(ok, || format!("{} vs {}", show(&lhs), show(&rhs)));
        if let (Some(cost), Some(task)) = (lhs.steps(), rhs.steps()) {
            halted += 1;
            fit = fit.max(ceil_ratio(cost, bitlen(&p) + bitlen(&r) + bitlen(&x) + task));
        }
    }
    t.case(fit <= FIT_CAP, || format!("fitted b = {fit} exceeds {FIT_CAP}"));
    t.finish(format!("{halted} halting samples; fitted b = {fit}"))
}

/// Budget for the self-referential side of an equation whose direct side
/// gave `want`.
fn headroom(want: &RunOutcome, b: u64) -> u64 {
    if want.halted() {
        b + MIXED_OVERHEAD
    } else {
        b
    }
}

fn mixed_rt_check(rng: &mut impl Rng, m: &Machine, b: u64) -> Check {
    let mut t = Tally::new(S, "mixed-rt");
    for n in 1..=4 {
        for _ in 0..3 {
            let tasks: Vec<Nat> = (0..n).map(|_| gen::halting_subject(rng)).collect();
            let delayed = gen::halting_subject(rng);
            let rt = mixed_rt(&tasks, &delayed).expect("n in range");
            let mut ctx: Vec<Nat> = rt.e.clone();
            ctx.push(rt.c.clone());
            for _ in 0..4 {
                let y = gen::small_input(rng);
                for (i, task) in tasks.iter().enumerate() {
                    let mut args = ctx.clone();
                    args.push(y.clone());
                    let want = m.run(task, &tuple_encode(&args, n + 2).expect("arity"), b);
                    let got = m.run(&rt.e[i], &y, headroom(&want, b));
                    t.case(same_io(&got, &want), || format!("e{} on {y}: {} vs {}", i + 1, show(&got), show(&want)));
                }
                let x = gen::small_input(rng);
                let c_out = m.run(&rt.c, &x, b);
                t.case(c_out.value() == Some(&rt.delayed(&x)), || format!("φ_c({x}) gave {}", show(&c_out)));
                let mut args = ctx.clone();
                args.extend([x.clone(), y.clone()]);
                let want = m.run(&delayed, &tuple_encode(&args, n + 3).expect("arity"), b);
                let got = m.run(&rt.delayed(&x), &y, headroom(&want, b));
                t.case(same_io(&got, &want), || format!("delayed({x}) on {y}: {} vs {}", show(&got), show(&want)));
            }
        }
    }
    let quine_rt = mixed_rt(&[proj_first()], &identity()).expect("one task");
    let e1 = &quine_rt.e[0];
    t.case(m.run(e1, &Nat::from(3u8), b).value() == Some(e1), || "n = 1 projection is not a quine".into());
    let out_x = {
        // ⟨e₁, c, x, y⟩ ↦ x
        let mut a = Asm::new();
        a.unpair(1, 0, 0).unpair(1, 0, 0).unpair(0, 1, 0).halt(0);
        a.code()
    };
    let const_rt = mixed_rt(&[identity()], &out_x).expect("one task");
    for x in 0..5u8 {
        let code = const_rt.delayed(&Nat::from(x));
        t.case(m.run(&code, &Nat::from(99u8), b).value() == Some(&Nat::from(x)), || format!("delayed({x}) not constant"));
    }
    t.finish("both equations hold for n = 1..4; φ_c total on samples")
}

fn fixed_point_check(rng: &mut impl Rng, m: &Machine, b: u64) -> Check {
    let mut t = Tally::new(S, "fixed-point");
    let mut notes = Vec::new();
    let transformers = [("identity", identity()), ("pad", pad_program()), ("constant-succ", constant(succ()))];
    for (name, d) in &transformers {
        let fp = fixed_point_demo(m, d, b);
        let Ok(cert) = &fp.q0 else {
            t.case(false, || format!("d = {name}: φ_d(p0) gave {:?}", fp.q0));
            continue;
        };
        t.case(verify_certificate(m, cert), || format!("d = {name}: certificate rejected"));
        let mut halting = 0;
        for _ in 0..20 {
            let x = gen::small_input(rng);
            let (lhs, rhs) = (m.run(&fp.p0, &x, DIVERGE_BUDGET), m.run(&cert.y, &x, DIVERGE_BUDGET));
            let ok = same_io(&lhs, &rhs) || (!lhs.halted() && rhs.halted() && same_io(&m.run(&fp.p0, &x, b), &rhs));
            halting += rhs.halted() as u32;
            t.case(ok, || format!("d = {name}, x = {x}: {} vs {}", show(&lhs), show(&rhs)));
        }
        notes.push(format!("{name}: q0 = {}, {halting}/20 halting", short(&cert.y)));
    }
    let fp = fixed_point_demo(m, &diverge(), DIVERGE_BUDGET);
    t.case(matches!(fp.q0, Err(RunOutcome::OutOfBudget { .. })), || "diverging d produced q0".into());
    t.finish(notes.join("; "))
}
