use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::super::{gen, short, Check, Config, Suite, Tally};
use super::{same_io, show};
use crate::basesys::Machine;
use crate::constructions::{eta_build, psi_build, theorem1_candidates, theta_build, Branch, DerivedSystem};
use crate::logic::{
    make_scripted, make_silent, substitute, Oracle, OracleScript, Sentence, SentencePattern, SystemKind, SystemTag,
    Template, TemplateKind,
};
use crate::numcode::{bitlen, pair, pow2, set_decode, Nat};
use crate::programs::{double, succ};

const S: Suite = Suite::Logic;

/// First budget at which scripted entries fire.
const X0: u64 = 3;

fn random_tag(rng: &mut impl Rng) -> SystemTag {
    let code = gen::nat(rng, 48);
    match rng.gen_range(0..5) {
        0 => SystemTag::Phi,
        1 => SystemTag::Psi(code),
        2 => SystemTag::Eta(code),
        3 => SystemTag::Theta(code),
        _ => SystemTag::Zeta(code),
    }
}

pub(crate) fn random_sentence(rng: &mut impl Rng) -> Sentence {
    let num = |rng: &mut _| gen::nat(rng, 48);
    match rng.gen_range(0..5) {
        0 => Sentence::equiv(num(rng), num(rng), random_tag(rng)),
        1 => Sentence::exists_distinct_equiv(random_tag(rng)),
        2 => Sentence::is_universal(num(rng), random_tag(rng)),
        3 => Sentence::exists_universal(random_tag(rng)),
        _ => Sentence::halts_with(num(rng), num(rng), num(rng)),
    }
}

fn scripted(pattern: &str) -> Arc<dyn Oracle> {
    make_scripted(OracleScript::new().with(pattern.parse().expect("valid pattern"), X0))
}

pub fn run(rng: &mut impl Rng, cfg: &Config) -> Vec<Check> {
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "serialization");
    let mut seen: HashMap<Nat, Sentence> = HashMap::new();
    let mut collisions = 0;
    for _ in 0..10_000 {
        let s = random_sentence(rng);
        let code = s.code();
        t.case(Sentence::from_code(&code).as_ref() == Some(&s), || format!("{s} does not round-trip"));
        if let Some(prev) = seen.insert(code, s.clone()) {
            if prev != s {
                collisions += 1;
            }
        }
    }
    t.case(collisions == 0, || format!("{collisions} distinct sentences share a code"));
    let equiv = Template::new(TemplateKind::Equiv, SystemKind::Phi);
    let three = Nat::from(3u8);
    t.case(substitute(equiv, &[three.clone(), three.clone()]).is_ok(), || "Equiv[phi](3,3) rejected".into());
    t.case(substitute(equiv, std::slice::from_ref(&three)).is_err(), || "arity 1 accepted for Equiv".into());
    checks.push(t.finish(format!("{} distinct sentences, injective codes", seen.len())));

    let mut t = Tally::new(S, "numeral-growth");
    let lens: Vec<u64> = (0..=20).map(|k| bitlen(&Sentence::equiv(pow2(k), Nat::from(1u8), SystemTag::Phi).code())).collect();
    let steps: Vec<i64> = lens.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let slope = *steps.iter().max().expect("non-empty");
    t.case(steps.iter().all(|&d| (0..=4).contains(&d)), || format!("length increments {steps:?}"));
    checks.push(t.finish(format!("code length {}..{} bits for numerals 2^0..2^20; at most {slope} bits per numeral bit", lens[0], lens[20])));

    let mut t = Tally::new(S, "oracle-monotone");
    let mut script = OracleScript::new();
    let sentences: Vec<Sentence> = (0..50).map(|_| random_sentence(rng)).collect();
    for s in sentences.iter().take(25) {
        script = script.with(SentencePattern::exact(s), rng.gen_range(0u32..40));
    }
    script = script.with("ExistsUniversal[psi:*]()".parse().expect("valid pattern"), 7u8);
    let oracle = make_scripted(script);
    for _ in 0..1_000 {
        let s = sentences.choose(rng).expect("non-empty");
        let x = rng.gen_range(0u32..60);
        let later = x + rng.gen_range(1u32..60);
        let (a, b) = (oracle.proves_within(s, &Nat::from(x)), oracle.proves_within(s, &Nat::from(later)));
        t.case(!a || b, || format!("{s} fires at {x} but not at {later}"));
        t.case(a == oracle.proves_within(s, &Nat::from(x)), || "query not deterministic".into());
    }
    checks.push(t.finish("fired at x implies fired at every x' > x"));

    let mut t = Tally::new(S, "oracle-scripts");
    let silent = make_silent();
    let empty = make_scripted(OracleScript::new());
    for _ in 0..1_000 {
        let s = random_sentence(rng);
        let x = gen::nat(rng, 20);
        t.case(!silent.proves_within(&s, &x) && !empty.proves_within(&s, &x), || format!("{s} fired silently at {x}"));
    }
    let a = Sentence::equiv(three.clone(), three.clone(), SystemTag::Phi);
    let b = Sentence::exists_distinct_equiv(SystemTag::Psi(Nat::from(9u8)));
    let o = make_scripted(OracleScript::new().with(SentencePattern::exact(&a), 5u8).with(SentencePattern::exact(&b), 2u8));
    for x in 0..12u8 {
        let xn = Nat::from(x);
        t.case(o.proves_within(&a, &xn) == (x >= 5), || format!("{a} at {x}"));
        t.case(o.proves_within(&b, &xn) == (x >= 2), || format!("{b} at {x}"));
    }
    checks.push(t.finish("silent and empty scripts never fire; thresholds are per pattern"));

    checks.push(transparency(rng, cfg));
    checks.push(scripted_branches(rng, cfg));
    checks.push(theorem1(rng, cfg));
    checks
}

/// Random halting points `(p, x)` with their φ values.
fn halting_points(rng: &mut impl Rng, n: usize, budget: u64) -> Vec<(Nat, Nat, Nat)> {
    let m = Machine::default();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (p, x) = (gen::halting_subject(rng), gen::small_input(rng));
        if let Some(y) = m.run(&p, &x, budget).value() {
            out.push((p, x, y.clone()));
        }
    }
    out
}

fn transparency(rng: &mut impl Rng, cfg: &Config) -> Check {
    let mut t = Tally::new(S, "silent-transparency");
    let systems = [("psi", psi_build(make_silent())), ("eta", eta_build(make_silent())), ("theta", theta_build(make_silent()))];
    for (p, x, y) in halting_points(rng, 200, cfg.budget) {
        for (name, sys) in &systems {
            let got = sys.eval(&p, &x, cfg.budget);
            t.case(got.value() == Some(&y), || format!("{name}_{}({x}) = {}, φ gives {}", short(&p), show(&got), short(&y)));
            t.case(sys.branch(&p, &x) == Branch::NotFired, || format!("{name} fired silently"));
        }
    }
    t.finish("ψ, η and θ agree with φ on 200 halting points, always via the otherwise clause")
}

fn expect_value(t: &mut Tally, sys: &DerivedSystem, name: &str, p: &Nat, x: u64, want: &Nat, budget: u64) {
    let got = sys.eval(p, &Nat::from(x), budget);
    t.case(got.value() == Some(want), || format!("{name}_{}({x}) = {}, expected {}", short(p), show(&got), short(want)));
}

fn scripted_branches(rng: &mut impl Rng, cfg: &Config) -> Check {
    let b = cfg.budget;
    let m = Machine::default();
    let mut t = Tally::new(S, "scripted-branches");
    let mut subjects = vec![succ(), double(), Nat::from(5u8)];
    subjects.extend((0..3).map(|_| gen::halting_subject(rng)));

    let psi = psi_build(scripted("ExistsDistinctEquiv[psi:*]()"));
    let eta = eta_build(scripted("ExistsDistinctEquiv[eta:*]()"));
    let theta = theta_build(scripted("ExistsUniversal[theta:*]()"));
    for p in &subjects {
        for x in X0..10 {
            expect_value(&mut t, &psi, "psi", p, x, p, b);
            expect_value(&mut t, &eta, "eta", p, x, p, b);
            expect_value(&mut t, &theta, "theta", p, x, p, b);
            for (name, sys) in [("psi", &psi), ("eta", &eta), ("theta", &theta)] {
                let br = sys.branch(p, &Nat::from(x));
                t.case(br == Branch::Diagonal, || format!("{name} branch {br} at {x}"));
            }
        }
        for x in 0..X0 {
            if let Some(y) = m.run(p, &Nat::from(x), b).value() {
                for (name, sys) in [("psi", &psi), ("eta", &eta), ("theta", &theta)] {
                    expect_value(&mut t, sys, name, p, x, y, b);
                }
            }
        }
    }
    expect_value(&mut t, &theta, "theta", &theta.e.clone(), X0, &theta.e, b);
    // η_e is φ_e, which itself is the system: η_e(<q, x>) = η_q(x).
    for q in &subjects[..2] {
        for x in 0..6u64 {
            let arg = pair(q, &Nat::from(x));
            let (got, want) = (eta.eval(&eta.e, &arg, b), eta.machine().run(&eta.e, &arg, b));
            t.case(got.halted() && same_io(&got, &want), || format!("η_e(<q, {x}>) = {}, φ_e gives {}", show(&got), show(&want)));
            t.case(eta.branch(&eta.e, &arg) == if arg >= Nat::from(X0) { Branch::Exempt } else { Branch::NotFired }, || "η_e branch".into());
        }
    }
    t.finish(format!("ψ, η, θ diagonal on x in [{X0}, 10) for {} programs; η_e exempt", subjects.len()))
}

fn theorem1(rng: &mut impl Rng, cfg: &Config) -> Check {
    let b = cfg.budget;
    let mut t = Tally::new(S, "theorem1");
    let silent = Machine::default();
    let mut subjects = vec![succ(), double()];
    subjects.extend((0..2).map(|_| gen::halting_subject(rng)));
    for p in &subjects {
        let th = theorem1_candidates(p);
        t.case(set_decode(&th.g_code) == [th.e1.clone(), th.e2.clone()].into(), || "g code does not decode to {e1, e2}".into());
        let script = OracleScript::new()
            .with(SentencePattern::exact(&th.quoted(&th.e1)), X0)
            .with(SentencePattern::exact(&th.quoted(&th.e2)), X0);
        let fired = Machine::new(make_scripted(script));
        for x in 0..10u64 {
            let xn = Nat::from(x);
            let Some(y) = silent.run(p, &xn, b).value().cloned() else { continue };
            for which in [1, 2] {
                let got = th.run(&silent, which, &xn, b);
                t.case(got.value() == Some(&y), || format!("silent e{which}({x}) = {}", show(&got)));
            }
            let (want1, want2) = if x >= X0 { (&y + 1u8, Nat::from(0u8)) } else { (y.clone(), y.clone()) };
            let (g1, g2) = (th.run(&fired, 1, &xn, b), th.run(&fired, 2, &xn, b));
            t.case(g1.value() == Some(&want1), || format!("e1({x}) = {}, expected {}", show(&g1), short(&want1)));
            t.case(g2.value() == Some(&want2), || format!("e2({x}) = {}, expected {}", show(&g2), short(&want2)));
            let want_branch = if x >= X0 { Branch::Diagonal } else { Branch::NotFired };
            t.case(th.branch(&fired, &th.e1, &xn) == want_branch, || format!("e1 branch at {x}"));
        }
    }
    t.finish(format!("e1 adds one and e2 outputs zero from x = {X0}; both follow p otherwise"))
}
