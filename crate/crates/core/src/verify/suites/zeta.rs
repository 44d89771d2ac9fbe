use std::collections::HashSet;

use num_integer::Integer;
use rand::Rng;

use super::super::{gen, short, Check, Config, Suite, Tally};
use super::show;
use crate::basesys::{classify, Machine};
use crate::constructions::zeta::{diagonal_value, materialize, EVAL_BUDGET};
use crate::constructions::{zeta_build, Branch, DerivedSystem, ZetaCodes};
use crate::logic::{make_scripted, make_silent, OracleScript};
use crate::numcode::{pair, Nat};

const S: Suite = Suite::Zeta;
const X0: u64 = 3;

/// Random `w` argument atoms, sometimes themselves `w` outputs.
fn atom(rng: &mut impl Rng, codes: &ZetaCodes) -> Nat {
    let p = gen::halting_subject(rng);
    if rng.gen_bool(0.25) {
        codes.structural().w(&pair(&p, &gen::halting_subject(rng)))
    } else {
        p
    }
}

fn eval(sys: &DerivedSystem, p: &Nat, x: &Nat, budget: u64) -> Option<Nat> {
    sys.eval(p, x, budget).value().cloned()
}

pub fn run(rng: &mut impl Rng, cfg: &Config) -> Vec<Check> {
    let b = cfg.budget.max(EVAL_BUDGET);
    let silent = zeta_build(make_silent());
    let codes = silent.zeta.clone().expect("zeta build");
    let st = codes.structural();
    let m = Machine::default();
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "codes");
    let all = [&codes.e, &codes.w_prime, &codes.w, &codes.c];
    t.case(all.iter().all(|c| classify(c).is_normal()), || "auxiliary code abnormal".into());
    t.case(all.iter().collect::<HashSet<_>>().len() == 4, || "auxiliary codes coincide".into());
    for z in 0..32u32 {
        let z = Nat::from(z);
        let c_out = m.run(&codes.c, &z, b);
        t.case(c_out.value() == Some(&st.phi_c(&z)), || format!("φ_c({z}) = {}", show(&c_out)));
        let wp = m.run(&codes.w_prime, &z, b);
        t.case(wp.value() == Some(&st.w_prime(&z)), || format!("φ_w'({z}) = {}", show(&wp)));
        let w = m.run(&codes.w, &z, b);
        t.case(w.value() == Some(&st.w(&z)), || format!("φ_w({z}) = {}", show(&w)));
    }
    let bits = |n: &Nat| n.bits();
    checks.push(t.finish(format!(
        "e, w', w, c normal and distinct ({}, {}, {}, {} bits); machine agrees with host on [0, 32)",
        bits(&codes.e), bits(&codes.w_prime), bits(&codes.w), bits(&codes.c)
    )));

    let mut t = Tally::new(S, "silent-transparency");
    for _ in 0..200 {
        let (p, x) = (gen::halting_subject(rng), gen::small_input(rng));
        let y = m.run(&p, &x, b).value().cloned().expect("halting subjects halt");
        let got = silent.eval(&p, &x, b);
        t.case(got.value() == Some(&y), || format!("ζ_{}({x}) = {}, φ gives {}", short(&p), show(&got), short(&y)));
        t.case(silent.branch(&p, &x) == Branch::NotFired, || "ζ fired silently".into());
    }
    checks.push(t.finish("ζ agrees with φ on 200 halting points"));

    checks.push(diagonal(rng, &codes, b));
    checks.push(composition(rng, &silent, &codes, b));

    let mut t = Tally::new(S, "associativity");
    let w2 = |a: &Nat, c: &Nat| st.w(&pair(a, c));
    for _ in 0..50 {
        let (a, bb, c) = (atom(rng, &codes), atom(rng, &codes), atom(rng, &codes));
        let left = w2(&w2(&a, &bb), &c);
        let right = w2(&a, &w2(&bb, &c));
        t.case(left == right, || format!("({}·{})·{} ≠ {}·({}·{})", short(&a), short(&bb), short(&c), short(&a), short(&bb), short(&c)));
        let x = gen::small_input(rng);
        let on_machine = m.run(&codes.w, &pair(&w2(&a, &bb), &c), b);
        t.case(on_machine.value() == Some(&left), || format!("machine φ_w gives {}", show(&on_machine)));
        let composed = [&c, &bb, &a].into_iter().try_fold(x.clone(), |acc, f| eval(&silent, f, &acc, b));
        let direct = eval(&silent, &left, &x, b);
        t.case(composed.is_some() && direct == composed, || format!("ζ of the composite on {x}: {:?} vs {:?}", direct.as_ref().map(short), composed.as_ref().map(short)));
    }
    checks.push(t.finish("w(<w(<a,b>),c>) = w(<a,w(<b,c>)>) as numbers, including nested atoms"));

    checks.extend(explored(rng, &codes, cfg));
    checks
}

fn diagonal(rng: &mut impl Rng, codes: &ZetaCodes, b: u64) -> Check {
    let script = OracleScript::new().with("ExistsDistinctEquiv[zeta:*]()".parse().expect("valid pattern"), X0);
    let sys = zeta_build(make_scripted(script));
    let st = codes.structural();
    let mut t = Tally::new(S, "diagonal");
    for p in 0..6u64 {
        let p = Nat::from(p);
        t.case(p != codes.w && !st.in_range_w(&p), || "small p exempt".into());
        for x in X0..=8 {
            let got = sys.eval(&p, &Nat::from(x), b);
            let want = diagonal_value(&p, x as u32);
            t.case(got.value() == Some(&want), || format!("ζ_{p}({x}) = {}, expected prime({p}+1)^{x}", show(&got)));
            t.case(sys.branch(&p, &Nat::from(x)) == Branch::Diagonal, || format!("branch at ({p}, {x})"));
        }
    }
    // Exempt: w itself and its outputs keep their φ behaviour.
    for _ in 0..10 {
        let (p, q) = (gen::halting_subject(rng), gen::halting_subject(rng));
        let z = pair(&p, &q);
        let y = st.w(&z);
        t.case(sys.branch(&codes.w, &z) == Branch::Exempt, || "w not exempt".into());
        t.case(eval(&sys, &codes.w, &z, b) == Some(y.clone()), || "ζ_w differs from φ_w once fired".into());
        t.case(sys.branch(&y, &Nat::from(X0 + 1)) == Branch::Exempt, || "w output not exempt".into());
        // Below the threshold every factor takes the otherwise clause.
        let m = Machine::default();
        for x in 0..X0 {
            let x = Nat::from(x);
            let inner = m.run(&q, &x, b).value().cloned();
            let Some(mid) = inner.filter(|v| v < &Nat::from(X0)) else { continue };
            let want = m.run(&p, &mid, b).value().cloned();
            t.case(eval(&sys, &y, &x, b) == want, || format!("ζ_y({x}) below threshold"));
        }
    }
    t.finish(format!("ζ_p(x) = prime(p+1)^x for p < 6, x in [{X0}, 8]; w and its outputs exempt"))
}

fn composition(rng: &mut impl Rng, sys: &DerivedSystem, codes: &ZetaCodes, b: u64) -> Check {
    let st = codes.structural();
    let mut t = Tally::new(S, "composition");
    let mut longest = 0;
    for _ in 0..100 {
        let (p, q, x) = (gen::halting_subject(rng), gen::halting_subject(rng), gen::small_input(rng));
        let Some(y) = eval(sys, &codes.w, &pair(&p, &q), b) else {
            t.case(false, || "ζ_w(<p, q>) did not halt".into());
            continue;
        };
        t.case(y == st.w(&pair(&p, &q)) && y.is_even(), || format!("ζ_w(<p, q>) = {}", short(&y)));
        let want = eval(sys, &q, &x, b).and_then(|v| eval(sys, &p, &v, b));
        let got = eval(sys, &y, &x, b);
        t.case(want.is_some() && got == want, || format!("ζ_y({x}) = {got:?}, ζ_p(ζ_q(x)) = {want:?}"));
        let chain = st.chain(&y);
        longest = longest.max(chain.len());
        let folded = chain.iter().rev().try_fold(x.clone(), |acc, f| eval(sys, f, &acc, b));
        t.case(folded == want, || "chain composition differs".into());
    }
    t.finish(format!("ζ_ζw(<p,q>) = ζ_p ∘ ζ_q on 100 triples; chains up to length {longest} compose correctly"))
}

fn explored(rng: &mut impl Rng, codes: &ZetaCodes, cfg: &Config) -> Vec<Check> {
    let n = cfg.range;
    let st = codes.structural();
    let table = materialize(codes, &Machine::default(), n, cfg.budget.max(EVAL_BUDGET));
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "explored-range");
    for z in 0..n {
        let zn = Nat::from(z);
        t.case(table.w_prime[z] == st.w_prime(&zn), || format!("w' tables differ at {z}"));
        t.case(table.w[z] == st.w(&zn), || format!("w tables differ at {z}"));
        t.case(table.pad_steps[z] == 0, || format!("w' needed {} padding steps at {z}", table.pad_steps[z]));
    }
    checks.push(t.finish(format!("literal tables on [0, {n}) match the structural provider; {} ties", table.ties)));

    let mut even = Tally::new(S, "range-even");
    let mut subset = Tally::new(S, "range-subset");
    let mut bound = Tally::new(S, "membership-bound");
    for (z, q) in table.w.iter().enumerate() {
        even.case(q.is_even(), || format!("φ_w({z}) odd"));
        let pre = st.w_prime_preimage(q);
        subset.case(pre.as_ref().is_some_and(|v| &st.w_prime(v) == q), || format!("φ_w({z}) not a w' value"));
        bound.case(Nat::from(z) < *q, || format!("φ_w({z}) ≤ {z}"));
        match st.canonical_preimage(q) {
            Some((r, s)) => {
                let zz = pair(&r, &s);
                bound.case(&zz < q && &st.w(&zz) == q, || format!("canonical preimage of φ_w({z})"));
            }
            None => bound.case(false, || format!("φ_w({z}) has no canonical preimage")),
        }
    }
    checks.push(even.finish(format!("{n} values of φ_w, all even")));
    checks.push(subset.finish("every φ_w value is a φ_w' value"));
    checks.push(bound.finish("each q in ρ(φ_w) has a preimage <r, s> < q"));

    let mut t = Tally::new(S, "w-prime-monotone");
    let upto = 200.max(n);
    let values: Vec<Nat> = (0..=upto).map(|z| if z < n { table.w_prime[z].clone() } else { st.w_prime(&Nat::from(z)) }).collect();
    for z in 1..=upto {
        t.case(values[z - 1] < values[z], || format!("φ_w'({}) ≥ φ_w'({z})", z - 1));
    }
    checks.push(t.finish(format!("strictly increasing on [0, {upto}]")));

    let mut t = Tally::new(S, "chain");
    let mut subjects: Vec<Nat> = (0..n).map(Nat::from).collect();
    subjects.extend(table.w.iter().cloned());
    let mut nested = 0;
    for _ in 0..100 {
        let (a, b, c) = (gen::halting_subject(rng), gen::halting_subject(rng), gen::halting_subject(rng));
        let x = st.w(&pair(&st.w(&pair(&a, &b)), &c));
        let len = st.chain(&x).len();
        t.case(len >= 3, || format!("nested composite has a chain of length {len}"));
        nested += 1;
        subjects.push(x);
    }
    let mut longest = 0;
    for x in &subjects {
        let chain = st.chain(x);
        longest = longest.max(chain.len());
        t.case(&st.unchain(&chain) == x, || format!("unchain(chain({})) differs", short(x)));
        t.case(chain.iter().all(|e| !st.in_range_w(e) && !table.in_range_w(e)), || format!("chain({}) has a w output", short(x)));
    }
    checks.push(t.finish(format!(
        "unchain∘chain = id on {} values ({nested} nested composites); chain elements never in ρ(φ_w); longest chain {longest}",
        subjects.len()
    )));
    checks
}
