use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use krt_core::basesys::Machine;
use krt_core::combinators::{krt, pad_once};
use krt_core::constructions::{psi_build, zeta_build};
use krt_core::logic::make_silent;
use krt_core::numcode::{pair, pow2, unpair, Nat};
use krt_core::programs::{double, identity, succ};

const BUDGET: u64 = 100_000_000_000;

fn numcode(c: &mut Criterion) {
    let x = pow2(4096) - 1u8;
    let y = pow2(2048) + 12345u32;
    c.bench_function("pair/4096-bit", |b| b.iter(|| pair(black_box(&x), black_box(&y))));
    let z = pair(&x, &y);
    c.bench_function("unpair/8192-bit", |b| b.iter(|| unpair(black_box(&z))));
}

fn machine(c: &mut Criterion) {
    let m = Machine::default();
    let p = double();
    let x = Nat::from(1_000_000u32);
    c.bench_function("run/double", |b| b.iter(|| m.run(black_box(&p), black_box(&x), BUDGET)));

    let q = krt(&Nat::from(12345u32), &identity());
    c.bench_function("run/krt-echo", |b| b.iter(|| m.run(black_box(&q), black_box(&x), BUDGET)));
    c.bench_function("build/krt", |b| b.iter(|| krt(black_box(&x), black_box(&succ()))));
    let s = succ();
    c.bench_function("build/pad-once", |b| b.iter(|| pad_once(black_box(&s))));
}

fn constructions(c: &mut Criterion) {
    let x = Nat::from(5u8);
    let psi = psi_build(make_silent());
    c.bench_function("eval/psi-succ", |b| b.iter(|| psi.eval(black_box(&succ()), black_box(&x), BUDGET)));

    let zeta = zeta_build(make_silent());
    c.bench_function("eval/zeta-succ", |b| b.iter(|| zeta.eval(black_box(&succ()), black_box(&x), BUDGET)));
    let codes = zeta.zeta.clone().expect("zeta codes");
    let composite = codes.structural().w(&pair(&succ(), &double()));
    c.bench_function("eval/zeta-composite", |b| b.iter(|| zeta.eval(black_box(&composite), black_box(&x), BUDGET)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = numcode, machine, constructions
}
criterion_main!(benches);
