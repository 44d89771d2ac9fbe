use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::super::{gen, short, Check, Config, Suite, Tally};
use crate::numcode::{bitlen, nth_prime, pair, set_decode, set_encode, tuple_decode, tuple_encode, unpair, Nat, SetCode};

const S: Suite = Suite::Pairing;
const SAMPLES: usize = 10_000;

/// Interleave binary strings by hand: `y` supplies the rightmost digit.
fn reference_pair(x: &Nat, y: &Nat) -> Nat {
    let (xs, ys) = (x.to_str_radix(2), y.to_str_radix(2));
    let width = xs.len().max(ys.len());
    let (xs, ys) = (format!("{xs:0>width$}"), format!("{ys:0>width$}"));
    let digits: String = xs.chars().zip(ys.chars()).flat_map(|(a, b)| [a, b]).collect();
    Nat::parse_bytes(digits.as_bytes(), 2).expect("binary digits")
}

fn random_tuple(rng: &mut impl Rng) -> Vec<Nat> {
    let n = rng.gen_range(2..=6);
    (0..n).map(|_| gen::nat(rng, 80)).collect()
}

pub fn run(rng: &mut impl Rng, _cfg: &Config) -> Vec<Check> {
    let mut checks = Vec::new();

    let mut t = Tally::new(S, "worked-example");
    let z = pair(&Nat::from(15u8), &Nat::from(2u8));
    t.case(z.to_str_radix(2) == "10101110", || format!("<15,2> = 0b{}", z.to_str_radix(2)));
    t.case(unpair(&Nat::from(0b1010_1110u8)) == (Nat::from(15u8), Nat::from(2u8)), || "unpair(0b10101110)".into());
    for (x, y, want) in [(0u8, 0u8, 0u8), (0, 1, 1), (1, 0, 2)] {
        let got = pair(&Nat::from(x), &Nat::from(y));
        t.case(got == Nat::from(want), || format!("<{x},{y}> = {got}, expected {want}"));
    }
    checks.push(t.finish(format!("<15,2> = 0b{} = {z}", z.to_str_radix(2))));

    let mut t = Tally::new(S, "round-trip");
    for _ in 0..SAMPLES {
        let (x, y) = (gen::nat(rng, 256), gen::nat(rng, 256));
        let z = pair(&x, &y);
        t.case(unpair(&z) == (x.clone(), y.clone()), || format!("unpair(pair({}, {}))", short(&x), short(&y)));
        t.case(z == reference_pair(&x, &y), || format!("pair({}, {}) differs from string interleave", short(&x), short(&y)));
        let w = gen::nat(rng, 512);
        let (a, b) = unpair(&w);
        t.case(pair(&a, &b) == w, || format!("pair(unpair({}))", short(&w)));
    }
    checks.push(t.finish("unpair∘pair and pair∘unpair are identities; matches string interleave"));

    let mut t = Tally::new(S, "tuple-round-trip");
    for _ in 0..SAMPLES {
        let xs = random_tuple(rng);
        let z = tuple_encode(&xs, xs.len()).expect("arity matches");
        t.case(tuple_decode(&z, xs.len()).as_ref() == Ok(&xs), || format!("{}-tuple", xs.len()));
    }
    let x = Nat::from(5u8);
    t.case(tuple_encode(std::slice::from_ref(&x), 1).is_err(), || "arity 1 accepted".into());
    t.case(tuple_encode(&[x.clone(), x.clone()], 3).is_err(), || "length mismatch accepted".into());
    checks.push(t.finish("right-nested tuples decode; arity checked"));

    let mut odd = Tally::new(S, "tuple-odd");
    let mut mono = Tally::new(S, "tuple-monotone");
    let mut max = Tally::new(S, "tuple-max");
    for _ in 0..SAMPLES {
        let xs = random_tuple(rng);
        let n = xs.len();
        let z = tuple_encode(&xs, n).expect("arity matches");
        if z.is_odd() {
            odd.case(xs[n - 1].is_odd(), || format!("odd code, even last slot in {n}-tuple"));
        }
        let top = xs.iter().max().expect("non-empty");
        max.case(top <= &z, || format!("max exceeds code for {n}-tuple"));
        let slot = rng.gen_range(0..n);
        let mut ys = xs.clone();
        ys[slot] += gen::nat(rng, 40) + 1u8;
        let z2 = tuple_encode(&ys, n).expect("arity matches");
        mono.case(z2 > z, || format!("raising slot {slot} of a {n}-tuple did not raise the code"));
    }
    checks.push(odd.finish("odd code implies odd last element"));
    checks.push(mono.finish("strictly increasing in every slot"));
    checks.push(max.finish("every element is at most the code"));

    let mut t = Tally::new(S, "bitlen");
    for (k, want) in [(0u8, 1u64), (1, 1), (4, 3)] {
        t.case(bitlen(&Nat::from(k)) == want, || format!("|{k}| = {}", bitlen(&Nat::from(k))));
    }
    for _ in 0..SAMPLES {
        let k = gen::nat(rng, 300);
        let digits = k.to_str_radix(2).len() as u64;
        t.case(bitlen(&k) == digits, || format!("|{}|", short(&k)));
    }
    checks.push(t.finish("length of the binary numeral, |0| = 1"));

    let mut t = Tally::new(S, "set-codes");
    let set = |v: &[u64]| v.iter().map(|&x| Nat::from(x)).collect::<BTreeSet<_>>();
    for (s, code) in [(set(&[]), 0u64), (set(&[0]), 1), (set(&[3, 5]), 15)] {
        let got = set_encode(&s).map(|c| c.0);
        t.case(got == Ok(Nat::from(code)), || format!("{s:?} coded as {got:?}"));
    }
    t.case(set_encode(&set(&[1, 2, 3])).is_err(), || "three-element set accepted".into());
    for _ in 0..SAMPLES {
        let c = SetCode(gen::nat(rng, 128));
        let s = set_decode(&c);
        t.case(s.len() <= 2 && set_encode(&s).as_ref() == Ok(&c), || format!("code {}", short(&c.0)));
    }
    checks.push(t.finish("decode is onto sets of size at most two; encode inverts it"));

    let mut t = Tally::new(S, "primes");
    let mut sieve = Vec::new();
    let mut k = 2u64;
    while sieve.len() < 200 {
        if sieve.iter().all(|&p| !k.is_multiple_of(p)) {
            sieve.push(k);
        }
        k += 1;
    }
    for (i, &p) in sieve.iter().enumerate() {
        let got = nth_prime(&Nat::from(i));
        t.case(got == Nat::from(p), || format!("prime({i}) = {got}, expected {p}"));
    }
    t.case(nth_prime(&Nat::zero()) == Nat::from(2u8) && nth_prime(&Nat::one()) == Nat::from(3u8), || "prime(0), prime(1)".into());
    checks.push(t.finish("first 200 primes match a sieve"));

    checks
}
