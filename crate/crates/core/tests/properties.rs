use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use krt_core::basesys::{classify, decode_program, encode_program, Machine};
use krt_core::combinators::{pad, pad_once, smn};
use krt_core::logic::{make_scripted, oracle_query, OracleScript, SentencePattern};
use krt_core::numcode::{bitlen, pair, set_decode, set_encode, tuple_decode, tuple_encode, unpair, Nat};
use krt_core::universal::{emit_certificate, simulate, verify_certificate, SimMode};
use krt_core::verify::gen;
use krt_core::{Sentence, SystemTag};

const BUDGET: u64 = 100_000;

fn nat() -> impl Strategy<Value = Nat> {
    prop::collection::vec(any::<u8>(), 0..24).prop_map(|bytes| BigUint::from_bytes_le(&bytes))
}

fn program() -> impl Strategy<Value = Nat> {
    any::<u64>().prop_map(|seed| gen::any_program(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn halting() -> impl Strategy<Value = Nat> {
    any::<u64>().prop_map(|seed| gen::halting_program(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn system() -> impl Strategy<Value = SystemTag> {
    prop_oneof![
        Just(SystemTag::Phi),
        nat().prop_map(SystemTag::Psi),
        nat().prop_map(SystemTag::Eta),
        nat().prop_map(SystemTag::Theta),
        nat().prop_map(SystemTag::Zeta),
    ]
}

fn sentence() -> impl Strategy<Value = Sentence> {
    prop_oneof![
        (nat(), nat(), system()).prop_map(|(a, b, s)| Sentence::equiv(a, b, s)),
        system().prop_map(Sentence::exists_distinct_equiv),
        (nat(), system()).prop_map(|(u, s)| Sentence::is_universal(u, s)),
        system().prop_map(Sentence::exists_universal),
        (nat(), nat(), nat()).prop_map(|(p, x, y)| Sentence::halts_with(p, x, y)),
    ]
}

proptest! {
    #[test]
    fn pairing_is_a_bijection(x in nat(), y in nat(), z in nat()) {
        prop_assert_eq!(unpair(&pair(&x, &y)), (x, y));
        let (a, b) = unpair(&z);
        prop_assert_eq!(pair(&a, &b), z);
    }

    #[test]
    fn pairing_is_monotone(x in nat(), y in nat()) {
        let p = pair(&x, &y);
        prop_assert!(pair(&(&x + 1u8), &y) > p);
        prop_assert!(pair(&x, &(&y + 1u8)) > p);
    }

    #[test]
    fn tuples_round_trip_and_bound_elements(xs in prop::collection::vec(nat(), 2..6)) {
        let code = tuple_encode(&xs, xs.len()).unwrap();
        prop_assert!(xs.iter().all(|x| x <= &code));
        if xs.last().unwrap().bit(0) {
            prop_assert!(code.bit(0));
        }
        prop_assert_eq!(tuple_decode(&code, xs.len()).unwrap(), xs);
    }

    #[test]
    fn tuples_need_two_elements(x in nat()) {
        prop_assert!(tuple_encode(std::slice::from_ref(&x), 1).is_err());
        prop_assert!(tuple_decode(&x, 1).is_err());
    }

    #[test]
    fn bitlen_is_binary_length(k in nat()) {
        prop_assert_eq!(bitlen(&k), k.to_str_radix(2).len() as u64);
    }

    #[test]
    fn set_codes_round_trip(elems in prop::collection::btree_set(nat(), 0..3)) {
        let code = set_encode(&elems).unwrap();
        prop_assert_eq!(set_decode(&code), elems);
    }

    #[test]
    fn set_decoding_is_onto_small_sets(c in nat()) {
        let set: BTreeSet<Nat> = set_decode(&krt_core::SetCode(c.clone()));
        prop_assert!(set.len() <= 2);
        prop_assert_eq!(set_encode(&set).unwrap().0, c);
    }

    #[test]
    fn normal_codes_re_encode_exactly(p in prop_oneof![program(), nat()]) {
        if (&p % 8u8) != BigUint::ZERO {
            prop_assert!(!classify(&p).is_normal());
        }
        match decode_program(&p) {
            Some(body) => {
                prop_assert!(classify(&p).is_normal());
                prop_assert_eq!(encode_program(&body), p);
            }
            None => prop_assert!(!classify(&p).is_normal()),
        }
    }

    #[test]
    fn padcount_does_not_change_behaviour(p in program(), x in nat(), extra in 1u32..5) {
        let mut body = decode_program(&p).unwrap();
        body.padcount += extra;
        let padded = encode_program(&body);
        let m = Machine::default();
        prop_assert_eq!(m.run(&p, &x, BUDGET), m.run(&padded, &x, BUDGET));
    }

    #[test]
    fn runs_are_deterministic(p in prop_oneof![program(), nat()], x in nat()) {
        let m = Machine::default();
        prop_assert_eq!(m.run(&p, &x, BUDGET), m.run(&p, &x, BUDGET));
    }

    #[test]
    fn halting_step_count_is_exact(p in halting(), x in nat()) {
        let m = Machine::default();
        let t = m.run(&p, &x, BUDGET).steps().expect("halting program");
        prop_assert!(m.run(&p, &x, t).halted());
        prop_assert!(!m.run(&p, &x, t - 1).halted());
    }

    #[test]
    fn simulation_modes_agree(p in halting(), x in nat()) {
        let m = Machine::default();
        let fast = simulate(&m, &p, &x, BUDGET, SimMode::Accelerated);
        let pure = simulate(&m, &p, &x, 2 * BUDGET, SimMode::Pure);
        prop_assert!(fast.halted());
        prop_assert_eq!(fast.value(), pure.value());
    }

    #[test]
    fn certificates_verify_and_reject_short_budgets(p in halting(), x in nat()) {
        let m = Machine::default();
        let cert = emit_certificate(&m, &p, &x, BUDGET).unwrap();
        prop_assert!(verify_certificate(&m, &cert));
        if cert.t > BigUint::ZERO {
            let short = krt_core::Certificate { t: &cert.t - 1u8, ..cert.clone() };
            prop_assert!(!verify_certificate(&m, &short));
        }
    }

    #[test]
    fn pad_is_even_larger_and_equivalent(p in prop_oneof![halting(), nat()], x in nat()) {
        let q = pad(&p);
        prop_assert!(q > p);
        prop_assert!(!q.bit(0));
        prop_assert_eq!(classify(&q).is_normal(), classify(&p).is_normal());
        let m = Machine::default();
        let (a, b) = (m.run(&p, &x, BUDGET), m.run(&q, &x, BUDGET));
        prop_assert_eq!(a.value(), b.value());
    }

    #[test]
    fn pad_once_never_returns_its_input(p in prop_oneof![program(), nat()]) {
        prop_assert_ne!(pad_once(&p), p);
    }

    #[test]
    fn smn_stores_its_argument(p in halting(), a in nat(), x in nat()) {
        let m = Machine::default();
        let lhs = m.run(&smn(&p, &a), &x, BUDGET);
        let rhs = m.run(&p, &pair(&a, &x), BUDGET);
        prop_assert_eq!(lhs.value(), rhs.value());
    }

    #[test]
    fn sentence_codes_are_injective(s in sentence(), t in sentence()) {
        prop_assert_eq!(Sentence::from_code(&s.code()), Some(s.clone()));
        prop_assert_eq!(s == t, s.code() == t.code());
    }

    #[test]
    fn sentences_parse_back_as_exact_patterns(s in sentence()) {
        let pattern: SentencePattern = s.to_string().parse().unwrap();
        prop_assert!(pattern.matches(&s));
        prop_assert_eq!(pattern, SentencePattern::exact(&s));
    }

    #[test]
    fn scripted_oracles_are_monotone(s in sentence(), x0 in 0u64..64, x in 0u64..128, dx in 0u64..64) {
        let oracle = make_scripted(OracleScript::new().with(SentencePattern::exact(&s), x0));
        let fired = oracle_query(oracle.as_ref(), &s, &Nat::from(x));
        prop_assert_eq!(fired, x >= x0);
        if fired {
            prop_assert!(oracle_query(oracle.as_ref(), &s, &Nat::from(x + dx)));
        }
    }
}
