//! Numeric codings: bit-interleaving pairing, right-nested tuples, binary
//! length, codes for sets of at most two naturals, and the prime enumerator.
//!
//! The pairing interleaves the binary digits of `x` and `y`, starting on the
//! right with the least significant digit of `y`. It is a bijection
//! `ℕ × ℕ → ℕ`, strictly monotone in each argument, and never smaller than
//! either argument.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision natural number. Program codes, data and budgets in
/// the coded world are all `Nat`.
pub type Nat = BigUint;

/// Spread the 32 bits of `v` into the even positions of a `u64`.
#[inline]
fn spread(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread`]: collect the even-position bits of `x`.
#[inline]
fn compact(mut x: u64) -> u32 {
    x &= 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

/// `⟨x, y⟩`: interleave binary digits, `y` supplying the least significant bit.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let xs = x.to_u32_digits();
    let ys = y.to_u32_digits();
    let n = xs.len().max(ys.len());
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let xi = xs.get(i).copied().unwrap_or(0);
        let yi = ys.get(i).copied().unwrap_or(0);
        let w = (spread(xi) << 1) | spread(yi);
        out.push(w as u32);
        out.push((w >> 32) as u32);
    }
    BigUint::new(out)
}

/// Convenience wrapper around [`pair`] for small arguments.
pub fn pair_u64(x: u64, y: u64) -> Nat {
    pair(&Nat::from(x), &Nat::from(y))
}

/// Inverse of [`pair`].
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    let ds = z.to_u64_digits();
    let mut xs = Vec::with_capacity(ds.len());
    let mut ys = Vec::with_capacity(ds.len());
    for &d in &ds {
        xs.push(compact(d >> 1));
        ys.push(compact(d));
    }
    (BigUint::new(xs), BigUint::new(ys))
}

/// Right-nested tuple `⟨x₁, ⟨x₂, … ⟨xₙ₋₁, xₙ⟩⟩⟩` of arity `n ≥ 2`.
pub fn tuple_encode(xs: &[Nat], n: usize) -> Result<Nat, Error> {
    if n < 2 {
        return Err(Error::Arity { expected: 2, got: n });
    }
    if xs.len() != n {
        return Err(Error::Arity { expected: n, got: xs.len() });
    }
    let mut acc = xs[n - 1].clone();
    for x in xs[..n - 1].iter().rev() {
        acc = pair(x, &acc);
    }
    Ok(acc)
}

/// Inverse of [`tuple_encode`] for the same arity.
pub fn tuple_decode(z: &Nat, n: usize) -> Result<Vec<Nat>, Error> {
    if n < 2 {
        return Err(Error::Arity { expected: 2, got: n });
    }
    let mut out = Vec::with_capacity(n);
    let mut rest = z.clone();
    for _ in 0..n - 1 {
        let (head, tail) = unpair(&rest);
        out.push(head);
        rest = tail;
    }
    out.push(rest);
    Ok(out)
}

/// Length of `k` in binary; `|0| = 1`.
pub fn bitlen(k: &Nat) -> u64 {
    k.bits().max(1)
}

/// Code of a finite set of cardinality at most two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetCode(pub Nat);

/// `∅ ↦ 0`, `{u, u+v} ↦ ⟨u, v⟩ + 1`.
pub fn set_encode(s: &BTreeSet<Nat>) -> Result<SetCode, Error> {
    let mut it = s.iter();
    match (it.next(), it.next(), it.next()) {
        (None, _, _) => Ok(SetCode(Nat::zero())),
        (Some(u), None, _) => Ok(SetCode(pair(u, &Nat::zero()) + 1u32)),
        (Some(u), Some(hi), None) => Ok(SetCode(pair(u, &(hi - u)) + 1u32)),
        _ => Err(Error::SetTooLarge(s.len())),
    }
}

/// Total decoder: every natural number names some set.
pub fn set_decode(c: &SetCode) -> BTreeSet<Nat> {
    let mut s = BTreeSet::new();
    if c.0.is_zero() {
        return s;
    }
    let (u, v) = unpair(&(&c.0 - 1u32));
    s.insert(&u + &v);
    s.insert(u);
    s
}

/// The `n`-th prime, counting from `prime(0) = 2`.
pub fn nth_prime(n: &Nat) -> Nat {
    let mut remaining = n.to_u64().expect("prime index beyond u64");
    let mut candidate: u64 = 2;
    loop {
        if is_prime(candidate) {
            if remaining == 0 {
                return Nat::from(candidate);
            }
            remaining -= 1;
        }
        candidate += 1;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parse a decimal or `0x`/`0b`-prefixed numeral.
pub fn parse_nat(s: &str) -> Option<Nat> {
    let s = s.trim().replace('_', "");
    let (digits, radix) = if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        (h.to_string(), 16)
    } else if let Some(b) = s.strip_prefix("0b").or_else(|| s.strip_prefix("0B")) {
        (b.to_string(), 2)
    } else {
        (s, 10)
    };
    if digits.is_empty() {
        return None;
    }
    Nat::parse_bytes(digits.as_bytes(), radix)
}

/// `2^k` as a `Nat`.
pub fn pow2(k: u64) -> Nat {
    Nat::one() << k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    /// Independent reference: interleave via per-bit string manipulation.
    fn pair_by_strings(x: u64, y: u64) -> u128 {
        let mut out: u128 = 0;
        for i in 0..64 {
            out |= (((y >> i) & 1) as u128) << (2 * i);
            out |= (((x >> i) & 1) as u128) << (2 * i + 1);
        }
        out
    }

    #[test]
    fn worked_interleaving() {
        let z = pair(&n(15), &n(2));
        assert_eq!(format!("{:b}", z), "10101110");
        assert_eq!(z, n(174));
        assert_eq!(unpair(&n(0b1010_1110)), (n(15), n(2)));
    }

    #[test]
    fn small_pairs() {
        assert_eq!(pair(&n(0), &n(0)), n(0));
        assert_eq!(pair(&n(0), &n(1)), n(1));
        assert_eq!(pair(&n(1), &n(0)), n(2));
        assert_eq!(unpair(&n(0)), (n(0), n(0)));
        assert_eq!(unpair(&n(1)), (n(0), n(1)));
    }

    #[test]
    fn matches_reference_interleaving() {
        for (x, y) in [(0u64, 0u64), (1, 1), (u64::MAX, 0), (0, u64::MAX), (0xdead_beef, 12345)] {
            assert_eq!(pair(&n(x), &n(y)), Nat::from(pair_by_strings(x, y)));
        }
    }

    #[test]
    fn tuples() {
        assert_eq!(tuple_encode(&[n(0), n(0), n(0)], 3).unwrap(), n(0));
        assert_eq!(tuple_encode(&[n(15), n(2)], 2).unwrap(), pair(&n(15), &n(2)));
        assert!(tuple_encode(&[n(4)], 1).is_err());
        assert!(tuple_encode(&[n(4), n(5)], 3).is_err());
        let xs = vec![n(3), n(1), n(4), n(1), n(5)];
        assert_eq!(tuple_decode(&tuple_encode(&xs, 5).unwrap(), 5).unwrap(), xs);
    }

    #[test]
    fn lengths() {
        assert_eq!(bitlen(&n(0)), 1);
        assert_eq!(bitlen(&n(1)), 1);
        assert_eq!(bitlen(&n(4)), 3);
    }

    #[test]
    fn set_codes() {
        assert_eq!(set_encode(&BTreeSet::new()).unwrap(), SetCode(n(0)));
        assert_eq!(set_encode(&[n(0)].into()).unwrap(), SetCode(n(1)));
        assert_eq!(set_encode(&[n(3), n(5)].into()).unwrap(), SetCode(n(15)));
        assert!(set_encode(&[n(1), n(2), n(3)].into()).is_err());
        assert_eq!(set_decode(&SetCode(n(15))), [n(3), n(5)].into());
    }

    #[test]
    fn primes() {
        assert_eq!(nth_prime(&n(0)), n(2));
        assert_eq!(nth_prime(&n(1)), n(3));
        assert_eq!(nth_prime(&n(4)), n(11));
    }

    #[test]
    fn numerals() {
        assert_eq!(parse_nat("174"), Some(n(174)));
        assert_eq!(parse_nat("0xAE"), Some(n(174)));
        assert_eq!(parse_nat("0b10101110"), Some(n(174)));
        assert_eq!(parse_nat("x1"), None);
        assert_eq!(parse_nat(""), None);
    }
}
