//! MSB-first bit streams with self-delimiting numeric literals.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::numcode::Nat;

pub(crate) struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    pub(crate) fn new() -> Self {
        BitWriter { bits: Vec::new() }
    }

    pub(crate) fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    pub(crate) fn push_fixed(&mut self, v: u64, width: u32) {
        for i in (0..width).rev() {
            self.bits.push((v >> i) & 1 == 1);
        }
    }

    pub(crate) fn push_digits(&mut self, n: &Nat) {
        let len = crate::numcode::bitlen(n);
        for i in (0..len).rev() {
            self.bits.push(n.bit(i));
        }
    }

    /// Elias-gamma code of `k ≥ 1`.
    pub(crate) fn push_gamma(&mut self, k: u64) {
        let w = 64 - k.leading_zeros();
        for _ in 1..w {
            self.bits.push(false);
        }
        self.push_fixed(k, w);
    }

    pub(crate) fn push_literal(&mut self, n: &Nat) {
        self.push_gamma(crate::numcode::bitlen(n));
        self.push_digits(n);
    }

    pub(crate) fn push_small(&mut self, v: u64) {
        self.push_literal(&Nat::from(v));
    }

    pub(crate) fn into_nat(self) -> Nat {
        let mut bytes = Vec::with_capacity(self.bits.len() / 8 + 1);
        let pad = (8 - self.bits.len() % 8) % 8;
        let mut acc = 0u8;
        let mut n = 0;
        for b in std::iter::repeat_n(false, pad).chain(self.bits) {
            acc = (acc << 1) | b as u8;
            n += 1;
            if n == 8 {
                bytes.push(acc);
                acc = 0;
                n = 0;
            }
        }
        BigUint::from_bytes_be(&bytes)
    }
}

pub(crate) struct BitReader<'a> {
    src: &'a Nat,
    len: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub(crate) fn new(src: &'a Nat) -> Self {
        BitReader { src, len: src.bits(), pos: 0 }
    }

    pub(crate) fn remaining(&self) -> u64 {
        self.len - self.pos
    }

    pub(crate) fn bit(&mut self) -> Option<bool> {
        if self.pos >= self.len {
            return None;
        }
        let b = self.src.bit(self.len - 1 - self.pos);
        self.pos += 1;
        Some(b)
    }

    pub(crate) fn fixed(&mut self, width: u32) -> Option<u64> {
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.bit()? as u64;
        }
        Some(v)
    }

    pub(crate) fn gamma(&mut self) -> Option<u64> {
        let mut zeros = 0u32;
        while !self.bit()? {
            zeros += 1;
            if zeros >= 63 {
                return None;
            }
        }
        let rest = self.fixed(zeros)?;
        Some((1u64 << zeros) | rest)
    }

    pub(crate) fn literal(&mut self) -> Option<Nat> {
        let len = self.gamma()?;
        if len > self.remaining() {
            return None;
        }
        if len <= 64 {
            let v = self.fixed(len as u32)?;
            return (len == 1 || v >> (len - 1) == 1).then(|| Nat::from(v));
        }
        let start = self.len - self.pos;
        let end = start - len;
        self.pos += len;
        // Bits [end, start) of the source, as a number.
        let v = (self.src >> end) & ((Nat::from(1u8) << len) - 1u8);
        // Digits must be written without leading zeros, except a lone 0.
        if len > 1 && v.bits() != len {
            return None;
        }
        Some(v)
    }

    pub(crate) fn small(&mut self) -> Option<u64> {
        self.literal()?.to_u64()
    }
}
