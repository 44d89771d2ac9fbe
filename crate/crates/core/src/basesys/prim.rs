//! Registered host primitives reachable through `EXT`.
//!
//! The registry is a closed enum, so it is frozen once the crate is built.
//! Each primitive reads one register and writes one register; its declared
//! cost is charged on top of the unit dispatch cost.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prim {
    /// `⟨p, x⟩ ↦ φ_p(x)`; costs the simulated steps.
    Sim,
    /// `⟨p, a⟩ ↦ smn(p, a)`.
    Smn,
    /// `⟨sentence-code, x⟩ ↦ 1` if the oracle proves the sentence within `x`, else `0`.
    Oracle,
    /// `⟨template-id, args⟩ ↦ sentence code`.
    Sentence,
    /// `p ↦ pad(p)`.
    Pad,
    /// `⟨n, x⟩ ↦ prime(n)^x`.
    PrimePow,
    /// `k ↦ |k|`.
    Bitlen,
    /// `⟨a, b⟩ ↦ code of the set {a, b}`.
    SetCode,
    /// `⟨e, w′, w, c, q⟩ ↦ 1` if `q` is in the range of `φ_w`, else `0`.
    ZetaRange,
    /// `⟨e, w′, w, c, z⟩ ↦ φ_{w′}(z)`.
    ZetaWPrime,
    /// `⟨e, w′, w, c, z⟩ ↦ φ_w(z)`.
    ZetaW,
}

impl Prim {
    pub const ALL: [Prim; 11] = [
        Prim::Sim,
        Prim::Smn,
        Prim::Oracle,
        Prim::Sentence,
        Prim::Pad,
        Prim::PrimePow,
        Prim::Bitlen,
        Prim::SetCode,
        Prim::ZetaRange,
        Prim::ZetaWPrime,
        Prim::ZetaW,
    ];

    pub fn id(self) -> u64 {
        Prim::ALL.iter().position(|&p| p == self).unwrap() as u64
    }

    pub fn from_id(id: u64) -> Option<Prim> {
        Prim::ALL.get(usize::try_from(id).ok()?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Prim::Sim => "SIM",
            Prim::Smn => "SMN",
            Prim::Oracle => "ORACLE",
            Prim::Sentence => "SENTENCE",
            Prim::Pad => "PAD",
            Prim::PrimePow => "PRIMEPOW",
            Prim::Bitlen => "BITLEN",
            Prim::SetCode => "SETCODE",
            Prim::ZetaRange => "ZETA_RANGE",
            Prim::ZetaWPrime => "ZETA_WPRIME",
            Prim::ZetaW => "ZETA_W",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for p in Prim::ALL {
            assert_eq!(Prim::from_id(p.id()), Some(p));
        }
        assert_eq!(Prim::from_id(Prim::ALL.len() as u64), None);
    }
}
