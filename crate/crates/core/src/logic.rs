//! Sentence templates, numeral substitution, and the budgeted provability
//! oracle `T ⊢_x`.
//!
//! No prover is included. An [`Oracle`] is any total, deterministic,
//! budget-monotone predicate on sentences. [`SilentOracle`] never fires;
//! [`ScriptedOracle`] fires on chosen patterns from chosen budgets onward,
//! so the diagonal branches of the constructions can be executed. A scripted
//! firing is a test fixture, not a proof.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::bits::{BitReader, BitWriter};
use crate::numcode::{parse_nat, tuple_decode, Nat};
use crate::Error;

/// Which programming system a sentence speaks about. Derived systems carry
/// their defining φ-code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemTag {
    Phi,
    Psi(Nat),
    Eta(Nat),
    Theta(Nat),
    Zeta(Nat),
}

/// The tag without its code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemKind {
    Phi,
    Psi,
    Eta,
    Theta,
    Zeta,
}

impl SystemKind {
    const ALL: [SystemKind; 5] = [SystemKind::Phi, SystemKind::Psi, SystemKind::Eta, SystemKind::Theta, SystemKind::Zeta];

    fn index(self) -> u64 {
        SystemKind::ALL.iter().position(|&k| k == self).unwrap() as u64
    }

    fn name(self) -> &'static str {
        match self {
            SystemKind::Phi => "phi",
            SystemKind::Psi => "psi",
            SystemKind::Eta => "eta",
            SystemKind::Theta => "theta",
            SystemKind::Zeta => "zeta",
        }
    }

    fn from_name(s: &str) -> Option<SystemKind> {
        SystemKind::ALL.into_iter().find(|k| k.name() == s)
    }

    fn has_code(self) -> bool {
        self != SystemKind::Phi
    }
}

impl SystemTag {
    pub fn kind(&self) -> SystemKind {
        match self {
            SystemTag::Phi => SystemKind::Phi,
            SystemTag::Psi(_) => SystemKind::Psi,
            SystemTag::Eta(_) => SystemKind::Eta,
            SystemTag::Theta(_) => SystemKind::Theta,
            SystemTag::Zeta(_) => SystemKind::Zeta,
        }
    }

    pub fn code(&self) -> Option<&Nat> {
        match self {
            SystemTag::Phi => None,
            SystemTag::Psi(e) | SystemTag::Eta(e) | SystemTag::Theta(e) | SystemTag::Zeta(e) => Some(e),
        }
    }

    fn build(kind: SystemKind, code: Option<Nat>) -> Option<SystemTag> {
        Some(match (kind, code) {
            (SystemKind::Phi, None) => SystemTag::Phi,
            (SystemKind::Psi, Some(e)) => SystemTag::Psi(e),
            (SystemKind::Eta, Some(e)) => SystemTag::Eta(e),
            (SystemKind::Theta, Some(e)) => SystemTag::Theta(e),
            (SystemKind::Zeta, Some(e)) => SystemTag::Zeta(e),
            _ => return None,
        })
    }
}

/// Sentence shapes quoted by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateKind {
    /// `sys_a = sys_b`.
    Equiv,
    /// `(∃r, t ≠ r)[sys_r = sys_t]`.
    ExistsDistinctEquiv,
    /// `u is universal in sys`.
    IsUniversal,
    /// `(∃u)[u is universal in sys]`.
    ExistsUniversal,
    /// `φ_p(x)↓ = y`.
    HaltsWith,
}

impl TemplateKind {
    const ALL: [TemplateKind; 5] = [
        TemplateKind::Equiv,
        TemplateKind::ExistsDistinctEquiv,
        TemplateKind::IsUniversal,
        TemplateKind::ExistsUniversal,
        TemplateKind::HaltsWith,
    ];

    fn index(self) -> u64 {
        TemplateKind::ALL.iter().position(|&k| k == self).unwrap() as u64
    }

    fn name(self) -> &'static str {
        match self {
            TemplateKind::Equiv => "Equiv",
            TemplateKind::ExistsDistinctEquiv => "ExistsDistinctEquiv",
            TemplateKind::IsUniversal => "IsUniversal",
            TemplateKind::ExistsUniversal => "ExistsUniversal",
            TemplateKind::HaltsWith => "HaltsWith",
        }
    }

    fn from_name(s: &str) -> Option<TemplateKind> {
        TemplateKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Numeral slots, excluding the system code.
    pub fn arity(self) -> usize {
        match self {
            TemplateKind::Equiv => 2,
            TemplateKind::ExistsDistinctEquiv | TemplateKind::ExistsUniversal => 0,
            TemplateKind::IsUniversal => 1,
            TemplateKind::HaltsWith => 3,
        }
    }
}

/// A template before substitution: shape plus system kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    pub kind: TemplateKind,
    pub system: SystemKind,
}

impl Template {
    pub fn new(kind: TemplateKind, system: SystemKind) -> Self {
        Template { kind, system }
    }

    /// Numeric id used by the `SENTENCE` primitive.
    pub fn id(self) -> Nat {
        Nat::from(self.kind.index() * 8 + self.system.index())
    }

    pub fn from_id(id: &Nat) -> Option<Template> {
        let id = id.to_u64()?;
        let kind = *TemplateKind::ALL.get((id / 8) as usize)?;
        let system = *SystemKind::ALL.get((id % 8) as usize)?;
        Some(Template { kind, system })
    }

    /// Total number of values to substitute: the system code, if any, then
    /// the numeral slots.
    pub fn slots(self) -> usize {
        self.system.has_code() as usize + self.kind.arity()
    }
}

/// A closed sentence with base-two numerals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence {
    kind: TemplateKind,
    sys: SystemTag,
    args: Vec<Nat>,
}

/// Instantiate `template` with `values` (system code first, when present).
pub fn substitute(template: Template, values: &[Nat]) -> Result<Sentence, Error> {
    if values.len() != template.slots() {
        return Err(Error::Arity { expected: template.slots(), got: values.len() });
    }
    if template.kind == TemplateKind::HaltsWith && template.system != SystemKind::Phi {
        return Err(Error::BadSentence("HaltsWith speaks only about phi".into()));
    }
    let (code, args) = if template.system.has_code() {
        (Some(values[0].clone()), values[1..].to_vec())
    } else {
        (None, values.to_vec())
    };
    let sys = SystemTag::build(template.system, code).expect("slot count checked");
    Ok(Sentence { kind: template.kind, sys, args })
}

impl Sentence {
    pub fn equiv(a: Nat, b: Nat, sys: SystemTag) -> Sentence {
        Sentence { kind: TemplateKind::Equiv, sys, args: vec![a, b] }
    }

    pub fn exists_distinct_equiv(sys: SystemTag) -> Sentence {
        Sentence { kind: TemplateKind::ExistsDistinctEquiv, sys, args: vec![] }
    }

    pub fn is_universal(u: Nat, sys: SystemTag) -> Sentence {
        Sentence { kind: TemplateKind::IsUniversal, sys, args: vec![u] }
    }

    pub fn exists_universal(sys: SystemTag) -> Sentence {
        Sentence { kind: TemplateKind::ExistsUniversal, sys, args: vec![] }
    }

    pub fn halts_with(p: Nat, x: Nat, y: Nat) -> Sentence {
        Sentence { kind: TemplateKind::HaltsWith, sys: SystemTag::Phi, args: vec![p, x, y] }
    }

    pub fn kind(&self) -> TemplateKind {
        self.kind
    }

    pub fn system(&self) -> &SystemTag {
        &self.sys
    }

    pub fn template(&self) -> Template {
        Template::new(self.kind, self.sys.kind())
    }

    fn values(&self) -> impl Iterator<Item = &Nat> {
        self.sys.code().into_iter().chain(self.args.iter())
    }

    /// Instantiate from a template id and a packed argument: `0` for no
    /// slots, the value itself for one slot, a right-nested tuple otherwise.
    pub fn from_template(id: &Nat, packed: &Nat) -> Option<Sentence> {
        let t = Template::from_id(id)?;
        let values = match t.slots() {
            0 => {
                if !packed.is_zero() {
                    return None;
                }
                vec![]
            }
            1 => vec![packed.clone()],
            n => tuple_decode(packed, n).ok()?,
        };
        substitute(t, &values).ok()
    }

    /// Injective numeric code: sentinel bit, template id, then one
    /// self-delimiting literal per value.
    pub fn code(&self) -> Nat {
        let mut w = BitWriter::new();
        w.push(true);
        w.push_small(self.kind.index());
        w.push_small(self.sys.kind().index());
        for v in self.values() {
            w.push_literal(v);
        }
        w.into_nat()
    }

    pub fn from_code(code: &Nat) -> Option<Sentence> {
        let mut r = BitReader::new(code);
        if !r.bit()? {
            return None;
        }
        let kind = *TemplateKind::ALL.get(r.small()? as usize)?;
        let system = *SystemKind::ALL.get(r.small()? as usize)?;
        let t = Template::new(kind, system);
        let mut values = Vec::with_capacity(t.slots());
        for _ in 0..t.slots() {
            values.push(r.literal()?);
        }
        if r.remaining() != 0 {
            return None;
        }
        substitute(t, &values).ok()
    }
}

fn binary(n: &Nat) -> String {
    format!("0b{n:b}")
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}", self.kind.name(), self.sys.kind().name())?;
        if let Some(e) = self.sys.code() {
            write!(f, ":{}", binary(e))?;
        }
        let args: Vec<String> = self.args.iter().map(binary).collect();
        write!(f, "]({})", args.join(","))
    }
}

/// A sentence shape with optional wildcards (`*`) in any numeral slot,
/// including the system code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SentencePattern {
    template: Template,
    /// `None` is a wildcard. Same order as [`Template::slots`].
    slots: Vec<Option<Nat>>,
}

impl SentencePattern {
    pub fn exact(s: &Sentence) -> Self {
        SentencePattern { template: s.template(), slots: s.values().cloned().map(Some).collect() }
    }

    pub fn matches(&self, s: &Sentence) -> bool {
        self.template == s.template() && self.slots.iter().zip(s.values()).all(|(p, v)| p.as_ref().is_none_or(|p| p == v))
    }
}

impl fmt::Display for SentencePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Nat>| v.as_ref().map_or("*".to_string(), binary);
        let mut slots = self.slots.iter();
        write!(f, "{}[{}", self.template.kind.name(), self.template.system.name())?;
        if self.template.system.has_code() {
            write!(f, ":{}", show(slots.next().unwrap()))?;
        }
        let args: Vec<String> = slots.map(show).collect();
        write!(f, "]({})", args.join(","))
    }
}

impl FromStr for SentencePattern {
    type Err = Error;

    /// `Name[sys]` or `Name[sys:N]`, then `(N,…)`; each `N` is a numeral or `*`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |m: &str| Error::BadSentence(format!("{m}: {s:?}"));
        let s = s.trim();
        let (name, rest) = s.split_once('[').ok_or_else(|| bad("missing '['"))?;
        let (sys, rest) = rest.split_once(']').ok_or_else(|| bad("missing ']'"))?;
        let args = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("missing argument list"))?;
        let kind = TemplateKind::from_name(name.trim()).ok_or_else(|| bad("unknown template"))?;
        let (sys_name, sys_code) = match sys.split_once(':') {
            Some((n, c)) => (n, Some(c)),
            None => (sys, None),
        };
        let system = SystemKind::from_name(sys_name.trim()).ok_or_else(|| bad("unknown system"))?;
        let slot = |t: &str| -> Result<Option<Nat>, Error> {
            match t.trim() {
                "*" => Ok(None),
                n => parse_nat(n).map(Some).ok_or_else(|| bad("bad numeral")),
            }
        };
        let mut slots = Vec::new();
        match (system.has_code(), sys_code) {
            (true, Some(c)) => slots.push(slot(c)?),
            (false, None) => {}
            _ => return Err(bad("system code mismatch")),
        }
        if !args.trim().is_empty() {
            for a in args.split(',') {
                slots.push(slot(a)?);
            }
        }
        let template = Template::new(kind, system);
        if slots.len() != template.slots() {
            return Err(Error::Arity { expected: template.slots(), got: slots.len() });
        }
        if kind == TemplateKind::HaltsWith && system != SystemKind::Phi {
            return Err(bad("HaltsWith speaks only about phi"));
        }
        Ok(SentencePattern { template, slots })
    }
}

/// The budgeted provability relation `T ⊢_x E`.
///
/// Implementations must be total, deterministic, and monotone in the
/// budget: firing at `x` implies firing at every `x′ ≥ x`.
pub trait Oracle: Send + Sync + fmt::Debug {
    fn proves_within(&self, s: &Sentence, budget: &Nat) -> bool;

    fn describe(&self) -> String;
}

/// Never proves anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct SilentOracle;

impl Oracle for SilentOracle {
    fn proves_within(&self, _: &Sentence, _: &Nat) -> bool {
        false
    }

    fn describe(&self) -> String {
        "silent".into()
    }
}

/// Pattern → firing budget assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleScript {
    pub entries: Vec<(SentencePattern, Nat)>,
}

impl OracleScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, pattern: SentencePattern, x0: impl Into<Nat>) -> Self {
        self.entries.push((pattern, x0.into()));
        self
    }

    /// Lines of `pattern<TAB>x0`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut script = OracleScript::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Script { line: i + 1, msg };
            let (pat, x0) = line.split_once('\t').ok_or_else(|| err("expected pattern<TAB>x0".into()))?;
            let pattern = pat.parse().map_err(|e: Error| err(e.to_string()))?;
            let x0 = parse_nat(x0).ok_or_else(|| err(format!("bad budget {x0:?}")))?;
            script.entries.push((pattern, x0));
        }
        Ok(script)
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(p, x0)| format!("{p}\t{x0}\n")).collect()
    }
}

/// Fires on a sentence at budget `x` when some matching entry has `x0 ≤ x`.
#[derive(Clone, Debug)]
pub struct ScriptedOracle {
    script: OracleScript,
}

impl ScriptedOracle {
    pub fn new(script: OracleScript) -> Self {
        ScriptedOracle { script }
    }
}

impl Oracle for ScriptedOracle {
    fn proves_within(&self, s: &Sentence, budget: &Nat) -> bool {
        self.script.entries.iter().any(|(p, x0)| x0 <= budget && p.matches(s))
    }

    fn describe(&self) -> String {
        format!("scripted ({} entries)", self.script.entries.len())
    }
}

pub fn make_silent() -> Arc<dyn Oracle> {
    Arc::new(SilentOracle)
}

pub fn make_scripted(script: OracleScript) -> Arc<dyn Oracle> {
    Arc::new(ScriptedOracle::new(script))
}

/// `oracle_query(o, s, x)`.
pub fn oracle_query(o: &dyn Oracle, s: &Sentence, x: &Nat) -> bool {
    o.proves_within(s, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn serialization_shape() {
        let s = substitute(Template::new(TemplateKind::Equiv, SystemKind::Phi), &[n(3), n(3)]).unwrap();
        assert_eq!(s.to_string(), "Equiv[phi](0b11,0b11)");
        let s = Sentence::exists_distinct_equiv(SystemTag::Psi(n(5)));
        assert_eq!(s.to_string(), "ExistsDistinctEquiv[psi:0b101]()");
    }

    #[test]
    fn arity_is_checked() {
        let t = Template::new(TemplateKind::Equiv, SystemKind::Phi);
        assert!(substitute(t, &[n(1)]).is_err());
        let t = Template::new(TemplateKind::HaltsWith, SystemKind::Zeta);
        assert!(substitute(t, &[n(1), n(2), n(3), n(4)]).is_err());
    }

    #[test]
    fn code_round_trip() {
        let sentences = [
            Sentence::equiv(n(0), n(9), SystemTag::Phi),
            Sentence::exists_distinct_equiv(SystemTag::Zeta(n(12345))),
            Sentence::is_universal(n(8), SystemTag::Theta(n(2))),
            Sentence::exists_universal(SystemTag::Theta(n(0))),
            Sentence::halts_with(n(1), n(2), n(3)),
        ];
        for s in sentences {
            assert_eq!(Sentence::from_code(&s.code()), Some(s.clone()));
            assert_eq!(SentencePattern::exact(&s).to_string(), s.to_string());
            assert_eq!(s.to_string().parse::<SentencePattern>().unwrap(), SentencePattern::exact(&s));
        }
    }

    #[test]
    fn template_ids() {
        let s = Sentence::equiv(n(4), n(7), SystemTag::Eta(n(2)));
        let packed = crate::numcode::tuple_encode(&[n(2), n(4), n(7)], 3).unwrap();
        assert_eq!(Sentence::from_template(&s.template().id(), &packed), Some(s));
        let t = Template::new(TemplateKind::ExistsDistinctEquiv, SystemKind::Psi);
        assert_eq!(Sentence::from_template(&t.id(), &n(6)), Some(Sentence::exists_distinct_equiv(SystemTag::Psi(n(6)))));
    }

    #[test]
    fn scripted_thresholds() {
        let s = Sentence::equiv(n(1), n(2), SystemTag::Phi);
        let o = ScriptedOracle::new(OracleScript::new().with(SentencePattern::exact(&s), 5u32));
        assert!(!o.proves_within(&s, &n(4)));
        assert!(o.proves_within(&s, &n(5)));
        assert!(o.proves_within(&s, &n(9)));
        assert!(!o.proves_within(&Sentence::equiv(n(2), n(1), SystemTag::Phi), &n(9)));
    }

    #[test]
    fn empty_script_is_silent() {
        let o = ScriptedOracle::new(OracleScript::new());
        assert!(!o.proves_within(&Sentence::halts_with(n(0), n(0), n(0)), &n(1 << 40)));
    }

    #[test]
    fn wildcards() {
        let p: SentencePattern = "ExistsDistinctEquiv[zeta:*]()".parse().unwrap();
        assert!(p.matches(&Sentence::exists_distinct_equiv(SystemTag::Zeta(n(77)))));
        assert!(!p.matches(&Sentence::exists_distinct_equiv(SystemTag::Psi(n(77)))));
        let p: SentencePattern = "Equiv[phi](*,0b101)".parse().unwrap();
        assert!(p.matches(&Sentence::equiv(n(99), n(5), SystemTag::Phi)));
        assert!(!p.matches(&Sentence::equiv(n(5), n(99), SystemTag::Phi)));
    }

    #[test]
    fn script_file_format() {
        let text = "# thresholds\n\nExistsDistinctEquiv[psi:*]()\t3\nEquiv[phi](0b1,*)\t0x10\n";
        let script = OracleScript::parse(text).unwrap();
        assert_eq!(script.entries.len(), 2);
        assert_eq!(script.entries[1].1, n(16));
        assert_eq!(OracleScript::parse(&script.render()).unwrap(), script);
        assert!(matches!(OracleScript::parse("Equiv[phi](1,2) 3"), Err(Error::Script { line: 1, .. })));
        assert!(OracleScript::parse("Nope[phi]()\t3").is_err());
        assert!(OracleScript::parse("Equiv[psi](1,2)\t3").is_err());
    }
}
