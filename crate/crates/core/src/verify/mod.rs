//! Seed-deterministic property suites over the whole system.
//!
//! Each suite draws from its own RNG stream, so results do not depend on
//! which other suites run. Output carries no timings or addresses:
//! identical configurations render byte-identical summaries.

pub mod gen;
mod suites;

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Pairing,
    Basesys,
    Krt,
    Pad,
    Logic,
    Zeta,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Pairing, Suite::Basesys, Suite::Krt, Suite::Pad, Suite::Logic, Suite::Zeta];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pairing => "pairing",
            Suite::Basesys => "basesys",
            Suite::Krt => "krt",
            Suite::Pad => "pad",
            Suite::Logic => "logic",
            Suite::Zeta => "zeta",
        }
    }

    /// `"all"` or one suite name.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>, Error> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}; expected one of pairing, basesys, krt, pad, logic, zeta, all")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Explored-range cutoff for the ζ tables.
    pub range: usize,
    /// Step budget for individual runs.
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, range: 512, budget: 1_000_000 }
    }
}

impl Config {
    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(suite as u64 + 1);
        rng
    }
}

/// Outcome of one named property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub check: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
    /// Wall time since the previous check of the suite finished, so shared
    /// setup is charged to the check that follows it. Never rendered.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub seed: u64,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    suite: &'a str,
    check: &'a str,
    status: &'a str,
    cases: u64,
    detail: &'a str,
}

#[derive(Serialize)]
struct SummaryRecord {
    summary: &'static str,
    seed: u64,
    checks: usize,
    passed: usize,
    failed: usize,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, suite: Suite, check: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.suite == suite.name() && c.check == check)
    }

    fn counts(&self) -> (usize, usize) {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        (passed, self.checks.len() - passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{status} {}/{} cases={}: {}\n", c.suite, c.check, c.cases, c.detail));
        }
        let (passed, failed) = self.counts();
        out.push_str(&format!("summary seed={} checks={} passed={passed} failed={failed}\n", self.seed, self.checks.len()));
        out
    }

    /// One JSON object per line, then a summary object.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let rec = CheckRecord {
                suite: c.suite,
                check: c.check,
                status: if c.passed { "pass" } else { "fail" },
                cases: c.cases,
                detail: &c.detail,
            };
            out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
            out.push('\n');
        }
        let (passed, failed) = self.counts();
        let rec = SummaryRecord { summary: "verify", seed: self.seed, checks: self.checks.len(), passed, failed };
        out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
        out.push('\n');
        out
    }
}

/// Run `suites` in canonical order, whatever order they were given in.
pub fn run(suites: &[Suite], cfg: &Config) -> Summary {
    let mut selected = suites.to_vec();
    selected.sort();
    selected.dedup();
    let checks = selected.into_iter().flat_map(|s| run_suite(s, cfg)).collect();
    Summary { seed: cfg.seed, checks }
}

thread_local! {
    static LAST_FINISH: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Restart the clock for [`Check::elapsed`]; returns the time since the last mark.
fn lap() -> Duration {
    let now = Instant::now();
    LAST_FINISH.with(|last| last.replace(Some(now))).map_or(Duration::ZERO, |t| now - t)
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Vec<Check> {
    lap();
    let mut rng = cfg.rng(suite);
    match suite {
        Suite::Pairing => suites::pairing::run(&mut rng, cfg),
        Suite::Basesys => suites::basesys::run(&mut rng, cfg),
        Suite::Krt => suites::krt::run(&mut rng, cfg),
        Suite::Pad => suites::pad::run(&mut rng, cfg),
        Suite::Logic => suites::logic::run(&mut rng, cfg),
        Suite::Zeta => suites::zeta::run(&mut rng, cfg),
    }
}

/// Counts cases and keeps the first few counterexamples.
struct Tally {
    suite: Suite,
    check: &'static str,
    cases: u64,
    failed: u64,
    first: Vec<String>,
}

impl Tally {
    fn new(suite: Suite, check: &'static str) -> Self {
        Tally { suite, check, cases: 0, failed: 0, first: Vec::new() }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.first.len() < 3 {
                self.first.push(describe());
            }
        }
    }

    /// Close the check; `detail` is shown when every case passed.
    fn finish(self, detail: impl Into<String>) -> Check {
        let passed = self.failed == 0;
        let detail = if passed {
            detail.into()
        } else {
            format!("{} of {} failed; {}", self.failed, self.cases, self.first.join("; "))
        };
        Check { suite: self.suite.name(), check: self.check, passed, cases: self.cases, detail, elapsed: lap() }
    }
}

/// Abbreviate a numeral for failure messages.
fn short(n: &crate::Nat) -> String {
    let s = n.to_str_radix(10);
    if s.len() <= 24 {
        s
    } else {
        format!("<{}-bit>", crate::numcode::bitlen(n))
    }
}
