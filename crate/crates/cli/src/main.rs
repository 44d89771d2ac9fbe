//! `krt`: build, run, inspect and verify programs of the numbered system.
//!
//! Exit status: 0 on success, 1 for a semantic negative (a run that does not
//! halt, a rejected certificate, a failed check), 2 for usage errors.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use krt_core::basesys::{classify, CodeClass, Machine, RunOutcome};
use krt_core::combinators::{comp_m, krt, krt_plain, pad, pad_once_traced, smn, PadOnceBranch};
use krt_core::constructions::{
    eta_build, fixed_point_demo, psi_build, theorem1_candidates, theta_build, zeta_build, Branch, DerivedSystem,
};
use krt_core::logic::{make_scripted, make_silent, Oracle, OracleScript};
use krt_core::numcode::{bitlen, nth_prime, pair, set_decode, set_encode, tuple_decode, tuple_encode, unpair, Nat, SetCode};
use krt_core::universal::{emit_certificate, resolve_code, simulate, verify_certificate, Certificate, SimMode};
use krt_core::verify::{self, gen, Suite};

#[derive(Parser)]
#[command(name = "krt", version, about = "Numbered programs, recursion-theorem combinators and diagonal constructions")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Step budget for every run.
    #[arg(long, global = true, env = "KRT_BUDGET", default_value_t = 1_000_000)]
    budget: u64,
    /// `silent` or `scripted:<path>`.
    #[arg(long, global = true, default_value = "silent")]
    oracle: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Explored-range cutoff for the ζ tables.
    #[arg(long, global = true, default_value_t = 512)]
    range: usize,
    /// Seed for every randomized selection.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// Line-delimited JSON.
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pairing, tuples, lengths, set codes and primes.
    #[command(subcommand)]
    Numcode(NumCmd),
    /// Classify a code and list its instructions.
    Inspect { code: String },
    /// Run a program on an input.
    Run {
        program: String,
        input: String,
        #[arg(long, default_value = "accelerated")]
        mode: String,
    },
    /// Build `krt(p, r)`, or the parameter-free form with `--plain`.
    Krt {
        #[arg(long)]
        plain: bool,
        /// Parameter (ignored with `--plain`).
        #[arg(long, default_value = "0")]
        p: String,
        task: String,
    },
    /// Pad a code; `--once` uses the padding-once construction.
    Pad {
        code: String,
        #[arg(long)]
        once: bool,
    },
    /// `comp_m(p0, p1, …, pm)`.
    Compose {
        outer: String,
        #[arg(required = true)]
        inner: Vec<String>,
    },
    /// Store `a` inside `p`.
    Smn { program: String, arg: String },
    /// Build a diagonal construction and smoke-test its clauses.
    Construct {
        which: Construction,
        /// Program for theorem1.
        #[arg(long, default_value = "succ")]
        p: String,
        /// Transformer for fixedpoint.
        #[arg(long, default_value = "identity")]
        d: String,
    },
    /// Emit or verify halting certificates.
    #[command(subcommand)]
    Certificate(CertCmd),
    /// Run property suites: pairing, basesys, krt, pad, logic, zeta or all.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum NumCmd {
    Pair { x: String, y: String },
    Unpair { z: String },
    /// Right-nested tuple of all the values.
    Tuple {
        #[arg(required = true)]
        xs: Vec<String>,
    },
    Untuple { z: String, n: usize },
    Bitlen { k: String },
    /// Code of a set of at most two elements.
    Set { elems: Vec<String> },
    Unset { code: String },
    Prime { n: String },
}

#[derive(Subcommand)]
enum CertCmd {
    Emit { program: String, input: String },
    /// Verify records from a file, or stdin when the path is `-`.
    Verify { path: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Theorem1,
    Psi,
    Eta,
    Theta,
    Zeta,
    Fixedpoint,
}

enum Failure {
    Usage(String),
}

type CmdResult = Result<(String, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn code(s: &str) -> Result<Nat, Failure> {
    resolve_code(s).ok_or_else(|| usage(format!("not a numeral or program name: {s:?}")))
}

fn numeral(s: &str) -> Result<Nat, Failure> {
    krt_core::numcode::parse_nat(s).ok_or_else(|| usage(format!("not a numeral: {s:?}")))
}

fn oracle(choice: &str) -> Result<Arc<dyn Oracle>, Failure> {
    if choice == "silent" {
        return Ok(make_silent());
    }
    let path = choice.strip_prefix("scripted:").ok_or_else(|| usage(format!("bad oracle {choice:?}; use silent or scripted:<path>")))?;
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    let script = OracleScript::parse(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    Ok(make_scripted(script))
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn new(format: Format) -> Self {
        Out { format, buf: String::new() }
    }

    /// A named value: `name = value` or `{"name": …, "value": …}`.
    fn field(&mut self, name: &str, value: impl ToString) {
        let value = value.to_string();
        match self.format {
            Format::Text => writeln!(self.buf, "{name} = {value}").unwrap(),
            Format::Records => writeln!(self.buf, "{}", json!({ "name": name, "value": value })).unwrap(),
        }
    }

    fn record(&mut self, text: String, rec: serde_json::Value) {
        match self.format {
            Format::Text => writeln!(self.buf, "{text}").unwrap(),
            Format::Records => writeln!(self.buf, "{rec}").unwrap(),
        }
    }

    fn outcome(&mut self, label: &str, o: &RunOutcome) {
        let (text, rec) = match o {
            RunOutcome::Halted { value, steps } => {
                (format!("{label}halted value={value} steps={steps}"), json!({"outcome": "halted", "value": value.to_string(), "steps": steps}))
            }
            RunOutcome::OutOfBudget { budget } => {
                (format!("{label}out-of-budget budget={budget}"), json!({"outcome": "out-of-budget", "budget": budget}))
            }
            RunOutcome::AbnormalDivergence => (format!("{label}abnormal-divergence"), json!({"outcome": "abnormal-divergence"})),
        };
        self.record(text, rec);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("krt: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let o = &cli.opts;
    let mut out = Out::new(o.format);
    let ok = match &cli.cmd {
        Cmd::Numcode(c) => numcode(c, &mut out)?,
        Cmd::Inspect { code: c } => inspect(&code(c)?, &mut out),
        Cmd::Run { program, input, mode } => {
            let mode: SimMode = mode.parse().map_err(|e: krt_core::Error| usage(e.to_string()))?;
            let m = Machine::new(oracle(&o.oracle)?);
            let r = simulate(&m, &code(program)?, &numeral(input)?, o.budget, mode);
            out.outcome("", &r);
            r.halted()
        }
        Cmd::Krt { plain, p, task } => {
            let r = code(task)?;
            let k = if *plain { krt_plain(&r) } else { krt(&code(p)?, &r) };
            out.field("code", k);
            true
        }
        Cmd::Pad { code: c, once } => {
            let p = code(c)?;
            if *once {
                let (g, branch) = pad_once_traced(&p);
                out.field("code", g);
                out.field("branch", match branch {
                    PadOnceBranch::SelfTestPassed => "self-test-passed",
                    PadOnceBranch::FixedPoint => "fixed-point",
                });
            } else {
                out.field("code", pad(&p));
            }
            true
        }
        Cmd::Compose { outer, inner } => {
            let ps = inner.iter().map(|s| code(s)).collect::<Result<Vec<_>, _>>()?;
            out.field("code", comp_m(&code(outer)?, &ps).map_err(|e| usage(e.to_string()))?);
            true
        }
        Cmd::Smn { program, arg } => {
            out.field("code", smn(&code(program)?, &numeral(arg)?));
            true
        }
        Cmd::Construct { which, p, d } => construct(*which, p, d, o, &mut out)?,
        Cmd::Certificate(c) => certificate(c, o, &mut out)?,
        Cmd::Verify { suite } => {
            let suites = Suite::parse_selection(suite).map_err(|e| usage(e.to_string()))?;
            let cfg = verify::Config { seed: o.seed, range: o.range, budget: o.budget };
            let summary = verify::run(&suites, &cfg);
            out.buf = match o.format {
                Format::Text => summary.render_text(),
                Format::Records => summary.render_records(),
            };
            summary.passed()
        }
    };
    Ok((out.buf, ok))
}

fn numcode(c: &NumCmd, out: &mut Out) -> Result<bool, Failure> {
    match c {
        NumCmd::Pair { x, y } => out.field("pair", pair(&numeral(x)?, &numeral(y)?)),
        NumCmd::Unpair { z } => {
            let (x, y) = unpair(&numeral(z)?);
            out.field("x", x);
            out.field("y", y);
        }
        NumCmd::Tuple { xs } => {
            let xs = xs.iter().map(|s| numeral(s)).collect::<Result<Vec<_>, _>>()?;
            out.field("tuple", tuple_encode(&xs, xs.len()).map_err(|e| usage(e.to_string()))?);
        }
        NumCmd::Untuple { z, n } => {
            let xs = tuple_decode(&numeral(z)?, *n).map_err(|e| usage(e.to_string()))?;
            for (i, x) in xs.iter().enumerate() {
                out.field(&format!("x{}", i + 1), x);
            }
        }
        NumCmd::Bitlen { k } => out.field("bitlen", bitlen(&numeral(k)?)),
        NumCmd::Set { elems } => {
            let s = elems.iter().map(|e| numeral(e)).collect::<Result<_, _>>()?;
            out.field("code", set_encode(&s).map_err(|e| usage(e.to_string()))?.0);
        }
        NumCmd::Unset { code: c } => {
            let s = set_decode(&SetCode(numeral(c)?));
            let elems: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            out.field("set", format!("{{{}}}", elems.join(", ")));
        }
        NumCmd::Prime { n } => out.field("prime", nth_prime(&numeral(n)?)),
    }
    Ok(true)
}

fn inspect(p: &Nat, out: &mut Out) -> bool {
    out.field("code", p);
    out.field("bits", bitlen(p));
    match classify(p) {
        CodeClass::Normal(body) => {
            out.field("class", "normal");
            out.field("padcount", &body.padcount);
            out.field("instructions", body.instrs.len());
            for (i, ins) in body.instrs.iter().enumerate() {
                out.record(format!("{i:4}  {ins}"), json!({"index": i, "instr": ins.to_string()}));
            }
        }
        CodeClass::Abnormal => out.field("class", "abnormal"),
    }
    true
}

fn certificate(c: &CertCmd, o: &Opts, out: &mut Out) -> Result<bool, Failure> {
    let m = Machine::new(oracle(&o.oracle)?);
    match c {
        CertCmd::Emit { program, input } => match emit_certificate(&m, &code(program)?, &numeral(input)?, o.budget) {
            Ok(cert) => {
                // Records are the interchange format whatever `--format` says.
                writeln!(out.buf, "{}", cert.to_record()).unwrap();
                Ok(true)
            }
            Err(r) => {
                out.outcome("", &r);
                Ok(false)
            }
        },
        CertCmd::Verify { path } => {
            let mut text = String::new();
            if path == "-" {
                std::io::stdin().read_to_string(&mut text).map_err(|e| usage(format!("stdin: {e}")))?;
            } else {
                text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            }
            let mut all = true;
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                let cert = Certificate::from_record(line).map_err(|e| usage(format!("line {}: {e}", i + 1)))?;
                let ok = verify_certificate(&m, &cert);
                all &= ok;
                let status = if ok { "valid" } else { "invalid" };
                out.record(format!("{status} {cert}"), json!({"line": i + 1, "status": status}));
            }
            Ok(all)
        }
    }
}

/// Smoke evaluation of a derived system: each program on each input, with
/// the clause taken.
fn smoke(sys: &DerivedSystem, name: &str, programs: &[(String, Nat)], inputs: &[Nat], budget: u64, out: &mut Out) {
    let mut fired = std::collections::BTreeMap::<Branch, u32>::new();
    for (label, p) in programs {
        for x in inputs {
            let branch = sys.branch(p, x);
            *fired.entry(branch).or_default() += 1;
            let r = sys.eval(p, x, budget);
            let shown = match &r {
                RunOutcome::Halted { value, .. } if bitlen(value) <= 64 => value.to_string(),
                RunOutcome::Halted { value, .. } => format!("<{}-bit value>", bitlen(value)),
                RunOutcome::OutOfBudget { .. } => "out-of-budget".into(),
                RunOutcome::AbnormalDivergence => "abnormal".into(),
            };
            out.record(
                format!("{name}_{label}({x}) -> {shown} [{branch}]"),
                json!({"system": name, "program": label, "input": x.to_string(), "branch": branch.to_string(), "result": shown}),
            );
        }
    }
    let summary: Vec<String> = fired.iter().map(|(b, n)| format!("{b}={n}")).collect();
    out.field("clauses", summary.join(" "));
}

fn construct(which: Construction, p: &str, d: &str, o: &Opts, out: &mut Out) -> Result<bool, Failure> {
    let orc = oracle(&o.oracle)?;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let inputs: Vec<Nat> = (0..6u8).map(Nat::from).collect();
    let random = gen::halting_subject(&mut rng);
    let stock = |extra: &[(&str, &Nat)]| {
        let mut v: Vec<(String, Nat)> = [("succ", "succ"), ("double", "double")]
            .iter()
            .map(|(l, n)| (l.to_string(), resolve_code(n).expect("stock program")))
            .collect();
        v.push(("random".into(), random.clone()));
        v.extend(extra.iter().map(|(l, c)| (l.to_string(), (*c).clone())));
        v
    };
    out.field("oracle", orc.describe());
    match which {
        Construction::Theorem1 => {
            let p = code(p)?;
            let th = theorem1_candidates(&p);
            out.field("p", &th.p);
            out.field("g_code", &th.g_code.0);
            out.field("e1", &th.e1);
            out.field("e2", &th.e2);
            let m = Machine::new(orc);
            let mut fired = std::collections::BTreeMap::<Branch, u32>::new();
            for (which, e) in [(1u8, &th.e1), (2, &th.e2)] {
                for x in &inputs {
                    let branch = th.branch(&m, e, x);
                    *fired.entry(branch).or_default() += 1;
                    let r = th.run(&m, which, x, o.budget);
                    out.outcome(&format!("e{which}({x}) [{branch}] "), &r);
                }
            }
            let summary: Vec<String> = fired.iter().map(|(b, n)| format!("{b}={n}")).collect();
            out.field("clauses", summary.join(" "));
        }
        Construction::Psi | Construction::Eta | Construction::Theta => {
            let (name, sys) = match which {
                Construction::Psi => ("psi", psi_build(orc)),
                Construction::Eta => ("eta", eta_build(orc)),
                _ => ("theta", theta_build(orc)),
            };
            out.field("e", &sys.e);
            let e = sys.e.clone();
            smoke(&sys, name, &stock(&[("e", &e)]), &inputs, o.budget, out);
        }
        Construction::Zeta => {
            let sys = zeta_build(orc);
            let codes = sys.zeta.clone().expect("zeta build");
            out.field("e", &codes.e);
            out.field("c", &codes.c);
            out.field("w_prime", &codes.w_prime);
            out.field("w", &codes.w);
            let y = codes.structural().w(&pair(&resolve_code("succ").unwrap(), &resolve_code("double").unwrap()));
            out.field("succ_after_double", &y);
            let budget = o.budget.max(krt_core::constructions::zeta::EVAL_BUDGET);
            smoke(&sys, "zeta", &stock(&[("w", &codes.w), ("succ_after_double", &y), ("2", &Nat::from(2u8))]), &inputs, budget, out);
        }
        Construction::Fixedpoint => {
            let m = Machine::new(orc);
            let fp = fixed_point_demo(&m, &code(d)?, o.budget);
            out.field("p0", &fp.p0);
            match &fp.q0 {
                Ok(cert) => {
                    out.field("q0", &cert.y);
                    out.field("certificate", cert.to_record());
                    for x in &inputs {
                        let (lhs, rhs) = (m.run(&fp.p0, x, o.budget), m.run(&cert.y, x, o.budget));
                        out.outcome(&format!("p0({x}) "), &lhs);
                        out.outcome(&format!("q0({x}) "), &rhs);
                    }
                }
                Err(r) => {
                    out.outcome("q0 ", r);
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
