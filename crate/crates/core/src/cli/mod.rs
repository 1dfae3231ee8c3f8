//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::delta::{ConstantBounds, DEFAULT_ENUMERATION_BUDGET};
use crate::error::{Error, Result};
use crate::harness::{
    default_rings, format_table, run_all, run_suite, HarnessRing, SuiteConfig, Verdict,
    VerifyReport, DEFAULT_SEED, SUITES,
};
use crate::poly::parse_poly;
use crate::witt::{
    teichmuller, universal_polys, GhostVec, UniversalOp, WittVec, DEFAULT_UNIVERSAL_BOUND,
};

pub use config::{default_ring, load_config, parse_config};

const DEFAULT_LEVEL: usize = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pi-witt",
    version,
    about = "Exact π-typical Witt vectors and π-derivations"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Ring, algebra and Frobenius lift description (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Base seed for the verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Trials per suite.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Truncation level.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe the configured ring.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Witt vector arithmetic.
    Witt {
        #[command(subcommand)]
        action: WittAction,
    },
    /// π-derivations, the arithmetic exponential and Taylor expansion.
    Delta {
        #[command(subcommand)]
        action: DeltaAction,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Debug, Subcommand)]
enum RingAction {
    Info,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    Add,
    Mul,
}

#[derive(Debug, Subcommand)]
enum WittAction {
    Add {
        x: String,
        y: String,
    },
    Mul {
        x: String,
        y: String,
    },
    Ghost {
        x: String,
    },
    Unghost {
        w: String,
    },
    Frob {
        x: String,
    },
    Teich {
        a: String,
    },
    Universal {
        #[arg(long, value_enum)]
        op: OpArg,
    },
}

#[derive(Debug, Subcommand)]
enum DeltaAction {
    Apply {
        f: String,
    },
    Exp {
        f: String,
    },
    Taylor {
        f: String,
    },
    Terms {
        f: String,
    },
    Constants {
        /// Degree bounds such as "u=2,t=8".
        #[arg(long)]
        bounds: String,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err((operation, e)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {operation}: {e}\n"),
        },
    }
}

type Failed = (&'static str, Error);

fn at<T>(operation: &'static str, r: Result<T>) -> std::result::Result<T, Failed> {
    r.map_err(|e| (operation, e))
}

fn render(json: bool, mut value: Value, text: String) -> String {
    if json {
        if let Value::Object(map) = &mut value {
            map.insert("schema".into(), json!(1));
        }
        format!("{value}\n")
    } else {
        format!("{text}\n")
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<(i32, String), Failed> {
    let g = &cli.global;
    let configured = match &g.config {
        Some(path) => Some(at("config", load_config(path))?),
        None => None,
    };
    let ring = configured.clone().unwrap_or_else(default_ring);
    let n = g.n.unwrap_or(DEFAULT_LEVEL);
    let alg = ring.alg();
    let ctx = ring.ctx();
    let out = match &cli.command {
        Command::Ring {
            action: RingAction::Info,
        } => ring_info(&ring, g.json),
        Command::Witt { action } => match action {
            WittAction::Add { x, y } => {
                let a = at("witt add", WittVec::parse(alg, x))?;
                let b = at("witt add", WittVec::parse(alg, y))?;
                let r = at("witt add", a.add(&b))?;
                render(g.json, r.to_json(), r.to_string())
            }
            WittAction::Mul { x, y } => {
                let a = at("witt mul", WittVec::parse(alg, x))?;
                let b = at("witt mul", WittVec::parse(alg, y))?;
                let r = at("witt mul", a.mul(&b))?;
                render(g.json, r.to_json(), r.to_string())
            }
            WittAction::Ghost { x } => {
                let r = at("witt ghost", WittVec::parse(alg, x))?.ghost();
                render(g.json, r.to_json(), r.to_string())
            }
            WittAction::Unghost { w } => {
                let r = at(
                    "witt unghost",
                    GhostVec::parse(alg, w).and_then(|w| w.unghost()),
                )?;
                render(g.json, r.to_json(), r.to_string())
            }
            WittAction::Frob { x } => {
                let r = at(
                    "witt frob",
                    WittVec::parse(alg, x).and_then(|x| x.frobenius()),
                )?;
                render(g.json, r.to_json(), r.to_string())
            }
            WittAction::Teich { a } => {
                let r = teichmuller(&at("witt teich", parse_poly(alg, a))?, n);
                render(g.json, r.to_json(), r.to_string())
            }
            WittAction::Universal { op } => {
                let (uop, letter, name) = match op {
                    OpArg::Add => (UniversalOp::Add, 'S', "add"),
                    OpArg::Mul => (UniversalOp::Mul, 'M', "mul"),
                };
                let u = at(
                    "witt universal",
                    universal_polys(
                        alg.ring(),
                        n,
                        uop,
                        DEFAULT_UNIVERSAL_BOUND.max(g.n.unwrap_or(0)),
                    ),
                )?;
                let polys: Vec<String> = u.polys().iter().map(|p| p.to_string()).collect();
                let text = polys
                    .iter()
                    .enumerate()
                    .map(|(i, p)| format!("{letter}_{i} = {p}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                let value = json!({ "kind": "universal", "op": name, "n": n, "polys": polys });
                render(g.json, value, text)
            }
        },
        Command::Delta { action } => match action {
            DeltaAction::Apply { f } => {
                let r = ctx.delta(&at("delta apply", parse_poly(alg, f))?);
                render(
                    g.json,
                    json!({ "kind": "poly", "value": r.to_string() }),
                    r.to_string(),
                )
            }
            DeltaAction::Exp { f } => {
                let x = at("delta exp", parse_poly(alg, f))?;
                let r = at("delta exp", ctx.exp_delta(&x, n))?;
                render(g.json, r.to_json(), r.to_string())
            }
            DeltaAction::Taylor { f } => {
                let x = at("delta taylor", parse_poly(alg, f))?;
                let r = at("delta taylor", ctx.taylor_expand(&x, n))?;
                render(g.json, r.to_json(), r.to_string())
            }
            DeltaAction::Terms { f } => {
                let x = at("delta terms", parse_poly(alg, f))?;
                let r = at("delta terms", ctx.term_decomposition(&x, n))?;
                render(g.json, r.to_json(), r.to_string())
            }
            DeltaAction::Constants { bounds } => {
                let b = at(
                    "delta constants",
                    ConstantBounds::parse(alg.names(), bounds),
                )?;
                let found = at(
                    "delta constants",
                    ctx.enumerate_constants(&b, DEFAULT_ENUMERATION_BUDGET),
                )?;
                let polys: Vec<String> = found.iter().map(|p| p.to_string()).collect();
                let value =
                    json!({ "kind": "constants", "count": polys.len(), "constants": polys });
                render(g.json, value, polys.join("\n"))
            }
        },
        Command::Verify { suite } => return verify(g, configured, suite),
    };
    Ok((0, out))
}

fn ring_info(ring: &HarnessRing, json_out: bool) -> String {
    let r = ring.ring();
    let alg = ring.alg();
    let images: serde_json::Map<String, Value> = alg
        .names()
        .iter()
        .zip(ring.ctx().frobenius().images())
        .map(|(g, img)| (g.clone(), json!(img.to_string())))
        .collect();
    let value = json!({
        "kind": "ring",
        "ring_kind": r.kind().name(),
        "base": r.describe(),
        "p": r.p(),
        "h": r.h(),
        "q": r.q(),
        "e": r.e(),
        "pi": r.pi_name(),
        "generators": alg.names(),
        "frobenius": images,
    });
    let mut text = String::new();
    writeln!(text, "ring       {} ({})", r.describe(), r.kind().name()).unwrap();
    writeln!(
        text,
        "p, h, q, e {}, {}, {}, {}",
        r.p(),
        r.h(),
        r.q(),
        r.e()
    )
    .unwrap();
    writeln!(text, "pi         {}", r.pi_name()).unwrap();
    writeln!(text, "algebra    {}", alg.describe()).unwrap();
    for (g, img) in alg.names().iter().zip(ring.ctx().frobenius().images()) {
        writeln!(text, "phi({g})     {img}").unwrap();
    }
    render(json_out, value, text.trim_end().to_string())
}

fn verify(
    g: &GlobalArgs,
    configured: Option<HarnessRing>,
    suite: &str,
) -> std::result::Result<(i32, String), Failed> {
    let seed = g.seed.unwrap_or(DEFAULT_SEED);
    let rings = match configured.clone() {
        Some(r) => vec![r],
        None => default_rings(),
    };
    let reports: Vec<VerifyReport> = if suite == "all" {
        run_all(&rings, seed, g.trials, g.n)
    } else {
        if !SUITES.contains(&suite) {
            return Err(("verify", Error::UnknownSuite(suite.to_string())));
        }
        let mut out = Vec::new();
        for ring in rings {
            let mut cfg = SuiteConfig::new(suite, ring).with_seed(seed);
            if let Some(t) = g.trials {
                cfg = cfg.with_trials(t);
            }
            if let Some(n) = g.n {
                cfg = cfg.with_n_max(n);
            }
            match run_suite(&cfg) {
                Ok(r) => out.push(r),
                Err(Error::IncompatibleRing { .. }) if configured.is_none() => {}
                Err(e) => return Err(("verify", e)),
            }
        }
        out
    };
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    let text = if g.json {
        let arr: Vec<Value> = reports.iter().map(VerifyReport::to_json).collect();
        format!("{}\n", Value::Array(arr))
    } else {
        format_table(&reports)
    };
    Ok((i32::from(failed), text))
}
