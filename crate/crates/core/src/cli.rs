//! The `chev` command line: subcommand parsing, dispatch and JSON output.

use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chevalley::ChevalleyAlgebra;
use crate::group::ElementaryGroup;
use crate::relations::check_relations;
use crate::rings::RingDescriptor;
use crate::roots::{Family, Root, RootSystem};
use crate::verify::matrix_units::{default_seeds, span_closure, torus_parameter};
use crate::verify::suite::{verify_paper, SuiteConfig};
use crate::verify::VerifyError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "chev", about = "Adjoint elementary Chevalley groups: construction and verification")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Root system family: A, D or E.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ordered positive roots in simple-root coordinates.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// `ad x_α` over ℤ, or `x_α(t)` over a ring when `--param` is given.
    AdjointMatrix {
        #[command(flatten)]
        system: SystemArgs,
        /// Root coordinates, comma separated (e.g. `1,1` or `-1,0`).
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        #[arg(long, default_value = "int")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Randomized check of the relations among generators.
    RelationsCheck {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The full verification suite.
    VerifyPaper {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow E-series span closures.
        #[arg(long)]
        heavy: bool,
    },
    /// Span closure of the generators inside the full matrix ring.
    GenerateMatrixUnits {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        heavy: bool,
    },
}

/// Failure modes of a run, mapped to exit codes 2 and 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Root(_) | VerifyError::Unsupported(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn usage<E: std::fmt::Display>(flag: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Usage(format!("--{flag}: {e}"))
}

fn system(args: &SystemArgs) -> Result<RootSystem, Failure> {
    let family: Family = args.family.parse().map_err(usage("type"))?;
    RootSystem::build(family, args.rank).map_err(usage("type"))
}

fn ring(text: &str) -> Result<RingDescriptor, Failure> {
    text.parse().map_err(usage("ring"))
}

fn group(args: &SystemArgs, ring_text: &str) -> Result<ElementaryGroup, Failure> {
    let sys = system(args)?;
    let ring = ring(ring_text)?;
    let algebra = ChevalleyAlgebra::new(sys).map_err(|e| Failure::Runtime(e.to_string()))?;
    Ok(ElementaryGroup::new(std::sync::Arc::new(algebra), ring))
}

fn coords(sys: &RootSystem, idx: usize) -> Vec<i64> {
    sys.root(idx).coords().to_vec()
}

/// Output JSON and whether the run verified.
fn execute(command: &Command) -> Result<(Value, bool), Failure> {
    match command {
        Command::Roots { system: s } => {
            let sys = system(s)?;
            let roots: Vec<&[i64]> = sys.positive_roots().iter().map(Root::coords).collect();
            Ok((json!({ "schema": SCHEMA, "family": sys.family().to_string(), "rank": sys.rank(), "m": sys.num_positive(), "roots": roots }), true))
        }
        Command::AdjointMatrix { system: s, root, ring: r, param } => {
            let g = group(s, r)?;
            let sys = g.system();
            let parsed: Vec<i64> = root.split(',').map(|c| c.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(usage("root"))?;
            let idx = sys.index_of(&Root(parsed)).map_err(usage("root"))?;
            let (kind, matrix) = match param {
                None => ("ad", g.algebra().ad_matrix(idx).to_rows().into_iter().map(|row| row.into_iter().map(|v| v.to_string()).collect()).collect::<Vec<Vec<String>>>()),
                Some(t) => {
                    let t = g.ring().parse_element(t).map_err(usage("param"))?;
                    ("x", g.x_matrix(idx, &t).to_string_rows())
                }
            };
            Ok((
                json!({ "schema": SCHEMA, "family": sys.family().to_string(), "rank": sys.rank(), "ring": g.ring().to_string(), "root": coords(sys, idx), "kind": kind, "n": sys.dimension(), "matrix": matrix }),
                true,
            ))
        }
        Command::RelationsCheck { system: s, ring: r, samples, seed } => {
            let g = group(s, r)?;
            let sys = g.system();
            let report = check_relations(&g, *samples, *seed).map_err(|e| Failure::Runtime(e.to_string()))?;
            let cases: Vec<Value> = report
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "relation": c.relation.name(),
                        "alpha": coords(sys, c.alpha),
                        "beta": coords(sys, c.beta),
                        "sample": c.sample,
                        "params": c.params.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "pass": c.pass,
                        "realized_sign": c.realized_sign,
                        "expected_sign": c.expected_sign,
                    })
                })
                .collect();
            let ok = report.all_pass() && report.commutator_signs_match();
            Ok((
                json!({
                    "schema": SCHEMA,
                    "family": sys.family().to_string(),
                    "rank": sys.rank(),
                    "ring": g.ring().to_string(),
                    "samples": samples,
                    "seed": seed,
                    "summary": report.summary(),
                    "all_pass": report.all_pass(),
                    "commutator_signs_match": report.commutator_signs_match(),
                    "cases": cases,
                }),
                ok,
            ))
        }
        Command::VerifyPaper { system: s, ring: r, samples, seed, heavy } => {
            let sys = system(s)?;
            let cfg = SuiteConfig { family: sys.family(), rank: sys.rank(), ring: ring(r)?, samples: *samples, seed: *seed, heavy: *heavy };
            let report = verify_paper(&cfg)?;
            let ok = report.all_pass;
            Ok((to_value(&report), ok))
        }
        Command::GenerateMatrixUnits { system: s, ring: r, heavy } => {
            let g = group(s, r)?;
            let field = g.ring().residue_field().map_err(|_| Failure::Usage(format!("--ring: {} has no residue field", g.ring())))?;
            let t0 = torus_parameter(field).lift_to(g.ring()).map_err(|e| Failure::Runtime(e.to_string()))?;
            let closure = span_closure(&g, &default_seeds(&g, &t0), *heavy)?;
            let ok = closure.is_full() && closure.lift_consistent;
            Ok((
                json!({
                    "schema": SCHEMA,
                    "n": closure.n,
                    "closure_dim": closure.dimension,
                    "witness_word_count": closure.witness_word_count(),
                    "residue_field": closure.residue_field.to_string(),
                    "t0": t0.to_string(),
                    "lift_consistent": closure.lift_consistent,
                }),
                ok,
            ))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(text) = std::env::var("CHEV_THREADS") else { return Ok(()) };
    let n: usize = text.trim().parse().map_err(|e| Failure::Usage(format!("CHEV_THREADS: {e}")))?;
    // A pool may already exist when called repeatedly in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 when a verification fails, 2 on usage errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = configure_threads().and_then(|()| execute(&cli.command));
    match result {
        Ok((value, ok)) => {
            let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: --out: {e}");
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
