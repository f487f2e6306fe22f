//! Command-line driver. `run` writes reports to `out`, diagnostics to `err`,
//! and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cliques::all_maximal_cliques_bruteforce;
use crate::config::Bounds;
use crate::coreness::{core_test_with, CorenessReport, EndoClass, Verdict};
use crate::cyclotomic::{
    gaussian_binomial_at, gaussian_binomial_poly, h_integrality, h_report, knuth_wilf_exponents, scan_core_threshold,
};
use crate::error::{Error, Result};
use crate::field::field_of_order;
use crate::fixture::Fixture;
use crate::graph::build_graph;
use crate::lemmas::{dual_map_check, verify_clique_lemmas};
use crate::report::{to_dot, to_text, GraphDump};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Caps the rayon worker count.
pub const THREADS_ENV: &str = "GRASSMANN_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "grassmann-lab", version, about = "Grassmann graphs J_q(n,m): structure, cliques and cores")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Largest vertex count for building a graph.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_vertices: Option<u64>,
    /// Largest vertex count for exhaustive searches.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    brute_bound: Option<u64>,
}

impl GraphArgs {
    fn bounds(&self) -> Bounds {
        let mut b = Bounds::default();
        if let Some(v) = self.max_vertices {
            b.max_vertices = v;
        }
        if let Some(v) = self.brute_bound {
            b.brute_bound = v as usize;
        }
        b
    }

    fn params(&self) -> Value {
        json!({ "q": self.q, "n": self.n, "m": self.m })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build J_q(n,m) and dump vertices and edges.
    Build(GraphArgs),
    /// Check the star/top intersection lemmas, the maximal-clique census and duality.
    Verify(GraphArgs),
    /// Decide whether J_q(n,m) is a core.
    Coreness {
        #[command(flatten)]
        graph: GraphArgs,
        /// Colouring fixture to verify and use as a hint. Defaults to the bundled
        /// partition for J_2(4,2).
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Cyclotomic factorization of the Gaussian binomial [n, m] and of h(q) = |V| / omega.
    Qbinom {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Evaluate at this field order.
        #[arg(long)]
        at: Option<u64>,
        /// Also scan h(q) over prime powers up to this bound.
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate h(q) at every prime power up to --q-max.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 64)]
        q_max: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// A rendered report plus whether every check in it passed.
struct Output {
    body: String,
    passed: bool,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource_bound() {
        EXIT_RESOURCE
    } else if matches!(e, Error::Invariant(_)) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_INVALID
    }
}

fn render(v: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize"))),
        Format::Text => Ok(text_of(v, 0)),
        Format::Dot => Err(Error::InvalidParameters("dot output is only available for build".into())),
    }
}

/// Indented `key: value` rendering of a JSON value.
fn text_of(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n{}", text_of(x, indent + 1)));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n{}", text_of(x, indent + 1)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn cmd_build(a: &GraphArgs) -> Result<Output> {
    let spec = field_of_order(a.q)?;
    let g = build_graph(&spec, a.n as usize, a.m as usize, &a.bounds())?;
    let body = match a.format {
        Format::Json => format!("{}\n", serde_json::to_string(&GraphDump::from_graph(&g)).expect("dump serializes")),
        Format::Text => to_text(&g),
        Format::Dot => to_dot(&g),
    };
    Ok(Output { body, passed: true })
}

fn cmd_verify(a: &GraphArgs) -> Result<Output> {
    if !(2 <= a.m && a.m + 2 <= a.n) {
        return Err(Error::InvalidParameters(format!("verify needs 2 <= m <= n - 2, got n={}, m={}", a.n, a.m)));
    }
    let bounds = a.bounds();
    let spec = field_of_order(a.q)?;
    let g = build_graph(&spec, a.n as usize, a.m as usize, &bounds)?;
    let census = all_maximal_cliques_bruteforce(&g, &bounds)?;
    let lemmas = verify_clique_lemmas(&g, &bounds)?;
    let (duality, dual_ok) = match dual_map_check(&g) {
        Ok(d) => (serde_json::to_value(&d).expect("serializes"), d.passed()),
        Err(Error::DualityRequiresHalf) => (json!({ "skipped": "requires n = 2m" }), true),
        Err(e) => return Err(e),
    };
    let passed = census.classification_holds() && lemmas.all_passed() && dual_ok;
    let mut lemma_value = serde_json::to_value(&lemmas).expect("serializes");
    lemma_value["all_passed"] = json!(lemmas.all_passed());
    lemma_value["duality"] = duality;
    let mut cliques = serde_json::to_value(&census).expect("serializes");
    cliques["classification_holds"] = json!(census.classification_holds());
    let v = json!({ "params": a.params(), "cliques": cliques, "lemmas": lemma_value });
    Ok(Output { body: render(&v, a.format)?, passed })
}

fn coreness_passed(r: &CorenessReport) -> bool {
    let fixture_ok = r.fixture.as_ref().is_none_or(|f| f.passed());
    let witness_ok = r.witness.as_ref().is_none_or(|w| w.classification == EndoClass::Colouring);
    fixture_ok && witness_ok && (r.verdict != Verdict::NotCore || r.witness.is_some())
}

fn cmd_coreness(a: &GraphArgs, fixture: Option<&PathBuf>) -> Result<Output> {
    let fx = match fixture {
        Some(p) => Some(Fixture::load(p)?),
        None if (a.q, a.n, a.m) == (2, 4, 2) => Some(Fixture::default_fixture()),
        None => None,
    };
    let r = core_test_with(a.n, a.m, a.q, &a.bounds(), fx.as_ref())?;
    let v = json!({ "params": a.params(), "coreness": r });
    Ok(Output { body: render(&v, a.format)?, passed: coreness_passed(&r) })
}

/// The `qbinom` payload: factorization, polynomial, and the h(q) analysis when
/// 4 <= 2m <= n.
pub fn qbinom_value(n: u32, m: u32, at: Option<u64>, q_max: Option<u64>) -> Result<Value> {
    if m > n {
        return Err(Error::InvalidParameters(format!("need m <= n, got n={n}, m={m}")));
    }
    let factors = knuth_wilf_exponents(n, m)?;
    let poly = gaussian_binomial_poly(n, m)?;
    let mut out = json!({
        "exponents": factors.exponents(),
        "factorization": factors.render(),
        "polynomial": poly.to_string(),
        "coefficients": poly,
    });
    if let Some(q) = at {
        if crate::numtheory::prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        out["at"] = json!(q);
        out["value"] = json!(gaussian_binomial_at(n, m, q).to_string());
    }
    if 4 <= 2 * m && 2 * m <= n {
        let h = h_report(n, m)?;
        let mut hv = serde_json::to_value(&h).expect("serializes");
        if !h.remainder_nonzero {
            hv["h_polynomial"] = json!(h.f1.to_string());
        }
        out["h"] = hv;
        if let Some(q) = at {
            out["h_at"] = serde_json::to_value(h_integrality(n, m, q)?).expect("serializes");
        }
        if let Some(q_max) = q_max {
            out["scan"] = serde_json::to_value(scan_core_threshold(n, m, q_max)?).expect("serializes");
        }
    }
    Ok(out)
}

fn cmd_qbinom(n: u32, m: u32, at: Option<u64>, q_max: Option<u64>, format: Format) -> Result<Output> {
    let q = qbinom_value(n, m, at, q_max)?;
    let passed = q.get("h").is_none_or(|h| h["cross_check"] == json!(true));
    let v = json!({ "params": { "n": n, "m": m }, "qbinom": q });
    Ok(Output { body: render(&v, format)?, passed })
}

fn cmd_scan(n: u32, m: u32, q_max: u64, format: Format) -> Result<Output> {
    let scan = scan_core_threshold(n, m, q_max)?;
    let v = json!({ "params": { "n": n, "m": m, "q_max": q_max }, "qbinom": { "scan": scan } });
    Ok(Output { body: render(&v, format)?, passed: true })
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        // Fails only if the global pool already exists, e.g. on a second run in-process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    let result = match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Coreness { graph, fixture } => cmd_coreness(graph, fixture.as_ref()),
        Command::Qbinom { n, m, at, q_max, format } => cmd_qbinom(*n, *m, *at, *q_max, *format),
        Command::Scan { n, m, q_max, format } => cmd_scan(*n, *m, *q_max, *format),
    };
    match result {
        Ok(o) => {
            if out.write_all(o.body.as_bytes()).is_err() {
                return EXIT_INVALID;
            }
            if o.passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: a verification check failed");
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("grassmann-lab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["build", "--q", "2", "--n", "4", "--m", "2"]).0, EXIT_OK);
        let (code, _, err) = run_args(&["build", "--q", "2", "--n", "10", "--m", "5"]);
        assert_eq!(code, EXIT_RESOURCE);
        assert!(err.contains("enumeration too large"));
        assert_eq!(run_args(&["build", "--q", "6", "--n", "4", "--m", "2"]).0, EXIT_INVALID);
        assert_eq!(run_args(&["bogus"]).0, EXIT_INVALID);
        assert_eq!(run_args(&["qbinom", "--n", "4", "--m", "2", "--format", "dot"]).0, EXIT_INVALID);
    }

    #[test]
    fn text_rendering() {
        let (code, out, _) = run_args(&["qbinom", "--n", "5", "--m", "2", "--at", "2", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("value: 155"), "{out}");
        assert!(out.contains("31/3"), "{out}");
    }
}
