//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for invalid input or parameters, 3 when a
//! decode or verification fails.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{self, BoundsReport, OptimalityReason};
use crate::codefile::{self, format_symbols, parse_received, parse_symbols};
use crate::construction::{build_code, validate_params, CodeParams, CodeSpec};
use crate::error::Error;
use crate::repair::{decode_erasures, repair_coordinate};
use crate::verify::{verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "shortlrc",
    version,
    about = "Optimal locally recoverable codes of any length"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate (q, n, k, r) and report distance and optimality.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Standalone bound calculator for (n, k, r).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build a code and write its spec file.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a message of k symbols.
    Encode {
        #[command(flatten)]
        io: SymbolArgs,
    },
    /// Repair one coordinate from its repair group.
    Repair {
        /// 1-based coordinate to repair.
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        io: SymbolArgs,
    },
    /// Recover the message from a word with `?` erasures.
    Decode {
        #[command(flatten)]
        io: SymbolArgs,
    },
    /// Run every brute-force check against a spec file.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Args, Debug)]
struct SymbolArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Read symbols from this file instead of the command line.
    #[arg(long, conflicts_with = "symbols")]
    input: Option<PathBuf>,
    /// Space-separated symbols; read from standard input when absent.
    #[arg(allow_hyphen_values = true)]
    symbols: Vec<String>,
}

impl SymbolArgs {
    fn text(&self, stdin: &mut dyn BufRead) -> Result<String, Error> {
        if let Some(path) = &self.input {
            return Ok(std::fs::read_to_string(path)?);
        }
        if !self.symbols.is_empty() {
            return Ok(self.symbols.join(" "));
        }
        let mut buf = String::new();
        stdin.read_to_string(&mut buf)?;
        Ok(buf)
    }
}

#[derive(Serialize)]
struct ParamsReport<'a> {
    q: usize,
    n: usize,
    k: usize,
    r: usize,
    s: usize,
    t: usize,
    m: usize,
    n_bar: usize,
    k_prime: usize,
    bounds: &'a BoundsReport,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unrecoverable { .. } | Error::InconsistentWord | Error::InternalInconsistency(_) => EXIT_FAILED,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn reason_text(reason: OptimalityReason) -> &'static str {
    match reason {
        OptimalityReason::SingletonTight => "Singleton-like bound is tight (delta = 0)",
        OptimalityReason::ImprovedTight => "improved bound is tight (delta = 1)",
    }
}

fn print_params(out: &mut dyn Write, p: &CodeParams, report: &BoundsReport, json: bool) -> std::io::Result<()> {
    if json {
        let doc = ParamsReport {
            q: p.q,
            n: p.n,
            k: p.k,
            r: p.r,
            s: p.s,
            t: p.t,
            m: p.m,
            n_bar: p.n_bar,
            k_prime: p.k_prime,
            bounds: report,
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serializes")
        )
    } else {
        writeln!(out, "code: q={} n={} k={} r={}", p.q, p.n, p.k, p.r)?;
        writeln!(
            out,
            "derived: s={} t={} m={} n_bar={} k'={}",
            p.s, p.t, p.m, p.n_bar, p.k_prime
        )?;
        writeln!(out, "singleton-like bound: {}", report.d_singleton)?;
        match report.d_improved {
            Some(d) => writeln!(out, "improved bound: {d}")?,
            None => writeln!(out, "improved bound: not applicable")?,
        }
        writeln!(out, "delta: {}", report.delta)?;
        writeln!(out, "d={}", report.d_predicted)?;
        writeln!(out, "optimal: {}", reason_text(report.applicable_reason))
    }
}

fn load_spec(path: &std::path::Path) -> Result<CodeSpec, Failure> {
    codefile::load(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
    })
}

fn dispatch(cmd: Command, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Params { code, json } => {
            let params = validate_params(code.q, code.n, code.k, code.r)?;
            let report = bounds::optimality_report(&params)?;
            print_params(out, &params, &report, json)?;
        }
        Command::Bounds { n, k, r, json } => {
            if n == 0 || k == 0 || r == 0 || k > n {
                return Err(Error::InvalidParams("need positive n, k, r with k <= n".into()).into());
            }
            let singleton = bounds::singleton_like_bound(n, k, r);
            let rate = bounds::rate_bound_holds(n, k, r);
            let improved = bounds::improved_bound(n, k, r);
            let t = match n % (r + 1) {
                0 => 0,
                s => r + 1 - s,
            };
            let delta = bounds::delta(k, t, r);
            if json {
                let doc = serde_json::json!({
                    "n": n, "k": k, "r": r,
                    "singleton_like": singleton,
                    "rate_bound_holds": rate,
                    "improved": improved,
                    "delta": delta,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
            } else {
                writeln!(out, "singleton-like bound: {singleton}")?;
                writeln!(
                    out,
                    "rate bound k <= n - ceil(n/(r+1)): {}",
                    if rate { "holds" } else { "violated" }
                )?;
                match improved {
                    Some(d) => writeln!(out, "improved bound: {d}")?,
                    None => writeln!(out, "improved bound: not applicable")?,
                }
                writeln!(out, "delta: {delta}")?;
            }
        }
        Command::Construct { code, out: path } => {
            let params = validate_params(code.q, code.n, code.k, code.r)?;
            let spec = build_code(&params)?;
            let json = codefile::spec_to_json(&spec);
            match path {
                Some(p) => std::fs::write(p, json)?,
                None => out.write_all(json.as_bytes())?,
            }
        }
        Command::Encode { io } => {
            let spec = load_spec(&io.spec)?;
            let msg = parse_symbols(spec.field(), &io.text(stdin)?)?;
            let word = spec.encode(&msg)?;
            writeln!(out, "{}", format_symbols(&word))?;
        }
        Command::Repair { index, io } => {
            let spec = load_spec(&io.spec)?;
            let text = io.text(stdin)?;
            // The coordinate being repaired may be given as "?".
            let received = parse_received(spec.field(), &text)?;
            let word: Vec<_> = received.iter().map(|x| x.unwrap_or_default()).collect();
            if let Some(pos) = received.iter().position(|x| x.is_none()) {
                if pos + 1 != index {
                    return Err(Error::MalformedInput(format!("erasure at {} but repairing {index}", pos + 1)).into());
                }
            }
            let rep = repair_coordinate(&spec, &word, index)?;
            let point = spec.eval_points()[index - 1];
            writeln!(
                out,
                "coordinate {index} (point {point}) in group {}",
                rep.group.block + 1
            )?;
            for &(x, v) in &rep.consulted {
                let kind = if rep.group.implicit_zeros.contains(&x) {
                    "zero"
                } else {
                    "helper"
                };
                writeln!(out, "{kind} {x} = {v}")?;
            }
            writeln!(out, "value {}", rep.value)?;
        }
        Command::Decode { io } => {
            let spec = load_spec(&io.spec)?;
            let received = parse_received(spec.field(), &io.text(stdin)?)?;
            let msg = decode_erasures(&spec, &received)?;
            writeln!(out, "{}", format_symbols(&msg))?;
        }
        Command::Verify {
            spec,
            budget,
            seed,
            trials,
        } => {
            let spec = load_spec(&spec)?;
            let options = VerifyOptions {
                budget,
                seed,
                shortening_trials: trials,
            };
            let report = verify(&spec, &options)?;
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )?;
            if !report.all_passed() {
                return Ok(EXIT_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}
