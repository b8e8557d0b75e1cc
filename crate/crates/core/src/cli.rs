//! Command-line front end. Exit codes: 0 success, 1 usage or validation
//! error, 2 search budget exhausted, 3 a verdict that should be impossible.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use num_traits::One;

use crate::bounds::{sharpness_window, thresholds};
use crate::constructions::FamilySpec;
use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::hilton::{parse_instance, verify_hilton};
use crate::phi::{is_star, PhiReport};
use crate::search::{
    max_phi_canonical_logged, max_phi_naive_logged, scan_counterexamples, verify_conjecture_logged,
    ConjectureVerdict, SearchMode, SearchResult,
};
use crate::setfamily::{parse_family, serialize_family, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Parser)]
#[command(name = "localekr", version, about = "Exact localized EKR sums, extremal families and exhaustive search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Φ and its breakdown for a family given as a constructor spec or a file.
    Phi {
        #[arg(long)]
        family: String,
    },
    /// Writes a named family in the family file format.
    Construct {
        #[arg(long)]
        spec: FamilySpecArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Φ(J_t(n,k)) against the sharpness bound over a range of n.
    Scan {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        /// Inclusive range `A:B`.
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
    },
    /// Maximizes Φ over all families of k-subsets of [n].
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "canonical")]
        mode: SearchMode,
        /// Node budget for the canonical search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Checks max Φ <= 1 at (n, k) by canonical search.
    Conjecture {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Verifies a Hilton instance file.
    Hilton {
        #[arg(long)]
        file: PathBuf,
    },
    /// The cubic, quadratic and conjectured thresholds for k.
    Thresholds {
        #[arg(long)]
        k: u64,
        #[arg(long = "D", default_value_t = 0)]
        d: u64,
    },
}

#[derive(Debug, Clone)]
struct FamilySpecArg(FamilySpec);

impl std::str::FromStr for FamilySpecArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(FamilySpecArg)
    }
}

fn parse_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got `{s}`"))?;
    let a: u32 = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Range(format!("i/o: {e}"))
}

fn load_family(arg: &str) -> Result<Family> {
    match arg.parse::<FamilySpec>() {
        Ok(spec) => spec.build(),
        Err(spec_err) => {
            let path = PathBuf::from(arg);
            if !path.exists() {
                return Err(Error::Range(format!("`{arg}` is neither a family spec ({spec_err}) nor a file")));
            }
            parse_family(&fs::read_to_string(&path).map_err(io)?)
        }
    }
}

fn execute(command: Command, out: &mut (dyn Write + Send), err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Phi { family } => {
            let family = load_family(&family)?;
            let report = PhiReport::new(&family);
            write!(out, "{report}").map_err(io)?;
            Ok(phi_theorem_check(&family, &report.phi, out)?)
        }
        Command::Construct { spec, out: path } => {
            let family = spec.0.build()?;
            let text = serialize_family(&family);
            match path {
                Some(path) => {
                    fs::write(&path, text).map_err(io)?;
                    writeln!(out, "wrote {} members to {}", family.len(), path.display()).map_err(io)?;
                }
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Scan { k, t, n } => {
            let table = scan_counterexamples(k, t, n.0..=n.1)?;
            write!(out, "{table}").map_err(io)?;
            let (low, high) = sharpness_window(k, t);
            let mut code = EXIT_OK;
            for row in &table.rows {
                let expected = low < row.n as u64 && (row.n as u64) < high;
                if row.violation != expected || row.phi < row.bound {
                    writeln!(err, "FAILED: row n={} disagrees with the sharpness window", row.n).map_err(io)?;
                    code = EXIT_FAILED;
                }
            }
            Ok(code)
        }
        Command::Search { n, k, mode, budget, threads } => {
            if threads > 1 {
                writeln!(out, "note: {threads} threads; incumbent log lines may be reordered, the final result is not")
                    .map_err(io)?;
            }
            let result = {
                let sink = Mutex::new(&mut *out);
                let log = |inc: &crate::search::Incumbent| {
                    let mut w = sink.lock().expect("log sink");
                    let _ = write!(w, "{inc}");
                };
                match mode {
                    SearchMode::Naive => max_phi_naive_logged(n, k, &mut |inc| log(inc))?,
                    SearchMode::Canonical => max_phi_canonical_logged(n, k, budget, threads, &log)?,
                }
            };
            write!(out, "{result}").map_err(io)?;
            search_exit(&result, out)
        }
        Command::Conjecture { n, k, budget } => {
            let report = {
                let sink = Mutex::new(&mut *out);
                let log = |inc: &crate::search::Incumbent| {
                    let mut w = sink.lock().expect("log sink");
                    let _ = write!(w, "{inc}");
                };
                verify_conjecture_logged(n, k, budget, 1, &log)?
            };
            write!(out, "{report}").map_err(io)?;
            Ok(match report.verdict {
                ConjectureVerdict::Refuted(_) if report.in_range => EXIT_FAILED,
                ConjectureVerdict::Inconclusive => EXIT_BUDGET,
                _ => EXIT_OK,
            })
        }
        Command::Hilton { file } => {
            let inst = parse_instance(&fs::read_to_string(&file).map_err(io)?)?;
            let verdict = verify_hilton(&inst);
            write!(out, "{verdict}").map_err(io)?;
            Ok(if verdict.failed() { EXIT_FAILED } else { EXIT_OK })
        }
        Command::Thresholds { k, d } => {
            write!(out, "{}", thresholds(k, d)?).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// At or above the cubic threshold, Φ <= 1 with equality only for stars.
fn phi_theorem_check(family: &Family, phi: &ExactRational, out: &mut (dyn Write + Send)) -> Result<i32> {
    let k = family.k();
    if k == 0 {
        writeln!(out, "theorem check: not applicable for k=0").map_err(io)?;
        return Ok(EXIT_OK);
    }
    let cubic = thresholds(k as u64, 0)?.cubic;
    if (family.n() as u64) < cubic {
        writeln!(out, "theorem check: n < {cubic}, no claim").map_err(io)?;
        return Ok(EXIT_OK);
    }
    let one = ExactRational::one();
    let ok = *phi < one || (*phi == one && is_star(family));
    writeln!(out, "theorem check: n >= {cubic}, {}", if ok { "ok" } else { "FAILED" }).map_err(io)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn search_exit(result: &SearchResult, out: &mut (dyn Write + Send)) -> Result<i32> {
    if !result.complete {
        return Ok(EXIT_BUDGET);
    }
    let k = result.params.k;
    if k >= 1 && result.params.n as u64 >= thresholds(k as u64, 0)?.cubic {
        let one = ExactRational::one();
        let bad = result.max_phi > one || result.witnesses.iter().any(|w| !is_star(w));
        if bad {
            writeln!(out, "FAILED: maximum above 1 or a non-star maximizer at n >= cubic threshold").map_err(io)?;
            return Ok(EXIT_FAILED);
        }
    }
    Ok(EXIT_OK)
}
