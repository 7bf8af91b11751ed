use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use chowkit::chow_y::ChowY;
use chowkit::report;

/// Exact Chow rings of the homogeneous spaces Y_n and X_n: compute the
/// integral basis and structure constants, the cokernel of multiplication by
/// c1, and verify every closed form the construction rests on.
#[derive(Parser)]
#[command(name = "chowkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct Selection {
    /// Single rank n (n >= 6)
    #[arg(long, conflicts_with = "n_range")]
    n: Option<u32>,
    /// Inclusive range "A..B" of ranks
    #[arg(long, value_name = "A..B")]
    n_range: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the integral basis, structure constants and index of CH(Y_n)
    ComputeY(Selection),
    /// Compute the per-degree free and torsion parts of CH(X_n)
    ComputeX(Selection),
    /// Run the full verification pipeline: closure, index, multiplication
    /// tables, mod-p dimensions and the cokernel decomposition
    Verify {
        #[command(flatten)]
        selection: Selection,
        /// Primes for the mod-p dimension checks
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u32, 3, 5, 7])]
        primes: Vec<u32>,
        /// Stop at the first failing rank
        #[arg(long)]
        fail_fast: bool,
    },
    /// Run the reduction-identity suite on the rational ring
    Identities(Selection),
}

fn ceiling() -> u32 {
    std::env::var("CHOWKIT_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(64)
}

fn parse_selection(sel: &Selection) -> Result<Vec<u32>, String> {
    let max = ceiling();
    let ns: Vec<u32> = match (&sel.n, &sel.n_range) {
        (Some(n), None) => vec![*n],
        (None, Some(range)) => {
            let (a, b) = range
                .split_once("..")
                .ok_or_else(|| format!("invalid range {range:?}: expected A..B"))?;
            let a: u32 = a.trim().parse().map_err(|_| format!("invalid range start {a:?}"))?;
            let b: u32 = b.trim().parse().map_err(|_| format!("invalid range end {b:?}"))?;
            if a > b {
                return Err(format!("empty range {range:?}"));
            }
            (a..=b).collect()
        }
        _ => return Err("exactly one of --n or --n-range is required".to_string()),
    };
    for &n in &ns {
        if n < 6 || n > max {
            return Err(format!("n = {n} outside the supported range 6..={max}"));
        }
    }
    Ok(ns)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn emit(sel: &Selection, body: String) -> Result<(), String> {
    match &sel.output {
        None => {
            println!("{body}");
            Ok(())
        }
        Some(path) => std::fs::write(path, body + "\n").map_err(|e| format!("{}: {e}", path.display())),
    }
}

/// Joins per-n reports: a single object for one n, an aggregate otherwise.
fn join_json(values: Vec<serde_json::Value>) -> String {
    let v = if values.len() == 1 {
        values.into_iter().next().unwrap()
    } else {
        json!({ "schema": report::SCHEMA, "reports": values })
    };
    serde_json::to_string_pretty(&v).unwrap()
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::ComputeY(sel) => {
            let ns = parse_selection(&sel)?;
            let reports: Result<Vec<_>, String> = ns
                .par_iter()
                .map(|&n| {
                    let chow = ChowY::build(n).map_err(|e| format!("n={n}: {e}"))?;
                    let sc = chow.verify_closure().map_err(|e| format!("n={n}: {e}"))?;
                    report::chow_y_json(&chow, &sc).map_err(|e| format!("n={n}: {e}"))
                })
                .collect();
            let reports = reports?;
            let body = match sel.format {
                Format::Json => join_json(
                    reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect(),
                ),
                Format::Markdown => reports
                    .iter()
                    .map(report::chow_y_markdown)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&sel, body)?;
            Ok(true)
        }
        Command::ComputeX(sel) => {
            let ns = parse_selection(&sel)?;
            for &n in &ns {
                if n < 8 {
                    return Err(format!(
                        "n = {n}: the closed-form decomposition of CH(X_n) needs n >= 8"
                    ));
                }
            }
            let reports: Result<Vec<_>, String> = ns
                .par_iter()
                .map(|&n| {
                    let chow = ChowY::build(n).map_err(|e| format!("n={n}: {e}"))?;
                    let sc = chow.verify_closure().map_err(|e| format!("n={n}: {e}"))?;
                    report::chow_x_json(&chow, &sc).map_err(|e| format!("n={n}: {e}"))
                })
                .collect();
            let reports = reports?;
            let ok = reports.iter().all(|r| r.matches_expected);
            let body = match sel.format {
                Format::Json => join_json(
                    reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect(),
                ),
                Format::Markdown => reports
                    .iter()
                    .map(report::chow_x_markdown)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&sel, body)?;
            Ok(ok)
        }
        Command::Verify {
            selection: sel,
            primes,
            fail_fast,
        } => {
            for &p in &primes {
                if !is_prime(p) {
                    return Err(format!("--primes: {p} is not prime"));
                }
            }
            let ns = parse_selection(&sel)?;
            let reports: Vec<report::VerifyJson> = if fail_fast {
                let mut acc = Vec::new();
                for &n in &ns {
                    let r = report::verify_json(n, &primes)?;
                    let stop = !r.all_ok;
                    acc.push(r);
                    if stop {
                        break;
                    }
                }
                acc
            } else {
                let collected: Result<Vec<_>, String> = ns
                    .par_iter()
                    .map(|&n| report::verify_json(n, &primes))
                    .collect();
                collected?
            };
            let ok = reports.iter().all(|r| r.all_ok);
            for r in reports.iter().filter(|r| !r.all_ok) {
                eprintln!(
                    "verification failed for n = {}: closure={} index={} tables={} mod_p={} chow_x={}{}",
                    r.n,
                    r.closure_ok,
                    r.index_ok,
                    r.tables_ok,
                    r.mod_p_ok,
                    r.chow_x.as_ref().map_or("skipped".to_string(), |x| x
                        .matches_expected
                        .to_string()),
                    r.failure
                        .as_deref()
                        .map(|f| format!(" ({f})"))
                        .unwrap_or_default(),
                );
            }
            let body = match sel.format {
                Format::Json => join_json(
                    reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect(),
                ),
                Format::Markdown => reports
                    .iter()
                    .map(report::verify_markdown)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&sel, body)?;
            Ok(ok)
        }
        Command::Identities(sel) => {
            let ns = parse_selection(&sel)?;
            let reports: Result<Vec<_>, String> =
                ns.par_iter().map(|&n| report::identities_json(n)).collect();
            let reports = reports?;
            let ok = reports.iter().all(|r| r.all_pass);
            for r in reports.iter().filter(|r| !r.all_pass) {
                for c in r.checks.iter().filter(|c| !c.pass) {
                    eprintln!("identity failed for n = {}: {} {:?}", r.n, c.name, c.params);
                }
            }
            let body = match sel.format {
                Format::Json => join_json(
                    reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect(),
                ),
                Format::Markdown => reports
                    .iter()
                    .map(report::identities_markdown)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&sel, body)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
