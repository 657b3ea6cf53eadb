//! Command-line front end: per-knot reports, pinch reductions, seed
//! synthesis, range scans, and the self-test sweep.

mod output;
mod selftest;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use pinchcalc::classify::{classify_for, Tag};
use pinchcalc::invariants::report_for;
use pinchcalc::oracle;
use pinchcalc::pinch::{pinch_move_pair, pinch_sequence, synthesize, SeedData, Sign};
use pinchcalc::TorusKnot;

/// Guard against accidental million-knot scans; generous for real use.
const SCAN_BOUND_CAP: u32 = 5000;

#[derive(Parser)]
#[command(
    name = "pinchcalc",
    version,
    about = "Torus knot pinch moves and concordance invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the invariants of one torus knot T(p,q)
    Invariants {
        #[arg(allow_negative_numbers = true)]
        p: String,
        #[arg(allow_negative_numbers = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the pinch reduction of T(p,q) step by step, then its seed data
    Pinch {
        #[arg(allow_negative_numbers = true)]
        p: String,
        #[arg(allow_negative_numbers = true)]
        q: String,
    },
    /// Build the knot determined by seed data {p0, q1, eps, ms}
    Synthesize {
        #[arg(long)]
        p0: String,
        #[arg(long)]
        q1: String,
        /// Comma-separated move signs eps_1,..,eps_n (each 1 or -1)
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Comma-separated even integers m_1,..,m_{n-1}
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        ms: String,
    },
    /// Scan all normalized knots with p <= pmax, q <= qmax
    Scan {
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
        format: ScanFormat,
        /// Worker threads; the output order does not depend on this
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run every cross-check on a scan range and report failure counts
    Selftest {
        #[arg(long, default_value_t = 100)]
        pmax: u32,
        #[arg(long, default_value_t = 100)]
        qmax: u32,
        /// Check the Seifert oracle on knots with (p-1)(q-1) up to this
        #[arg(long, default_value_t = 120)]
        oracle_cap: usize,
        #[arg(long, hide = true)]
        inject_corruption: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Verified,
    #[value(name = "gap-n-1")]
    GapN1,
    Moebius,
    Counterexample,
    BoundsOnly,
}

impl Filter {
    fn admits(self, tag: Tag) -> bool {
        match self {
            Filter::All => true,
            Filter::Verified => tag == Tag::VerifiedEqualsN,
            Filter::GapN1 => tag == Tag::GapNMinusOne,
            Filter::Moebius => tag == Tag::MoebiusBand,
            Filter::Counterexample => tag == Tag::CounterexampleDescended,
            Filter::BoundsOnly => tag == Tag::BoundsOnly,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Invariants { p, q, format } => {
            let knot = parse_knot(&p, &q)?;
            let seq = pinch_sequence(&knot);
            let rep = report_for(&knot, &seq);
            let class = classify_for(&knot, &seq);
            match format {
                Format::Table => print!("{}", output::table(&rep, &class)),
                Format::Json => println!("{}", output::json_line(&rep, &class)),
                Format::Csv => {
                    println!("{}", output::CSV_HEADER);
                    println!("{}", output::csv_line(&rep, &class));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pinch { p, q } => {
            let knot = parse_knot(&p, &q)?;
            // Walk the reduction in the orientation the user typed; the
            // moves are computed on the ordered pair as given, so e.g.
            // `pinch 7 4` reports the step T(7,4) -> T(3,2).
            let mut a = parse_bigint(&p)?.abs();
            let mut b = parse_bigint(&q)?.abs();
            let one = BigInt::from(1);
            while a > one && b > one {
                let step = pinch_move_pair(&a, &b).map_err(|e| e.to_string())?;
                println!(
                    "T({},{}) --({})--> T({},{})",
                    step.from.0, step.from.1, step.epsilon, step.to.0, step.to.1
                );
                (a, b) = step.to;
            }
            let seq = pinch_sequence(&knot);
            println!("seed {}", seq.seed());
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize { p0, q1, eps, ms } => {
            let seed = SeedData {
                p0: parse_bigint(&p0)?,
                q1: parse_bigint(&q1)?,
                epsilons: parse_signs(&eps)?,
                ms: parse_bigint_list(&ms)?,
            };
            let seq = synthesize(&seed).map_err(|e| e.to_string())?;
            let (p, q) = seq.knot(seed.n()).clone();
            let knot = TorusKnot::normalize(p, q).map_err(|e| e.to_string())?;
            let rebuilt = pinch_sequence(&knot);
            assert_eq!(
                rebuilt, seq,
                "round-trip of the synthesized sequence failed"
            );
            println!("T({},{})", knot.p(), knot.q());
            let rep = report_for(&knot, &rebuilt);
            let class = classify_for(&knot, &rebuilt);
            print!("{}", output::table(&rep, &class));
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            pmax,
            qmax,
            filter,
            format,
            jobs,
        } => {
            if pmax < 2 || qmax < 2 {
                return Err("scan bounds must be at least 2".into());
            }
            if pmax > SCAN_BOUND_CAP || qmax > SCAN_BOUND_CAP {
                return Err(format!("scan bounds are capped at {SCAN_BOUND_CAP}"));
            }
            let knots = selftest::scan_range(pmax, qmax);
            let render = |knot: &TorusKnot| -> Option<String> {
                let seq = pinch_sequence(knot);
                let class = classify_for(knot, &seq);
                if !filter.admits(class.tag) {
                    return None;
                }
                let rep = report_for(knot, &seq);
                Some(match format {
                    ScanFormat::Csv => output::csv_line(&rep, &class),
                    ScanFormat::Json => output::json_line(&rep, &class),
                })
            };
            let rows: Vec<Option<String>> = if jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| e.to_string())?;
                pool.install(|| knots.par_iter().map(render).collect())
            } else {
                knots.iter().map(render).collect()
            };
            if matches!(format, ScanFormat::Csv) {
                println!("{}", output::CSV_HEADER);
            }
            for row in rows.into_iter().flatten() {
                println!("{row}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest {
            pmax,
            qmax,
            oracle_cap,
            inject_corruption,
        } => {
            if pmax > SCAN_BOUND_CAP || qmax > SCAN_BOUND_CAP {
                return Err(format!("scan bounds are capped at {SCAN_BOUND_CAP}"));
            }
            let opts = selftest::Options {
                pmax,
                qmax,
                oracle_cap,
                dim_cap: dim_cap_from_env()?,
                inject_corruption,
            };
            if selftest::run(&opts) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

/// `PINCHCALC_ORACLE_CAP` overrides the default Seifert-matrix dimension cap.
fn dim_cap_from_env() -> Result<usize, String> {
    match std::env::var("PINCHCALC_ORACLE_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("PINCHCALC_ORACLE_CAP must be an integer, got {v:?}")),
        Err(_) => Ok(oracle::DEFAULT_CAP),
    }
}

fn parse_bigint(text: &str) -> Result<BigInt, String> {
    BigInt::from_str(text.trim()).map_err(|_| format!("not an integer: {text:?}"))
}

fn parse_bigint_list(text: &str) -> Result<Vec<BigInt>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_bigint).collect()
}

fn parse_signs(text: &str) -> Result<Vec<Sign>, String> {
    parse_bigint_list(text)?
        .into_iter()
        .map(|v| {
            i64::try_from(&v)
                .ok()
                .and_then(Sign::from_i64)
                .ok_or_else(|| format!("eps values must be 1 or -1, got {v}"))
        })
        .collect()
}

fn parse_knot(p: &str, q: &str) -> Result<TorusKnot, String> {
    let p = parse_bigint(p)?;
    let q = parse_bigint(q)?;
    TorusKnot::normalize(p, q).map_err(|e| e.to_string())
}
