use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use intzeta::{dsr_relation, pi_plus, stuffle, zeta_real_approx, Index, IndexSum, Relation};
use intzeta_cli::{generate_cases, run_cases, Suite};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "intzeta",
    version,
    about = "Exact algebra of integer-index multiple zeta values"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regularizability index and classification, e.g. `m-index "(0,3)"`.
    MIndex {
        #[arg(allow_hyphen_values = true)]
        index: Index,
    },
    /// Admissible, regularizable_only or non_regularizable.
    Classify {
        #[arg(allow_hyphen_values = true)]
        index: Index,
    },
    /// Expansion over positive indices.
    PiPlus {
        #[arg(allow_hyphen_values = true)]
        index: Index,
    },
    /// Extended shuffle product of two indices.
    Shuffle {
        #[arg(allow_hyphen_values = true)]
        a: Index,
        #[arg(allow_hyphen_values = true)]
        b: Index,
        /// Apply the positive-index map to the product.
        #[arg(long)]
        reduce: bool,
    },
    /// Stuffle product of two indices.
    Stuffle {
        #[arg(allow_hyphen_values = true)]
        a: Index,
        #[arg(allow_hyphen_values = true)]
        b: Index,
        #[arg(long)]
        reduce: bool,
    },
    /// Double shuffle relation of two admissible indices.
    Relation {
        #[arg(allow_hyphen_values = true)]
        a: Index,
        #[arg(allow_hyphen_values = true)]
        b: Index,
        /// Append the relation as one JSON line to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded property suites against exact oracles.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Series truncation order; defaults to 60 (50 for stuffle).
        #[arg(long, env = "INTZETA_ORDER", value_parser = clap::value_parser!(u64).range(1..))]
        order: Option<u64>,
        /// Worker threads.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// List every case with its result.
        #[arg(long)]
        verbose: bool,
    },
    /// Partial-sum estimate of a real multiple zeta value.
    Eval {
        #[arg(allow_hyphen_values = true)]
        index: Index,
        #[arg(long, env = "INTZETA_ORDER", default_value_t = 10_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Reduction,
    Shuffle,
    Stuffle,
    Homomorphism,
    MFormula,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Reduction => vec![Suite::Reduction],
            SuiteArg::Shuffle => vec![Suite::Shuffle],
            SuiteArg::Stuffle => vec![Suite::Stuffle],
            SuiteArg::Homomorphism => vec![Suite::Homomorphism],
            SuiteArg::MFormula => vec![Suite::MFormula],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn print_sum(s: &IndexSum, pretty: bool) {
    if pretty {
        println!("{}", s.pretty());
    } else {
        println!("{}", s.to_json());
    }
}

fn print_relation(rel: &Relation, pretty: bool) {
    if pretty {
        println!("pair:       {} x {}", rel.pair.0, rel.pair.1);
        println!("shuffle:    {}", rel.shuffle_expansion.pretty());
        println!("stuffle:    {}", rel.stuffle_expansion.pretty());
        println!("difference: {}", rel.difference.pretty());
    } else {
        println!("{}", rel.to_json());
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let pretty = cli.pretty;
    match cli.command {
        Command::MIndex { index } => {
            let m = index.m_index();
            let class = index.classify();
            if pretty {
                println!("m = {m} ({class})");
            } else {
                println!(
                    "{}",
                    json!({"index": index, "m": m, "classification": class})
                );
            }
        }
        Command::Classify { index } => println!("{}", index.classify()),
        Command::PiPlus { index } => print_sum(&pi_plus(&index.into()), pretty),
        Command::Shuffle { a, b, reduce } => {
            let p = intzeta::try_shuffle(&a.into(), &b.into()).map_err(|e| e.to_string())?;
            print_sum(&if reduce { pi_plus(&p) } else { p }, pretty);
        }
        Command::Stuffle { a, b, reduce } => {
            let p = stuffle(&a.into(), &b.into());
            print_sum(&if reduce { pi_plus(&p) } else { p }, pretty);
        }
        Command::Relation { a, b, out } => {
            let rel = dsr_relation(&a, &b).map_err(|e| e.to_string())?;
            print_relation(&rel, pretty);
            if let Some(path) = out {
                let mut file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                writeln!(file, "{}", rel.to_json())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
        }
        Command::Verify {
            suite,
            seed,
            cases,
            order,
            jobs,
            verbose,
        } => {
            let mut failed = 0;
            let mut total = 0;
            for s in suite.suites() {
                let order = order.map_or(s.default_order(), |o| o as usize);
                let list = generate_cases(s, seed, cases);
                let report = run_cases(s, &list, order, jobs as usize);
                if verbose {
                    for o in &report.outcomes {
                        let status = if o.pass { "pass" } else { "FAIL" };
                        if o.detail.is_empty() {
                            println!("{} #{} {} {}", s, o.case.id, o.case, status);
                        } else {
                            println!("{} #{} {} {}: {}", s, o.case.id, o.case, status, o.detail);
                        }
                    }
                }
                println!("{}", report.summary_line());
                failed += report.outcomes.len() - report.passed();
                total += report.outcomes.len();
            }
            if suite.suites().len() > 1 {
                println!("all: {}/{} pass", total - failed, total);
            }
            if failed > 0 {
                return Ok(ExitCode::from(EXIT_FAILURE));
            }
        }
        Command::Eval { index, order } => {
            let z = zeta_real_approx(&index, order as usize).map_err(|e| e.to_string())?;
            if pretty {
                println!("{:.12} (tail ~ {:.1e}, N = {order})", z.value, z.error_hint);
            } else {
                println!(
                    "{}",
                    json!({"index": index, "value": z.value, "error_hint": z.error_hint, "order": order})
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
