use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use ytwo_core::exec::configure_threads;
use ytwo_core::report::RunReport;
use ytwo_core::spectool::{Table1Options, DEFAULT_CAP};
use ytwo_core::suites::{self, RepSelect, SuiteError};
use ytwo_core::Exec;

#[derive(Parser, Debug)]
#[command(name = "ytwo", version, about = "Verification suites for the representations of y(m)")]
struct Cli {
    /// Number of generators of the symmetric part (the module has rank m + 1).
    #[arg(long, global = true, default_value_t = 3)]
    m: usize,
    /// Order of the root of unity used by specializations.
    #[arg(long, global = true, default_value_t = 5)]
    n: u32,
    /// Largest exponent k in the relator schedules and power checks.
    #[arg(long, global = true, default_value_t = 20)]
    kmax: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Maximum number of group elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (YTWO_THREADS takes precedence).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Representations to check: phi, psi, eta, both (phi and psi) or all.
    #[arg(long, global = true, default_value = "both")]
    rep: RepSelect,
    /// Report elapsed_ms as 0 so that output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one verification suite.
    Verify {
        suite: Suite,
        /// Random words for the lifting suite.
        #[arg(long, default_value_t = 200)]
        words: usize,
        /// Maximum random word length for the lifting suite.
        #[arg(long, default_value_t = 30)]
        max_len: usize,
    },
    /// Split the rank-r module into hyperbolic lines and a small residual.
    Decompose {
        #[arg(long)]
        rank: usize,
    },
    /// Specialize φ and η at a root of unity of order n.
    Specialize {
        /// Enumerate the b-generated groups.
        #[arg(long)]
        enumerate: bool,
        /// Also enumerate the full image of φ (informational).
        #[arg(long)]
        full_image: bool,
    },
    /// Degrees of the simple components of the augmentation ideal.
    Augmentation {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,9,15")]
        ns: Vec<u32>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Relations,
    Lifting,
    ClosedForm,
    Powers,
    Basis,
    Center,
    Extended,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Lifting => "lifting",
            Suite::ClosedForm => "closed-form",
            Suite::Powers => "powers",
            Suite::Basis => "basis",
            Suite::Center => "center",
            Suite::Extended => "extended",
        }
    }
}

fn run(cli: &Cli, exec: Exec) -> Result<RunReport, SuiteError> {
    let mut report;
    match &cli.command {
        Command::Verify { suite, words, max_len } => {
            report = RunReport::new(format!("verify {}", suite.name()));
            report.param("m", cli.m);
            report.checks = match suite {
                Suite::Relations => {
                    report.param("kmax", cli.kmax);
                    report.param("rep", format!("{:?}", cli.rep).to_lowercase());
                    suites::relations(cli.m, cli.kmax, cli.rep, exec)?
                }
                Suite::Lifting => {
                    report.param("seed", cli.seed);
                    report.param("words", *words);
                    report.param("max_len", *max_len);
                    suites::lifting(cli.m, *words, *max_len, cli.seed, exec)?
                }
                Suite::ClosedForm => {
                    report.param("kmax", cli.kmax);
                    suites::closed_form(cli.m, cli.kmax)?
                }
                Suite::Powers => {
                    report.param("kmax", cli.kmax);
                    suites::powers(cli.m, cli.kmax, exec)?
                }
                Suite::Basis => suites::basis(cli.m)?,
                Suite::Center => {
                    report.param("n", cli.n);
                    suites::center(cli.m, cli.n)?
                }
                Suite::Extended => suites::extended(cli.m)?,
            };
        }
        Command::Decompose { rank } => {
            report = RunReport::new("decompose");
            report.param("rank", *rank);
            report.checks = suites::decompose(*rank)?.0;
        }
        Command::Specialize { enumerate, full_image } => {
            report = RunReport::new("specialize");
            report.param("m", cli.m);
            report.param("n", cli.n);
            report.param("kmax", cli.kmax);
            report.param("enumerate", *enumerate);
            report.param("cap", cli.cap);
            let opts = Table1Options {
                cap: cli.cap,
                kmax: cli.kmax,
                exec,
                enumerate: *enumerate,
                full_image: *full_image,
            };
            report.checks = suites::specialize(cli.m, cli.n, &opts)?.0;
        }
        Command::Augmentation { ns } => {
            report = RunReport::new("augmentation");
            report.param("ns", json!(ns));
            report.checks = suites::augmentation(ns)?;
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let start = Instant::now();
    let mut report = match run(&cli, exec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if !cli.no_timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
