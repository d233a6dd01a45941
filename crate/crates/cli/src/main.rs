use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grasper_cli::{
    emit_json, paper_suite, parse_manifold, parse_script, run, seed_from_env, Report, Status,
};
use grasper_core::parse_ring;

#[derive(Parser)]
#[command(
    name = "grasper",
    version,
    about = "Grasper classes of barbell and theta diffeomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script and print every statement's result.
    Eval {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a script and print only failures and the summary.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a ring element to its normal form.
    Reduce {
        /// Manifold, as in a script's `manifold` statement.
        #[arg(short, long, default_value = "S4")]
        manifold: String,
        ring: String,
    },
    /// Run the built-in acceptance suite.
    PaperSuite {
        #[arg(long)]
        json: bool,
    },
}

fn print_report(report: &Report, json: bool, verbose: bool) {
    if json {
        println!("{}", emit_json(report));
        return;
    }
    for r in &report.results {
        if !verbose && r.status == Status::Pass {
            continue;
        }
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        println!("{status:5} {}", r.name);
        if !r.lhs.is_empty() || !r.rhs.is_empty() {
            println!("      {}  |  {}", r.lhs, r.rhs);
        }
        if !r.details.is_empty() {
            println!("      {}", r.details);
        }
    }
    println!("{}", report.summary());
}

fn run_file(file: &PathBuf, json: bool, verbose: bool) -> ExitCode {
    let source = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("grasper: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let script = match parse_script(&source) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return ExitCode::from(2);
        }
    };
    let report = run(&script, &file.display().to_string());
    print_report(&report, json, verbose);
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { file, json } => run_file(&file, json, true),
        Command::Check { file, json } => run_file(&file, json, false),
        Command::Reduce { manifold, ring } => {
            let rctx = match parse_manifold(&manifold) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("manifold:{e}");
                    return ExitCode::from(2);
                }
            };
            let value = match parse_ring(&ring, rctx.ctx()) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("ring:{e}");
                    return ExitCode::from(2);
                }
            };
            match rctx.reduce(&value) {
                Ok(c) => {
                    println!("{c}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("grasper: {e}");
                    ExitCode::from(if e.is_unsupported_context() { 3 } else { 1 })
                }
            }
        }
        Command::PaperSuite { json } => {
            let report = paper_suite(seed_from_env());
            print_report(&report, json, true);
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
