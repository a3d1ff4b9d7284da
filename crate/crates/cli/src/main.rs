use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use sigmaframe_cli::{run, Options, Program};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Records,
}

/// Check lattices, positivity predicates and cover presentations.
#[derive(Debug, Parser)]
#[command(name = "sigmaframe", version)]
struct Args {
    /// Document to read; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output format: readable text or JSON Lines records.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Budget for `derive` commands without an explicit budget.
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    /// Largest cover base whose frame is enumerated.
    #[arg(long, default_value_t = 15)]
    max_base: usize,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let program = match Program::load(&text) {
        Ok(p) => p,
        Err(e) => {
            let origin = args.input.as_ref().map_or("<stdin>".to_string(), |p| p.display().to_string());
            eprintln!("error: {origin}:{e}");
            return ExitCode::from(2);
        }
    };
    let options = Options {
        budget: args.budget,
        max_base: args.max_base,
    };
    let report = run(&program, &options);
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Records => print!("{}", report.to_records()),
    }
    ExitCode::from(report.exit_code() as u8)
}
