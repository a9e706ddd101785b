use std::path::PathBuf;
use std::process::ExitCode;

use adic_kit::{parse_script, parse_syntax, render, run_script, Options, Status};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "adic-kit", version, about = "Run presentation scripts and emit JSON reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script and write the JSON report.
    Run {
        script: PathBuf,
        /// Degree cap D for new presentations and checks.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// p-adic precision N.
        #[arg(long, default_value_t = 8)]
        precision: u32,
        /// Default prime for commands that take one.
        #[arg(long, default_value_t = 2)]
        prime: u32,
        /// Test rings for classify-lifting, separated by ';', e.g. "Zmod(4);GF(2,2)".
        #[arg(long)]
        corpus: Option<String>,
        /// Exit with status 1 when a verdict is inconclusive.
        #[arg(long)]
        strict: bool,
        /// Worker threads for running commands; 1 disables all parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a script in canonical form.
    Fmt { script: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Fmt { script } => {
            let text = match read(&script) {
                Ok(t) => t,
                Err(code) => return code,
            };
            match parse_syntax(&text) {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}: {e}", script.display());
                    ExitCode::from(2)
                }
            }
        }
        Command::Run { script, degree, precision, prime, corpus, strict, jobs, out } => {
            let text = match read(&script) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let parsed = match parse_script(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: {e}", script.display());
                    return ExitCode::from(2);
                }
            };
            let corpus = corpus.map(|c| c.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
            let opts = Options { degree, precision, prime, corpus, strict, jobs };
            let reports = run_script(&parsed, &opts);
            for r in &reports {
                eprintln!("{}", r.summary);
            }
            let doc = render(&reports);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, doc) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{doc}"),
            }
            let failed = reports
                .iter()
                .any(|r| r.status == Status::Error || (strict && r.status == Status::Inconclusive));
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
