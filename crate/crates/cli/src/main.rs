//! `jetlink`: invariants of annular Legendrian fronts from the command line.
//!
//! Every command prints one JSON report on stdout (or an indented text
//! rendering with `--pretty`). Exit codes: 0 ok, 2 bad input, 3 unmet
//! precondition, 4 a check failed, 5 internal guard tripped.

mod commands;
mod pretty;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use commands::{CliError, Which};

#[derive(Parser)]
#[command(name = "jetlink", version, about = "Ruling polynomials and HOMFLY-PT invariants of annular fronts")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized move walks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Writhe, tb, rotation numbers and cusp counts.
    Invariants { file: PathBuf },
    /// p-graded ruling polynomial and switch histogram.
    Rulings {
        file: PathBuf,
        #[arg(short = 'p', default_value_t = 2)]
        p: u32,
        /// Base potential of a component, e.g. `c2=3`. Repeatable.
        #[arg(long = "potential", value_parser = parse_potential)]
        potential: Vec<(usize, i64)>,
    },
    /// H, P and the specialization of P, with both checks.
    Homfly { file: PathBuf },
    /// Pairing of A_λ with A_μ, partitions written like `2,1`.
    Inner { lambda: String, mu: String },
    /// Run the main identity and/or the tb bound.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckKind::All)]
        which: CheckKind,
    },
    /// Check every .front file in a directory.
    Corpus {
        dir: PathBuf,
        /// Random move sequences per diagram (0 disables).
        #[arg(long, default_value_t = 0)]
        walks: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    #[value(name = "mainT")]
    Main,
    Bound,
    All,
}

fn parse_potential(s: &str) -> Result<(usize, i64), String> {
    let (c, v) = s.split_once('=').ok_or("expected c<k>=<int>")?;
    let c = c.strip_prefix('c').ok_or("expected c<k>=<int>")?;
    Ok((c.parse().map_err(|_| format!("bad component {c:?}"))?, v.parse().map_err(|_| format!("bad value {v:?}"))?))
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn report(command: &str, input: &str, digest: String, results: Value, ok: bool) -> Value {
    json!({
        "tool": concat!("jetlink ", env!("CARGO_PKG_VERSION")),
        "command": command,
        "input": input,
        "digest": digest,
        "results": results,
        "status": if ok { "ok" } else { "check-failed" },
    })
}

fn run_file(name: &str, file: &Path, body: impl FnOnce(&commands::Loaded) -> Result<(Value, bool), CliError>) -> Result<Value, CliError> {
    let loaded = commands::load(file)?;
    let (results, ok) = body(&loaded)?;
    let r = report(name, &file.display().to_string(), digest(loaded.text.as_bytes()), results, ok);
    if ok {
        Ok(r)
    } else {
        Err(CliError::CheckFailed(r))
    }
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Invariants { file } => run_file("invariants", file, |l| Ok((commands::invariants(&l.front), true))),
        Command::Rulings { file, p, potential } => {
            run_file("rulings", file, |l| Ok((commands::rulings(l, *p, potential)?, true)))
        }
        Command::Homfly { file } => run_file("homfly", file, |l| Ok((commands::homfly(&l.front)?, true))),
        Command::Check { file, which } => {
            let which = match which {
                CheckKind::Main => Which::Main,
                CheckKind::Bound => Which::Bound,
                CheckKind::All => Which::Both,
            };
            run_file("check", file, |l| commands::check(&l.front, which))
        }
        Command::Inner { lambda, mu } => {
            let input = format!("{lambda} {mu}");
            Ok(report("inner", &input, digest(input.as_bytes()), commands::inner(lambda, mu)?, true))
        }
        Command::Corpus { dir, walks } => {
            let (results, ok) = commands::corpus(dir, *walks, cli.seed)?;
            let r = report("corpus", &dir.display().to_string(), digest(results.to_string().as_bytes()), results, ok);
            if ok {
                Ok(r)
            } else {
                Err(CliError::CheckFailed(r))
            }
        }
    }
}

fn emit(v: &Value, pretty: bool) {
    let text = if pretty { pretty::render(v) } else { format!("{v}\n") };
    // a closed pipe downstream is not our failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&v, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::CheckFailed(v) = &e {
                emit(v, cli.pretty);
            } else {
                eprintln!("jetlink: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
