use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klein_cert::invariants::{build_invariants_with, DELTA_DEN_CLASSICAL, DELTA_DEN_PRINTED};
use klein_cert::klein::KleinAnalysis;
use klein_cert::orbifold::Weight;
use klein_cert::presentations::{todd_coxeter, Presentation, DEFAULT_MAX_COSETS};
use klein_cert::report::{emit, list_checks, run_checks, Format};
use klein_cert::Result;

/// Exact verification of the Klein quartic lattices.
#[derive(Parser)]
#[command(name = "klein-cert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and emit the ledger.
    Verify {
        /// Only checks whose id has a segment starting with one of these.
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        only: Vec<String>,
        /// Only checks attached to these weights (e.g. 3,8,inf).
        #[arg(long = "p", num_args = 1.., value_delimiter = ',')]
        p: Vec<Weight>,
        /// Write the JSON ledger here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print the text table (the default without --json).
        #[arg(long)]
        text: bool,
    },
    /// Print every check id with its citation key.
    List,
    /// Coset enumeration of a presentation file.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Print exact data for external cross-checks.
    Dump { what: DumpKind },
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpKind {
    /// Mirror normals and special points.
    Arrangement,
    /// Coefficients of f, Delta, C, K (Delta = det(H)/9).
    Invariants,
    /// As `invariants`, with Delta = det(H)/54.
    InvariantsClassical,
}

fn print_lines<I: IntoIterator<Item = String>>(lines: I) -> Result<()> {
    let mut out = std::io::stdout().lock();
    for l in lines {
        match writeln!(out, "{l}") {
            Err(e) if e.kind() == ErrorKind::BrokenPipe => return Ok(()),
            r => r?,
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { only, p, json, text } => {
            let ledger = run_checks(&only, &p)?;
            if let Some(path) = &json {
                emit(&ledger, Format::Json, path)?;
            }
            if text || json.is_none() {
                print_lines(ledger.to_text().lines().map(String::from))?;
            }
            Ok(ledger.success)
        }
        Command::List => {
            let entries = list_checks();
            let w = entries.iter().map(|(id, _)| id.len()).max().unwrap_or(0);
            print_lines(entries.into_iter().map(|(id, r)| format!("{id:<w$}  {r}")))?;
            Ok(true)
        }
        Command::Enumerate { file, max_cosets } => {
            let text = std::fs::read_to_string(&file)?;
            let pres = Presentation::parse(&text)?;
            let table = todd_coxeter(&pres, max_cosets)?;
            let audit = table.audit(&pres);
            print_lines([
                format!("order {}", table.index()),
                format!("cosets defined {}", table.defined),
                format!("audit {}", if audit { "ok" } else { "failed" }),
            ])?;
            Ok(audit)
        }
        Command::Dump { what } => {
            let lines = match what {
                DumpKind::Arrangement => KleinAnalysis::compute()?.dump_lines(),
                DumpKind::Invariants | DumpKind::InvariantsClassical => {
                    let den = match what {
                        DumpKind::Invariants => DELTA_DEN_PRINTED,
                        _ => DELTA_DEN_CLASSICAL,
                    };
                    let g = klein_cert::klein::generate_group()?;
                    build_invariants_with(&g.elements, den)?.export()
                }
            };
            print_lines(lines)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
