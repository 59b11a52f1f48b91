//! `singlab`: exact invariants of isolated hypersurface singularities.
//!
//! Two subcommands:
//!
//! - `run`: analyze one polynomial germ and print a text report (optionally
//!   writing the full JSON report to a file);
//! - `verify-examples`: run the embedded golden suite and print a pass/fail
//!   table.
//!
//! Exit codes: 0 success, 2 input error, 3 computation refused (germ outside
//! the supported class), 4 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use singlab::pipeline::{self, ChecksLevel, RunConfig, SpectrumMethod};
use singlab::verify;

#[derive(Parser)]
#[command(
    name = "singlab",
    version,
    about = "Exact invariants of isolated hypersurface singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a polynomial germ with an isolated singularity at the origin.
    Run {
        /// Polynomial, e.g. "x^5+y^6+x^4y".
        #[arg(long)]
        f: String,
        /// Comma-separated variable names, e.g. "x,y".
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// Spectrum method: newton | qh:<w1,...,wk> | ts:<f1>;<f2> |
        /// external:<path>.
        #[arg(long, default_value = "newton")]
        spectrum: String,
        /// Write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Verification depth: fast | full (adds the row-reduction oracle).
        #[arg(long, default_value = "fast")]
        checks: String,
    },
    /// Run the embedded example suite against its golden data.
    VerifyExamples {
        /// Write the rows as JSON lines here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_spectrum_method(s: &str) -> Result<SpectrumMethod, String> {
    if s == "newton" {
        return Ok(SpectrumMethod::Newton);
    }
    if let Some(rest) = s.strip_prefix("qh:") {
        let weights = rest
            .split(',')
            .map(|w| singlab::rat::parse(w).ok_or_else(|| format!("bad weight `{w}`")))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(SpectrumMethod::QuasiHomogeneous(weights));
    }
    if let Some(rest) = s.strip_prefix("ts:") {
        let (a, b) = rest
            .split_once(';')
            .ok_or_else(|| "ts needs two parts separated by `;`".to_string())?;
        return Ok(SpectrumMethod::ThomSebastiani(a.into(), b.into()));
    }
    if let Some(rest) = s.strip_prefix("external:") {
        return Ok(SpectrumMethod::External(PathBuf::from(rest)));
    }
    Err(format!("unknown spectrum method `{s}`"))
}

fn thread_cap() -> usize {
    std::env::var("SINGLAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            f,
            vars,
            spectrum,
            json,
            checks,
        } => {
            let method = match parse_spectrum_method(&spectrum) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let checks = match checks.as_str() {
                "fast" => ChecksLevel::Fast,
                "full" => ChecksLevel::Full,
                other => {
                    eprintln!("error: unknown checks level `{other}`");
                    return ExitCode::from(2);
                }
            };
            let config = RunConfig {
                f_text: f,
                vars,
                method,
                checks,
            };
            match pipeline::run(&config) {
                Ok(report) => {
                    print!("{}", report.render_text());
                    if let Some(path) = json {
                        if let Err(e) = std::fs::write(&path, report.to_json()) {
                            eprintln!("error: cannot write {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                    }
                    if report.verifications.all_hold() {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("error: a verification failed; see the report");
                        ExitCode::from(4)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    match &e {
                        singlab::Error::NotIsolated { .. } => {
                            eprintln!("hint: germ has a non-isolated singularity")
                        }
                        singlab::Error::NotConvenient
                        | singlab::Error::DegenerateNewtonBoundary
                        | singlab::Error::SpectrumMismatch
                        | singlab::Error::FiltrationViolation { .. }
                        | singlab::Error::GradingPairingClash(_) => {
                            eprintln!(
                                "hint: germ is outside the supported spectrum classes; \
                                 supply the spectrum with --spectrum external:<path>"
                            )
                        }
                        _ => {}
                    }
                    ExitCode::from(pipeline::error_exit_code(&e) as u8)
                }
            }
        }
        Command::VerifyExamples { json } => match verify::verify_examples(thread_cap()) {
            Ok(rows) => {
                print!("{}", verify::render_table(&rows));
                if let Some(path) = json {
                    let lines: Vec<String> = rows
                        .iter()
                        .map(|r| {
                            format!(
                                "{{\"example\":{:?},\"quantity\":{:?},\"expected\":{:?},\"got\":{:?},\"pass\":{}}}",
                                r.example, r.quantity, r.expected, r.got, r.pass
                            )
                        })
                        .collect();
                    if let Err(e) = std::fs::write(&path, lines.join("\n")) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                if verify::all_pass(&rows) {
                    println!("all examples verified");
                    ExitCode::SUCCESS
                } else {
                    eprintln!("error: golden data mismatch");
                    ExitCode::from(4)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(pipeline::error_exit_code(&e) as u8)
            }
        },
    }
}
