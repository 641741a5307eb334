use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eres::corpus::{self, Expected};
use eres::reason::{self, Backend, Options};
use eres::{dump_translation, parse_domain, parse_query, resolve_query, Error};
use eres_core::ground::DEFAULT_INSTANCE_CAP;
use eres_core::DomainDescription;

#[derive(Debug, Parser)]
#[command(name = "eres", version, about = "Sceptical and credulous reasoning about narratives in the action language E")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Reasoning backend.
    #[arg(long, value_enum, default_value_t, global = true)]
    mode: Backend,

    /// Last time point enumerated by the oracle. Defaults to one past the
    /// latest time in the domain and query.
    #[arg(long, global = true)]
    horizon: Option<u32>,

    /// Cap on proposition instances produced by grounding.
    #[arg(long, env = "ERES_CAP_INSTANCES", default_value_t = DEFAULT_INSTANCE_CAP, global = true)]
    cap_instances: usize,

    #[arg(long, value_enum, default_value_t, global = true)]
    format: Format,

    /// Report elapsed time per query.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Answer `sceptical([...])`, `credulous([...])` or `credulous([...],X)`.
    Query { domain: PathBuf, query: String },
    /// Test whether the observations can be jointly satisfied.
    Check { domain: PathBuf },
    /// List every model up to the horizon (always uses the oracle).
    Models { domain: PathBuf },
    /// Print the domain as Prolog-style clauses.
    Translate { domain: PathBuf },
    /// Run the bundled goldens.
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Serialize)]
struct QueryRecord<'a> {
    query: &'a str,
    backend: Backend,
    outcome: String,
    explanations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_us: Option<u128>,
}

#[derive(Serialize)]
struct CheckRecord {
    backend: Backend,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_us: Option<u128>,
}

#[derive(Serialize)]
struct ModelsRecord {
    count: usize,
    models: Vec<String>,
}

#[derive(Serialize)]
struct GoldenRecord {
    line: usize,
    domain: String,
    query: String,
    expected: String,
    actual: String,
    passed: bool,
}

/// Reads `path`, falling back to the bundled corpus for bare names such as
/// `dv.e`.
fn load(path: &Path) -> Result<DomainDescription, Error> {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(source) => match path.to_str().and_then(corpus::domain_text) {
            Some(text) => text.to_string(),
            None => return Err(Error::Io { path: path.to_path_buf(), source }),
        },
    };
    parse_domain(&text).map_err(|source| Error::Parse { path: path.to_path_buf(), source })
}

fn json(value: &impl Serialize) {
    println!("{}", serde_json::to_string(value).expect("records serialize"));
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let opts = Options { backend: cli.mode, horizon: cli.horizon, instance_cap: cli.cap_instances };
    let verdict = |ok: bool| ExitCode::from(if ok { 0 } else { 1 });
    let started = Instant::now();
    let elapsed = || cli.timings.then(|| started.elapsed().as_micros());
    match &cli.command {
        Command::Query { domain, query } => {
            let d = load(domain)?;
            let q = resolve_query(parse_query(query).map_err(|source| Error::Query { source })?, &d.vocabulary);
            let v = reason::answer(&d, &q, &opts)?;
            let explanations: Vec<String> = v.explanations.iter().map(|x| x.to_string()).collect();
            let elapsed_us = elapsed();
            match cli.format {
                Format::Text => {
                    println!("{}", v.outcome);
                    for x in &explanations {
                        println!("X = {x}");
                    }
                    if let Some(us) = elapsed_us {
                        eprintln!("elapsed: {us} us");
                    }
                }
                Format::Json => json(&QueryRecord {
                    query,
                    backend: cli.mode,
                    outcome: v.outcome.to_string(),
                    explanations,
                    elapsed_us,
                }),
            }
            Ok(verdict(v.outcome.succeeded()))
        }
        Command::Check { domain } => {
            let ok = reason::check(&load(domain)?, &opts)?;
            let elapsed_us = elapsed();
            match cli.format {
                Format::Text => {
                    println!("{}", if ok { Expected::Consistent } else { Expected::Inconsistent });
                    if let Some(us) = elapsed_us {
                        eprintln!("elapsed: {us} us");
                    }
                }
                Format::Json => json(&CheckRecord { backend: cli.mode, consistent: ok, elapsed_us }),
            }
            Ok(verdict(ok))
        }
        Command::Models { domain } => {
            let models: Vec<String> = reason::models(&load(domain)?, &opts)?.iter().map(|m| m.to_string()).collect();
            match cli.format {
                Format::Text => {
                    for m in &models {
                        println!("{m}");
                    }
                }
                Format::Json => json(&ModelsRecord { count: models.len(), models: models.clone() }),
            }
            Ok(verdict(!models.is_empty()))
        }
        Command::Translate { domain } => {
            let d = load(domain)?;
            let report = eres_core::validate_domain(&d);
            if !report.is_ok() {
                return Err(eres_core::Error::Invalid(report).into());
            }
            print!("{}", dump_translation(&d)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus => {
            let mut passed = 0;
            let goldens = corpus::goldens();
            for g in &goldens {
                let r = corpus::run_golden(g, cli.mode)?;
                passed += usize::from(r.passed);
                match cli.format {
                    Format::Text => println!("{r}"),
                    Format::Json => json(&GoldenRecord {
                        line: g.line,
                        domain: g.domain.clone(),
                        query: g.query.clone().unwrap_or_else(|| "check".into()),
                        expected: g.expected.to_string(),
                        actual: r.actual.clone(),
                        passed: r.passed,
                    }),
                }
            }
            if cli.format == Format::Text {
                println!("{passed}/{} goldens passed", goldens.len());
            }
            Ok(verdict(passed == goldens.len()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Reasoning(eres_core::Error::Invalid(report)) = &e {
                eprintln!("{report}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
