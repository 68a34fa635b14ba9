use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use caterpillar_cli::record::{
    bounds_record, charpoly_record, spectrum_record, verify_record, BoundsRecord, Of,
};
use caterpillar_cli::render;
use caterpillar_spectra::verify::{random_specs, verify_many, VerifyConfig};
use caterpillar_spectra::{CaterpillarSpec, Error};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "caterpillar", version, about = "Laplacian spectra and algebraic-connectivity bounds of caterpillar trees")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Tolerance for comparisons against the dense oracle.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for randomly generated specs.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Matrix {
    C,
    L,
}

#[derive(Subcommand)]
enum Command {
    /// Laplacian and line-graph spectra with multiplicities.
    Spectrum {
        #[arg(long, value_parser = parse_spec)]
        q: CaterpillarSpec,
    },
    /// Exact characteristic polynomial of C or of the Laplacian.
    Charpoly {
        #[arg(long, value_parser = parse_spec)]
        q: CaterpillarSpec,
        #[arg(long, value_enum, ignore_case = true, default_value = "c")]
        of: Matrix,
    },
    /// Algebraic connectivity with its trace and cubic bounds.
    Bounds {
        #[arg(long, value_parser = parse_spec)]
        q: CaterpillarSpec,
    },
    /// Run the invariant suite on one spec or on random specs.
    #[command(group(ArgGroup::new("source").required(true).args(["q", "random"])))]
    Verify {
        #[arg(long, value_parser = parse_spec)]
        q: Option<CaterpillarSpec>,
        /// Number of random specs.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long, default_value_t = 6)]
        qmax: u64,
    },
    /// Bounds table for a batch file with one spec per line.
    Table {
        #[arg(long)]
        input: PathBuf,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_spec(s: &str) -> Result<CaterpillarSpec, String> {
    s.parse().map_err(|e| format!("{e}"))
}

enum Failure {
    Usage(String),
    Verify(String),
    NonConvergence(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(format: Format, record: &impl Serialize, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(record),
        _ => text(),
    }
}

fn read_batch(path: &PathBuf) -> Result<Vec<CaterpillarSpec>, Failure> {
    let content = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut specs = Vec::new();
    for (no, line) in content.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<CaterpillarSpec>() {
            Ok(s) => specs.push(s),
            Err(e) => eprintln!("{}:{}: skipped: {e}", path.display(), no + 1),
        }
    }
    Ok(specs)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Spectrum { q } => {
            let r = spectrum_record(&q, cli.tol)?;
            Ok(emit(format, &r, || render::spectrum_text(&r)))
        }
        Command::Charpoly { q, of } => {
            let of = match of {
                Matrix::C => Of::C,
                Matrix::L => Of::L,
            };
            let r = charpoly_record(&q, of)?;
            Ok(emit(format, &r, || render::charpoly_text(&r)))
        }
        Command::Bounds { q } => {
            let r = bounds_record(&q)?;
            Ok(match format {
                Format::Json => json(&r),
                Format::Csv => render::table_csv(std::slice::from_ref(&r)),
                Format::Text => render::bounds_text(&r),
            })
        }
        Command::Verify { q, random, kmax, qmax } => {
            let (specs, seed) = match (q, random) {
                (Some(s), _) => (vec![s], None),
                (None, Some(n)) => (random_specs(n, kmax, qmax, cli.seed), Some(cli.seed)),
                (None, None) => unreachable!("clap requires one source"),
            };
            let report = verify_many(&specs, &VerifyConfig { tol: cli.tol });
            let r = verify_record(&report, &specs, seed);
            let out = emit(format, &r, || render::verify_text(&r));
            if r.non_convergence {
                print!("{out}");
                return Err(Failure::NonConvergence("eigensolver did not converge".into()));
            }
            if !r.passed {
                print!("{out}");
                return Err(Failure::Verify("verification failed".into()));
            }
            Ok(out)
        }
        Command::Table { input, output } => {
            let specs = read_batch(&input)?;
            let results: Vec<(CaterpillarSpec, Result<BoundsRecord, Error>)> = specs
                .into_par_iter()
                .map(|s| {
                    let r = bounds_record(&s);
                    (s, r)
                })
                .collect();
            let mut rows = Vec::new();
            for (s, r) in results {
                match r {
                    Ok(r) => rows.push(r),
                    Err(Error::NonConvergence { sweeps }) => {
                        return Err(Failure::NonConvergence(format!("{s}: no convergence after {sweeps} sweeps")))
                    }
                    Err(e) => eprintln!("{s}: skipped: {e}"),
                }
            }
            let out = match format {
                Format::Json => json(&rows),
                Format::Csv => render::table_csv(&rows),
                Format::Text => render::table_text(&rows),
            };
            let bad: Vec<String> = rows
                .iter()
                .filter(|r| r.published_error)
                .map(|r| render::fmt_q(&r.q))
                .collect();
            let out = match output {
                Some(path) => {
                    fs::write(&path, out)
                        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                    String::new()
                }
                None => out,
            };
            if !bad.is_empty() {
                print!("{out}");
                return Err(Failure::Verify(format!(
                    "recomputed values contradict published ones for {}",
                    bad.join(", ")
                )));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::NonConvergence(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
