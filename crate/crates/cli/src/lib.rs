//! The `ssent` command line: single computations, lemma sweeps and (λ, τ) scans.
//!
//! Exit codes: 0 ok, 1 property violation, 2 usage or parse error, 3 resource guardrail.

pub mod args;
pub mod scan;
pub mod suites;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde_json::json;
use selfsim_entropy::selfsim::{
    dim_upper_bound, level_profile, similarity_dimension, IfsSpec, Limits, Parameter,
};
use selfsim_entropy::Error;

pub use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Violation(String),
    Guardrail(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Guardrail(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Violation(s) | CliError::Guardrail(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardrailExceeded { .. } | Error::PrecisionExhausted { .. } | Error::IndistinguishableRoots { .. } => {
                CliError::Guardrail(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn limits(c: &args::Common) -> Limits {
    let d = Limits::default();
    Limits { atoms: c.atom_limit.unwrap_or(d.atoms), raw_strings: c.raw_limit.unwrap_or(d.raw_strings) }
}

fn read_spec(path: &Path) -> Result<IfsSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_entropy(a: &args::EntropyArgs) -> Result<String, CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let spec = read_spec(&a.spec)?.with_limits(limits(&a.common));
    let profile = level_profile(&spec, a.n)?;
    // dimensions need a numeric λ; a symbolic one reports null
    fn numeric<T>(r: Result<T, Error>) -> Result<Option<T>, Error> {
        match r {
            Ok(x) => Ok(Some(x)),
            Err(Error::Unsupported(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
    let sim = numeric(similarity_dimension(&spec))?;
    let dim = numeric(dim_upper_bound(&spec, a.n))?;
    let report = json!({
        "n": a.n,
        "garsia_entropy": profile.entropies.last(),
        "entropy_rate_upper": profile.rate_upper(),
        "dim_upper_bound": dim,
        "similarity_dimension": sim,
        "overlap": profile.overlap,
    });
    Ok(serde_json::to_string_pretty(&report).unwrap() + "\n")
}

fn cmd_scan(a: &args::ScanArgs) -> Result<String, CliError> {
    let (lambdas, taus) = scan::parse_grid(&a.grid)?;
    let base = match &a.spec {
        Some(p) => read_spec(p)?,
        None => IfsSpec::standard(Parameter::symbol("lambda"), Parameter::symbol("tau"))?,
    }
    .with_limits(limits(&a.common));
    let cells = scan::scan(&base, &lambdas, &taus, a.n)?;
    Ok(scan::to_csv(&cells, a.mode))
}

fn cmd_lemmas(a: &args::LemmasArgs) -> Result<(String, usize), CliError> {
    let s = suites::run_suite(a.suite, a.seed, a.count, a.n)?;
    Ok((serde_json::to_string_pretty(&s).unwrap() + "\n", s.violations))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Entropy(a) => {
            let text = pool(a.common.jobs)?.install(|| cmd_entropy(a))?;
            emit(&a.common.out, &text)
        }
        Command::Scan(a) => {
            let text = pool(a.common.jobs)?.install(|| cmd_scan(a))?;
            emit(&a.common.out, &text)
        }
        Command::Lemmas(a) => {
            let (text, violations) = pool(a.common.jobs)?.install(|| cmd_lemmas(a))?;
            emit(&a.common.out, &text)?;
            if violations > 0 {
                return Err(CliError::Violation(format!("{violations} violations")));
            }
            Ok(())
        }
    }
}

/// Parses arguments, runs, reports errors on stderr and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("ssent: {e}");
            e.exit_code()
        }
    }
}
