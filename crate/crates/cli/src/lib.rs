//! Batch front end: each command reads a graph (and possibly a matrix),
//! runs one computation, and reports it as JSON plus a plain-text summary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use thiserror::Error;

mod commands;
pub mod input;

pub const DEFAULT_SEED: u64 = 0;
pub const THREADS_ENV: &str = "CDVLAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Corank, Strong Arnold check and edge bound for μ.
    MuBounds,
    /// Lower bound on η from a kernel restricted by an edge set F.
    EtaCertify,
    /// Decide σ ≤ 5 and emit an obstruction certificate otherwise.
    Sigma5,
    /// Recheck an obstruction certificate against a graph.
    VerifyCert,
    /// Projective-plane incidence graphs and the separation reports.
    Projplane,
    /// Sign-cell fan of a kernel, representation check and sanity report.
    Fan,
    /// Polytopal representation, cellular map and disjointness check.
    Polytopal,
    /// Existential sentence for μ(G) ≥ k in SMT-LIB form.
    EsrEmit,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "cdvlab", version, about = "Exact computations for μ, σ, λ and η")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Edge-list file (`.g6` for graph6) or a name such as K7, K3,3, star3, petersen.
    #[arg(long)]
    pub graph: Option<String>,
    /// Matrix JSON file, or `neg-adjacency` / `neg-all-ones`.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Certificate JSON file for `verify-cert`.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    /// `mu-sigma`, `gap`, `asymptotic` for projplane; `valid` or `semivalid` for fan.
    #[arg(long)]
    pub mode: Option<String>,
    /// Edges of F as `u-v,u-v`; chosen greedily when absent.
    #[arg(long = "edges-F")]
    pub edges_f: Option<String>,
    #[arg(long, default_value_t = cdv_core::graph::DEFAULT_CYCLE_CAP, value_parser = positive)]
    pub cap_cycles: usize,
    #[arg(long, value_parser = positive)]
    pub dim_guard: Option<usize>,
    /// Sample count for the sampled representation check above the guard.
    #[arg(long, value_parser = positive)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output stem: writes `<out>.json`, `<out>.txt` and command artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            graph: None,
            matrix: None,
            cert: None,
            q: None,
            k: None,
            mode: None,
            edges_f: None,
            cap_cycles: cdv_core::graph::DEFAULT_CYCLE_CAP,
            dim_guard: None,
            samples: None,
            seed: DEFAULT_SEED,
            out: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Obstruction = 3,
    ResourceCap = 4,
    InputError = 5,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("cannot read {0}: {1}")]
    Io(String, #[source] std::io::Error),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Cap(_) => Status::ResourceCap,
            CliError::Input(_) | CliError::Io(..) => Status::InputError,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub json: serde_json::Value,
    pub text: String,
    /// Extra files keyed by suffix, e.g. `.cert.json` or `.smt2`.
    pub artifacts: Vec<(String, String)>,
    /// Stem used for artifacts when `--out` is not given.
    pub default_stem: Option<String>,
}

impl Outcome {
    fn failure(err: CliError) -> Self {
        let msg = err.to_string();
        Outcome {
            status: err.status(),
            json: serde_json::json!({ "error": msg }),
            text: format!("error: {msg}\n"),
            artifacts: Vec::new(),
            default_stem: None,
        }
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Runs one command. Errors are folded into the outcome with their exit status.
pub fn run(config: &RunConfig) -> Outcome {
    commands::dispatch(config).unwrap_or_else(Outcome::failure)
}

/// Writes `<stem>.json`, `<stem>.txt` and the artifacts; returns the paths.
pub fn write_outputs(config: &RunConfig, outcome: &Outcome) -> std::io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let stem = match (&config.out, &outcome.default_stem) {
        (Some(out), _) => out.clone(),
        (None, Some(s)) if !outcome.artifacts.is_empty() => PathBuf::from(s),
        _ => return Ok(written),
    };
    let with = |suffix: &str| -> PathBuf {
        let mut s = stem.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    };
    if config.out.is_some() {
        for (suffix, body) in [(".json", outcome.json_text()), (".txt", outcome.text.clone())] {
            write(&with(suffix), &body)?;
            written.push(with(suffix));
        }
    }
    for (suffix, body) in &outcome.artifacts {
        write(&with(suffix), body)?;
        written.push(with(suffix));
    }
    Ok(written)
}

fn write(path: &Path, body: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, body)
}
