//! Command-line front end for `divext`: loads a spec file, runs one command
//! against a named object and reports the outcome.

pub mod commands;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use divext::probe::ProbeConfig;
use divext::spec::{parse_spec_file, SpecError};

pub use report::{Failure, FailureKind, Record, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Verify an algebra and probe it for zero divisors.
    CheckAlgebra,
    /// The ladder `L_k`, `S_k`, `D_k` of an extension.
    Ladder,
    /// Whether `F = L_{k-1} + f_k S_{k-1}` for each `k`.
    Lemma12,
    /// An element carrying one left subspace onto another.
    Transporter,
    /// Ladder condition against the dimension sequence.
    Garcia,
    /// Dimension vectors of the indecomposable modules.
    Catalog,
    /// Corner-block surjectivity for every `a`.
    Tight,
    /// The image matrix with a given corner block.
    SolveBlock,
    /// Extension to embedding and back, or the reverse.
    Roundtrip,
    /// The right dimension sequence of a bimodule.
    Dimseq,
    /// Audit a finite fragment of T on an extension.
    #[value(name = "audit-T", alias = "audit-t")]
    AuditT,
    /// Audit T_n, including every tightness axiom, on an embedding.
    #[value(name = "audit-Tn", alias = "audit-tn")]
    AuditTn,
    /// Audit T_n^1, with only 1-tightness, on an embedding.
    #[value(name = "audit-Tn1", alias = "audit-tn1")]
    AuditTn1,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "divext", version, about = "Exact computations with division ring extensions")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Spec file to load.
    pub spec: PathBuf,
    /// Algebra to use; defaults to the only one defined.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Extension to use; defaults to the only one defined.
    #[arg(long)]
    pub extension: Option<String>,
    /// Embedding to use; defaults to the only one defined.
    #[arg(long)]
    pub embedding: Option<String>,
    /// Bimodule to use; defaults to the only one defined.
    #[arg(long)]
    pub bimodule: Option<String>,
    /// Verdict the run must reach; exits 1 otherwise.
    #[arg(long)]
    pub expect: Option<String>,
    /// Seed for every zero-divisor probe.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of terms for `dimseq`.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Largest `k` audited by `audit-T`.
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Block height for `solve-block`.
    #[arg(long)]
    pub a: Option<usize>,
    /// Corner block for `solve-block`, as JSON rows of entries.
    #[arg(long)]
    pub block: Option<String>,
    /// Generators of the first subspace for `transporter`, as JSON.
    #[arg(long)]
    pub h1: Option<String>,
    /// Generators of the second subspace for `transporter`, as JSON.
    #[arg(long)]
    pub h2: Option<String>,
    /// Rank for `catalog` when no extension is used.
    #[arg(long)]
    pub n: Option<usize>,
    /// `machine` prints one JSON record per line.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn load_failure(e: SpecError) -> Failure {
    Failure::input(e.to_string())
}

/// Loads the spec and runs the command. Never panics on bad input; every
/// problem ends up in the report.
pub fn run(cli: &Cli) -> RunReport {
    let start = Instant::now();
    let cfg = ProbeConfig::with_seed(cli.seed);
    let mut report = RunReport {
        command: cli.command.name(),
        spec: cli.spec.display().to_string(),
        seed: cli.seed,
        inputs: Vec::new(),
        records: Vec::new(),
        verdict: None,
        expect: cli
            .expect
            .clone()
            .or_else(|| commands::default_expect(cli.command).map(String::from)),
        failure: None,
        elapsed: Default::default(),
    };
    match parse_spec_file(&cli.spec, cfg) {
        Ok(doc) => commands::execute(cli, &doc, cfg, &mut report),
        Err(e) => report.failure = Some(load_failure(e)),
    }
    report.elapsed = start.elapsed();
    report
}

/// The bytes for stdout and stderr.
pub fn render(report: &RunReport, format: Format) -> (String, String) {
    let stdout = match format {
        Format::Text => report.render_text(),
        Format::Machine => report.render_machine(),
    };
    let stderr = match &report.failure {
        Some(f) => format!("divext: {}\n", f.message),
        None => String::new(),
    };
    (stdout, stderr)
}
