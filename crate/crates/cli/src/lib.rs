//! Command-line front end for the `autgate` library.
//!
//! [`run`] parses arguments, dispatches to one subcommand and returns the
//! rendered report together with the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a computed value disagrees with a requested or reference value |
//! | 2 | usage error or unreadable input |
//! | 3 | a capacity limit or search budget was hit |

mod commands;
pub mod report;

use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::report::{Meta, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "autgate", version, about = "Logical gates from code automorphisms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Omit version and timing metadata so identical runs print identical bytes.
    #[arg(long, global = true)]
    pub no_meta: bool,
    /// Worker threads for parallel group computations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Node budget for automorphism searches.
    #[arg(long, global = true, env = "AUTGATE_NODE_BUDGET")]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parameters, weight distribution and classification of a code file.
    Info { codefile: PathBuf },
    /// Permutation automorphism group of a code.
    Aut {
        codefile: PathBuf,
        /// Filter all n! permutations instead of searching (n <= 8).
        #[arg(long)]
        brute_force: bool,
        /// Exit with status 1 unless the group has this order.
        #[arg(long)]
        expect_order: Option<String>,
    },
    /// Logical action of one permutation, or of the joint automorphism
    /// generators, on the CSS code built from an outer and an inner code.
    Logical {
        outer: PathBuf,
        inner: PathBuf,
        /// File with one line of 1-based images.
        #[arg(long)]
        perm: Option<PathBuf>,
    },
    /// Structure report of the logical action of a CSS code.
    Analyze {
        outer: PathBuf,
        inner: PathBuf,
        /// Matrix files whose group is compared with the computed image group.
        #[arg(long)]
        printed: Vec<PathBuf>,
    },
    /// Automorphisms and symplectic images of a GF(4) stabilizer code.
    Stab { stabfile: PathBuf },
    /// Compile a 2k x 2k logical matrix into permutations and transversal CNOTs.
    Synth {
        /// Outer code C1 (generator matrix file).
        outer: PathBuf,
        /// Inner code C2, contained in the outer code.
        inner: PathBuf,
        /// Invertible 2k x 2k target matrix, column convention.
        #[arg(long)]
        target: PathBuf,
        /// Also write the instruction word to this file.
        #[arg(long)]
        word_out: Option<PathBuf>,
        /// Largest number of group elements enumerated for decompositions.
        #[arg(long, default_value_t = autgate::synthesis::DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
    },
    /// Recompute the logical effect of an instruction word.
    Verify {
        outer: PathBuf,
        inner: PathBuf,
        /// JSON instruction word written by `synth --word-out`.
        #[arg(long)]
        word: PathBuf,
        /// Target matrix; defaults to the target stored in the word file.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Checks on Reed-Muller and cyclic code families.
    Families {
        #[command(subcommand)]
        family: Family,
    },
    /// Recompute every reference value of the worked examples.
    Selfcheck,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Degree-filtration check for RM(r+s, m) / RM(r, m) under AGL(m, 2).
    Rm { r: usize, s: usize, m: usize },
    /// Irreducible factors of X^n - 1 and the cyclotomic cosets of n.
    Cyclic { n: usize },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: autgate::Error,
    },
    #[error(transparent)]
    Library(#[from] autgate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use autgate::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Input { .. } => EXIT_USAGE,
            CliError::Library(e) => match e {
                E::Capacity(_) | E::SearchBudget { .. } => EXIT_CAPACITY,
                E::NotDoublyEven(_) | E::Unsupported(_) | E::Infeasible(_) => EXIT_MISMATCH,
                _ => EXIT_USAGE,
            },
        }
    }
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    let started = Instant::now();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let result = pool.install(|| commands::dispatch(&cli));

    match result {
        Ok(out) => {
            let meta = (!cli.global.no_meta).then(|| Meta {
                version: env!("CARGO_PKG_VERSION"),
                unix_time: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
                elapsed_ms: started.elapsed().as_millis(),
            });
            let code = if out.failed() { EXIT_MISMATCH } else { EXIT_OK };
            let doc = ReportDocument {
                command: echo,
                inputs: out.inputs,
                results: out.results,
                claims: out.claims,
                meta,
            };
            let stdout = if cli.global.json { doc.to_json() } else { doc.to_text() };
            Outcome { code, stdout, stderr: out.notes.iter().map(|n| format!("{n}\n")).collect() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
