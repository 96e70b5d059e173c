//! Front end for `samuel-core`: problem files, the embedded corpus and
//! report rendering. The `samuel` binary is a thin argument parser over
//! [`execute`].

pub mod commands;
pub mod corpus;
pub mod problem;
pub mod report;

use std::path::PathBuf;

use samuel_core::{ErrorClass, Field, PrimeField, Rationals};
use serde_json::{json, Value};

use crate::commands::{Command, Options};
use crate::corpus::{Status, CORPUS};
use crate::problem::{read_problem, LoadError};
use crate::report::{Outcome, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Clone, Debug)]
pub enum Target {
    File { command: Command, path: PathBuf },
    CorpusRun,
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub target: Target,
    pub json: bool,
    pub characteristic: Option<u64>,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Load(LoadError),
    Engine(samuel_core::Error),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Load(e)
    }
}

impl From<samuel_core::Error> for Failure {
    fn from(e: samuel_core::Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Load(_) => EXIT_INPUT,
            Failure::Engine(samuel_core::Error::Inconsistent(_)) => EXIT_MISMATCH,
            Failure::Engine(e) => match e.class() {
                ErrorClass::Resource => EXIT_RESOURCE,
                ErrorClass::Input | ErrorClass::Precondition => EXIT_INPUT,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Load(e) => e.to_string(),
            Failure::Engine(e) => format!("error: {e}"),
        }
    }
}

pub fn execute(inv: &Invocation) -> Execution {
    let (input, outcome) = match &inv.target {
        Target::File { command, path } => {
            let input = path.display().to_string();
            (input, run_file(command, path, inv))
        }
        Target::CorpusRun => ("corpus".to_string(), run_corpus(inv)),
    };
    match outcome {
        Ok((report, characteristic)) => {
            let stdout = if inv.json {
                let v = report.envelope(inv.options.seed, characteristic, &input);
                serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
            } else {
                report.text.clone()
            };
            let code = match report.outcome {
                Outcome::Success => EXIT_OK,
                Outcome::Mismatch => EXIT_MISMATCH,
            };
            Execution {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Execution {
            code: f.code(),
            stdout: String::new(),
            stderr: f.message() + "\n",
        },
    }
}

fn run_file(command: &Command, path: &std::path::Path, inv: &Invocation) -> Result<(Report, u64), Failure> {
    let problem = read_problem(path)?;
    let spec = problem.field_spec(inv.characteristic)?;
    let report = if spec.is_rational() {
        let (_, ideal) = problem.instantiate(Rationals)?;
        commands::run(command, &ideal, &inv.options)?
    } else {
        let (_, ideal) = problem.instantiate(PrimeField::new(spec.characteristic())?)?;
        commands::run(command, &ideal, &inv.options)?
    };
    Ok((report, spec.characteristic()))
}

fn run_corpus(inv: &Invocation) -> Result<(Report, u64), Failure> {
    let characteristic = inv.characteristic.unwrap_or(samuel_core::DEFAULT_CHARACTERISTIC);
    let spec = samuel_core::FieldSpec::new(characteristic)?;
    let outcomes = if spec.is_rational() {
        corpus_outcomes(Rationals, inv.options.seed)?
    } else {
        corpus_outcomes(PrimeField::new(characteristic)?, inv.options.seed)?
    };
    let mut text = String::new();
    let mut entries = Vec::new();
    for o in &outcomes {
        text.push_str(&format!("{:<6} {}\n", o.id, o.status().name()));
        for c in o.comparisons.iter().filter(|c| c.status != Status::Pass) {
            text.push_str(&format!(
                "         {} {}: expected {}, found {}\n",
                c.status.name(),
                c.what,
                c.expected,
                c.found
            ));
        }
        if let Some(e) = &o.error {
            text.push_str(&format!("         error: {e}\n"));
        }
        let comparisons: Vec<Value> = o
            .comparisons
            .iter()
            .map(|c| json!({ "what": c.what, "expected": c.expected, "found": c.found, "status": c.status.name() }))
            .collect();
        entries.push(json!({ "id": o.id, "status": o.status().name(), "comparisons": comparisons, "error": o.error }));
    }
    let passed = outcomes.iter().filter(|o| o.status() == Status::Pass).count();
    let failed = outcomes.iter().filter(|o| o.status() == Status::Fail).count();
    text.push_str(&format!("{passed}/{} PASS\n", outcomes.len()));
    let mut report = Report::new(
        json!({ "entries": entries, "passed": report::int(passed), "total": report::int(outcomes.len()) }),
        text,
    );
    if failed > 0 {
        report.outcome = Outcome::Mismatch;
    }
    Ok((report, characteristic))
}

fn corpus_outcomes<F: Field>(field: F, seed: u64) -> Result<Vec<corpus::EntryOutcome>, Failure> {
    use rayon::prelude::*;
    CORPUS
        .par_iter()
        .map(|e| {
            let (_, ideal) = e.problem().instantiate(field.clone())?;
            Ok(corpus::check_entry(e, &ideal, seed))
        })
        .collect()
}
