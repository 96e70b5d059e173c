//! The embedded regression corpus. Every expected value lives in [`CORPUS`].

use num_bigint::BigInt;
use samuel_core::hilbert::{ring_dimension, CoefficientPaths};
use samuel_core::{hilbert_table, sally_descent_bracket, DepthBounds, Field, HilbertPolicy, Ideal, PrimeField};

use crate::problem::ProblemFile;

#[derive(Clone, Copy, Debug)]
pub struct Expected {
    pub numerator: &'static [i64],
    pub coefficients: &'static [i64],
    pub depth: usize,
    pub dim: usize,
    /// `λ(I^n/I^(n+1))` from `n = 0`, when printed.
    pub first_differences: Option<&'static [i64]>,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub source: &'static str,
    pub expected: Expected,
}

macro_rules! entry {
    ($id:literal, $file:literal, $num:expr, $e:expr, depth $depth:literal, dim $dim:literal $(, $diffs:expr)?) => {
        CorpusEntry {
            id: $id,
            source: include_str!(concat!("../problems/", $file)),
            expected: Expected {
                numerator: &$num,
                coefficients: &$e,
                depth: $depth,
                dim: $dim,
                first_differences: entry!(@diffs $($diffs)?),
            },
        }
    };
    (@diffs) => { None };
    (@diffs $d:expr) => { Some(&$d) };
}

pub const CORPUS: [CorpusEntry; 9] = [
    entry!("ex1.7", "ex1_7.ideal", [16, 5, 5, -5, 6, 10, -13, 2, 1], [27, 18, 1, -15], depth 0, dim 3,
        [16, 53, 116, 200, 311, 459, 631, 829, 1054, 1306, 1585]),
    entry!("ex1.9", "ex1_9.ideal", [1, 3, 0, 3, -1], [6, 8, 3, -1], depth 1, dim 3),
    entry!("ex2.1", "ex2_1.ideal", [33, 19, 21, 7, 5, -3, -1], [81, 81, 27, -23, -50], depth 2, dim 4),
    entry!("ex2.2", "ex2_2.ideal", [28, 11, 10, 5, 1, -1], [54, 45, 21, -1, -4, -1], depth 3, dim 5),
    entry!("ex2.3", "ex2_3.ideal", [81, 58, 31, 7, -1], [176, 137, 46, 3, -1], depth 2, dim 4),
    entry!("ex2.4", "ex2_4.ideal", [37, 14, 17, 15, 6, -12, 4], [81, 81, 38, -1, 6], depth 1, dim 4),
    entry!("ex2.5", "ex2_5.ideal", [81, 58, 31, 7, -1], [176, 137, 46, 3, -1, 0], depth 3, dim 5),
    entry!("ex2.6", "ex2_6.ideal", [31, 9, 7, 1], [48, 26, 10, 1], depth 1, dim 3),
    entry!("ex2.7", "ex2_7.ideal", [30, 12, 22, 8, -2, -12, 6], [64, 48, 4, 0], depth 0, dim 3),
];

pub fn entry(id: &str) -> Option<&'static CorpusEntry> {
    let id = id.strip_prefix("ex").unwrap_or(id);
    CORPUS.iter().find(|e| &e.id[2..] == id)
}

impl CorpusEntry {
    pub fn problem(&self) -> ProblemFile {
        self.source.parse().expect("embedded problem files parse")
    }

    pub fn ideal(&self) -> Ideal<PrimeField> {
        let problem = self.problem();
        let field = PrimeField::new(problem.characteristic).expect("embedded characteristic is prime");
        problem
            .instantiate(field)
            .expect("embedded problem files instantiate")
            .1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub what: &'static str,
    pub expected: String,
    pub found: String,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct EntryOutcome {
    pub id: &'static str,
    pub comparisons: Vec<Comparison>,
    pub error: Option<String>,
}

impl EntryOutcome {
    pub fn status(&self) -> Status {
        if self.error.is_some() {
            return Status::Fail;
        }
        self.comparisons.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }
}

fn render<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn exact<T: ToString>(what: &'static str, expected: &[T], found: &[T]) -> Comparison {
    let (expected, found) = (render(expected), render(found));
    let status = if expected == found { Status::Pass } else { Status::Fail };
    Comparison {
        what,
        expected,
        found,
        status,
    }
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Computes every quantity in the entry's expectations and compares.
pub fn check_entry<F: Field>(entry: &CorpusEntry, ideal: &Ideal<F>, seed: u64) -> EntryOutcome {
    let mut out = EntryOutcome {
        id: entry.id,
        comparisons: Vec::new(),
        error: None,
    };
    if let Err(e) = compare(entry, ideal, seed, &mut out.comparisons) {
        out.error = Some(e.to_string());
    }
    out
}

fn compare<F: Field>(
    entry: &CorpusEntry,
    ideal: &Ideal<F>,
    seed: u64,
    out: &mut Vec<Comparison>,
) -> samuel_core::Result<()> {
    let exp = &entry.expected;
    let dim = ring_dimension(ideal.ring())?;
    out.push(exact("dimension", &[exp.dim], &[dim]));
    let mut policy = HilbertPolicy::default();
    if let Some(diffs) = exp.first_differences {
        policy.cap = policy.cap.max(diffs.len());
    }
    let table = hilbert_table(ideal, policy)?;
    if let Some(diffs) = exp.first_differences {
        let found = table.first_differences();
        let upto = diffs.len().min(found.len());
        out.push(exact("first differences", &big(diffs), &found[..upto]));
    }
    let (paths, fit, numerator) = CoefficientPaths::compute(&table)?;
    out.push(exact("numerator", &big(exp.numerator), &numerator.a));
    let mut e = fit.coefficients.e.clone();
    e.resize(exp.coefficients.len().max(e.len()), BigInt::default());
    out.push(exact("coefficients", &big(exp.coefficients), &e));
    out.push(Comparison {
        what: "coefficient paths",
        expected: "agree".into(),
        found: if paths.agree() { "agree" } else { "disagree" }.into(),
        status: if paths.agree() { Status::Pass } else { Status::Fail },
    });
    let bracket = sally_descent_bracket(ideal, &DepthBounds::default(), seed)?;
    let contains = (bracket.lower..=bracket.upper).contains(&exp.depth);
    out.push(Comparison {
        what: "depth",
        expected: exp.depth.to_string(),
        found: format!("[{}, {}]", bracket.lower, bracket.upper),
        status: match (contains, bracket.is_exact()) {
            (true, true) => Status::Pass,
            (true, false) => Status::Warn,
            (false, _) => Status::Fail,
        },
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_load() {
        for e in &CORPUS {
            let p = e.problem();
            assert!(p.vars.len() >= e.expected.dim, "{}", e.id);
            e.ideal();
        }
        assert_eq!(entry("2.3").unwrap().id, "ex2.3");
        assert_eq!(entry("ex1.9").unwrap().id, "ex1.9");
        assert!(entry("3.1").is_none());
    }

    #[test]
    fn small_entry_passes() {
        let e = entry("2.6").unwrap();
        let outcome = check_entry(e, &e.ideal(), 0);
        assert_eq!(outcome.status(), Status::Pass, "{outcome:?}");
    }
}
