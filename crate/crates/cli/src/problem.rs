//! Line-oriented problem files:
//!
//! ```text
//! [ring]
//! vars = x, y, z
//! char = 32003
//! order = grevlex
//! [quotient]
//! gens = ...
//! [ideal]
//! gens = x^2, y^2, z^2
//! ```

use std::fmt;
use std::io;
use std::path::Path;
use std::sync::Arc;

use samuel_core::{Error, Field, FieldSpec, Ideal, MonomialOrder, PolyRing, RingPresentation};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: file not found")]
    NotFound { path: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

fn at(line: usize, column: usize, message: impl Into<String>) -> LoadError {
    LoadError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A value with the 1-based position of its first character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

/// The term orders a problem file may name.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TermOrder {
    #[default]
    GrevLex,
    Lex,
}

impl TermOrder {
    fn name(self) -> &'static str {
        match self {
            TermOrder::GrevLex => "grevlex",
            TermOrder::Lex => "lex",
        }
    }

    pub fn monomial_order(self) -> MonomialOrder {
        match self {
            TermOrder::GrevLex => MonomialOrder::GrevLex,
            TermOrder::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    pub characteristic: u64,
    pub order: TermOrder,
    pub quotient: Option<Located>,
    pub ideal: Located,
    char_at: (usize, usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Ring,
    Quotient,
    Ideal,
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ring]")?;
        writeln!(f, "vars = {}", self.vars.join(", "))?;
        writeln!(f, "char = {}", self.characteristic)?;
        writeln!(f, "order = {}", self.order.name())?;
        if let Some(q) = &self.quotient {
            writeln!(f, "[quotient]")?;
            writeln!(f, "gens = {}", q.text)?;
        }
        writeln!(f, "[ideal]")?;
        writeln!(f, "gens = {}", self.ideal.text)
    }
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, LoadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => LoadError::NotFound { path: shown.clone() },
        _ => LoadError::Io {
            path: shown.clone(),
            message: e.to_string(),
        },
    })?;
    text.parse()
}

impl std::str::FromStr for ProblemFile {
    type Err = LoadError;

    fn from_str(text: &str) -> Result<Self, LoadError> {
        let mut section = Section::None;
        let mut vars: Option<Vec<String>> = None;
        let mut characteristic = None;
        let mut order = TermOrder::GrevLex;
        let mut quotient = None;
        let mut ideal = None;
        let mut seen_quotient = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len() + 1;
            if let Some(name) = trimmed.strip_prefix('[') {
                let Some(name) = name.strip_suffix(']') else {
                    return Err(at(line, indent, "unterminated section header"));
                };
                section = match name.trim() {
                    "ring" if section == Section::None => Section::Ring,
                    "quotient" if section == Section::Ring && !seen_quotient => {
                        seen_quotient = true;
                        Section::Quotient
                    }
                    "ideal" if matches!(section, Section::Ring | Section::Quotient) => Section::Ideal,
                    "ring" | "quotient" | "ideal" => {
                        return Err(at(line, indent, format!("section `{}` out of order", name.trim())))
                    }
                    other => return Err(at(line, indent, format!("unknown section `{other}`"))),
                };
                continue;
            }
            let Some(eq) = content.find('=') else {
                return Err(at(line, indent, "expected `key = value`"));
            };
            let key = content[..eq].trim();
            let value_raw = &content[eq + 1..];
            let value = value_raw.trim();
            let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
            let located = Located {
                text: value.to_string(),
                line,
                column: value_col,
            };
            let duplicate = || at(line, indent, format!("duplicate key `{key}`"));
            match (section, key) {
                (Section::None, _) => return Err(at(line, indent, "entry before the [ring] section")),
                (Section::Ring, "vars") => {
                    if vars.is_some() {
                        return Err(duplicate());
                    }
                    let names: Vec<String> = value.split(',').map(|v| v.trim().to_string()).collect();
                    if names.iter().any(String::is_empty) {
                        return Err(at(line, value_col, "empty variable name"));
                    }
                    vars = Some(names);
                }
                (Section::Ring, "char") => {
                    if characteristic.is_some() {
                        return Err(duplicate());
                    }
                    let c: u64 = value
                        .parse()
                        .map_err(|_| at(line, value_col, format!("`{value}` is not a nonnegative integer")))?;
                    characteristic = Some((c, (line, value_col)));
                }
                (Section::Ring, "order") => {
                    order = match value {
                        "grevlex" => TermOrder::GrevLex,
                        "lex" => TermOrder::Lex,
                        _ => return Err(at(line, value_col, format!("unknown order `{value}`"))),
                    }
                }
                (Section::Quotient, "gens") if quotient.is_none() => quotient = Some(located),
                (Section::Ideal, "gens") if ideal.is_none() => ideal = Some(located),
                (Section::Quotient | Section::Ideal, "gens") => return Err(duplicate()),
                _ => return Err(at(line, indent, format!("unexpected key `{key}`"))),
            }
        }
        let end = text.lines().count() + 1;
        let vars = vars.ok_or_else(|| at(end, 1, "missing `vars` in [ring]"))?;
        let (characteristic, char_at) = characteristic.ok_or_else(|| at(end, 1, "missing `char` in [ring]"))?;
        let ideal = ideal.ok_or_else(|| at(end, 1, "missing [ideal] section with `gens`"))?;
        let problem = ProblemFile {
            vars,
            characteristic,
            order,
            quotient,
            ideal,
            char_at,
        };
        problem.field_spec(None)?;
        Ok(problem)
    }
}

impl ProblemFile {
    /// The coefficient field, optionally overriding the declared characteristic.
    pub fn field_spec(&self, characteristic: Option<u64>) -> Result<FieldSpec, LoadError> {
        let (line, column) = self.char_at;
        FieldSpec::new(characteristic.unwrap_or(self.characteristic)).map_err(|e| at(line, column, e.to_string()))
    }

    pub fn instantiate<F: Field>(&self, field: F) -> Result<(Arc<RingPresentation<F>>, Ideal<F>), LoadError> {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let base = PolyRing::new(&names, field, self.order.monomial_order()).map_err(|e| at(1, 1, e.to_string()))?;
        let ring = match &self.quotient {
            Some(q) => RingPresentation::parse_quotient(base, &q.text).map_err(|e| positioned(q, e))?,
            None => RingPresentation::polynomial(base),
        };
        let ideal = Ideal::parse(&ring, &self.ideal.text).map_err(|e| positioned(&self.ideal, e))?;
        Ok((ring, ideal))
    }
}

fn positioned(value: &Located, err: Error) -> LoadError {
    let offset = match &err {
        Error::UndeclaredVariable { offset, .. } | Error::Syntax { offset, .. } | Error::BadExponent { offset } => {
            *offset
        }
        _ => 0,
    };
    // offsets count bytes; columns count characters
    let column = value.column + value.text[..offset.min(value.text.len())].chars().count();
    at(value.line, column, err.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use samuel_core::PrimeField;

    const SAMPLE: &str = "# sample\n[ring]\nvars = x, y\nchar = 32003\n[ideal]\ngens = x^2, x*y, y^2\n";

    #[test]
    fn parses_and_round_trips() {
        let p: ProblemFile = SAMPLE.parse().unwrap();
        assert_eq!(p.vars, ["x", "y"]);
        assert_eq!(p.ideal.line, 6);
        assert_eq!(p.ideal.column, 8);
        let again: ProblemFile = p.to_string().parse().unwrap();
        assert_eq!(again.ideal.text, p.ideal.text);
        let (_, i) = p.instantiate(PrimeField::new(32003).unwrap()).unwrap();
        assert_eq!(i.colength().unwrap(), 3);
    }

    #[test]
    fn rejects_composite_characteristic() {
        let err = SAMPLE.replace("32003", "6").parse::<ProblemFile>().unwrap_err();
        assert_eq!(err.to_string(), "line 4, column 8: 6 is not prime or zero");
    }

    #[test]
    fn undeclared_variable_is_positioned() {
        let p: ProblemFile = SAMPLE.replace("y^2", "z^2").parse().unwrap();
        let err = p.instantiate(PrimeField::new(32003).unwrap()).unwrap_err();
        match err {
            LoadError::Syntax { line, column, message } => {
                assert_eq!((line, column), (6, 18));
                assert!(message.contains("`z`"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            "vars = x\n".parse::<ProblemFile>(),
            Err(LoadError::Syntax { line: 1, .. })
        ));
        assert!("[ring]\nvars = x\nchar = 0\n".parse::<ProblemFile>().is_err());
        assert!("[ring]\nvars = x\nchar = 7\n[ideal]\ngens = x\n[ring]\n"
            .parse::<ProblemFile>()
            .is_err());
        let missing = read_problem(Path::new("/nonexistent/missing.ideal")).unwrap_err();
        assert!(missing.to_string().ends_with("file not found"));
    }
}
