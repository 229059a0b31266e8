//! The `.expected` summary format.
//!
//! ```text
//! # comment
//! tags algebra
//! modules 6
//! flatten ExampleProgram types 1 ops 4 axioms 0
//! satisfaction ExampleProgramHasAddSemigroup holds
//! satisfaction Broken fails MissingOperation
//! diagnostics none
//! ```
//!
//! `diagnostics` lists diagnostic kind names in report order, or `none`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlattenSummary {
    pub module: String,
    pub types: usize,
    pub ops: usize,
    pub axioms: usize,
}

impl fmt::Display for FlattenSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "flatten {} types {} ops {} axioms {}",
            self.module, self.types, self.ops, self.axioms
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatExpect {
    Holds,
    /// Fails with a first error of this kind.
    Fails(String),
}

impl fmt::Display for SatExpect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatExpect::Holds => f.write_str("holds"),
            SatExpect::Fails(k) => write!(f, "fails {k}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub tags: Vec<String>,
    pub modules: Option<usize>,
    pub flatten: Vec<FlattenSummary>,
    pub satisfactions: Vec<(String, SatExpect)>,
    pub diagnostics: Vec<String>,
}

impl Expected {
    pub fn is_negative(&self) -> bool {
        self.tags.iter().any(|t| t == "negative")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ExpectedError {
    pub line: usize,
    pub msg: String,
}

fn count(line: usize, s: &str) -> Result<usize, ExpectedError> {
    s.parse().map_err(|_| ExpectedError {
        line,
        msg: format!("`{s}` is not a count"),
    })
}

pub fn parse_expected(text: &str) -> Result<Expected, ExpectedError> {
    let mut e = Expected::default();
    let mut saw_diagnostics = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let words: Vec<&str> = raw
            .split('#')
            .next()
            .unwrap_or("")
            .split_whitespace()
            .collect();
        let bad = |msg: &str| ExpectedError {
            line,
            msg: format!("{msg}: `{}`", raw.trim()),
        };
        match words.as_slice() {
            [] => {}
            ["tags", tags @ ..] => e.tags.extend(tags.iter().map(|t| t.to_string())),
            ["modules", n] => e.modules = Some(count(line, n)?),
            ["flatten", m, "types", t, "ops", o, "axioms", a] => e.flatten.push(FlattenSummary {
                module: m.to_string(),
                types: count(line, t)?,
                ops: count(line, o)?,
                axioms: count(line, a)?,
            }),
            ["satisfaction", s, "holds"] => e.satisfactions.push((s.to_string(), SatExpect::Holds)),
            ["satisfaction", s, "fails", k] => e
                .satisfactions
                .push((s.to_string(), SatExpect::Fails(k.to_string()))),
            ["diagnostics", "none"] => saw_diagnostics = true,
            ["diagnostics", kinds @ ..] if !kinds.is_empty() => {
                saw_diagnostics = true;
                e.diagnostics.extend(kinds.iter().map(|k| k.to_string()));
            }
            _ => return Err(bad("unrecognized line")),
        }
    }
    if !saw_diagnostics {
        return Err(ExpectedError {
            line: 0,
            msg: "missing `diagnostics` line".into(),
        });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_line_kind() {
        let e = parse_expected(
            "# x\ntags a b\nmodules 2\nflatten M types 1 ops 2 axioms 3\n\
             satisfaction S holds\nsatisfaction T fails MissingOperation\ndiagnostics none\n",
        )
        .unwrap();
        assert_eq!(e.tags, ["a", "b"]);
        assert_eq!(e.modules, Some(2));
        assert_eq!(e.flatten[0].to_string(), "flatten M types 1 ops 2 axioms 3");
        assert_eq!(
            e.satisfactions[1].1,
            SatExpect::Fails("MissingOperation".into())
        );
        assert!(e.diagnostics.is_empty());
    }

    #[test]
    fn rejects_junk_and_missing_diagnostics() {
        assert_eq!(
            parse_expected("modules x\ndiagnostics none")
                .unwrap_err()
                .line,
            1
        );
        assert!(parse_expected("modules 1\n").is_err());
        assert!(parse_expected("frobnicate\ndiagnostics none").is_err());
    }

    #[test]
    fn negative_entries_list_kinds() {
        let e = parse_expected("tags negative\ndiagnostics WriteToObs UnusedVariable").unwrap();
        assert!(e.is_negative());
        assert_eq!(e.diagnostics, ["WriteToObs", "UnusedVariable"]);
    }
}
