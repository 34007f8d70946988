//! The function-spec grammar: `maj:<n>`, `g:<n>`, `h:<n>`, `f:<n>:<w>`,
//! `ltf:<w0>;<w1>,...,<wn>` and `tt:<path>`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use boolstab::ltf::{make_f, make_g, make_h};
use boolstab::{majority, TruthTable, WeightedLTF};
use thiserror::Error;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpec {
    Majority(usize),
    G(usize),
    H(usize),
    F { n: usize, w: i64 },
    Ltf { w0: i64, weights: Vec<i64> },
    Table(PathBuf),
}

/// A malformed spec; `column` is 1-based within the spec string.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at column {column}: {message}")]
pub struct SpecError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        column,
        message: message.into(),
    })
}

/// Parses `field`, which starts at byte offset `at` of the whole spec.
fn number<T: FromStr>(field: &str, at: usize, what: &str) -> Result<T, SpecError> {
    if field.is_empty() {
        return err(at + 1, format!("missing {what}"));
    }
    field
        .parse()
        .or_else(|_| err(at + 1, format!("{what} must be an integer, got {field:?}")))
}

impl FromStr for FunctionSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let Some((kind, rest)) = s.split_once(':') else {
            return err(1, "expected <kind>:<args> with kind maj, g, h, f, ltf or tt");
        };
        let at = kind.len() + 1;
        let single = |what| -> Result<usize, SpecError> {
            if let Some(i) = rest.find(':') {
                return err(at + i + 1, "unexpected extra field");
            }
            number(rest, at, what)
        };
        match kind {
            "maj" => Ok(Self::Majority(single("n")?)),
            "g" => Ok(Self::G(single("n")?)),
            "h" => Ok(Self::H(single("n")?)),
            "f" => {
                let Some((n, w)) = rest.split_once(':') else {
                    return err(at + rest.len() + 1, "expected f:<n>:<w>");
                };
                let w_at = at + n.len() + 1;
                if let Some(i) = w.find(':') {
                    return err(w_at + i + 1, "unexpected extra field");
                }
                Ok(Self::F {
                    n: number(n, at, "n")?,
                    w: number(w, w_at, "w")?,
                })
            }
            "ltf" => {
                let Some((w0, list)) = rest.split_once(';') else {
                    return err(at + rest.len() + 1, "expected ltf:<w0>;<w1>,...,<wn>");
                };
                let w0 = number(w0.trim(), at, "threshold weight")?;
                let mut offset = at + rest.len() - list.len();
                let mut weights = Vec::new();
                if !list.trim().is_empty() {
                    for field in list.split(',') {
                        weights.push(number(field.trim(), offset, "weight")?);
                        offset += field.len() + 1;
                    }
                }
                Ok(Self::Ltf { w0, weights })
            }
            "tt" => {
                if rest.is_empty() {
                    return err(at + 1, "missing path");
                }
                Ok(Self::Table(PathBuf::from(rest)))
            }
            _ => err(1, format!("unknown function kind {kind:?}")),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Majority(n) => write!(f, "maj:{n}"),
            Self::G(n) => write!(f, "g:{n}"),
            Self::H(n) => write!(f, "h:{n}"),
            Self::F { n, w } => write!(f, "f:{n}:{w}"),
            Self::Ltf { w0, weights } => {
                let list: Vec<String> = weights.iter().map(i64::to_string).collect();
                write!(f, "ltf:{w0};{}", list.join(","))
            }
            Self::Table(p) => write!(f, "tt:{}", p.display()),
        }
    }
}

impl FunctionSpec {
    /// Number of variables, if known without reading a file.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Self::Majority(n) | Self::G(n) | Self::H(n) | Self::F { n, .. } => Some(*n),
            Self::Ltf { weights, .. } => Some(weights.len()),
            Self::Table(_) => None,
        }
    }

    pub fn realize(&self) -> Result<TruthTable, CliError> {
        Ok(match self {
            Self::Majority(n) => majority(*n)?,
            Self::G(n) => make_g(*n)?.realize()?,
            Self::H(n) => make_h(*n)?.realize()?,
            Self::F { n, w } => make_f(*n, *w)?.realize()?,
            Self::Ltf { w0, weights } => WeightedLTF::new(*w0, weights.clone())?.realize()?,
            Self::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                    path: path.clone(),
                    source,
                })?;
                text.parse()?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<FunctionSpec, SpecError> {
        s.parse()
    }

    #[test]
    fn accepts_the_grammar() {
        assert_eq!(parse("maj:3"), Ok(FunctionSpec::Majority(3)));
        assert_eq!(parse("g:9"), Ok(FunctionSpec::G(9)));
        assert_eq!(parse("h:5"), Ok(FunctionSpec::H(5)));
        assert_eq!(parse("f:9:4"), Ok(FunctionSpec::F { n: 9, w: 4 }));
        assert_eq!(
            parse("ltf:-1;2, 3,-4"),
            Ok(FunctionSpec::Ltf { w0: -1, weights: vec![2, 3, -4] })
        );
        assert_eq!(parse("ltf:0;"), Ok(FunctionSpec::Ltf { w0: 0, weights: vec![] }));
        assert_eq!(parse("tt:a:b.tt"), Ok(FunctionSpec::Table("a:b.tt".into())));
    }

    #[test]
    fn display_round_trips() {
        for s in ["maj:3", "g:9", "h:5", "f:25:12", "ltf:0;1,-2", "tt:x.tt"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors_point_at_the_offending_column() {
        let col = |s: &str| parse(s).unwrap_err().column;
        assert_eq!(col("maj3"), 1);
        assert_eq!(col("xor:3"), 1);
        assert_eq!(col("maj:"), 5);
        assert_eq!(col("maj:x"), 5);
        assert_eq!(col("g:5:1"), 4);
        assert_eq!(col("f:9"), 4);
        assert_eq!(col("f:9:"), 5);
        assert_eq!(col("f:9:a"), 5);
        assert_eq!(col("ltf:1,2"), 8);
        assert_eq!(col("ltf:1;2,x"), 9);
        assert_eq!(col("ltf:1;2,,3"), 9);
        assert_eq!(col("tt:"), 4);
    }
}
