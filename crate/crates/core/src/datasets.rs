//! Bundled income datasets and the plain-text sample format.
//!
//! Sample text holds real numbers separated by commas and/or whitespace,
//! any number per line. Blank lines and lines starting with `#` are skipped.
//! The decimal separator is `.`; thousands separators are not accepted.

use std::fmt;

use crate::moments::Sample;

/// A named dataset compiled into the binary.
#[derive(Debug, Clone, Copy)]
pub struct BundledDataset {
    pub name: &'static str,
    pub description: &'static str,
    pub expected_len: usize,
    pub expected_sum: f64,
    text: &'static str,
}

pub const REGISTRY: [BundledDataset; 4] = [
    BundledDataset {
        name: "dakar1",
        description: "household income, Dakar, 1996 survey",
        expected_len: 50,
        expected_sum: 24_433_942.4,
        text: include_str!("../data/dakar1.txt"),
    },
    BundledDataset {
        name: "dakar2",
        description: "household income, Dakar, 2000 survey",
        expected_len: 50,
        expected_sum: 36_329_377.1,
        text: include_str!("../data/dakar2.txt"),
    },
    BundledDataset {
        name: "diour1",
        description: "household income, Diourbel, 1996 survey",
        expected_len: 50,
        expected_sum: 10_186_905.46,
        text: include_str!("../data/diour1.txt"),
    },
    BundledDataset {
        name: "diour2",
        description: "household income, Diourbel, 2000 survey",
        expected_len: 50,
        expected_sum: 13_160_401.96,
        text: include_str!("../data/diour2.txt"),
    },
];

impl BundledDataset {
    pub fn text(&self) -> &'static str {
        self.text
    }

    pub fn sample(&self) -> Sample {
        let values = parse_values(self.text).expect("bundled dataset parses");
        Sample::new(values).expect("bundled dataset is finite and non-empty")
    }
}

pub fn lookup(name: &str) -> Option<&'static BundledDataset> {
    REGISTRY.iter().find(|d| d.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|d| d.name)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    BadToken { line: usize, token: String },
    NonFinite { line: usize, token: String },
    Empty,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::BadToken { line, token } => {
                write!(f, "line {line}: cannot parse {token:?} as a number")
            }
            ParseError::NonFinite { line, token } => {
                write!(f, "line {line}: non-finite value {token:?}")
            }
            ParseError::Empty => f.write_str("no observations found"),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_values(text: &str) -> Result<Vec<f64>, ParseError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for token in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v: f64 = token.parse().map_err(|_| ParseError::BadToken {
                line: i + 1,
                token: token.to_string(),
            })?;
            if !v.is_finite() {
                return Err(ParseError::NonFinite {
                    line: i + 1,
                    token: token.to_string(),
                });
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(values)
}
