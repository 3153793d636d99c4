//! Text formats for complexes (`.cplx`) and Morse functions (`.dmf`).
//!
//! A `.cplx` line lists the vertex tokens of one simplex; the complex is the
//! closure of all listed simplices. A `.dmf` line is `<simplex-name> <value>`
//! where the value is a decimal literal or a ratio `p/q`. Both formats skip
//! blank lines and lines starting with `#`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{ComplexError, Simplex, SimplicialComplex};
use crate::morse::MorseFunction;
use crate::value::{parse_rational, MorseValue};
use crate::RationalMorseFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {source}")]
    Simplex {
        line: usize,
        #[source]
        source: ComplexError,
    },
    #[error("line {line}: expected `<simplex> <value>`, found `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: invalid value `{text}`")]
    Value { line: usize, text: String },
    #[error("line {line}: simplex `{name}` is not in the complex")]
    UnknownSimplex { line: usize, name: String },
    #[error("line {line}: `{name}` already assigned on line {first}")]
    Duplicate {
        line: usize,
        name: String,
        first: usize,
    },
    #[error("no value for simplices: {}", .0.join(", "))]
    Missing(Vec<String>),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, FormatError> {
    let simplices = content_lines(text)
        .map(|(line, l)| {
            Simplex::new(l.split_whitespace())
                .map_err(|source| FormatError::Simplex { line, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialComplex::from_simplices(simplices))
}

/// Maximal simplices, one per line, in canonical order.
pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for id in complex.maximal_simplices() {
        out.push_str(&complex.simplex(id).vertices().join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_dmf(
    complex: &SimplicialComplex,
    text: &str,
) -> Result<RationalMorseFunction, FormatError> {
    let mut slots = vec![None; complex.len()];
    let mut first_line = vec![0usize; complex.len()];
    for (line, l) in content_lines(text) {
        let mut parts = l.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(FormatError::Malformed {
                line,
                text: l.to_string(),
            });
        };
        let simplex =
            Simplex::parse(name).map_err(|source| FormatError::Simplex { line, source })?;
        let id = complex
            .id(&simplex)
            .ok_or_else(|| FormatError::UnknownSimplex {
                line,
                name: name.to_string(),
            })?;
        let value = parse_rational(value).map_err(|_| FormatError::Value {
            line,
            text: value.to_string(),
        })?;
        if slots[id.index()].is_some() {
            return Err(FormatError::Duplicate {
                line,
                name: simplex.name(),
                first: first_line[id.index()],
            });
        }
        slots[id.index()] = Some(value);
        first_line[id.index()] = line;
    }
    let missing: Vec<String> = complex
        .ids()
        .filter(|id| slots[id.index()].is_none())
        .map(|id| complex.name(id))
        .collect();
    if !missing.is_empty() {
        return Err(FormatError::Missing(missing));
    }
    let values = slots.into_iter().map(Option::unwrap).collect();
    Ok(MorseFunction::from_values(complex, values).expect("one value per simplex"))
}

/// One `<name> <value>` line per simplex in canonical order.
pub fn write_dmf<T: MorseValue>(complex: &SimplicialComplex, f: &MorseFunction<T>) -> String {
    let mut out = String::new();
    for id in complex.ids() {
        writeln!(out, "{} {}", complex.name(id), f.value(id)).expect("write to string");
    }
    out
}
