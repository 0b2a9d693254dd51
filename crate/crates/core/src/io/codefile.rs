//! The `.code` text format.
//!
//! ```text
//! # Bell pair, qutrit-ready form
//! name: bell
//! q: 3
//! n: 2
//! integer: true
//! 1 -1 | 0 0
//! Z Z
//! ```
//!
//! Header lines are `key: value` with keys `name`, `q`, `n` and `integer`.
//! Each remaining line is one generator: either `2n` integers (an optional
//! `|` between the halves) or a Pauli string. `#` starts a comment. With
//! `integer: true` entries are kept as signed integers; otherwise they are
//! reduced mod `q`.

use std::fmt;
use std::path::Path;

use crate::code::StabilizerCode;
use crate::embedding::InvariantCode;
use crate::error::{Error, Result};
use crate::symplectic::{Modulus, SymplecticMatrix, SymplecticVector};

use super::{parse_exponents, parse_pauli_integer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub name: Option<String>,
    pub q: i64,
    pub integer: bool,
    pub matrix: SymplecticMatrix,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn symplectic_row(tokens: &[&str], lineno: usize) -> Result<Vec<i64>> {
    let bars = tokens.iter().filter(|&&t| t == "|").count();
    let nums: Vec<i64> = tokens
        .iter()
        .filter(|&&t| t != "|")
        .map(|t| t.parse::<i64>().map_err(|_| err(lineno, format!("bad integer {t:?}"))))
        .collect::<Result<_>>()?;
    if !nums.len().is_multiple_of(2) {
        return Err(err(lineno, format!("row has {} entries, expected an even count", nums.len())));
    }
    match bars {
        0 => {}
        1 => {
            let at = tokens.iter().position(|&t| t == "|").expect("one bar");
            if at * 2 != nums.len() {
                return Err(err(lineno, "'|' must split the row into equal halves"));
            }
        }
        _ => return Err(err(lineno, "more than one '|' in a row")),
    }
    Ok(nums)
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut q = None;
        let mut n_header = None;
        let mut integer = false;
        let mut rows: Vec<(usize, Vec<i64>)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "name" => name = Some(value.to_string()),
                    "q" => q = Some(value.parse::<i64>().map_err(|_| err(lineno, format!("bad q {value:?}")))?),
                    "n" => n_header = Some(value.parse::<usize>().map_err(|_| err(lineno, format!("bad n {value:?}")))?),
                    "integer" => {
                        integer = match value {
                            "true" => true,
                            "false" => false,
                            _ => return Err(err(lineno, format!("integer must be true or false, got {value:?}"))),
                        }
                    }
                    other => return Err(err(lineno, format!("unknown header {other:?}"))),
                }
                continue;
            }
            let q = q.ok_or_else(|| err(lineno, "the q header must come before the generators"))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let numeric = tokens.iter().all(|t| *t == "|" || t.parse::<i64>().is_ok());
            let flat = if numeric {
                symplectic_row(&tokens, lineno)?
            } else if integer {
                parse_pauli_integer(line).map_err(|e| err(lineno, e.to_string()))?.to_flat()
            } else {
                let pairs = parse_exponents(line, q == 2).map_err(|e| err(lineno, e.to_string()))?;
                pairs.iter().map(|p| p.0).chain(pairs.iter().map(|p| p.1)).collect()
            };
            rows.push((lineno, flat));
        }

        let q = q.ok_or_else(|| err(0, "missing q header"))?;
        crate::arith::require_prime(q)?;
        let n = match (n_header, rows.first()) {
            (Some(n), _) => n,
            (None, Some((_, r))) => r.len() / 2,
            (None, None) => return Err(err(0, "no n header and no generators")),
        };
        if let Some((lineno, r)) = rows.iter().find(|(_, r)| r.len() != 2 * n) {
            return Err(err(*lineno, format!("row covers {} registers, expected {n}", r.len() / 2)));
        }
        let modulus = if integer { Modulus::Integer } else { Modulus::Prime(q) };
        let flat: Vec<Vec<i64>> = rows.into_iter().map(|(_, r)| r).collect();
        let matrix = SymplecticMatrix::from_flat_rows(n, modulus, &flat)?;
        Ok(Self {
            name,
            q,
            integer,
            matrix,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn from_code(code: &StabilizerCode, name: Option<String>) -> Self {
        Self {
            name,
            q: code.q(),
            integer: false,
            matrix: code.generators().clone(),
        }
    }

    pub fn from_invariant(inv: &InvariantCode, name: Option<String>) -> Self {
        Self {
            name,
            q: inv.source().q,
            integer: true,
            matrix: inv.matrix().clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// The generators as a code over `Z_q` (integer entries are reduced).
    pub fn code(&self) -> Result<StabilizerCode> {
        StabilizerCode::new(self.matrix.reduce_mod(self.q)?)
    }

    /// The generators as an invariant code; the rows must commute exactly.
    pub fn invariant(&self) -> Result<InvariantCode> {
        InvariantCode::from_integer_matrix(self.matrix.to_integer(), self.q)
    }

    pub fn rows(&self) -> &[SymplecticVector] {
        self.matrix.rows()
    }
}

impl fmt::Display for CodeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        writeln!(f, "q: {}", self.q)?;
        writeln!(f, "n: {}", self.n())?;
        if self.integer {
            writeln!(f, "integer: true")?;
        }
        for r in self.matrix.rows() {
            writeln!(f, "# {r}")?;
            let xs: Vec<String> = r.x().iter().map(i64::to_string).collect();
            let zs: Vec<String> = r.z().iter().map(i64::to_string).collect();
            writeln!(f, "{} | {}", xs.join(" "), zs.join(" "))?;
        }
        Ok(())
    }
}
