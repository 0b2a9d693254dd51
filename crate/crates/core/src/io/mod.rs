//! Text formats: Pauli strings, code files, and report rendering.
//!
//! A Pauli string gives one token per register, separated by whitespace:
//!
//! | token | register |
//! |-------|----------|
//! | `I` | identity |
//! | `X`, `Z`, `Y` | `(1,0)`, `(0,1)`, `(1,1)` (`Y` only for qubits) |
//! | `X2`, `Z-1`, `X^{-1}`, `X^-1` | explicit exponent |
//! | `X2Z`, `XZ-1` | both exponents |
//! | `(a,b)` | raw pair |
//!
//! For qubits, runs of the bare letters `I`, `X`, `Y`, `Z` may also be written
//! without spaces (`XZZXI`). For other dimensions `XZ` is a single register.

mod codefile;
pub mod report;

pub use codefile::CodeFile;

use crate::error::{Error, Result};
use crate::symplectic::{phi_encode, phi_encode_integer, SymplecticVector};

fn bad(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: message.into(),
    }
}

/// Splits a line into register tokens, keeping `(a, b)` groups intact.
fn tokens(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' {
            let mut t = String::new();
            for c in chars.by_ref() {
                t.push(c);
                if c == ')' {
                    break;
                }
            }
            if !t.ends_with(')') {
                return Err(bad(format!("unclosed pair in {line:?}")));
            }
            out.push(t);
        } else {
            let mut t = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '(' {
                    break;
                }
                t.push(c);
                chars.next();
            }
            out.push(t);
        }
    }
    Ok(out)
}

/// Parses an optional exponent after a letter: empty, `k`, `^k` or `^{k}`.
fn exponent(s: &str) -> Result<i64> {
    let s = s.strip_prefix('^').unwrap_or(s);
    let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    if s.is_empty() {
        return Ok(1);
    }
    s.parse().map_err(|_| bad(format!("bad exponent {s:?}")))
}

fn register_token(t: &str, qubit: bool) -> Result<(i64, i64)> {
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(bad(format!("pair {t:?} needs two entries")));
        }
        let a = parts[0].parse().map_err(|_| bad(format!("bad entry in {t:?}")))?;
        let b = parts[1].parse().map_err(|_| bad(format!("bad entry in {t:?}")))?;
        return Ok((a, b));
    }
    match t {
        "I" => return Ok((0, 0)),
        "Y" if qubit => return Ok((1, 1)),
        "Y" => return Err(bad("Y is only defined for qubits")),
        _ => {}
    }
    let (x_part, z_part) = match (t.find('X'), t.find('Z')) {
        (Some(0), Some(zi)) => (Some(&t[1..zi]), Some(&t[zi + 1..])),
        (Some(0), None) => (Some(&t[1..]), None),
        (None, Some(0)) => (None, Some(&t[1..])),
        _ => return Err(bad(format!("unknown token {t:?}"))),
    };
    let a = x_part.map(exponent).transpose()?.unwrap_or(0);
    let b = z_part.map(exponent).transpose()?.unwrap_or(0);
    Ok((a, b))
}

/// Per-register exponent pairs of a Pauli string, unreduced.
pub fn parse_exponents(line: &str, qubit: bool) -> Result<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    for t in tokens(line)? {
        if qubit && t.len() > 1 && t.chars().all(|c| matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
            for c in t.chars() {
                out.push(register_token(&c.to_string(), qubit)?);
            }
        } else {
            out.push(register_token(&t, qubit)?);
        }
    }
    if out.is_empty() {
        return Err(bad("empty Pauli string"));
    }
    Ok(out)
}

/// Parses a Pauli string over `Z_q`, reducing exponents mod `q`.
pub fn parse_pauli_string(line: &str, q: i64) -> Result<SymplecticVector> {
    phi_encode(&parse_exponents(line, q == 2)?, q)
}

/// Parses a Pauli string keeping exponents as signed integers. Tokens must be
/// space-separated and `Y` is not accepted.
pub fn parse_pauli_integer(line: &str) -> Result<SymplecticVector> {
    phi_encode_integer(&parse_exponents(line, false)?)
}
