//! Report documents emitted by the command-line tool, as JSON or text.
//!
//! JSON matrices are `{ "n", "modulus", "rows" }` with flat `(x | z)` integer
//! rows; vectors are `{ "modulus", "x", "z" }`. Integers that may exceed 64
//! bits are written as decimal strings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::{CodeParameters, ValidationReport};
use crate::distance::{DistanceResult, ErrorVerdict, IntegerDistanceResult};
use crate::embedding::{EmbeddingReport, Frame, PDoubleStar};
use crate::logical::{InvariantLogicals, LogicalSet};
use crate::state::CodespaceCertificate;
use crate::symplectic::{SymplecticMatrix, SymplecticVector, Transcript};

/// Renders a report for humans.
pub trait TextReport {
    fn text(&self) -> String;
}

fn matrix_text(m: &SymplecticMatrix) -> String {
    m.to_string()
}

fn int_matrix_text(m: &[Vec<i64>]) -> String {
    let width = m.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    m.iter()
        .map(|r| r.iter().map(|v| format!("{v:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn params_line(p: &CodeParameters) -> String {
    format!("[[{}, {}]]_{} with {} generators", p.n, p.logical, p.q, p.k)
}

/// `p**` with four decimals and its verdict.
pub fn p_double_star_text(p: &PDoubleStar) -> String {
    if p.restricts {
        let primes: Vec<String> = p.excluded_primes().iter().map(i64::to_string).collect();
        format!("{:.4} (t = {}): excludes p in {{{}}}", p.value, p.t, primes.join(", "))
    } else {
        format!("{:.4} (t = {}): no restriction", p.value, p.t)
    }
}

impl TextReport for ValidationReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}, k = {}, q = {}", self.n, self.k, self.q);
        let _ = writeln!(s, "q prime: {}", self.prime);
        match &self.offending_pair {
            Some(o) => {
                let _ = writeln!(s, "commuting: no (rows {} and {} have product {})", o.i, o.j, o.product);
            }
            None => {
                let _ = writeln!(s, "commuting: {}", self.commuting);
            }
        }
        let _ = writeln!(s, "rank: {} (deficiency {})", self.rank, self.rank_deficiency);
        let _ = writeln!(s, "valid: {}", self.valid);
        for f in &self.failures {
            let _ = writeln!(s, "  {f}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormReport {
    pub parameters: CodeParameters,
    pub matrix: SymplecticMatrix,
    pub transcript: Transcript,
}

impl TextReport for StandardFormReport {
    fn text(&self) -> String {
        format!(
            "{}\n{}\ntranscript: {} operations\n",
            params_line(&self.parameters),
            matrix_text(&self.matrix),
            self.transcript.len()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub parameters: CodeParameters,
    pub frame: Frame,
    /// The matrix over `Z_q` the invariant matrix reduces to.
    pub reference: SymplecticMatrix,
    pub commutators: Vec<Vec<i64>>,
    pub correction: Vec<Vec<i64>>,
    pub invariant: SymplecticMatrix,
    pub b: i64,
    pub b_bound: i64,
    pub transcript: Transcript,
}

impl TextReport for EmbedReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", params_line(&self.parameters));
        let _ = writeln!(s, "reference (mod {}):\n{}", self.parameters.q, matrix_text(&self.reference));
        let _ = writeln!(s, "commutators:\n{}", int_matrix_text(&self.commutators));
        let _ = writeln!(s, "L:\n{}", int_matrix_text(&self.correction));
        let _ = writeln!(s, "invariant:\n{}", matrix_text(&self.invariant));
        let _ = writeln!(s, "B = {} (bound {})", self.b, self.b_bound);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub parameters: CodeParameters,
    #[serde(flatten)]
    pub embedding: EmbeddingReport,
}

impl TextReport for BoundsReport {
    fn text(&self) -> String {
        let e = &self.embedding;
        let mut s = String::new();
        let _ = writeln!(s, "{}", params_line(&self.parameters));
        let _ = writeln!(s, "B = {}", e.b);
        let _ = writeln!(s, "B bound = {}", e.b_bound);
        if let (Some(d), Some(p)) = (e.d, &e.p_star) {
            let _ = writeln!(s, "p* (d = {d}) = {p}");
        }
        let _ = writeln!(s, "p* (k in place of d*) = {}", e.p_star_loose);
        match (&e.p_double_star, &e.p_double_star_note) {
            (Some(p), _) => {
                let _ = writeln!(s, "p** = {}", p_double_star_text(p));
            }
            (None, Some(note)) => {
                let _ = writeln!(s, "p** {note}");
            }
            _ => {}
        }
        for c in &e.per_prime {
            let d = c.distance.map_or("-".to_string(), |d| d.to_string());
            let _ = writeln!(s, "p = {}: valid {}, distance {}", c.p, c.valid, d);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistanceReport {
    Prime(DistanceResult),
    Integer(IntegerDistanceResult),
}

fn witness_text(w: &Option<SymplecticVector>) -> String {
    w.as_ref().map_or("none".into(), |v| format!("{v}  ({})", v.to_flat().iter().map(i64::to_string).collect::<Vec<_>>().join(" ")))
}

impl DistanceReport {
    /// Same report without wall-clock fields, for reproducible output.
    pub fn without_timing(mut self) -> Self {
        if let DistanceReport::Prime(r) = &mut self {
            r.stats.elapsed_ms = None;
        }
        self
    }
}

impl TextReport for DistanceReport {
    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            DistanceReport::Prime(r) => {
                let d = r.distance.map_or(format!("> {}", r.max_weight), |d| d.to_string());
                let _ = writeln!(s, "distance at p = {}: {d}", r.p);
                let _ = writeln!(s, "witness: {}", witness_text(&r.witness));
                let _ = writeln!(s, "nodes visited: {}", r.stats.nodes_visited);
                if let Some(ms) = r.stats.elapsed_ms {
                    let _ = writeln!(s, "elapsed: {ms} ms");
                }
            }
            DistanceReport::Integer(r) => {
                let show = |d: Option<usize>| d.map_or(format!("> {}", r.max_weight), |d| d.to_string());
                let _ = writeln!(s, "d* (literal): {}", show(r.literal.distance));
                let _ = writeln!(s, "  witness: {}", witness_text(&r.literal.witness));
                let _ = writeln!(s, "d* (outside the row span): {}", show(r.excluding_span.distance));
                let _ = writeln!(s, "  witness: {}", witness_text(&r.excluding_span.witness));
            }
        }
        s
    }
}

impl TextReport for ErrorVerdict {
    fn text(&self) -> String {
        format!(
            "error: {}\nweight: {}\ninteger syndrome: {:?}\nverdict: {}\nin stabilizer: {}\n",
            self.error, self.weight, self.integer_syndrome, self.verdict, self.in_stabilizer
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalsReport {
    pub parameters: CodeParameters,
    pub logicals: LogicalSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariant: Option<InvariantLogicals>,
}

fn logical_set_text(s: &mut String, set: &LogicalSet) {
    for (i, (x, z)) in set.x_logicals.iter().zip(&set.z_logicals).enumerate() {
        let _ = writeln!(s, "  X{}: {x}", i + 1);
        let _ = writeln!(s, "  Z{}: {z}", i + 1);
    }
    let _ = writeln!(s, "  pairing:\n{}", indent(&int_matrix_text(&set.pairing)));
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")
}

impl TextReport for LogicalsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", params_line(&self.parameters));
        if self.logicals.is_empty() {
            let _ = writeln!(s, "no logical qudits");
            return s;
        }
        let _ = writeln!(s, "mod {}:", self.parameters.q);
        logical_set_text(&mut s, &self.logicals);
        if let Some(inv) = &self.invariant {
            let _ = writeln!(s, "invariant:");
            logical_set_text(&mut s, &inv.logicals);
            let _ = writeln!(s, "  pairing determinant: {}", inv.pairing_determinant);
            let bad: Vec<String> = inv.bad_primes.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "  bad primes: {{{}}}", bad.join(", "));
        }
        s
    }
}

impl TextReport for CodespaceCertificate {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p = {}, n = {}, k = {}", self.p, self.n, self.k);
        let _ = writeln!(s, "codespace dimension: {} (expected {})", self.dimension, self.expected);
        for a in &self.adjustments {
            let _ = writeln!(s, "phase adjustment on generator {}: k = {}", a.generator, a.k);
        }
        if let Some(words) = &self.codewords {
            for (i, w) in words.iter().enumerate() {
                let terms: Vec<String> = w
                    .iter()
                    .map(|a| {
                        if a.im.abs() < 1e-12 {
                            format!("{:+.6}{}", a.re, a.ket)
                        } else {
                            format!("({:+.6}{:+.6}i){}", a.re, a.im, a.ket)
                        }
                    })
                    .collect();
                let _ = writeln!(s, "codeword {}: {}", i + 1, terms.join(" "));
            }
        }
        s
    }
}

/// Machine-readable error object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub kind: String,
    pub exit_code: i32,
}
