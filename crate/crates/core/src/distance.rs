//! Brute-force distance search mod `p`, the integer distance `d*`, and the
//! split of undetectable errors into unavoidable and artifact errors.
//!
//! Syndromes are taken error-first: entry `i` of the syndrome of `e` is
//! `⊙(e, s_i)`.
//!
//! The mod-`p` search walks supports in lexicographic order and, per support,
//! assigns a nonzero `(x, z)` pair to each register in odometer order. Two
//! prunes keep this fast: after each register the partial syndrome must still
//! be cancellable by the span of the remaining registers' columns, and the
//! last register is looked up directly from a table keyed by its syndrome
//! contribution.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, modp};
use crate::code::{is_invariant, StabilizerCode};
use crate::error::{Error, Result};
use crate::exact;
use crate::modp::{self as zp, Rref};
use crate::symplectic::{exact_product, Modulus, SymplecticMatrix, SymplecticVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Detectable,
    Artifact,
    Unavoidable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Detectable => "detectable",
            Verdict::Artifact => "artifact",
            Verdict::Unavoidable => "unavoidable",
        })
    }
}

/// Classification of one error against a generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorVerdict {
    /// Integer lift the syndrome was computed for.
    pub error: SymplecticVector,
    pub weight: usize,
    pub integer_syndrome: Vec<i64>,
    pub verdict: Verdict,
    pub in_stabilizer: bool,
}

/// Which undetectable errors count towards the distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Undetectable errors outside the stabilizer span, `N(S) \ S`. For codes
    /// with no logical qudits (`k = n`) the span is not excluded, so the value
    /// is the smallest nontrivial stabilizer weight.
    ExcludeStabilizer,
    /// Every nonzero error commuting with all generators.
    KernelOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    /// Partial and complete assignments visited.
    pub nodes_visited: u64,
    pub supports_searched: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    /// `None` when no undetectable error of weight `≤ max_weight` exists.
    pub distance: Option<usize>,
    pub max_weight: usize,
    pub p: i64,
    pub mode: DistanceMode,
    pub witness: Option<SymplecticVector>,
    pub stats: SearchStats,
}

/// Lexicographic `w`-subsets of `0..n`.
pub fn combinations(n: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if w > n {
        return out;
    }
    let mut c: Vec<usize> = (0..w).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..w).rev().find(|&i| c[i] != i + n - w) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..w {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Integer syndrome `⊙(e, row_i)` of an error against every row.
pub fn integer_syndrome(error: &SymplecticVector, generators: &SymplecticMatrix) -> Result<Vec<i64>> {
    if error.n() != generators.n() {
        return Err(Error::LengthMismatch {
            expected: generators.n(),
            found: error.n(),
        });
    }
    generators.rows().iter().map(|r| exact_product(error, r)).collect()
}

/// Per-register syndrome contributions mod `p` and the mod-`p` span of the
/// generators.
struct SearchContext {
    n: usize,
    k: usize,
    p: i64,
    /// `x[i][m]`, `z[i][m]` reduced mod p
    x: Vec<Vec<i64>>,
    z: Vec<Vec<i64>>,
    pairs: Vec<(i64, i64)>,
    /// register -> syndrome contribution -> pairs producing it
    tables: Vec<HashMap<Vec<i64>, Vec<(i64, i64)>>>,
    span: Rref,
}

impl SearchContext {
    fn new(generators: &SymplecticMatrix, p: i64) -> Self {
        let n = generators.n();
        let k = generators.k();
        let x: Vec<Vec<i64>> = generators.rows().iter().map(|r| r.x().iter().map(|&v| modp(v, p)).collect()).collect();
        let z: Vec<Vec<i64>> = generators.rows().iter().map(|r| r.z().iter().map(|&v| modp(v, p)).collect()).collect();
        let pairs: Vec<(i64, i64)> = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .filter(|&ab| ab != (0, 0))
            .collect();
        let mut ctx = Self {
            n,
            k,
            p,
            x,
            z,
            pairs,
            tables: Vec::new(),
            span: zp::rref(&generators.reduce_mod(p).map(|m| m.to_flat_rows()).unwrap_or_default(), p),
        };
        ctx.tables = (0..n)
            .map(|m| {
                let mut t: HashMap<Vec<i64>, Vec<(i64, i64)>> = HashMap::new();
                for &(a, b) in &ctx.pairs {
                    t.entry(ctx.contribution(m, a, b)).or_default().push((a, b));
                }
                t
            })
            .collect();
        ctx
    }

    fn contribution(&self, m: usize, a: i64, b: i64) -> Vec<i64> {
        (0..self.k)
            .map(|i| modp(a * self.z[i][m] - b * self.x[i][m], self.p))
            .collect()
    }

    /// Row-reduced span of the syndrome columns of `registers`.
    fn column_span(&self, registers: &[usize]) -> Rref {
        let cols: Vec<Vec<i64>> = registers
            .iter()
            .flat_map(|&m| [self.contribution(m, 1, 0), self.contribution(m, 0, 1)])
            .collect();
        zp::rref(&cols, self.p)
    }

    fn to_vector(&self, support: &[usize], assignment: &[(i64, i64)]) -> SymplecticVector {
        let mut x = vec![0; self.n];
        let mut z = vec![0; self.n];
        for (&m, &(a, b)) in support.iter().zip(assignment) {
            x[m] = a;
            z[m] = b;
        }
        SymplecticVector::new(x, z, Modulus::Prime(self.p)).expect("entries reduced mod p")
    }

    fn in_span(&self, v: &SymplecticVector) -> bool {
        self.k > 0 && self.span.contains(&v.to_flat(), self.p)
    }

    /// Visits every full-support assignment on `support` with zero syndrome
    /// mod `p`, in odometer order. Returns the node count.
    fn search_support<F>(&self, support: &[usize], mut visit: F) -> u64
    where
        F: FnMut(&[(i64, i64)]) -> ControlFlow<()>,
    {
        let w = support.len();
        let spans: Vec<Rref> = (0..w).map(|j| self.column_span(&support[j..])).collect();
        let mut assignment = Vec::with_capacity(w);
        let mut nodes = 0u64;
        let _ = self.descend(support, &spans, 0, vec![0; self.k], &mut assignment, &mut nodes, &mut visit);
        nodes
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F>(
        &self,
        support: &[usize],
        spans: &[Rref],
        depth: usize,
        partial: Vec<i64>,
        assignment: &mut Vec<(i64, i64)>,
        nodes: &mut u64,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[(i64, i64)]) -> ControlFlow<()>,
    {
        *nodes += 1;
        let need: Vec<i64> = partial.iter().map(|&s| modp(-s, self.p)).collect();
        let m = support[depth];
        if depth + 1 == support.len() {
            if let Some(hits) = self.tables[m].get(&need) {
                for &ab in hits {
                    *nodes += 1;
                    assignment.push(ab);
                    let flow = visit(assignment);
                    assignment.pop();
                    flow?;
                }
            }
            return ControlFlow::Continue(());
        }
        if !spans[depth].contains(&need, self.p) {
            return ControlFlow::Continue(());
        }
        for &(a, b) in &self.pairs {
            let c = self.contribution(m, a, b);
            let next: Vec<i64> = partial.iter().zip(&c).map(|(s, t)| modp(s + t, self.p)).collect();
            assignment.push((a, b));
            let flow = self.descend(support, spans, depth + 1, next, assignment, nodes, visit);
            assignment.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn check_weight(max_weight: usize, n: usize) -> Result<()> {
    if max_weight < 1 || max_weight > n {
        return Err(Error::InvalidArgument(format!("max_weight must lie in 1..={n}, got {max_weight}")));
    }
    Ok(())
}

/// Smallest weight of an undetectable error mod `p` (see [`DistanceMode`]).
pub fn distance(code: &StabilizerCode, max_weight: usize, mode: DistanceMode) -> Result<DistanceResult> {
    code.ensure_valid()?;
    distance_of_matrix(code.generators(), code.q(), max_weight, mode)
}

/// Distance search on raw generator rows, read mod `p`.
pub fn distance_of_matrix(
    generators: &SymplecticMatrix,
    p: i64,
    max_weight: usize,
    mode: DistanceMode,
) -> Result<DistanceResult> {
    arith::require_prime(p)?;
    check_weight(max_weight, generators.n())?;
    let start = Instant::now();
    let ctx = SearchContext::new(generators, p);
    let exclude = mode == DistanceMode::ExcludeStabilizer && generators.k() < generators.n();
    let mut stats = SearchStats::default();

    for w in 1..=max_weight {
        let supports = combinations(ctx.n, w);
        let outcomes: Vec<(u64, Option<SymplecticVector>)> = supports
            .par_iter()
            .map(|support| {
                let mut found = None;
                let nodes = ctx.search_support(support, |assignment| {
                    let v = ctx.to_vector(support, assignment);
                    if exclude && ctx.in_span(&v) {
                        ControlFlow::Continue(())
                    } else {
                        found = Some(v);
                        ControlFlow::Break(())
                    }
                });
                (nodes, found)
            })
            .collect();
        let winner = outcomes.iter().position(|(_, f)| f.is_some());
        let upto = winner.map_or(outcomes.len(), |i| i + 1);
        stats.supports_searched += upto as u64;
        stats.nodes_visited += outcomes[..upto].iter().map(|(n, _)| n).sum::<u64>();
        if let Some(i) = winner {
            stats.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            return Ok(DistanceResult {
                distance: Some(w),
                max_weight,
                p,
                mode,
                witness: outcomes[i].1.clone(),
                stats,
            });
        }
    }
    stats.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(DistanceResult {
        distance: None,
        max_weight,
        p,
        mode,
        witness: None,
        stats,
    })
}

/// Syndrome columns of `support` as an exact `k × 2w` matrix: register `m`
/// contributes `(z_i[m])_i` for its X exponent and `(−x_i[m])_i` for its Z
/// exponent.
fn support_matrix(generators: &SymplecticMatrix, support: &[usize]) -> exact::IntMatrix {
    generators
        .rows()
        .iter()
        .map(|r| {
            support
                .iter()
                .flat_map(|&m| [BigInt::from(r.z()[m]), -BigInt::from(r.x()[m])])
                .collect()
        })
        .collect()
}

fn embed_support(n: usize, support: &[usize], v: &[BigInt]) -> Result<SymplecticVector> {
    let mut x = vec![0; n];
    let mut z = vec![0; n];
    for (j, &m) in support.iter().enumerate() {
        x[m] = v[2 * j].to_i64().ok_or(Error::Overflow)?;
        z[m] = v[2 * j + 1].to_i64().ok_or(Error::Overflow)?;
    }
    SymplecticVector::new(x, z, Modulus::Integer)
}

/// Classifies an error mod `p`.
///
/// Integer vectors are classified as given. For a vector over `Z_p` the
/// integer lift is not unique: when the syndrome vanishes mod `p` but not for
/// the `{0, …, p−1}` representatives, the lift is re-chosen on the same
/// support (adding multiples of `p`) to reach an exactly zero syndrome if one
/// exists. The returned `error` is the lift used, so a mod-`p` error is
/// unavoidable exactly when some lift with the same support commutes exactly.
pub fn classify(error: &SymplecticVector, generators: &SymplecticMatrix, p: i64) -> Result<ErrorVerdict> {
    arith::require_prime(p)?;
    let lifted = error.to_integer();
    let syndrome = integer_syndrome(&lifted, generators)?;
    let in_stabilizer = {
        let rows = generators.reduce_mod(p)?.to_flat_rows();
        zp::rref(&rows, p).contains(&lifted.reduce_mod(p)?.to_flat(), p)
    };
    let weight = lifted.reduce_mod(p)?.weight();
    if syndrome.iter().any(|&s| modp(s, p) != 0) {
        return Ok(ErrorVerdict { error: lifted, weight, integer_syndrome: syndrome, verdict: Verdict::Detectable, in_stabilizer });
    }
    if syndrome.iter().all(|&s| s == 0) {
        return Ok(ErrorVerdict { error: lifted, weight, integer_syndrome: syndrome, verdict: Verdict::Unavoidable, in_stabilizer });
    }
    if error.modulus() == Modulus::Integer {
        return Ok(ErrorVerdict { error: lifted, weight, integer_syndrome: syndrome, verdict: Verdict::Artifact, in_stabilizer });
    }
    // look for t on the support with M (e + p t) = 0, i.e. M t = −M e / p
    let support = lifted.reduce_mod(p)?.support();
    let m = support_matrix(generators, &support);
    let target: Vec<BigInt> = syndrome.iter().map(|&s| BigInt::from(-s / p)).collect();
    if let Some(t) = exact::solve_integer(&m, 2 * support.len(), &target) {
        let mut x = lifted.x().to_vec();
        let mut z = lifted.z().to_vec();
        for (j, &reg) in support.iter().enumerate() {
            let tx = t[2 * j].to_i64().ok_or(Error::Overflow)?;
            let tz = t[2 * j + 1].to_i64().ok_or(Error::Overflow)?;
            x[reg] = arith::checked_add(x[reg], arith::checked_mul(p, tx)?)?;
            z[reg] = arith::checked_add(z[reg], arith::checked_mul(p, tz)?)?;
        }
        let relifted = SymplecticVector::new(x, z, Modulus::Integer)?;
        let syndrome = integer_syndrome(&relifted, generators)?;
        if syndrome.iter().any(|&s| s != 0) {
            return Err(Error::Internal("integer lift does not cancel the syndrome".into()));
        }
        return Ok(ErrorVerdict { error: relifted, weight, integer_syndrome: syndrome, verdict: Verdict::Unavoidable, in_stabilizer });
    }
    Ok(ErrorVerdict { error: lifted, weight, integer_syndrome: syndrome, verdict: Verdict::Artifact, in_stabilizer })
}

/// Every nonzero error of weight `≤ max_weight` that is undetectable mod `p`,
/// classified. Generators are read as integers (prime-modulus rows use their
/// representatives).
pub fn enumerate_undetectable(generators: &SymplecticMatrix, p: i64, max_weight: usize) -> Result<Vec<ErrorVerdict>> {
    arith::require_prime(p)?;
    check_weight(max_weight, generators.n())?;
    let integer = generators.to_integer();
    let ctx = SearchContext::new(&integer, p);
    let mut out = Vec::new();
    for w in 1..=max_weight {
        let batches: Vec<Result<Vec<ErrorVerdict>>> = combinations(ctx.n, w)
            .par_iter()
            .map(|support| {
                let mut found = Vec::new();
                ctx.search_support(support, |assignment| {
                    found.push(ctx.to_vector(support, assignment));
                    ControlFlow::Continue(())
                });
                found.iter().map(|v| classify(v, &integer, p)).collect()
            })
            .collect();
        for b in batches {
            out.extend(b?);
        }
    }
    Ok(out)
}

/// One variant of the integer distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerDistance {
    pub distance: Option<usize>,
    pub witness: Option<SymplecticVector>,
}

/// `d*` as the smallest support on which the syndrome columns are linearly
/// dependent over the rationals. `literal` counts every exactly commuting
/// error; `excluding_span` skips errors in the rational row span of the
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerDistanceResult {
    pub max_weight: usize,
    pub literal: IntegerDistance,
    pub excluding_span: IntegerDistance,
    pub supports_searched: u64,
}

/// Integer distance of an invariant generator matrix by exact rational rank.
pub fn integer_distance(generators: &SymplecticMatrix, max_weight: usize) -> Result<IntegerDistanceResult> {
    check_weight(max_weight, generators.n())?;
    let g = generators.to_integer();
    if !is_invariant(&g) {
        return Err(Error::InvalidCode("integer distance needs exactly commuting rows".into()));
    }
    let n = g.n();
    let full: exact::IntMatrix = exact::to_big(&g.to_flat_rows());
    let rank_g = exact::rank(&full);
    let mut literal = IntegerDistance { distance: None, witness: None };
    let mut excluding = IntegerDistance { distance: None, witness: None };
    let mut supports_searched = 0u64;

    for w in 1..=max_weight {
        if literal.distance.is_some() && excluding.distance.is_some() {
            break;
        }
        let supports = combinations(n, w);
        supports_searched += supports.len() as u64;
        let found: Vec<(Option<SymplecticVector>, Option<SymplecticVector>)> = supports
            .par_iter()
            .map(|support| -> Result<_> {
                let m = support_matrix(&g, support);
                let basis = exact::kernel(&m, 2 * w);
                if basis.is_empty() {
                    return Ok((None, None));
                }
                let lit = Some(embed_support(n, support, &basis[0])?);
                // dim of the row span restricted to this support
                let outside: Vec<usize> = (0..2 * n)
                    .filter(|&c| !support.contains(&(c % n)))
                    .collect();
                let restricted: exact::IntMatrix = full
                    .iter()
                    .map(|r| outside.iter().map(|&c| r[c].clone()).collect())
                    .collect();
                let span_dim = rank_g - exact::rank(&restricted);
                let mut exc = None;
                if basis.len() > span_dim {
                    for b in &basis {
                        let v = embed_support(n, support, b)?;
                        let mut stacked = full.clone();
                        stacked.push(exact::to_big(&[v.to_flat()]).remove(0));
                        if exact::rank(&stacked) > rank_g {
                            exc = Some(v);
                            break;
                        }
                    }
                }
                Ok((lit, exc))
            })
            .collect::<Result<Vec<_>>>()?;
        if literal.distance.is_none() {
            if let Some(v) = found.iter().find_map(|(l, _)| l.clone()) {
                literal = IntegerDistance { distance: Some(w), witness: Some(v) };
            }
        }
        if excluding.distance.is_none() {
            if let Some(v) = found.iter().find_map(|(_, e)| e.clone()) {
                excluding = IntegerDistance { distance: Some(w), witness: Some(v) };
            }
        }
    }
    Ok(IntegerDistanceResult {
        max_weight,
        literal,
        excluding_span: excluding,
        supports_searched,
    })
}

/// `|det|` of the square minor of the exact syndrome matrix (all registers,
/// two columns each) picked out by `rows` and `cols`.
pub fn syndrome_minor(generators: &SymplecticMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let g = generators.to_integer();
    let all: Vec<usize> = (0..g.n()).collect();
    let m = support_matrix(&g, &all);
    let minor: exact::IntMatrix = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
    let d = exact::determinant(&minor);
    if d < BigInt::zero() {
        -d
    } else {
        d
    }
}
