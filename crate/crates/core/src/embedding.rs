//! Embedding a stabilizer code into local-dimension-invariant form, the
//! cutoffs that govern distance preservation, and instantiation at a prime.
//!
//! Starting from the canonical form `(I_k X_2 | Z_1 Z_2)` over `Z_q`, the
//! strictly lower triangular matrix `L` with `L_ij = ⊙(s_i, s_j)` for `i > j`
//! is added into the `Z_1` block. Every product among the canonical rows is a
//! multiple of `q`, so the result still reduces to the canonical form mod `q`,
//! and the identity block makes the correction cancel each product exactly:
//! `⊙(s_i + (0 | L_i 0), s_j + (0 | L_j 0)) = ⊙(s_i, s_j) − L_ij = 0`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::code::{is_invariant, standard_form, CanonicalForm, CodeParameters, StabilizerCode};
use crate::error::{Error, Result};
use crate::exact_int::ExactInt;
use crate::symplectic::{exact_product, ElementaryOp, Modulus, SymplecticMatrix, Transcript};

/// Register labelling an [`InvariantCode`] is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// Registers as relabelled and Fourier-swapped by the canonical form.
    Canonical,
    /// Register operations of the transcript undone.
    Original,
}

/// Integer generator matrix whose rows commute exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCode {
    matrix: SymplecticMatrix,
    source: CodeParameters,
    /// Matrix over `Z_q` this one reduces to entry-wise.
    reference: SymplecticMatrix,
    transcript: Transcript,
    frame: Frame,
    correction: Vec<Vec<i64>>,
    max_entry: i64,
}

impl InvariantCode {
    /// Wraps an integer matrix that is already invariant, e.g. one loaded from
    /// a file. `q` records the dimension it was designed for.
    pub fn from_integer_matrix(matrix: SymplecticMatrix, q: i64) -> Result<Self> {
        arith::require_prime(q)?;
        let matrix = matrix.to_integer();
        if !is_invariant(&matrix) {
            return Err(Error::InvalidCode("rows do not commute exactly over the integers".into()));
        }
        let reference = matrix.reduce_mod(q)?;
        let k = matrix.k();
        Ok(Self {
            source: CodeParameters {
                n: matrix.n(),
                k,
                logical: matrix.n().saturating_sub(k),
                q,
            },
            reference,
            transcript: Transcript::new(),
            frame: Frame::Original,
            correction: vec![vec![0; k]; k],
            max_entry: matrix.max_abs(),
            matrix,
        })
    }

    pub fn matrix(&self) -> &SymplecticMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    pub fn source(&self) -> CodeParameters {
        self.source
    }

    pub fn reference(&self) -> &SymplecticMatrix {
        &self.reference
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// The `L` matrix that was added into the `Z_1` block.
    pub fn correction(&self) -> &[Vec<i64>] {
        &self.correction
    }

    /// Largest absolute entry, `B`.
    pub fn max_entry(&self) -> i64 {
        self.max_entry
    }

    /// Reduces entry-wise mod `p`. See [`instantiate`].
    pub fn instantiate(&self, p: i64) -> Result<StabilizerCode> {
        instantiate(self, p)
    }
}

/// `k × k` matrix of exact products `⊙(row_i, row_j)`.
pub fn commutator_matrix(m: &SymplecticMatrix) -> Result<Vec<Vec<i64>>> {
    let rows = m.rows();
    rows.iter()
        .map(|a| rows.iter().map(|b| exact_product(a, b)).collect())
        .collect()
}

/// Strictly lower triangular part of a commutator matrix.
pub fn lower_correction(commutators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    commutators
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, &v)| if i > j { v } else { 0 }).collect())
        .collect()
}

/// Embeds a valid code: canonical form, then the `L` correction.
///
/// Generators that already commute exactly over the integers are returned
/// unchanged (original frame, `L = 0`); use [`embed_canonical`] to force the
/// construction.
pub fn embed(code: &StabilizerCode) -> Result<InvariantCode> {
    code.ensure_valid()?;
    let integer = code.generators().to_integer();
    if is_invariant(&integer) {
        return InvariantCode::from_integer_matrix(integer, code.q());
    }
    let form = standard_form(code)?;
    embed_canonical(&form)
}

/// Applies the `L` correction to a canonical form directly. Accepts any
/// matrix with the leading identity block, so externally supplied canonical
/// forms can be embedded without re-running the reduction.
pub fn embed_canonical(form: &CanonicalForm) -> Result<InvariantCode> {
    if !form.has_identity_block() {
        return Err(Error::InvalidArgument("matrix is not in canonical form".into()));
    }
    let q = form.q;
    let canonical = &form.matrix;
    StabilizerCode::new(canonical.clone())?.ensure_valid()?;
    let integer = canonical.to_integer();
    let commutators = commutator_matrix(&integer)?;
    let correction = lower_correction(&commutators);
    let k = integer.k();

    let mut matrix = integer;
    for (i, row) in matrix.rows_mut().iter_mut().enumerate() {
        for j in 0..k {
            if correction[i][j] != 0 {
                let v = arith::checked_add(row.z()[j], correction[i][j])?;
                row.set_z(j, v);
            }
        }
    }

    if matrix.reduce_mod(q)? != *canonical {
        return Err(Error::Internal("embedded matrix does not reduce to the canonical form".into()));
    }
    if !is_invariant(&matrix) {
        return Err(Error::Internal("embedded rows do not commute exactly".into()));
    }
    let params = StabilizerCode::new(canonical.clone())?.parameters();
    Ok(InvariantCode {
        max_entry: matrix.max_abs(),
        matrix,
        source: params,
        reference: canonical.clone(),
        transcript: form.transcript.clone(),
        frame: Frame::Canonical,
        correction,
    })
}

impl CanonicalForm {
    /// Wraps a matrix that is already in canonical form (empty transcript).
    pub fn from_matrix(matrix: SymplecticMatrix) -> Result<Self> {
        let q = matrix
            .modulus()
            .as_prime()
            .ok_or_else(|| Error::InvalidArgument("canonical form needs a prime modulus".into()))?;
        let form = CanonicalForm {
            q,
            matrix,
            transcript: Transcript::new(),
        };
        if !form.has_identity_block() {
            return Err(Error::InvalidArgument("matrix lacks the leading identity block".into()));
        }
        Ok(form)
    }
}

/// `(2 + (n−k)(q−1))(q−1)`, the largest entry the embedding can produce.
pub fn bound_b(n: usize, k: usize, q: i64) -> Result<i64> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    arith::require_prime(q)?;
    let nk = i64::try_from(n - k).map_err(|_| Error::Overflow)?;
    let inner = arith::checked_add(2, arith::checked_mul(nk, q - 1)?)?;
    arith::checked_mul(inner, q - 1)
}

/// `B^{2(d−1)} · (2(d−1))^{d−1}`: above this prime the embedded code keeps
/// distance at least `d`. Equals 1 for `d = 1`.
pub fn p_star(b: i64, d: usize) -> Result<BigInt> {
    if b < 1 || d < 1 {
        return Err(Error::InvalidArgument(format!("p* needs B ≥ 1 and d ≥ 1 (got B = {b}, d = {d})")));
    }
    let e = (d - 1) as u32;
    let big_b = BigInt::from(b);
    Ok(big_b.pow(2 * e) * BigInt::from(2 * (d as u64 - 1)).pow(e))
}

/// The same cutoff evaluated at the integer distance `d*`, or at `k` when
/// `d*` is unknown (`d* ≤ k`).
pub fn p_star_for_dstar(b: i64, dstar_or_k: usize) -> Result<BigInt> {
    p_star(b, dstar_or_k)
}

/// Lower cutoff from the qudit quantum Hamming bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PDoubleStar {
    pub t: usize,
    pub value: f64,
    /// `value > 2`; otherwise no prime is excluded.
    pub restricts: bool,
}

impl PDoubleStar {
    /// Primes strictly below the cutoff.
    pub fn excluded_primes(&self) -> Vec<i64> {
        if !self.restricts {
            return Vec::new();
        }
        let hi = self.value.ceil() as i64;
        arith::primes_between(2, hi).into_iter().filter(|&p| (p as f64) < self.value).collect()
    }

    pub fn excludes(&self, p: i64) -> bool {
        self.restricts && (p as f64) < self.value
    }
}

/// `sqrt(1 + C(n, t)^{1/(k−t)})` with `t = ⌊(d−1)/2⌋`. Not applicable when
/// `t ≥ k`.
pub fn p_double_star(n: usize, k: usize, d: usize) -> Result<PDoubleStar> {
    if d < 1 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let t = (d - 1) / 2;
    if t >= k {
        return Err(Error::NotApplicable(format!("t = {t} ≥ k = {k}")));
    }
    if t > n {
        return Err(Error::NotApplicable(format!("t = {t} > n = {n}")));
    }
    let ln_binom: f64 = (0..t).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum();
    let value = (1.0 + (ln_binom / (k - t) as f64).exp()).sqrt();
    Ok(PDoubleStar {
        t,
        value,
        restricts: value > 2.0,
    })
}

/// Reduces an invariant code mod `p` and checks the result is a valid code.
pub fn instantiate(inv: &InvariantCode, p: i64) -> Result<StabilizerCode> {
    arith::require_prime(p)?;
    let code = StabilizerCode::new(inv.matrix.reduce_mod(p)?)?;
    code.ensure_valid()?;
    Ok(code)
}

/// Row indices of X-only and Z-only generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssPartition {
    pub x_rows: Vec<usize>,
    pub z_rows: Vec<usize>,
}

/// Splits rows into X-only and Z-only, or `None` if some row mixes both.
pub fn css_partition(m: &SymplecticMatrix) -> Option<CssPartition> {
    let mut part = CssPartition {
        x_rows: Vec::new(),
        z_rows: Vec::new(),
    };
    for (i, r) in m.rows().iter().enumerate() {
        let has_x = r.x().iter().any(|&v| v != 0);
        let has_z = r.z().iter().any(|&v| v != 0);
        match (has_x, has_z) {
            (true, false) => part.x_rows.push(i),
            (false, true) => part.z_rows.push(i),
            _ => return None,
        }
    }
    Some(part)
}

pub fn is_css(code: &StabilizerCode) -> Option<CssPartition> {
    css_partition(code.generators())
}

/// Embeds a CSS code and keeps it CSS: X rows are ordered first so the
/// canonical form only Fourier-swaps registers pivoted by Z rows, `L` lands
/// in the Z rows only, and undoing the register operations afterwards
/// restores X-only and Z-only rows.
pub fn embed_css(code: &StabilizerCode) -> Result<InvariantCode> {
    let part = is_css(code).ok_or_else(|| Error::NotCss("some generator mixes X and Z".into()))?;
    code.ensure_valid()?;

    let order: Vec<usize> = part.x_rows.iter().chain(&part.z_rows).copied().collect();
    let mut reordered = code.generators().clone();
    let mut swaps = Vec::new();
    let mut position: Vec<usize> = (0..order.len()).collect();
    for (target, &want) in order.iter().enumerate() {
        let at = position.iter().position(|&r| r == want).expect("row present");
        if at != target {
            let op = ElementaryOp::RowSwap { i: target, j: at };
            reordered.apply(op)?;
            position.swap(target, at);
            swaps.push(op);
        }
    }
    let form = standard_form(&StabilizerCode::new(reordered)?)?;
    let mut inv = embed_canonical(&form)?;

    let mut transcript = Transcript { ops: swaps };
    transcript.ops.extend(form.transcript.ops.iter().copied());

    let back_rows = inv.matrix.rows().iter().map(|r| form.transcript.invert_registers(r)).collect();
    let back = SymplecticMatrix::new(inv.n(), Modulus::Integer, back_rows)?;
    let ref_rows = inv.reference.rows().iter().map(|r| form.transcript.invert_registers(r)).collect();
    let reference = SymplecticMatrix::new(inv.n(), inv.reference.modulus(), ref_rows)?;

    if css_partition(&back).is_none() {
        return Err(Error::Internal("embedding of a CSS code lost the CSS structure".into()));
    }
    if !is_invariant(&back) {
        return Err(Error::Internal("undoing register operations broke exact commutation".into()));
    }
    inv.matrix = back;
    inv.reference = reference;
    inv.transcript = transcript;
    inv.frame = Frame::Original;
    Ok(inv)
}

/// Bounds and per-prime checks for an embedded code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub b: i64,
    pub b_bound: i64,
    pub d: Option<usize>,
    pub p_star: Option<ExactInt>,
    /// Cutoff evaluated at `k`, valid without knowing `d*`.
    pub p_star_loose: ExactInt,
    pub p_double_star: Option<PDoubleStar>,
    pub p_double_star_note: Option<String>,
    pub per_prime: Vec<PrimeCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub p: i64,
    pub valid: bool,
    pub distance: Option<usize>,
}

impl EmbeddingReport {
    /// `d` is the known distance of the source code, if any.
    pub fn new(inv: &InvariantCode, d: Option<usize>) -> Result<Self> {
        let src = inv.source();
        let b = inv.max_entry();
        let b_bound = bound_b(src.n, src.k, src.q)?;
        let (p_double_star, p_double_star_note) = match d.map(|d| p_double_star(src.n, src.k, d)) {
            Some(Ok(v)) => (Some(v), None),
            Some(Err(e)) => (None, Some(e.to_string())),
            None => (None, None),
        };
        Ok(Self {
            b,
            b_bound,
            d,
            p_star: d.map(|d| p_star(b.max(1), d)).transpose()?.map(ExactInt),
            p_star_loose: ExactInt(p_star_for_dstar(b.max(1), src.k.max(1))?),
            p_double_star,
            p_double_star_note,
            per_prime: Vec::new(),
        })
    }

    /// Instantiates at each prime and, when `max_weight` is given, runs the
    /// distance search there.
    pub fn check_primes(&mut self, inv: &InvariantCode, primes: &[i64], max_weight: Option<usize>) -> Result<()> {
        use rayon::prelude::*;
        let checks = primes
            .par_iter()
            .map(|&p| -> Result<PrimeCheck> {
                arith::require_prime(p)?;
                let code = match instantiate(inv, p) {
                    Ok(c) => c,
                    Err(Error::InvalidCode(_)) => return Ok(PrimeCheck { p, valid: false, distance: None }),
                    Err(e) => return Err(e),
                };
                let distance = match max_weight {
                    Some(w) => crate::distance::distance(&code, w.min(code.n()), crate::distance::DistanceMode::ExcludeStabilizer)?
                        .distance,
                    None => None,
                };
                Ok(PrimeCheck { p, valid: true, distance })
            })
            .collect::<Result<Vec<_>>>()?;
        self.per_prime = checks;
        Ok(())
    }
}
