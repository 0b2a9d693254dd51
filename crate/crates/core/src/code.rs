//! Stabilizer codes over `Z_q`: validation and reduction to the canonical
//! form `(I_k X_2 | Z_1 Z_2)`.

use serde::{Deserialize, Serialize};

use crate::arith::{self, inv_mod, modp};
use crate::error::{Error, Result};
use crate::modp as zp;
use crate::symplectic::{exact_product, ElementaryOp, Modulus, SymplecticMatrix, SymplecticVector, Transcript};

/// A set of generators over `Z_q`. Construction checks shapes only; use
/// [`StabilizerCode::validate`] for the commutation and independence checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    q: i64,
    generators: SymplecticMatrix,
}

/// `[[n, n−k, d]]_q` bookkeeping. `k` counts stabilizer generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub logical: usize,
    pub q: i64,
}

impl StabilizerCode {
    pub fn new(generators: SymplecticMatrix) -> Result<Self> {
        let q = generators
            .modulus()
            .as_prime()
            .ok_or_else(|| Error::InvalidArgument("stabilizer code needs a prime modulus".into()))?;
        Ok(Self { q, generators })
    }

    /// Builds from flat `(x | z)` rows, reducing entries mod `q`.
    pub fn from_flat_rows(n: usize, q: i64, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(SymplecticMatrix::from_flat_rows(n, Modulus::prime(q)?, rows)?)
    }

    /// Builds from qubit-style letter strings such as `"XZZXI"`.
    pub fn from_letters(q: i64, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| crate::io::parse_pauli_string(r, q))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map_or(0, SymplecticVector::n);
        Self::new(SymplecticMatrix::new(n, Modulus::prime(q)?, parsed)?)
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.generators.n()
    }

    pub fn k(&self) -> usize {
        self.generators.k()
    }

    pub fn generators(&self) -> &SymplecticMatrix {
        &self.generators
    }

    pub fn parameters(&self) -> CodeParameters {
        CodeParameters {
            n: self.n(),
            k: self.k(),
            logical: self.n().saturating_sub(self.k()),
            q: self.q,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_rows(self.q, self.n(), &self.generators.to_flat_rows())
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidCode(report.failures.join("; ")))
        }
    }

    /// Reduces the generators to canonical form. See [`standard_form`].
    pub fn standard_form(&self) -> Result<CanonicalForm> {
        standard_form(self)
    }
}

/// A pair of generators whose product is nonzero mod `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffendingPair {
    pub i: usize,
    pub j: usize,
    pub product: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub q: i64,
    pub n: usize,
    pub k: usize,
    pub logical: usize,
    pub prime: bool,
    pub commuting: bool,
    pub offending_pair: Option<OffendingPair>,
    pub rank: usize,
    pub rank_deficiency: usize,
    pub k_at_most_n: bool,
    pub valid: bool,
    pub failures: Vec<String>,
}

/// Checks primality of `q`, pairwise commutation mod `q`, independence over
/// `Z_q`, and `k ≤ n` on raw flat rows.
pub fn validate_rows(q: i64, n: usize, rows: &[Vec<i64>]) -> ValidationReport {
    let k = rows.len();
    let prime = arith::is_prime(q);
    let mut failures = Vec::new();
    let mut offending_pair = None;
    let mut rank = 0;
    if !prime {
        failures.push(format!("q = {q} is not prime"));
    } else {
        let reduced: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| modp(v, q)).collect()).collect();
        'outer: for i in 0..k {
            for j in i + 1..k {
                let mut acc = 0i128;
                for m in 0..n {
                    acc += reduced[i][m] as i128 * reduced[j][n + m] as i128
                        - reduced[j][m] as i128 * reduced[i][n + m] as i128;
                }
                let product = acc.rem_euclid(q as i128) as i64;
                if product != 0 {
                    offending_pair = Some(OffendingPair { i, j, product });
                    failures.push(format!("generators {i} and {j} have product {product} mod {q}"));
                    break 'outer;
                }
            }
        }
        rank = zp::rank(&reduced, q);
        if rank < k {
            failures.push(format!("generators have rank {rank} < {k} over Z_{q}"));
        }
    }
    if k > n {
        failures.push(format!("{k} generators on {n} registers"));
    }
    ValidationReport {
        q,
        n,
        k,
        logical: n.saturating_sub(k),
        prime,
        commuting: prime && offending_pair.is_none(),
        offending_pair,
        rank,
        rank_deficiency: k.saturating_sub(rank),
        k_at_most_n: k <= n,
        valid: failures.is_empty(),
        failures,
    }
}

/// True iff every pair of rows has exactly zero symplectic product when the
/// entries are read as integers, so the code is valid at every prime.
pub fn is_invariant(m: &SymplecticMatrix) -> bool {
    let rows = m.rows();
    (0..rows.len()).all(|i| (i + 1..rows.len()).all(|j| matches!(exact_product(&rows[i], &rows[j]), Ok(0))))
}

/// Generators in the form `(I_k X_2 | Z_1 Z_2)` mod `q`, with the operations
/// that produced it from the original generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub q: i64,
    pub matrix: SymplecticMatrix,
    pub transcript: Transcript,
}

impl CanonicalForm {
    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    /// True iff the leading `k × k` block of the X half is the identity.
    pub fn has_identity_block(&self) -> bool {
        let k = self.matrix.k();
        self.matrix
            .rows()
            .iter()
            .enumerate()
            .all(|(i, r)| (0..k).all(|j| r.x()[j] == i64::from(i == j)))
    }

    pub fn code(&self) -> Result<StabilizerCode> {
        StabilizerCode::new(self.matrix.clone())
    }
}

/// Symplectic Gaussian elimination to `(I_k X_2 | Z_1 Z_2)`.
///
/// For each pivot position `r`, the first register `j ≥ r` with a nonzero X
/// entry in some row `i ≥ r` is used (lowest row first). When no such X entry
/// exists, the first register `j ≥ r` with a nonzero Z entry is Fourier-swapped
/// to move it into the X half. The pivot row is scaled to 1, the column is
/// cleared in every other row, and the register is swapped into position `r`.
/// No-op steps are not recorded, so canonical input comes back with an empty
/// transcript.
pub fn standard_form(code: &StabilizerCode) -> Result<CanonicalForm> {
    code.ensure_valid()?;
    let q = code.q();
    let n = code.n();
    let k = code.k();
    let mut m = code.generators().clone();
    let mut transcript = Transcript::new();
    let mut push = |m: &mut SymplecticMatrix, op: ElementaryOp| -> Result<()> {
        m.apply(op)?;
        transcript.ops.push(op);
        Ok(())
    };

    for r in 0..k {
        let find = |m: &SymplecticMatrix, half_x: bool| {
            (r..n).find_map(|j| {
                (r..k)
                    .find(|&i| {
                        let row = m.row(i);
                        if half_x {
                            row.x()[j] != 0
                        } else {
                            row.z()[j] != 0
                        }
                    })
                    .map(|i| (i, j))
            })
        };
        let (pivot_row, reg) = match find(&m, true) {
            Some(found) => found,
            None => {
                let (i, j) = find(&m, false).ok_or_else(|| {
                    Error::Internal(format!("no pivot register for row {r} of a valid commuting code"))
                })?;
                push(&mut m, ElementaryOp::FourierSwap { register: j })?;
                (i, j)
            }
        };
        if pivot_row != r {
            push(&mut m, ElementaryOp::RowSwap { i: r, j: pivot_row })?;
        }
        let inv = inv_mod(m.row(r).x()[reg], q).expect("pivot is nonzero mod a prime");
        if inv != 1 {
            push(&mut m, ElementaryOp::RowScale { row: r, factor: inv })?;
        }
        for i in 0..k {
            let e = m.row(i).x()[reg];
            if i != r && e != 0 {
                push(&mut m, ElementaryOp::RowAdd { target: i, source: r, factor: modp(-e, q) })?;
            }
        }
        if reg != r {
            push(&mut m, ElementaryOp::RegisterSwap { i: r, j: reg })?;
        }
    }

    let form = CanonicalForm { q, matrix: m, transcript };
    if !form.has_identity_block() {
        return Err(Error::Internal("canonical form lacks the identity block".into()));
    }
    Ok(form)
}
