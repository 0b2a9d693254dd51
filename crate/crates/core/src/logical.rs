//! Logical operators: a symplectic basis of `N(S)/S`, and its transfer to an
//! invariant code.
//!
//! Mod `q` the logicals are found by completing the stabilizer rows to a basis
//! of `N(S)` and running symplectic Gram–Schmidt on the complement, which
//! yields `⊙(X̄_i, Z̄_j) = δ_ij` and `⊙(X̄_i, X̄_j) = ⊙(Z̄_i, Z̄_j) = 0`.
//!
//! For an invariant code each logical `ℓ` is appended below the stabilizer
//! rows and only its own row is corrected: `ℓ' = ℓ + q·(0 | t)` with `t`
//! chosen so that `⊙(ℓ', s_i) = 0` exactly. On a canonical-form matrix this is
//! the same lower-triangular correction the embedding uses. Matrices without
//! a usable X block fall back to shifting both halves of `ℓ` by multiples of
//! `q`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{self, inv_mod, modp};
use crate::code::StabilizerCode;
use crate::embedding::{Frame, InvariantCode};
use crate::error::{Error, Result};
use crate::exact;
use crate::exact_int::ExactInt;
use crate::modp as zp;
use crate::symplectic::{exact_product, symplectic_product, Modulus, SymplecticVector};

/// Paired logical operators with their product matrix `⊙(X̄_i, Z̄_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalSet {
    pub modulus: Modulus,
    pub x_logicals: Vec<SymplecticVector>,
    pub z_logicals: Vec<SymplecticVector>,
    /// Reduced mod `q` for a prime modulus, exact otherwise.
    pub pairing: Vec<Vec<i64>>,
}

impl LogicalSet {
    pub fn len(&self) -> usize {
        self.x_logicals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_logicals.is_empty()
    }

    /// `X̄_1 … X̄_m, Z̄_1 … Z̄_m`.
    pub fn all(&self) -> impl Iterator<Item = &SymplecticVector> {
        self.x_logicals.iter().chain(&self.z_logicals)
    }
}

fn pairing(xs: &[SymplecticVector], zs: &[SymplecticVector], modulus: Modulus) -> Result<Vec<Vec<i64>>> {
    xs.iter()
        .map(|a| zs.iter().map(|b| symplectic_product(a, b, modulus)).collect())
        .collect()
}

/// Logical operators of a valid code over `Z_q`.
pub fn logical_operators(code: &StabilizerCode) -> Result<LogicalSet> {
    code.ensure_valid()?;
    let q = code.q();
    let n = code.n();
    let modulus = Modulus::Prime(q);
    let gens = code.generators();

    // v ∈ N(S)  ⟺  ⊙(v, s_i) = Σ x_v z_i − x_i z_v = 0 for all i
    let constraints: Vec<Vec<i64>> = gens
        .rows()
        .iter()
        .map(|r| r.z().iter().copied().chain(r.x().iter().map(|&v| modp(-v, q))).collect())
        .collect();
    let normalizer = zp::kernel(&constraints, 2 * n, q);

    let mut span = gens.to_flat_rows();
    let mut complement = Vec::new();
    for v in normalizer {
        if !zp::rref(&span, q).contains(&v, q) {
            span.push(v.clone());
            complement.push(SymplecticVector::from_flat(&v, modulus)?);
        }
    }
    if complement.len() != 2 * (n - code.k()) {
        return Err(Error::Internal(format!(
            "normalizer complement has dimension {}, expected {}",
            complement.len(),
            2 * (n - code.k())
        )));
    }

    let stabilizers = zp::rref(&gens.to_flat_rows(), q);
    let product = |a: &SymplecticVector, b: &SymplecticVector| symplectic_product(a, b, modulus);
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    let mut pool = complement;
    while !pool.is_empty() {
        let a = pool.remove(0);
        let mut partner = None;
        for (i, b) in pool.iter().enumerate() {
            if product(&a, b)? != 0 {
                partner = Some(i);
                break;
            }
        }
        let i = partner.ok_or_else(|| Error::Internal("degenerate logical complement".into()))?;
        let mut b = pool.remove(i);
        let c = product(&a, &b)?;
        b.scale(inv_mod(c, q).expect("nonzero mod a prime"))?;
        for c in pool.iter_mut() {
            let cb = product(c, &b)?;
            let ca = product(c, &a)?;
            c.add_scaled(&a, -cb)?;
            c.add_scaled(&b, ca)?;
        }
        xs.push(a);
        zs.push(b);
    }
    // drop stabilizer components from each representative
    let reduce = |v: &SymplecticVector| SymplecticVector::from_flat(&stabilizers.reduce(&v.to_flat(), q), modulus);
    let xs = xs.iter().map(reduce).collect::<Result<Vec<_>>>()?;
    let zs = zs.iter().map(reduce).collect::<Result<Vec<_>>>()?;

    Ok(LogicalSet {
        modulus,
        pairing: pairing(&xs, &zs, modulus)?,
        x_logicals: xs,
        z_logicals: zs,
    })
}

/// Logicals of an invariant code, exact over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantLogicals {
    /// Expressed in the same register frame as the invariant matrix.
    pub logicals: LogicalSet,
    /// The input logicals moved into that frame, still mod `q`.
    pub reference: LogicalSet,
    pub pairing_determinant: ExactInt,
    /// Primes dividing the pairing determinant: there the logicals degenerate.
    pub bad_primes: Vec<u64>,
    /// Determinant of the full `2m × 2m` product matrix of all logicals.
    pub gram_determinant: ExactInt,
}

/// Makes each logical commute exactly with the invariant stabilizer rows.
///
/// `logicals` must be the mod-`q` logicals of the code `inv` was built from,
/// in that code's register labelling. The stabilizer rows are not touched.
pub fn invariant_logicals(inv: &InvariantCode, logicals: &LogicalSet) -> Result<InvariantLogicals> {
    let q = inv.source().q;
    if logicals.modulus != Modulus::Prime(q) {
        return Err(Error::ModulusMismatch);
    }
    let stab = inv.matrix();
    let move_in = |v: &SymplecticVector| match inv.frame() {
        Frame::Canonical => inv.transcript().forward_registers(v),
        Frame::Original => v.clone(),
    };
    let reference = LogicalSet {
        modulus: logicals.modulus,
        x_logicals: logicals.x_logicals.iter().map(move_in).collect(),
        z_logicals: logicals.z_logicals.iter().map(move_in).collect(),
        pairing: logicals.pairing.clone(),
    };
    let reference_span = zp::rref(&inv.reference().to_flat_rows(), q);
    for l in reference.all() {
        if inv.reference().rows().iter().any(|s| symplectic_product(l, s, Modulus::Prime(q)) != Ok(0)) {
            return Err(Error::InvalidArgument(format!("{l} does not commute with the stabilizers mod {q}")));
        }
        if reference_span.contains(&l.to_flat(), q) {
            return Err(Error::InvalidArgument(format!("{l} lies in the stabilizer span")));
        }
    }

    // q·t added to the Z half shifts ⊙(ℓ, s_i) by −q·Σ_j x_i[j] t_j; the X
    // half is only touched when that alone cannot cancel the products
    let x_block: exact::IntMatrix = stab.rows().iter().map(|r| r.x().iter().map(|&v| BigInt::from(v)).collect()).collect();
    let full_block: exact::IntMatrix = stab
        .rows()
        .iter()
        .map(|r| r.z().iter().map(|&v| BigInt::from(v)).chain(r.x().iter().map(|&v| -BigInt::from(v))).collect())
        .collect();
    let n = stab.n();
    let correct = |l: &SymplecticVector| -> Result<SymplecticVector> {
        let lifted = l.to_integer();
        let syndrome: Vec<i64> = stab.rows().iter().map(|s| exact_product(&lifted, s)).collect::<Result<_>>()?;
        if syndrome.iter().all(|&s| s == 0) {
            return Ok(lifted);
        }
        let target: Vec<BigInt> = syndrome.iter().map(|&s| BigInt::from(s / q)).collect();
        let shift = if let Some(t) = exact::solve_integer(&x_block, n, &target) {
            [vec![BigInt::from(0); n], t].concat()
        } else {
            let negated: Vec<BigInt> = target.iter().map(|v| -v).collect();
            exact::solve_integer(&full_block, 2 * n, &negated).ok_or_else(|| {
                Error::NotApplicable(format!("{l} cannot be made to commute exactly without touching the stabilizer rows"))
            })?
        };
        let mut flat = lifted.to_flat();
        for (e, t) in flat.iter_mut().zip(&shift) {
            let t = i64::try_from(t).map_err(|_| Error::Overflow)?;
            *e = arith::checked_add(*e, arith::checked_mul(q, t)?)?;
        }
        let out = SymplecticVector::from_flat(&flat, Modulus::Integer)?;
        if stab.rows().iter().any(|s| exact_product(&out, s) != Ok(0)) {
            return Err(Error::Internal("corrected logical still fails to commute".into()));
        }
        Ok(out)
    };
    let xs = reference.x_logicals.iter().map(correct).collect::<Result<Vec<_>>>()?;
    let zs = reference.z_logicals.iter().map(correct).collect::<Result<Vec<_>>>()?;

    let pair = pairing(&xs, &zs, Modulus::Integer)?;
    let pairing_determinant = exact::determinant(&exact::to_big(&pair));
    let all: Vec<&SymplecticVector> = xs.iter().chain(&zs).collect();
    let gram: Vec<Vec<i64>> = all
        .iter()
        .map(|a| all.iter().map(|b| exact_product(a, b)).collect())
        .collect::<Result<_>>()?;
    let gram_determinant = exact::determinant(&exact::to_big(&gram));

    Ok(InvariantLogicals {
        bad_primes: arith::prime_divisors(&pairing_determinant),
        pairing_determinant: ExactInt(pairing_determinant),
        gram_determinant: ExactInt(gram_determinant),
        logicals: LogicalSet {
            modulus: Modulus::Integer,
            x_logicals: xs,
            z_logicals: zs,
            pairing: pair,
        },
        reference,
    })
}
