//! Dense verification: Paulis lifted to explicit operators on `(C^p)^{⊗n}`,
//! the joint `+1` eigenspace of a code, and example codewords.
//!
//! Basis states are indexed with register 1 as the most significant base-`p`
//! digit, so `|j_1 j_2 … j_n⟩` sits at index `Σ j_m p^{n−m}`.
//!
//! Phase convention for a lifted vector `(x | z)`: each register carries
//! `X^{x_m} Z^{z_m}` with `X|j⟩ = |j+1⟩` and `Z|j⟩ = ω^j|j⟩`, `ω = e^{2πi/p}`.
//! For odd `p` that bare product already has order `p`. For `p = 2` every
//! register with `x_m = z_m = 1` is multiplied by `i`, making the operator
//! Hermitian (`Y = iXZ`).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{self, modp};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::symplectic::SymplecticVector;

/// Default cap on `p^n`, the number of amplitudes in one state.
pub const DEFAULT_CAP: u128 = 300_000;

/// Tolerance for `U|ψ⟩ = |ψ⟩` checks.
pub const STABILIZED_TOL: f64 = 1e-10;

/// Tolerance for rounding a projector trace to an integer dimension.
pub const RANK_TOL: f64 = 1e-8;

/// Largest `p^n` for which [`codespace_dimension`] also returns a basis.
pub const BASIS_LIMIT: usize = 4096;

pub type State = Vec<Complex64>;

/// `p^n`, refusing values above `cap`.
pub fn state_dimension(p: i64, n: usize, cap: u128) -> Result<usize> {
    let dimension = u32::try_from(n)
        .ok()
        .and_then(|n| (p as u128).checked_pow(n))
        .unwrap_or(u128::MAX);
    if dimension > cap {
        return Err(Error::CapExceeded { dimension, cap });
    }
    usize::try_from(dimension).map_err(|_| Error::Overflow)
}

fn omega(p: i64, e: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * modp(e, p) as f64 / p as f64)
}

/// A lifted Pauli, stored as a monomial matrix: `U|j⟩ = coef[j]·|perm[j]⟩`.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    vector: SymplecticVector,
    p: i64,
    /// Extra overall factor from a phase adjustment, `1` by default.
    scale: Complex64,
    perm: Vec<usize>,
    coef: Vec<Complex64>,
}

/// Lifts a vector (read mod `p`) to an operator on `p^n` amplitudes.
pub fn lift(v: &SymplecticVector, p: i64, cap: u128) -> Result<DenseOperator> {
    arith::require_prime(p)?;
    let v = v.reduce_mod(p)?;
    let n = v.n();
    let dim = state_dimension(p, n, cap)?;
    let pu = p as usize;
    let qubit_phase = if p == 2 {
        let ys = (0..n).filter(|&m| v.x()[m] == 1 && v.z()[m] == 1).count();
        [Complex64::new(1.0, 0.0), Complex64::i(), Complex64::new(-1.0, 0.0), -Complex64::i()][ys % 4]
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut perm = vec![0; dim];
    let mut coef = vec![Complex64::new(0.0, 0.0); dim];
    let mut digits = vec![0usize; n];
    for j in 0..dim {
        let mut target = 0usize;
        let mut e = 0i64;
        for m in 0..n {
            let d = digits[m];
            target = target * pu + (d + v.x()[m] as usize) % pu;
            e += v.z()[m] * d as i64;
        }
        perm[j] = target;
        coef[j] = omega(p, e) * qubit_phase;
        // odometer increment, last register fastest
        for m in (0..n).rev() {
            digits[m] += 1;
            if digits[m] < pu {
                break;
            }
            digits[m] = 0;
        }
    }
    Ok(DenseOperator {
        vector: v,
        p,
        scale: Complex64::new(1.0, 0.0),
        perm,
        coef,
    })
}

impl DenseOperator {
    pub fn vector(&self) -> &SymplecticVector {
        &self.vector
    }

    pub fn dimension(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, psi: &[Complex64]) -> Result<State> {
        if psi.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                found: psi.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (j, &a) in psi.iter().enumerate() {
            out[self.perm[j]] += self.scale * self.coef[j] * a;
        }
        Ok(out)
    }

    fn apply_sparse(&self, psi: &BTreeMap<usize, Complex64>) -> BTreeMap<usize, Complex64> {
        let mut out = BTreeMap::new();
        for (&j, &a) in psi {
            *out.entry(self.perm[j]).or_insert(Complex64::new(0.0, 0.0)) += self.scale * self.coef[j] * a;
        }
        out
    }

    /// `tr(U^a)`.
    pub fn trace_power(&self, a: u32) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..self.dimension() {
            let mut at = j;
            let mut c = Complex64::new(1.0, 0.0);
            for _ in 0..a {
                c *= self.scale * self.coef[at];
                at = self.perm[at];
            }
            if at == j {
                total += c;
            }
        }
        total
    }

    /// Entry `(i, j)` of the full matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        if self.perm[j] == i {
            self.scale * self.coef[j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// `tr((1/p) Σ_a U^a)`, the dimension of the `+1` eigenspace.
    pub fn projector_trace(&self) -> Complex64 {
        (0..self.p as u32).map(|a| self.trace_power(a)).sum::<Complex64>() / self.p as f64
    }
}

/// A generator whose lift had to be rescaled by `e^{2πi·k/p}` to gain a `+1`
/// eigenspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseAdjustment {
    pub generator: usize,
    pub k: i64,
    pub trace_before: f64,
    pub trace_after: f64,
}

/// One basis amplitude of a printed codeword.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    pub ket: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodespaceCertificate {
    pub p: i64,
    pub n: usize,
    pub k: usize,
    pub trace: f64,
    pub dimension: u128,
    pub expected: u128,
    pub matches: bool,
    pub adjustments: Vec<PhaseAdjustment>,
    /// Orthonormal codewords, listed by nonzero amplitude (small cases only).
    pub codewords: Option<Vec<Vec<Amplitude>>>,
}

/// Product of the averaging projectors of a code's lifted generators.
#[derive(Debug, Clone)]
pub struct CodespaceProjector {
    p: i64,
    n: usize,
    generators: Vec<DenseOperator>,
    adjustments: Vec<PhaseAdjustment>,
}

impl CodespaceProjector {
    pub fn new(code: &StabilizerCode, cap: u128) -> Result<Self> {
        let p = code.q();
        let mut generators = Vec::with_capacity(code.k());
        let mut adjustments = Vec::new();
        for (i, row) in code.generators().rows().iter().enumerate() {
            let mut op = lift(row, p, cap)?;
            check_order(&op)?;
            let before = op.projector_trace().re;
            if before < 0.5 {
                let mut best = (0, before);
                for k in 1..p {
                    op.scale = omega(p, k);
                    let t = op.projector_trace().re;
                    if t > best.1 + 0.5 {
                        best = (k, t);
                    }
                }
                op.scale = omega(p, best.0);
                if best.1 < 0.5 {
                    return Err(Error::InvalidCode(format!("generator {i} has no +1 eigenvector under any phase")));
                }
                adjustments.push(PhaseAdjustment {
                    generator: i,
                    k: best.0,
                    trace_before: before,
                    trace_after: best.1,
                });
            }
            generators.push(op);
        }
        Ok(Self {
            p,
            n: code.n(),
            generators,
            adjustments,
        })
    }

    pub fn generators(&self) -> &[DenseOperator] {
        &self.generators
    }

    pub fn adjustments(&self) -> &[PhaseAdjustment] {
        &self.adjustments
    }

    pub fn dimension(&self) -> usize {
        self.generators.first().map_or(1, DenseOperator::dimension)
    }

    fn average(&self, op: &DenseOperator, psi: &BTreeMap<usize, Complex64>) -> BTreeMap<usize, Complex64> {
        let mut acc = psi.clone();
        let mut term = psi.clone();
        for _ in 1..self.p {
            term = op.apply_sparse(&term);
            for (&j, &a) in &term {
                *acc.entry(j).or_insert(Complex64::new(0.0, 0.0)) += a;
            }
        }
        acc.values_mut().for_each(|a| *a /= self.p as f64);
        acc.retain(|_, a| a.norm() > 1e-15);
        acc
    }

    fn project_basis(&self, j: usize) -> BTreeMap<usize, Complex64> {
        let mut psi = BTreeMap::from([(j, Complex64::new(1.0, 0.0))]);
        for g in &self.generators {
            psi = self.average(g, &psi);
        }
        psi
    }

    /// `P|ψ⟩`.
    pub fn apply(&self, psi: &[Complex64]) -> Result<State> {
        let mut out = psi.to_vec();
        for g in &self.generators {
            let mut acc = out.clone();
            let mut term = out;
            for _ in 1..self.p {
                term = g.apply(&term)?;
                acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t);
            }
            acc.iter_mut().for_each(|a| *a /= self.p as f64);
            out = acc;
        }
        Ok(out)
    }

    /// `tr P`, accumulated from `⟨j|P|j⟩` over the computational basis.
    pub fn trace(&self) -> f64 {
        (0..self.dimension())
            .map(|j| self.project_basis(j).get(&j).map_or(0.0, |a| a.re))
            .sum()
    }

    /// Orthonormal codewords by Gram–Schmidt on `P|j⟩`, in basis order.
    pub fn basis(&self, count: usize) -> Vec<State> {
        let dim = self.dimension();
        let mut out: Vec<State> = Vec::new();
        for j in 0..dim {
            if out.len() == count {
                break;
            }
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            for (i, a) in self.project_basis(j) {
                v[i] = a;
            }
            for b in &out {
                let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(b).for_each(|(y, x)| *y -= overlap * x);
            }
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                v.iter_mut().for_each(|a| *a /= norm);
                out.push(v);
            }
        }
        out
    }

    pub fn ket(&self, index: usize) -> String {
        ket_label(index, self.p, self.n)
    }
}

fn check_order(op: &DenseOperator) -> Result<()> {
    for j in 0..op.dimension() {
        let mut at = j;
        let mut c = Complex64::new(1.0, 0.0);
        for _ in 0..op.p {
            c *= op.coef[at];
            at = op.perm[at];
        }
        if at != j || (c - 1.0).norm() > 1e-9 {
            return Err(Error::Internal(format!("lift of {} does not have order {}", op.vector, op.p)));
        }
    }
    Ok(())
}

/// `|j_1 … j_n⟩` label of a basis index. Digits above 9 are comma-separated.
pub fn ket_label(index: usize, p: i64, n: usize) -> String {
    let pu = p as usize;
    let mut digits = vec![0; n];
    let mut rest = index;
    for m in (0..n).rev() {
        digits[m] = rest % pu;
        rest /= pu;
    }
    let sep = if p > 10 { "," } else { "" };
    let body: Vec<String> = digits.iter().map(usize::to_string).collect();
    format!("|{}⟩", body.join(sep))
}

fn amplitudes(v: &[Complex64], p: i64, n: usize) -> Vec<Amplitude> {
    v.iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(i, a)| Amplitude {
            ket: ket_label(i, p, n),
            re: a.re,
            im: a.im,
        })
        .collect()
}

/// Dimension of the joint `+1` eigenspace of a valid code, compared with
/// `p^{n−k}`.
pub fn codespace_dimension(code: &StabilizerCode, cap: u128) -> Result<CodespaceCertificate> {
    code.ensure_valid()?;
    let projector = CodespaceProjector::new(code, cap)?;
    let trace = projector.trace();
    let rounded = trace.round();
    if (trace - rounded).abs() > RANK_TOL || rounded < 0.0 {
        return Err(Error::Internal(format!("projector trace {trace} is not an integer")));
    }
    let dimension = rounded as u128;
    let expected = (code.q() as u128).pow((code.n() - code.k()) as u32);
    let codewords = (projector.dimension() <= BASIS_LIMIT).then(|| {
        projector
            .basis(dimension as usize)
            .iter()
            .map(|v| amplitudes(v, code.q(), code.n()))
            .collect()
    });
    Ok(CodespaceCertificate {
        p: code.q(),
        n: code.n(),
        k: code.k(),
        trace,
        dimension,
        expected,
        matches: dimension == expected,
        adjustments: projector.adjustments().to_vec(),
        codewords,
    })
}

/// `U|ψ⟩ = |ψ⟩` to [`STABILIZED_TOL`] for every generator's lift.
pub fn verify_stabilized(state: &[Complex64], code: &StabilizerCode) -> Result<bool> {
    let dim = state_dimension(code.q(), code.n(), u128::MAX)?;
    if state.len() != dim {
        return Err(Error::LengthMismatch {
            expected: dim,
            found: state.len(),
        });
    }
    for row in code.generators().rows() {
        let u = lift(row, code.q(), u128::MAX)?;
        let out = u.apply(state)?;
        let residual = out.iter().zip(state).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        if residual > STABILIZED_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(1/√q) Σ_j |j, −j mod q⟩`.
pub fn bell_codeword(q: i64) -> Result<State> {
    arith::require_prime(q)?;
    let qu = q as usize;
    let mut psi = vec![Complex64::new(0.0, 0.0); qu * qu];
    let amp = 1.0 / (q as f64).sqrt();
    for j in 0..qu {
        psi[j * qu + (qu - j) % qu] = Complex64::new(amp, 0.0);
    }
    Ok(psi)
}
