//! Generalized Paulis as symplectic vectors, the symplectic product, and the
//! elementary row and register operations on generator matrices.
//!
//! A Pauli `⊗_m X^{a_m} Z^{b_m}` (global phase dropped) is stored as the pair
//! of exponent vectors `(x | z) = (a_1 … a_n | b_1 … b_n)`. Entries are either
//! reduced into `{0, …, p−1}` for a prime modulus `p`, or kept as arbitrary
//! signed integers for [`Modulus::Integer`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, inv_mod, modp};
use crate::error::{Error, Result};

/// Where vector entries live: `Z_p` for a prime `p`, or the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modulus {
    Prime(i64),
    Integer,
}

impl Modulus {
    /// Checked constructor for a prime modulus.
    pub fn prime(p: i64) -> Result<Self> {
        arith::require_prime(p).map(Modulus::Prime)
    }

    pub fn as_prime(self) -> Option<i64> {
        match self {
            Modulus::Prime(p) => Some(p),
            Modulus::Integer => None,
        }
    }

    #[inline]
    fn reduce(self, v: i64) -> i64 {
        match self {
            Modulus::Prime(p) => modp(v, p),
            Modulus::Integer => v,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Prime(p) => write!(f, "{p}"),
            Modulus::Integer => f.write_str("integer"),
        }
    }
}

/// A generalized Pauli on `n` registers, up to global phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "VectorRepr", into = "VectorRepr")]
pub struct SymplecticVector {
    x: Vec<i64>,
    z: Vec<i64>,
    modulus: Modulus,
}

impl SymplecticVector {
    /// Builds a vector, rejecting entries outside `{0, …, p−1}` for a prime
    /// modulus.
    pub fn new(x: Vec<i64>, z: Vec<i64>, modulus: Modulus) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::InvalidArgument("a Pauli needs at least one register".into()));
        }
        if let Modulus::Prime(p) = modulus {
            arith::require_prime(p)?;
            if let Some(&bad) = x.iter().chain(&z).find(|&&v| v < 0 || v >= p) {
                return Err(Error::EntryOutOfRange { value: bad, modulus: p });
            }
        }
        Ok(Self { x, z, modulus })
    }

    /// Builds a vector, reducing entries into range for a prime modulus.
    pub fn reduced(x: Vec<i64>, z: Vec<i64>, modulus: Modulus) -> Result<Self> {
        let x = x.into_iter().map(|v| modulus.reduce(v)).collect();
        let z = z.into_iter().map(|v| modulus.reduce(v)).collect();
        Self::new(x, z, modulus)
    }

    /// All-identity vector.
    pub fn zero(n: usize, modulus: Modulus) -> Self {
        Self {
            x: vec![0; n],
            z: vec![0; n],
            modulus,
        }
    }

    /// Builds an integer vector from a flat `(x | z)` slice of length `2n`.
    pub fn from_flat(flat: &[i64], modulus: Modulus) -> Result<Self> {
        if !flat.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "flat symplectic row has odd length {}",
                flat.len()
            )));
        }
        let n = flat.len() / 2;
        Self::reduced(flat[..n].to_vec(), flat[n..].to_vec(), modulus)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[i64] {
        &self.x
    }

    pub fn z(&self) -> &[i64] {
        &self.z
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Register `m` as an `(x, z)` exponent pair.
    pub fn register(&self, m: usize) -> (i64, i64) {
        (self.x[m], self.z[m])
    }

    /// `(x | z)` concatenated.
    pub fn to_flat(&self) -> Vec<i64> {
        self.x.iter().chain(&self.z).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Number of registers carrying a non-identity factor.
    pub fn weight(&self) -> usize {
        (0..self.n()).filter(|&m| self.x[m] != 0 || self.z[m] != 0).count()
    }

    /// Registers carrying a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&m| self.x[m] != 0 || self.z[m] != 0).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> i64 {
        self.x.iter().chain(&self.z).map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Entry-wise reduction into `Z_p`.
    pub fn reduce_mod(&self, p: i64) -> Result<Self> {
        Self::reduced(self.x.clone(), self.z.clone(), Modulus::prime(p)?)
    }

    /// Reinterprets the entries as integers (representatives `0..p` for a
    /// prime modulus).
    pub fn to_integer(&self) -> Self {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            modulus: Modulus::Integer,
        }
    }

    /// Component-wise sum, i.e. the vector of the composed Pauli.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, c: i64) -> Result<()> {
        let m = self.modulus;
        for (a, b) in self.x.iter_mut().zip(&other.x).chain(self.z.iter_mut().zip(&other.z)) {
            let v = match m {
                Modulus::Prime(p) => modp(*a + modp(c, p) * b, p),
                Modulus::Integer => arith::checked_add(*a, arith::checked_mul(c, *b)?)?,
            };
            *a = v;
        }
        Ok(())
    }

    pub(crate) fn scale(&mut self, c: i64) -> Result<()> {
        let m = self.modulus;
        for a in self.x.iter_mut().chain(self.z.iter_mut()) {
            *a = match m {
                Modulus::Prime(p) => modp(*a * modp(c, p), p),
                Modulus::Integer => arith::checked_mul(*a, c)?,
            };
        }
        Ok(())
    }

    /// `(x_m, z_m) ↦ (−z_m, x_m)`.
    pub(crate) fn fourier(&mut self, m: usize) {
        let (x, z) = (self.x[m], self.z[m]);
        self.x[m] = self.modulus.reduce(-z);
        self.z[m] = x;
    }

    /// Inverse of [`Self::fourier`]: `(x_m, z_m) ↦ (z_m, −x_m)`.
    pub(crate) fn fourier_inverse(&mut self, m: usize) {
        let (x, z) = (self.x[m], self.z[m]);
        self.x[m] = z;
        self.z[m] = self.modulus.reduce(-x);
    }

    pub(crate) fn swap_registers(&mut self, i: usize, j: usize) {
        self.x.swap(i, j);
        self.z.swap(i, j);
    }

    pub(crate) fn set_z(&mut self, m: usize, v: i64) {
        self.z[m] = self.modulus.reduce(v);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(())
    }
}

/// Encodes per-register exponents `(a_m, b_m)` of `⊗ X^{a_m} Z^{b_m}` into a
/// vector over `Z_q`. Phases are not represented.
pub fn phi_encode(exponents: &[(i64, i64)], q: i64) -> Result<SymplecticVector> {
    let modulus = Modulus::prime(q)?;
    let (x, z) = exponents.iter().copied().unzip();
    SymplecticVector::reduced(x, z, modulus)
}

/// Same as [`phi_encode`] but keeps the raw integer exponents.
pub fn phi_encode_integer(exponents: &[(i64, i64)]) -> Result<SymplecticVector> {
    let (x, z) = exponents.iter().copied().unzip();
    SymplecticVector::new(x, z, Modulus::Integer)
}

/// Renders a vector back as a Pauli string.
///
/// Qubit vectors print as contiguous letters (`XZZXI`, with `Y` for `(1, 1)`).
/// Other primes print space-separated tokens such as `X2Z`, and integer vectors
/// use braced exponents (`X X^{-1}`).
pub fn phi_decode(v: &SymplecticVector) -> String {
    v.to_string()
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qubit = self.modulus == Modulus::Prime(2);
        let tokens: Vec<String> = (0..self.n())
            .map(|m| {
                let (a, b) = self.register(m);
                match self.modulus {
                    Modulus::Prime(2) => match (a, b) {
                        (0, 0) => "I".into(),
                        (1, 0) => "X".into(),
                        (0, 1) => "Z".into(),
                        _ => "Y".into(),
                    },
                    Modulus::Prime(_) => render_token(a, b, |e| e.to_string()),
                    Modulus::Integer => render_token(a, b, |e| format!("^{{{e}}}")),
                }
            })
            .collect();
        if qubit {
            f.write_str(&tokens.concat())
        } else {
            f.write_str(&tokens.join(" "))
        }
    }
}

fn render_token(a: i64, b: i64, exp: impl Fn(i64) -> String) -> String {
    if a == 0 && b == 0 {
        return "I".into();
    }
    let mut s = String::new();
    for (letter, e) in [('X', a), ('Z', b)] {
        if e != 0 {
            s.push(letter);
            if e != 1 {
                s.push_str(&exp(e));
            }
        }
    }
    s
}

/// `⊙(u, v) = Σ_m x_u[m]·z_v[m] − x_v[m]·z_u[m]`, reduced into `Z_p` for a
/// prime modulus and exact otherwise.
///
/// With this orientation `⊙(XX, ZZ) = +2` over the integers.
pub fn symplectic_product(u: &SymplecticVector, v: &SymplecticVector, modulus: Modulus) -> Result<i64> {
    if u.n() != v.n() {
        return Err(Error::LengthMismatch {
            expected: u.n(),
            found: v.n(),
        });
    }
    let exact = exact_product(u, v)?;
    Ok(match modulus {
        Modulus::Prime(p) => modp(exact, p),
        Modulus::Integer => exact,
    })
}

/// Exact integer product of the stored entries; callers guarantee equal `n`.
pub(crate) fn exact_product(u: &SymplecticVector, v: &SymplecticVector) -> Result<i64> {
    let mut acc: i128 = 0;
    for m in 0..u.n() {
        acc += u.x[m] as i128 * v.z[m] as i128 - v.x[m] as i128 * u.z[m] as i128;
    }
    arith::narrow(acc)
}

/// One recorded elementary operation. Row and register indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ElementaryOp {
    /// `row[target] += factor · row[source]`
    RowAdd { target: usize, source: usize, factor: i64 },
    RowSwap { i: usize, j: usize },
    RowScale { row: usize, factor: i64 },
    /// Relabel registers `i` and `j`.
    RegisterSwap { i: usize, j: usize },
    /// `(x, z) ↦ (−z, x)` on one register.
    FourierSwap { register: usize },
}

impl ElementaryOp {
    pub fn is_register_op(&self) -> bool {
        matches!(self, ElementaryOp::RegisterSwap { .. } | ElementaryOp::FourierSwap { .. })
    }
}

/// Ordered log of elementary operations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub ops: Vec<ElementaryOp>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    /// Re-applies every operation to a copy of `m`.
    pub fn replay(&self, m: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        let mut out = m.clone();
        for op in &self.ops {
            out.apply(*op)?;
        }
        Ok(out)
    }

    /// Applies only the register operations, in order, to a single vector.
    pub fn forward_registers(&self, v: &SymplecticVector) -> SymplecticVector {
        let mut out = v.clone();
        for op in &self.ops {
            match *op {
                ElementaryOp::RegisterSwap { i, j } => out.swap_registers(i, j),
                ElementaryOp::FourierSwap { register } => out.fourier(register),
                _ => {}
            }
        }
        out
    }

    /// Undoes the register operations on a single vector, returning it to the
    /// frame the transcript started from.
    pub fn invert_registers(&self, v: &SymplecticVector) -> SymplecticVector {
        let mut out = v.clone();
        for op in self.ops.iter().rev() {
            match *op {
                ElementaryOp::RegisterSwap { i, j } => out.swap_registers(i, j),
                ElementaryOp::FourierSwap { register } => out.fourier_inverse(register),
                _ => {}
            }
        }
        out
    }
}

/// An ordered list of rows sharing `n` and the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct SymplecticMatrix {
    n: usize,
    modulus: Modulus,
    rows: Vec<SymplecticVector>,
}

impl SymplecticMatrix {
    pub fn new(n: usize, modulus: Modulus, rows: Vec<SymplecticVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if let Modulus::Prime(p) = modulus {
            arith::require_prime(p)?;
        }
        for r in &rows {
            if r.n() != n {
                return Err(Error::LengthMismatch { expected: n, found: r.n() });
            }
            if r.modulus() != modulus {
                return Err(Error::ModulusMismatch);
            }
        }
        if rows.len() > 2 * n {
            return Err(Error::TooManyRows { rows: rows.len(), n });
        }
        Ok(Self { n, modulus, rows })
    }

    /// Builds from flat `(x | z)` rows, reducing for a prime modulus.
    pub fn from_flat_rows(n: usize, modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                if r.len() != 2 * n {
                    return Err(Error::LengthMismatch {
                        expected: 2 * n,
                        found: r.len(),
                    });
                }
                SymplecticVector::from_flat(r, modulus)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, modulus, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> &[SymplecticVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SymplecticVector {
        &self.rows[i]
    }

    pub fn to_flat_rows(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(SymplecticVector::to_flat).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> i64 {
        self.rows.iter().map(SymplecticVector::max_abs).max().unwrap_or(0)
    }

    pub fn reduce_mod(&self, p: i64) -> Result<Self> {
        let rows = self.rows.iter().map(|r| r.reduce_mod(p)).collect::<Result<Vec<_>>>()?;
        Self::new(self.n, Modulus::Prime(p), rows)
    }

    pub fn to_integer(&self) -> Self {
        Self {
            n: self.n,
            modulus: Modulus::Integer,
            rows: self.rows.iter().map(SymplecticVector::to_integer).collect(),
        }
    }

    /// Appends a row; used to stack logical operators under stabilizers.
    pub fn push(&mut self, row: SymplecticVector) -> Result<()> {
        if row.n() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: row.n() });
        }
        if row.modulus() != self.modulus {
            return Err(Error::ModulusMismatch);
        }
        self.rows.push(row);
        Ok(())
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.rows.len() {
            Err(Error::IndexOutOfRange { index: i, len: self.rows.len() })
        } else {
            Ok(())
        }
    }

    fn check_register(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::IndexOutOfRange { index: i, len: self.n })
        } else {
            Ok(())
        }
    }

    /// Applies one elementary operation in place.
    pub fn apply(&mut self, op: ElementaryOp) -> Result<()> {
        match op {
            ElementaryOp::RowAdd { target, source, factor } => {
                self.check_row(target)?;
                self.check_row(source)?;
                if target == source {
                    return Err(Error::InvalidArgument("row_add needs distinct rows".into()));
                }
                let src = self.rows[source].clone();
                self.rows[target].add_scaled(&src, factor)
            }
            ElementaryOp::RowSwap { i, j } => {
                self.check_row(i)?;
                self.check_row(j)?;
                self.rows.swap(i, j);
                Ok(())
            }
            ElementaryOp::RowScale { row, factor } => {
                self.check_row(row)?;
                let invertible = match self.modulus {
                    Modulus::Prime(p) => inv_mod(factor, p).is_some(),
                    Modulus::Integer => factor == 1 || factor == -1,
                };
                if !invertible {
                    return Err(Error::NotInvertible {
                        factor,
                        modulus: self.modulus.as_prime().unwrap_or(0),
                    });
                }
                self.rows[row].scale(factor)
            }
            ElementaryOp::RegisterSwap { i, j } => {
                self.check_register(i)?;
                self.check_register(j)?;
                self.rows.iter_mut().for_each(|r| r.swap_registers(i, j));
                Ok(())
            }
            ElementaryOp::FourierSwap { register } => {
                self.check_register(register)?;
                self.rows.iter_mut().for_each(|r| r.fourier(register));
                Ok(())
            }
        }
    }

    pub fn row_add(&mut self, target: usize, source: usize, factor: i64) -> Result<()> {
        self.apply(ElementaryOp::RowAdd { target, source, factor })
    }

    pub fn row_swap(&mut self, i: usize, j: usize) -> Result<()> {
        self.apply(ElementaryOp::RowSwap { i, j })
    }

    pub fn row_scale(&mut self, row: usize, factor: i64) -> Result<()> {
        self.apply(ElementaryOp::RowScale { row, factor })
    }

    pub fn register_swap(&mut self, i: usize, j: usize) -> Result<()> {
        self.apply(ElementaryOp::RegisterSwap { i, j })
    }

    pub fn fourier_swap(&mut self, register: usize) -> Result<()> {
        self.apply(ElementaryOp::FourierSwap { register })
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [SymplecticVector] {
        &mut self.rows
    }
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    modulus: Modulus,
    x: Vec<i64>,
    z: Vec<i64>,
}

impl From<SymplecticVector> for VectorRepr {
    fn from(v: SymplecticVector) -> Self {
        Self { modulus: v.modulus, x: v.x, z: v.z }
    }
}

impl TryFrom<VectorRepr> for SymplecticVector {
    type Error = Error;
    fn try_from(r: VectorRepr) -> Result<Self> {
        SymplecticVector::new(r.x, r.z, r.modulus)
    }
}

/// Matrices serialize as flat `(x | z)` rows.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    modulus: Modulus,
    rows: Vec<Vec<i64>>,
}

impl From<SymplecticMatrix> for MatrixRepr {
    fn from(m: SymplecticMatrix) -> Self {
        Self {
            n: m.n,
            modulus: m.modulus,
            rows: m.to_flat_rows(),
        }
    }
}

impl TryFrom<MatrixRepr> for SymplecticMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        if let Some(bad) = r.rows.iter().find(|row| row.len() != 2 * r.n) {
            return Err(Error::LengthMismatch {
                expected: 2 * r.n,
                found: bad.len(),
            });
        }
        if let Modulus::Prime(p) = r.modulus {
            if let Some(&bad) = r.rows.iter().flatten().find(|&&v| v < 0 || v >= p) {
                return Err(Error::EntryOutOfRange { value: bad, modulus: p });
            }
        }
        SymplecticMatrix::from_flat_rows(r.n, r.modulus, &r.rows)
    }
}

impl fmt::Display for SymplecticMatrix {
    /// One row per line, `x … | z …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let xs: Vec<String> = r.x().iter().map(i64::to_string).collect();
            let zs: Vec<String> = r.z().iter().map(i64::to_string).collect();
            write!(f, "{} | {}", xs.join(" "), zs.join(" "))?;
        }
        Ok(())
    }
}
