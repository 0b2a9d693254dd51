//! Exact integer linear algebra by fraction-free elimination.
//!
//! Everything here works on arbitrary-precision integers, so ranks and kernels
//! are the rational ones and determinants are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: IntMatrix = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Fraction-free row echelon reduction. Returns the reduced rows (each
/// divided by its content) and the pivot columns. Rows are kept in
/// Gauss–Jordan shape: pivot columns are zero outside their pivot row.
pub fn echelon(a: &[Vec<BigInt>]) -> (IntMatrix, Vec<usize>) {
    let mut m: IntMatrix = a.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let piv_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (d, s) in row.iter_mut().zip(&piv_row) {
                *d = &*d * &piv_row[c] - &f * s;
            }
            normalize(row);
        }
        normalize(&mut m[r]);
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|v| *v = &*v / &g);
    }
}

pub fn rank(a: &[Vec<BigInt>]) -> usize {
    echelon(a).1.len()
}

/// Integer basis of the rational right kernel `{v : A v = 0}`.
pub fn kernel(a: &[Vec<BigInt>], cols: usize) -> IntMatrix {
    let (e, pivots) = echelon(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            // scale so every pivot solve is integral
            let l = e
                .iter()
                .zip(&pivots)
                .fold(BigInt::one(), |l, (row, &pc)| l.lcm(&row[pc].abs()));
            let mut v = vec![BigInt::zero(); cols];
            v[f] = l.clone();
            for (row, &pc) in e.iter().zip(&pivots) {
                v[pc] = -(&row[f] * &l) / &row[pc];
            }
            normalize(&mut v);
            v
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Diagonal reduction `U · A · V = D` with unimodular `U`, `V`.
///
/// The diagonal is not normalized to Smith form (no divisibility chain);
/// that is enough for deciding integer solvability.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn diagonalize(a: &[Vec<BigInt>], cols: usize) -> Diagonalization {
    let rows = a.len();
    let mut m: IntMatrix = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let f = m[i][t].div_floor(&m[t][t]);
            for j in 0..cols {
                let s = &f * &m[t][j];
                m[i][j] -= s;
            }
            for j in 0..rows {
                let s = &f * &u[t][j];
                u[i][j] -= s;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let f = m[t][j].div_floor(&m[t][t]);
            for i in 0..rows {
                let s = &f * &m[i][t];
                m[i][j] -= s;
            }
            for i in 0..cols {
                let s = &f * &v[i][t];
                v[i][j] -= s;
            }
            clean &= m[t][j].is_zero();
        }
        if clean {
            diagonal.push(m[t][t].clone());
            t += 1;
        }
    }
    Diagonalization { u, v, diagonal }
}

/// An integer solution of `A t = c`, if one exists.
pub fn solve_integer(a: &[Vec<BigInt>], cols: usize, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = diagonalize(a, cols);
    let uc = mat_vec(&d.u, c);
    let r = d.diagonal.len();
    if uc[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..r {
        let (quot, rem) = uc[i].div_rem(&d.diagonal[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = quot;
    }
    Some(mat_vec(&d.v, &y))
}
