//! Dense linear algebra over `Z_p` on plain row vectors.

use crate::arith::{inv_mod, modp};

/// Reduced row echelon form of a matrix over `Z_p`.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the echelon rows; the result is zero iff `v` lies
    /// in the row span.
    pub fn reduce(&self, v: &[i64], p: i64) -> Vec<i64> {
        let mut out: Vec<i64> = v.iter().map(|&a| modp(a, p)).collect();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let f = out[c];
            if f != 0 {
                for (o, &a) in out.iter_mut().zip(r) {
                    *o = modp(*o - f * a, p);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[i64], p: i64) -> bool {
        self.reduce(v, p).iter().all(|&a| a == 0)
    }
}

pub fn rref(rows: &[Vec<i64>], p: i64) -> Rref {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&a| modp(a, p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p).expect("nonzero entry of a prime field");
        for a in m[r].iter_mut() {
            *a = modp(*a * inv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, &s) in dst.iter_mut().zip(src.iter()) {
                    *d = modp(*d - f * s, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

pub fn rank(rows: &[Vec<i64>], p: i64) -> usize {
    rref(rows, p).rank()
}

/// Basis of the right kernel `{v : A v ≡ 0}` of a matrix with `cols` columns.
pub fn kernel(rows: &[Vec<i64>], cols: usize, p: i64) -> Vec<Vec<i64>> {
    let e = rref(rows, p);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = modp(-r[f], p);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(a: &[Vec<i64>], v: &[i64], p: i64) -> Vec<i64> {
        a.iter()
            .map(|r| modp(r.iter().zip(v).map(|(x, y)| x * y).sum(), p))
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&a, 7), 2);
        let k = kernel(&a, 3, 7);
        assert_eq!(k.len(), 1);
        assert_eq!(mat_vec(&a, &k[0], 7), vec![0, 0, 0]);
    }

    #[test]
    fn span_membership() {
        let a = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let e = rref(&a, 2);
        assert!(e.contains(&[1, 1, 0], 2));
        assert!(!e.contains(&[1, 0, 0], 2));
    }

    #[test]
    fn rank_depends_on_prime() {
        let a = vec![vec![1, 1], vec![1, -2]];
        assert_eq!(rank(&a, 3), 1);
        assert_eq!(rank(&a, 5), 2);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(rank(&[], 3), 0);
        assert_eq!(kernel(&[], 2, 3).len(), 2);
    }
}
