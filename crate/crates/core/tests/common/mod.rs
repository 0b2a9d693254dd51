//! Random code generators, brute-force oracles and the property checks shared
//! by the property suite and the acceptance runner.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ldi::code::standard_form;
use ldi::distance::{distance, integer_distance, DistanceMode};
use ldi::embedding::{bound_b, commutator_matrix, embed, embed_canonical, embed_css, is_css, p_star};
use ldi::{is_invariant, CodeFile, InvariantCode, Modulus, StabilizerCode, SymplecticMatrix, SymplecticVector};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !($cond) {
            return Err(format!($($fmt)+));
        }
    };
}


pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> CodeFile {
    CodeFile::read(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn md(a: i64, q: i64) -> i64 {
    a.rem_euclid(q)
}

fn inverse(a: i64, q: i64) -> i64 {
    (1..q).find(|&b| md(a * b, q) == 1).expect("unit mod a prime")
}

/// `⊙(u, v)` straight from the definition, on flat `(x | z)` slices.
pub fn product(u: &[i64], v: &[i64]) -> i64 {
    let n = u.len() / 2;
    (0..n).map(|m| u[m] * v[n + m] - v[m] * u[n + m]).sum()
}

/// Random symplectic column operation applied to every vector.
fn scramble(vs: &mut [Vec<i64>], n: usize, q: i64, rng: &mut ChaCha8Rng) {
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n.max(2))) % n;
    let c = rng.gen_range(1..q);
    // two-register mixing half the time, so codes are not mostly local
    let op = if n > 1 && rng.gen_bool(0.5) { 2 } else { rng.gen_range(0..5) };
    for v in vs.iter_mut() {
        match op {
            0 => {
                let (x, z) = (v[a], v[n + a]);
                v[a] = md(-z, q);
                v[n + a] = x;
            }
            1 if a != b => {
                v.swap(a, b);
                v.swap(n + a, n + b);
            }
            2 if a != b => {
                v[b] = md(v[b] + c * v[a], q);
                v[n + a] = md(v[n + a] - c * v[n + b], q);
            }
            3 => v[n + a] = md(v[n + a] + c * v[a], q),
            _ => {
                v[a] = md(v[a] * c, q);
                v[n + a] = md(v[n + a] * inverse(c, q), q);
            }
        }
    }
}

/// A valid `k`-generator code: the images of `X_1 … X_k` under a random
/// symplectic map, then mixed by random invertible row operations.
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, k: usize, q: i64) -> StabilizerCode {
    let mut basis: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..2 * n).map(|j| i64::from(j == i)).collect())
        .collect();
    for _ in 0..12 * n {
        scramble(&mut basis, n, q, rng);
    }
    for _ in 0..2 * k {
        let i = rng.gen_range(0..k);
        if k > 1 && rng.gen_bool(0.7) {
            let j = (i + rng.gen_range(1..k)) % k;
            let c = rng.gen_range(1..q);
            let src = basis[j].clone();
            for (a, b) in basis[i].iter_mut().zip(&src) {
                *a = md(*a + c * b, q);
            }
        } else {
            let c = rng.gen_range(1..q);
            basis[i].iter_mut().for_each(|a| *a = md(*a * c, q));
        }
    }
    StabilizerCode::from_flat_rows(n, q, &basis).expect("shapes are consistent")
}

/// A CSS code: random X checks, Z checks drawn from their kernel.
pub fn random_css_code(rng: &mut ChaCha8Rng, n: usize, q: i64) -> StabilizerCode {
    loop {
        let rx = rng.gen_range(1..n);
        let hx: Vec<Vec<i64>> = (0..rx).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        if ldi::modp::rank(&hx, q) != rx {
            continue;
        }
        let kernel = ldi::modp::kernel(&hx, n, q);
        if kernel.is_empty() {
            continue;
        }
        let rz = rng.gen_range(1..=kernel.len());
        let mut hz: Vec<Vec<i64>> = Vec::new();
        while hz.len() < rz {
            let mut row = vec![0; n];
            for kv in &kernel {
                let c = rng.gen_range(0..q);
                row.iter_mut().zip(kv).for_each(|(a, b)| *a = md(*a + c * b, q));
            }
            let mut trial = hz.clone();
            trial.push(row.clone());
            if ldi::modp::rank(&trial, q) == trial.len() {
                hz.push(row);
            }
        }
        let mut rows: Vec<Vec<i64>> = hx.iter().map(|h| [h.clone(), vec![0; n]].concat()).collect();
        rows.extend(hz.iter().map(|h| [vec![0; n], h.clone()].concat()));
        // interleave so X rows are not always first
        for i in (1..rows.len()).rev() {
            let j = rng.gen_range(0..=i);
            rows.swap(i, j);
        }
        return StabilizerCode::from_flat_rows(n, q, &rows).expect("shapes are consistent");
    }
}

/// Brute-force span membership: tries every combination of the rows.
pub fn in_span_naive(rows: &[Vec<i64>], v: &[i64], p: i64) -> bool {
    let k = rows.len();
    let total = (p as usize).pow(k as u32);
    (0..total).any(|mut idx| {
        let mut acc = vec![0; v.len()];
        for r in rows {
            let c = (idx % p as usize) as i64;
            idx /= p as usize;
            acc.iter_mut().zip(r).for_each(|(a, b)| *a = md(*a + c * b, p));
        }
        acc.iter().zip(v).all(|(a, b)| *a == md(*b, p))
    })
}

/// Distance by exhausting all of `Z_p^{2n}`, no pruning.
pub fn naive_distance(rows: &[Vec<i64>], n: usize, p: i64, exclude: bool) -> Option<usize> {
    let total = (p as usize).pow(2 * n as u32);
    let k = rows.len();
    let mut best: Option<usize> = None;
    for idx in 1..total {
        let mut v = vec![0i64; 2 * n];
        let mut rest = idx;
        for e in v.iter_mut() {
            *e = (rest % p as usize) as i64;
            rest /= p as usize;
        }
        let w = (0..n).filter(|&m| v[m] != 0 || v[n + m] != 0).count();
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        if rows.iter().any(|r| md(product(&v, r), p) != 0) {
            continue;
        }
        if exclude && k < n && in_span_naive(rows, &v, p) {
            continue;
        }
        best = Some(w);
    }
    best
}

/// Determinant by cofactor expansion, for small exact checks.
pub fn laplace_det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, &v)| v).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * a[0][c] as i128 * laplace_det(&minor)
        })
        .sum()
}

fn sample_subset(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    let mut out = all[..m].to_vec();
    out.sort_unstable();
    out
}

pub fn code_shape(rng: &mut ChaCha8Rng, max_n: usize, qs: &[i64]) -> (usize, usize, i64) {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=n);
    let q = qs[rng.gen_range(0..qs.len())];
    (n, k, q)
}

// ---------------------------------------------------------------- properties

/// Both embedding post-conditions, `B` against its bound, and the shape of
/// the commutator and `L` matrices.
pub fn prop_embedding(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k, q) = code_shape(&mut r, 6, &[2, 3, 5]);
    let code = random_code(&mut r, n, k, q);
    ensure!(code.validate().valid, "generator produced an invalid code");
    let form = standard_form(&code).map_err(|e| e.to_string())?;
    ensure!(form.has_identity_block(), "no identity block");
    let inv = embed_canonical(&form).map_err(|e| e.to_string())?;
    let m = inv.matrix();
    let flat = m.to_flat_rows();
    for i in 0..k {
        for j in 0..k {
            ensure!(product(&flat[i], &flat[j]) == 0, "rows {i},{j} do not commute exactly");
        }
    }
    ensure!(m.reduce_mod(q).unwrap() == form.matrix, "embedding does not reduce to the canonical form");
    let b = m.max_abs();
    ensure!(b == inv.max_entry(), "B mismatch");
    let bound = bound_b(n, k, q).unwrap();
    ensure!(b <= bound, "B = {b} above bound {bound}");
    ensure!(bound == (2 + (n - k) as i64 * (q - 1)) * (q - 1), "bound formula");
    let comm = commutator_matrix(&form.matrix.to_integer()).unwrap();
    let l = inv.correction();
    for i in 0..k {
        for j in 0..k {
            ensure!(comm[i][j] == -comm[j][i], "commutators not antisymmetric");
            ensure!(md(comm[i][j], q) == 0, "commutator not divisible by q");
            ensure!(if i > j { l[i][j] == comm[i][j] } else { l[i][j] == 0 }, "L not strictly lower");
        }
    }
    // embed() itself: invariant, and reduces to its reference
    let inv = embed(&code).map_err(|e| e.to_string())?;
    ensure!(is_invariant(inv.matrix()), "embed output not invariant");
    ensure!(inv.matrix().reduce_mod(q).unwrap() == *inv.reference(), "embed reference mismatch");
    ensure!(inv.instantiate(q).map(|c| c.validate().valid).unwrap_or(false), "instantiate at q failed");
    Ok(())
}

pub fn prop_product_algebra(seed: u64) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(1..=6);
    let mut vec = || -> Vec<i64> { (0..2 * n).map(|_| r.gen_range(-20..=20)).collect() };
    let (u, v, w) = (vec(), vec(), vec());
    let to = |f: &[i64]| SymplecticVector::from_flat(f, Modulus::Integer).unwrap();
    let exact = |a: &[i64], b: &[i64]| ldi::symplectic_product(&to(a), &to(b), Modulus::Integer).unwrap();
    ensure!(exact(&u, &v) == product(&u, &v), "product disagrees with definition");
    ensure!(exact(&u, &v) == -exact(&v, &u), "not antisymmetric");
    ensure!(exact(&u, &u) == 0, "self product nonzero");
    let uw: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
    ensure!(exact(&uw, &v) == exact(&u, &v) + exact(&w, &v), "not bilinear");
    for p in [2, 3, 5, 7] {
        let modp = ldi::symplectic_product(&to(&u), &to(&v), Modulus::Prime(p)).unwrap();
        ensure!(modp == md(exact(&u, &v), p), "mod-{p} reduction incompatible");
        let (ur, vr) = (to(&u).reduce_mod(p).unwrap(), to(&v).reduce_mod(p).unwrap());
        let reduced = ldi::symplectic_product(&ur, &vr, Modulus::Prime(p)).unwrap();
        ensure!(reduced == modp, "product of reduced vectors differs at p = {p}");
        // composition is the component-wise sum
        let c = ur.compose(&vr).unwrap();
        let want: Vec<i64> = u.iter().zip(&v).map(|(a, b)| md(a + b, p)).collect();
        ensure!(c.to_flat() == want, "compose is not the sum mod {p}");
    }
    Ok(())
}

/// Random row and register operations keep products zero mod `q`.
pub fn prop_elementary_ops(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k, q) = code_shape(&mut r, 6, &[2, 3, 5, 7]);
    let code = random_code(&mut r, n, k, q);
    let mut m = code.generators().clone();
    for _ in 0..10 {
        let op = r.gen_range(0..5);
        let i = r.gen_range(0..k);
        let j = r.gen_range(0..k);
        let a = r.gen_range(0..n);
        let b = r.gen_range(0..n);
        let res = match op {
            0 if i != j => m.row_add(i, j, r.gen_range(0..q)),
            1 => m.row_swap(i, j),
            2 => m.row_scale(i, r.gen_range(1..q)),
            3 => m.register_swap(a, b),
            _ => m.fourier_swap(a),
        };
        res.map_err(|e| e.to_string())?;
    }
    let flat = m.to_flat_rows();
    for x in &flat {
        for y in &flat {
            ensure!(md(product(x, y), q) == 0, "operation broke commutation mod {q}");
        }
    }
    ensure!(ldi::modp::rank(&flat, q) == k, "operation lost rank");
    Ok(())
}

/// Transcript replay reproduces the canonical matrix, which has rank `k`.
pub fn prop_standard_form(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k, q) = code_shape(&mut r, 6, &[2, 3, 5]);
    let code = random_code(&mut r, n, k, q);
    let form = standard_form(&code).map_err(|e| e.to_string())?;
    ensure!(form.has_identity_block(), "no identity block");
    let replayed = form.transcript.replay(code.generators()).unwrap();
    ensure!(replayed == form.matrix, "transcript replay differs");
    ensure!(ldi::modp::rank(&form.matrix.to_flat_rows(), q) == k, "rank changed");
    // row span check: register ops applied to the original rows give the same span
    let moved: Vec<Vec<i64>> = code
        .generators()
        .rows()
        .iter()
        .map(|v| form.transcript.forward_registers(v).to_flat())
        .collect();
    let a = ldi::modp::rref(&moved, q);
    let b = ldi::modp::rref(&form.matrix.to_flat_rows(), q);
    ensure!(a.rows == b.rows, "row spans differ");
    let again = standard_form(&form.code().unwrap()).unwrap();
    ensure!(again.matrix == form.matrix && again.transcript.is_empty(), "not idempotent");
    Ok(())
}

/// `validate` against a brute-force oracle after a random one-entry change.
pub fn prop_validate_perturbed(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k, q) = code_shape(&mut r, 4, &[2, 3, 5]);
    let code = random_code(&mut r, n, k, q);
    let mut rows = code.generators().to_flat_rows();
    let i = r.gen_range(0..k);
    let j = r.gen_range(0..2 * n);
    rows[i][j] = md(rows[i][j] + r.gen_range(1..q), q);
    let commuting = rows.iter().all(|a| rows.iter().all(|b| md(product(a, b), q) == 0));
    let independent = (1..(q as usize).pow(k as u32)).all(|mut idx| {
        let mut acc = vec![0; 2 * n];
        for row in &rows {
            let c = (idx % q as usize) as i64;
            idx /= q as usize;
            acc.iter_mut().zip(row).for_each(|(a, b)| *a = md(*a + c * b, q));
        }
        acc.iter().any(|&a| a != 0)
    });
    let report = StabilizerCode::from_flat_rows(n, q, &rows).unwrap().validate();
    ensure!(report.commuting == commuting, "commutation verdict wrong");
    ensure!((report.rank_deficiency == 0) == independent, "independence verdict wrong");
    ensure!(report.valid == (commuting && independent), "overall verdict wrong");
    Ok(())
}

/// `|det|` of random `2(d−1)`-minors of embedded syndrome matrices stays
/// below `B^{2(d−1)} (2(d−1))^{d−1}`.
pub fn prop_hadamard_minor(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k, q) = code_shape(&mut r, 6, &[2, 3, 5]);
    let k = k.max(2.min(n));
    let code = random_code(&mut r, n, k, q);
    let inv = embed(&code).map_err(|e| e.to_string())?;
    let flat = inv.matrix().to_flat_rows();
    // syndrome columns: register m gives (z_i[m]) and (−x_i[m])
    let synd: Vec<Vec<i64>> = flat
        .iter()
        .map(|row| (0..n).flat_map(|m| [row[n + m], -row[m]]).collect())
        .collect();
    let max_m = k.min(2 * n) / 2;
    if max_m == 0 {
        return Ok(());
    }
    let d_minus_1 = r.gen_range(1..=max_m);
    let size = 2 * d_minus_1;
    let rs = sample_subset(&mut r, k, size);
    let cs = sample_subset(&mut r, 2 * n, size);
    let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| synd[i][j]).collect()).collect();
    let det = laplace_det(&minor).unsigned_abs();
    let b = inv.max_entry().max(1);
    let bound = p_star(b, d_minus_1 + 1).unwrap();
    ensure!(num_bigint::BigInt::from(det) <= bound, "|det| = {det} exceeds {bound}");
    let lib = ldi::distance::syndrome_minor(inv.matrix(), &rs, &cs);
    ensure!(lib == num_bigint::BigInt::from(det), "library minor {lib} differs from {det}");
    Ok(())
}

/// Pruned search against full enumeration, both modes, `n ≤ 4`, `p ≤ 3`.
pub fn prop_distance_oracle(seed: u64) -> Check {
    let mut r = rng(seed);
    // near-full codes have the larger distances
    let n = r.gen_range(2..=4);
    let k = if r.gen_bool(0.7) { r.gen_range(n - 1..=n) } else { r.gen_range(1..=n) };
    let q = [2, 3][r.gen_range(0..2)];
    let code = random_code(&mut r, n, k, q);
    let rows = code.generators().to_flat_rows();
    for (mode, exclude) in [(DistanceMode::ExcludeStabilizer, true), (DistanceMode::KernelOnly, false)] {
        let fast = distance(&code, n, mode).map_err(|e| e.to_string())?;
        let slow = naive_distance(&rows, n, q, exclude);
        ensure!(fast.distance == slow, "{mode:?}: pruned {:?} vs naive {slow:?}", fast.distance);
        if let Some(w) = &fast.witness {
            ensure!(Some(w.weight()) == fast.distance, "witness weight");
            ensure!(rows.iter().all(|r| md(product(&w.to_flat(), r), q) == 0), "witness detectable");
            if exclude && k < n {
                ensure!(!in_span_naive(&rows, &w.to_flat(), q), "witness in the stabilizer span");
            }
        }
    }
    let kernel = distance(&code, n, DistanceMode::KernelOnly).unwrap().distance;
    let excl = distance(&code, n, DistanceMode::ExcludeStabilizer).unwrap().distance;
    ensure!(kernel.unwrap_or(usize::MAX) <= excl.unwrap_or(usize::MAX), "kernel-only above exclude mode");
    Ok(())
}

/// Distance at `p` in kernel mode never exceeds the literal `d*` of an
/// invariant code.
pub fn prop_dstar_bounds_distance(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k, q) = code_shape(&mut r, 4, &[2, 3]);
    let code = random_code(&mut r, n, k, q);
    let inv = embed(&code).map_err(|e| e.to_string())?;
    let dstar = integer_distance(inv.matrix(), n).map_err(|e| e.to_string())?;
    if let Some(w) = &dstar.literal.witness {
        ensure!(inv.matrix().rows().iter().all(|s| product(&w.to_flat(), &s.to_flat()) == 0), "d* witness not exact");
    }
    for p in [2, 3, 5] {
        let at_p = ldi::distance::distance_of_matrix(inv.matrix(), p, n, DistanceMode::KernelOnly).unwrap();
        ensure!(
            at_p.distance.unwrap_or(usize::MAX) <= dstar.literal.distance.unwrap_or(usize::MAX),
            "p = {p}: distance {:?} above d* {:?}",
            at_p.distance,
            dstar.literal.distance
        );
    }
    Ok(())
}

/// CSS codes stay CSS through `embed_css`, and still generate the same group
/// mod `q`.
pub fn prop_css_preserved(seed: u64) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(2..=6);
    let q = [2, 3, 5][r.gen_range(0..3)];
    let code = random_css_code(&mut r, n, q);
    ensure!(code.validate().valid, "generator produced an invalid CSS code");
    ensure!(is_css(&code).is_some(), "generator output not CSS");
    let inv = embed_css(&code).map_err(|e| e.to_string())?;
    ensure!(is_invariant(inv.matrix()), "not invariant");
    ensure!(ldi::embedding::css_partition(inv.matrix()).is_some(), "CSS structure lost");
    let reduced = inv.matrix().reduce_mod(q).unwrap();
    ensure!(reduced == *inv.reference(), "does not reduce to its reference");
    let a = ldi::modp::rref(&reduced.to_flat_rows(), q);
    let b = ldi::modp::rref(&code.generators().to_flat_rows(), q);
    ensure!(a.rows == b.rows, "stabilizer group changed mod {q}");
    Ok(())
}

/// Fixtures whose generators are invariant, with their names.
pub fn invariant_fixtures() -> Vec<(&'static str, InvariantCode)> {
    let mut out = Vec::new();
    for name in ["bell_invariant.code", "fourtwotwo_prime.code", "five_qubit.code"] {
        let f = load(name);
        out.push((name, InvariantCode::from_integer_matrix(f.matrix.to_integer(), f.q).unwrap()));
    }
    out.push(("steane.code (embedded)", embed(&load("steane.code").code().unwrap()).unwrap()));
    out.push(("steane_standard.code (embedded)", embed(&load("steane_standard.code").code().unwrap()).unwrap()));
    out
}

/// `d ≤ d*` for both variants at several primes on every invariant fixture.
pub fn check_dstar_fixtures() -> Check {
    for (name, inv) in invariant_fixtures() {
        let n = inv.n();
        let w = n.min(4);
        let dstar = integer_distance(inv.matrix(), w).map_err(|e| e.to_string())?;
        for p in [2, 3, 5, 7] {
            let code = match inv.instantiate(p) {
                Ok(c) => c,
                Err(e) => return Err(format!("{name} at {p}: {e}")),
            };
            let top = w.min(3);
            let kern = distance(&code, top, DistanceMode::KernelOnly).unwrap().distance;
            let excl = distance(&code, top, DistanceMode::ExcludeStabilizer).unwrap().distance;
            let lit = dstar.literal.distance;
            let ex = dstar.excluding_span.distance;
            ensure!(kern.is_some() || lit.is_none_or(|d| d > top), "{name} p={p}: no kernel error up to {top} but d* = {lit:?}");
            if let (Some(a), Some(b)) = (kern, lit) {
                ensure!(a <= b, "{name} p={p}: kernel distance {a} > d* {b}");
            }
            if let (Some(a), Some(b)) = (excl, ex) {
                ensure!(a <= b, "{name} p={p}: distance {a} > d* (excluding span) {b}");
            }
        }
    }
    Ok(())
}

pub fn matrix(n: usize, modulus: Modulus, rows: &[Vec<i64>]) -> SymplecticMatrix {
    SymplecticMatrix::from_flat_rows(n, modulus, rows).unwrap()
}
