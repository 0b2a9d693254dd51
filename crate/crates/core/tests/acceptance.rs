//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

#[macro_use]
mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::{load, product, Check};
use ldi::distance::{classify, distance, distance_of_matrix, enumerate_undetectable, DistanceMode, Verdict};
use ldi::embedding::{bound_b, commutator_matrix, embed, lower_correction, p_star, Frame, InvariantCode};
use ldi::logical::{invariant_logicals, logical_operators};
use ldi::state::{bell_codeword, codespace_dimension, verify_stabilized, CodespaceProjector, DEFAULT_CAP};
use ldi::{is_invariant, parse_pauli_string, Modulus, StabilizerCode};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const SMALL_PRIME_LIMIT: Duration = Duration::from_secs(10);
const P7_LIMIT: Duration = Duration::from_secs(300);
const FIVE_QUBIT_LIMIT: Duration = Duration::from_secs(60);
const AMPLITUDE_TOL: f64 = 1e-10;
const PROPERTY_CASES: u32 = 200;

type Outcome = Result<String, String>;

fn steane_printed_invariant() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0],
        vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0],
        vec![0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0],
        vec![0, 0, 0, 1, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 1, 0, 0, 0, 1, -1, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0],
    ]
}

fn sparse(k: usize, entries: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; k]; k];
    for &(i, j, v) in entries {
        m[i][j] = v;
    }
    m
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn steane_golden() -> Outcome {
    let start = Instant::now();
    let code = load("steane_standard.code").code().map_err(e)?;
    let comm = commutator_matrix(&code.generators().to_integer()).map_err(e)?;
    ensure!(comm == sparse(6, &[(0, 3, 2), (2, 4, 2), (3, 0, -2), (4, 2, -2)]), "commutators {comm:?}");
    let l = lower_correction(&comm);
    ensure!(l == sparse(6, &[(3, 0, -2), (4, 2, -2)]), "L {l:?}");
    let inv = embed(&code).map_err(e)?;
    ensure!(inv.matrix().to_flat_rows() == steane_printed_invariant(), "invariant matrix\n{}", inv.matrix());
    ensure!(inv.correction() == l.as_slice(), "embed used a different L");
    let elapsed = start.elapsed();
    ensure!(elapsed < GOLDEN_LIMIT, "took {elapsed:?}");
    Ok(format!("[⊙], L and invariant matrix match entry for entry in {elapsed:.2?}"))
}

fn steane_bounds() -> Outcome {
    let inv = embed(&load("steane_standard.code").code().map_err(e)?).map_err(e)?;
    let b = inv.max_entry();
    ensure!(b == 1, "B = {b}");
    let ps = p_star(b, 3).map_err(e)?;
    ensure!(ps == BigInt::from(16), "p* = {ps}");
    let bound = bound_b(7, 6, 2).map_err(e)?;
    ensure!(bound == 3 && bound >= b, "bound_B = {bound}");
    Ok(format!("B = {b}, p* = {ps}, bound_B(7,6,2) = {bound}"))
}

fn distance_at(inv: &InvariantCode, p: i64, w: usize) -> Result<(Option<usize>, Duration), String> {
    let start = Instant::now();
    let code = inv.instantiate(p).map_err(e)?;
    let d = distance(&code, w, DistanceMode::ExcludeStabilizer).map_err(e)?.distance;
    Ok((d, start.elapsed()))
}

fn steane_distance() -> Outcome {
    let printed = InvariantCode::from_integer_matrix(
        common::matrix(7, Modulus::Integer, &steane_printed_invariant()),
        2,
    )
    .map_err(e)?;
    let from_hamming = embed(&load("steane.code").code().map_err(e)?).map_err(e)?;
    let mut detail = Vec::new();
    for (label, inv) in [("printed form", &printed), ("embedded Hamming form", &from_hamming)] {
        for p in [2, 3, 5, 7] {
            let (d, t) = distance_at(inv, p, 3)?;
            ensure!(d == Some(3), "{label}: distance {d:?} at p = {p}");
            let limit = if p <= 5 { SMALL_PRIME_LIMIT } else { P7_LIMIT };
            ensure!(t < limit, "{label}: p = {p} took {t:?}");
            detail.push(format!("p={p} {t:.1?}"));
        }
    }
    Ok(format!("d = 3 for both forms ({})", detail.join(", ")))
}

fn five_qubit() -> Outcome {
    let start = Instant::now();
    let code = load("five_qubit.code").code().map_err(e)?;
    let integer = code.generators().to_integer();
    ensure!(is_invariant(&integer), "generators do not commute exactly");
    let inv = embed(&code).map_err(e)?;
    ensure!(*inv.matrix() == integer, "embed changed the matrix");
    ensure!(inv.frame() == Frame::Original && inv.transcript().is_empty(), "embed moved registers");
    ensure!(inv.correction().iter().flatten().all(|&v| v == 0), "nonzero correction");
    for p in [2, 3, 5] {
        let (d, _) = distance_at(&inv, p, 3)?;
        ensure!(d == Some(3), "distance {d:?} at p = {p}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < FIVE_QUBIT_LIMIT, "took {elapsed:?}");
    Ok(format!("unchanged, d = 3 at p = 2, 3, 5 in {elapsed:.2?}"))
}

fn amp(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm()
}

fn bell() -> Outcome {
    let qubit = load("bell.code").code().map_err(e)?;
    ensure!(qubit.validate().valid, "<XX, ZZ> invalid at p = 2");
    let cert = codespace_dimension(&qubit, DEFAULT_CAP).map_err(e)?;
    ensure!(cert.dimension == 1, "dimension {} at p = 2", cert.dimension);
    let h = 1.0 / 2f64.sqrt();
    let phi_plus = vec![amp(h), amp(0.0), amp(0.0), amp(h)];
    let word = &CodespaceProjector::new(&qubit, DEFAULT_CAP).map_err(e)?.basis(1)[0];
    ensure!((overlap(word, &phi_plus) - 1.0).abs() < AMPLITUDE_TOL, "qubit codeword {word:?}");
    ensure!(verify_stabilized(&phi_plus, &qubit).map_err(e)?, "(|00> + |11>)/√2 not stabilized");

    let f = load("bell_invariant.code");
    let inv = f.invariant().map_err(e)?;
    ensure!(is_invariant(inv.matrix()), "<XX^-1, ZZ> not invariant");
    let qutrit = inv.instantiate(3).map_err(e)?;
    let t = 1.0 / 3f64.sqrt();
    let mut expected = vec![amp(0.0); 9];
    for idx in [0, 5, 7] {
        // |00>, |12>, |21>
        expected[idx] = amp(t);
    }
    ensure!(verify_stabilized(&expected, &qutrit).map_err(e)?, "qutrit codeword not stabilized");
    let lib = bell_codeword(3).map_err(e)?;
    ensure!(lib.iter().zip(&expected).all(|(a, b)| (a - b).norm() < AMPLITUDE_TOL), "bell_codeword(3) differs");
    let word = &CodespaceProjector::new(&qutrit, DEFAULT_CAP).map_err(e)?.basis(1)[0];
    ensure!((overlap(word, &expected) - 1.0).abs() < AMPLITUDE_TOL, "qutrit codeword {word:?}");

    ensure!(distance(&qubit, 2, DistanceMode::ExcludeStabilizer).map_err(e)?.distance == Some(2), "d at p = 2");
    for p in [3, 5] {
        let (d, _) = distance_at(&inv, p, 2)?;
        ensure!(d == Some(2), "distance {d:?} at p = {p}");
    }
    Ok("dimension 1, both codewords to 1e-10, d = 2 at p = 2, 3, 5".into())
}

fn four_two_two() -> Outcome {
    let inv = load("fourtwotwo_prime.code").invariant().map_err(e)?;
    ensure!(is_invariant(inv.matrix()), "<XZXX, ZXZZ^-1> not invariant");
    let (d, _) = distance_at(&inv, 3, 2)?;
    ensure!(d == Some(2), "distance {d:?} at p = 3");

    let printed = load("fourtwotwo_printed.code");
    ensure!(printed.matrix.to_flat_rows()[1][4] == -3, "fixture lost its -3 entry");
    let g = printed.matrix.to_integer();
    let found = enumerate_undetectable(&g, 3, 1).map_err(e)?;
    let artifact = found
        .iter()
        .find(|v| v.weight == 1 && v.verdict == Verdict::Artifact)
        .ok_or("no weight-1 artifact error at p = 3")?;
    let x1 = parse_pauli_string("X I I I", 3).map_err(e)?;
    let verdict = classify(&x1, &g, 3).map_err(e)?;
    ensure!(verdict.verdict == Verdict::Artifact, "X on register 1 classified {}", verdict.verdict);
    let d = distance_of_matrix(&g, 3, 2, DistanceMode::ExcludeStabilizer).map_err(e)?.distance;
    ensure!(d == Some(1), "printed matrix distance {d:?} at p = 3");
    Ok(format!(
        "invariant form d = 2 at p = 3; printed form has artifact {} with syndrome {:?}",
        artifact.error, artifact.integer_syndrome
    ))
}

fn codeword_counts() -> Outcome {
    let five = load("five_qubit.code").invariant().map_err(e)?;
    let bell = load("bell_invariant.code").invariant().map_err(e)?;
    let ftt = load("fourtwotwo_prime.code").invariant().map_err(e)?;
    let cases: Vec<(&str, StabilizerCode)> = vec![
        ("Steane p=2", load("steane.code").code().map_err(e)?),
        ("5-qubit p=2", load("five_qubit.code").code().map_err(e)?),
        ("5-qubit p=3", five.instantiate(3).map_err(e)?),
        ("Bell p=2", load("bell.code").code().map_err(e)?),
        ("Bell p=3", bell.instantiate(3).map_err(e)?),
        ("Bell p=5", bell.instantiate(5).map_err(e)?),
        ("[[4,2,2]] p=2", load("fourtwotwo.code").code().map_err(e)?),
        ("[[4,2,2]] p=3", ftt.instantiate(3).map_err(e)?),
    ];
    let mut detail = Vec::new();
    for (label, code) in cases {
        let p = code.q() as u128;
        ensure!(p.pow(code.n() as u32) <= 300_000, "{label} too large");
        let want = p.pow((code.n() - code.k()) as u32);
        let cert = codespace_dimension(&code, DEFAULT_CAP).map_err(e)?;
        ensure!(cert.dimension == want, "{label}: dimension {} vs {want}", cert.dimension);
        detail.push(format!("{label}: {want}"));
    }
    Ok(detail.join(", "))
}

fn property_suites() -> Outcome {
    let suites: [(&str, fn(u64) -> Check); 9] = [
        ("embedding post-conditions", common::prop_embedding),
        ("product algebra", common::prop_product_algebra),
        ("elementary ops", common::prop_elementary_ops),
        ("standard form", common::prop_standard_form),
        ("validate oracle", common::prop_validate_perturbed),
        ("Hadamard minors", common::prop_hadamard_minor),
        ("distance oracle", common::prop_distance_oracle),
        ("kernel distance vs d*", common::prop_dstar_bounds_distance),
        ("CSS preservation", common::prop_css_preserved),
    ];
    for (label, check) in suites {
        let mut runner = TestRunner::new(Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        });
        runner
            .run(&proptest::num::u64::ANY, |seed| check(seed).map_err(TestCaseError::fail))
            .map_err(|err| format!("{label}: {err}"))?;
    }
    common::check_dstar_fixtures().map_err(|m| format!("d <= d* on fixtures: {m}"))?;
    Ok(format!("9 suites x {PROPERTY_CASES} cases, plus d <= d* on every invariant fixture"))
}

fn logicals_check(label: &str, code: &StabilizerCode, inv: &InvariantCode) -> Check {
    let q = code.q();
    let before = inv.matrix().clone();
    let set = logical_operators(code).map_err(e)?;
    ensure!(!set.is_empty(), "{label}: no logicals");
    let out = invariant_logicals(inv, &set).map_err(e)?;
    ensure!(*inv.matrix() == before, "{label}: stabilizer matrix modified");
    let rows = inv.matrix().to_flat_rows();
    for l in out.logicals.all() {
        ensure!(rows.iter().all(|s| product(&l.to_flat(), s) == 0), "{label}: {l} not exact");
    }
    for (a, b) in out.logicals.all().zip(out.reference.all()) {
        ensure!(a.reduce_mod(q).map_err(e)? == *b, "{label}: {a} differs from {b} mod {q}");
    }
    let det = &out.pairing_determinant.0;
    let pairing: Vec<Vec<i64>> = out
        .logicals
        .x_logicals
        .iter()
        .map(|x| out.logicals.z_logicals.iter().map(|z| product(&x.to_flat(), &z.to_flat())).collect())
        .collect();
    ensure!(pairing == out.logicals.pairing, "{label}: reported pairing differs");
    for p in (2..200i64).filter(|&p| ldi::arith::is_prime(p)) {
        let divides = (det % BigInt::from(p)) == BigInt::from(0);
        ensure!(divides == out.bad_primes.contains(&(p as u64)), "{label}: bad prime list wrong at {p}");
        let invertible = ldi::modp::rank(&pairing, p) == pairing.len();
        if !divides {
            ensure!(invertible, "{label}: pairing singular mod {p} although det = {det}");
        }
    }
    Ok(())
}

fn logicals() -> Outcome {
    let steane = load("steane.code").code().map_err(e)?;
    logicals_check("Steane", &steane, &embed(&steane).map_err(e)?)?;
    let printed = load("steane_standard.code").code().map_err(e)?;
    logicals_check("Steane (standard form)", &printed, &embed(&printed).map_err(e)?)?;
    let f = load("fourtwotwo_prime.code");
    logicals_check("<XZXX, ZXZZ^-1>", &f.code().map_err(e)?, &f.invariant().map_err(e)?)?;
    Ok("exact, congruent mod q, matrix untouched, pairing invertible off the bad primes".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Steane golden pipeline", steane_golden),
        ("Steane bounds", steane_bounds),
        ("distance preservation", steane_distance),
        ("5-qubit code", five_qubit),
        ("Bell fixtures", bell),
        ("[[4,2,2]] family", four_two_two),
        ("codeword count", codeword_counts),
        ("property suites", property_suites),
        ("invariant logicals", logicals),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
