//! Acceptance gate. Each test prints one `criterion N: PASS|FAIL` line with
//! its measured residuals and runtime, then asserts the criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hurwitz_cli::reference::{poly_matrix, CAYLEY_3, H5_FIRST, H8_FIRST, H8_FIRST_BRACKETS};
use hurwitz_cli::suite::VerificationReport;
use hurwitz_core::bispherical::{cg_orthogonality_residual, verify_bispherical_product};
use hurwitz_core::cartanweyl::{
    commutator_table, decompose_adjoint, extracted_generators, h5_first, lie_closure_rank, so5_generators,
    H8_SIGNS_FIRST, H8_SIGNS_SECOND,
};
use hurwitz_core::cayley::{block_identity, cayley_symbolic, cayley_transform, last_column, last_row, weyl_form_symbolic};
use hurwitz_core::exactnum::{int, norm_sq_poly, MultiPoly};
use hurwitz_core::hurwitz::{build_hurwitz, clifford_factors, hurwitz_symbolic, u_vars};
use hurwitz_core::ksmap::{quadratic_map, Side};
use hurwitz_core::laplace::{corrupted_map, harmonic_basis, FactorizationChecker};
use hurwitz_core::matrix::{ExactMatrix, PolyMatrix};
use hurwitz_core::param::{verify_cayley_klein, verify_r8, Phases};
use hurwitz_core::random::{random_generic_param_vector, random_param_vector, random_x_poly};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PARAM_COMPONENT_TOL: f64 = 1e-10;
const PARAM_NORM_TOL: f64 = 1e-12;
const PRODUCT_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-12;

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

/// Runs `check`, prints the verdict line and asserts both the outcome and
/// the runtime bound.
fn criterion(n: u32, limit: Duration, check: impl FnOnce() -> (bool, String)) {
    let start = Instant::now();
    let (ok, detail) = check();
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    let pass = ok && in_time;
    println!(
        "criterion {n}: {} {detail}; {:.2} s (limit {} s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(in_time, "criterion {n} exceeded {limit:?}: {elapsed:?}");
}

#[test]
fn criterion_01_hurwitz_orthogonality() {
    criterion(1, Duration::from_secs(5), || {
        let mut r = rng(1);
        let mut ok = true;
        let mut parts = Vec::new();
        for n in [2, 4, 8, 16] {
            let symbolic = match hurwitz_symbolic(n) {
                Ok(h) => {
                    let res = h.mul(&h.transpose()).sub(&PolyMatrix::scalar(n, &norm_sq_poly(n)));
                    ok &= res.is_zero();
                    format!("symbolic residual nnz {}", res.nnz())
                }
                Err(e) => {
                    ok = false;
                    format!("no orthogonal matrix ({e})")
                }
            };
            let mut bad = 0;
            for _ in 0..100 {
                let u = random_param_vector(&mut r, n);
                match build_hurwitz(n, &u) {
                    Ok(m) if m.mul(&m.transpose()) == ExactMatrix::scalar(n, &u.norm_sq()) => {}
                    _ => bad += 1,
                }
            }
            ok &= bad == 0;
            parts.push(format!("n={n}: {symbolic}, {bad}/100 random vectors fail"));
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_02_clifford_relations() {
    criterion(2, Duration::from_secs(5), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for n in [4, 8, 16] {
            let g = match clifford_factors(n) {
                Ok(g) => g,
                Err(e) => {
                    ok = false;
                    parts.push(format!("n={n}: {e}"));
                    continue;
                }
            };
            let id = ExactMatrix::identity(n);
            let mut bad = 0;
            for i in 0..g.len() {
                for j in 0..g.len() {
                    let anti = g[i].mul(&g[j]).add(&g[j].mul(&g[i]));
                    let want = if i == j { id.scale(&int(-2)) } else { ExactMatrix::zeros(n) };
                    bad += usize::from(anti != want);
                }
            }
            // u1 I - sum_{i >= 2} u_i Gamma_i^t, built here from scratch.
            let u = u_vars(n);
            let mut rebuilt = PolyMatrix::scalar(n, &u[0]);
            for (k, gk) in g.iter().enumerate() {
                let term = gk.transpose().map(|c| MultiPoly::constant(c.clone()));
                rebuilt = rebuilt.sub(&term.scale(&u[k + 1]));
            }
            let same = rebuilt == hurwitz_symbolic(n).expect("factors exist only when H_n does");
            ok &= bad == 0 && same;
            parts.push(format!("n={n}: {bad} failing ordered pairs, reconstruction {}", if same { "exact" } else { "differs" }));
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_03_cayley_weyl_and_blocks() {
    criterion(3, Duration::from_secs(10), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for n in [3, 7] {
            let same = cayley_symbolic(n).unwrap() == weyl_form_symbolic(n).unwrap();
            let block = block_identity(n).unwrap();
            ok &= same && block.passed;
            parts.push(format!("n={n}: Cayley = Weyl {same}, block residual nnz {}", block.residual.nnz()));
        }
        let o3 = cayley_symbolic(3).unwrap();
        let reference = poly_matrix(&CAYLEY_3, 4);
        let off = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| o3.get(i, j) != reference.get(i, j)).count();
        ok &= off == 0;
        parts.push(format!("{off}/9 reference 3x3 entries differ"));
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_04_ks_maps() {
    criterion(4, Duration::from_secs(20), || {
        let mut r = rng(4);
        let mut ok = true;
        let mut parts = Vec::new();
        for n in [3, 5, 9] {
            for side in Side::BOTH {
                let m = quadratic_map(n, side).unwrap();
                let composition = m.norm_composition_residual().is_zero();
                let mut bad = 0;
                for _ in 0..50 {
                    let u = random_generic_param_vector(&mut r, m.n_source);
                    let o = cayley_transform(n, &u).unwrap();
                    let expect = match side {
                        Side::Right => last_column(&o),
                        Side::Left => last_row(&o),
                    };
                    bad += usize::from(m.apply(&u).unwrap() != expect);
                }
                ok &= composition && bad == 0;
                parts.push(format!("n={n} {side}: norm identity {composition}, {bad}/50 disagree"));
            }
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_05_laplacian_factorization() {
    criterion(5, Duration::from_secs(120), || {
        let mut r = rng(5);
        let mut ok = true;
        let mut parts = Vec::new();
        for n in [2, 3, 5, 9] {
            for side in Side::BOTH {
                let mut checker = FactorizationChecker::new(quadratic_map(n, side).unwrap());
                let mut polys: Vec<MultiPoly> = (0..=3).flat_map(|d| harmonic_basis(n, d).unwrap()).collect();
                let harmonics = polys.len();
                polys.extend((0..20).map(|_| random_x_poly(&mut r, n, 3, 6)));
                let failures = polys.iter().filter(|f| !checker.check(f).unwrap().passed).count();
                ok &= failures == 0;
                parts.push(format!("n={n} {side}: {harmonics} harmonics + 20 random, {failures} nonzero"));
            }
        }
        let bad = corrupted_map().unwrap();
        let mut checker = FactorizationChecker::new(&bad);
        let caught = (0..=3)
            .flat_map(|d| harmonic_basis(3, d).unwrap())
            .filter(|f| !checker.check(f).unwrap().passed)
            .count();
        ok &= caught > 0;
        parts.push(format!("corrupted map fails on {caught} harmonics"));
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_06_parameterization_round_trips() {
    criterion(6, Duration::from_secs(5), || {
        let mut r = rng(6);
        let mut ok = true;
        let mut parts = Vec::new();
        let mut reports = vec![
            ("r4r3 left", verify_cayley_klein(&mut r, 200, Side::Left).unwrap()),
            ("r4r3 right", verify_cayley_klein(&mut r, 200, Side::Right).unwrap()),
        ];
        reports.push(("r8r5", verify_r8(&mut r, 200, Phases::Conjugated).unwrap()));
        for (name, rep) in reports {
            let good = rep.trials == 200
                && rep.max_component_residual < PARAM_COMPONENT_TOL
                && rep.max_norm_residual < PARAM_NORM_TOL;
            ok &= good;
            parts.push(format!(
                "{name}: component {:.3e}, |u|^2 - r {:.3e}",
                rep.max_component_residual, rep.max_norm_residual
            ));
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_07_generating_matrices() {
    criterion(7, Duration::from_secs(30), || {
        let mut ok = true;
        let mut parts = Vec::new();
        let g = decompose_adjoint(&poly_matrix(&H8_FIRST, 8)).unwrap();
        let mut matched = usize::from(g.coefficient_matrix(1) == ExactMatrix::identity(8));
        for (k, terms) in H8_FIRST_BRACKETS {
            let want: BTreeSet<_> = terms.iter().map(|&(s, i, j)| (int(s), i, j)).collect();
            matched += usize::from(g.coefficient(k).map(|c| c.skew_set()) == Some(want));
        }
        ok &= matched == 8;
        parts.push(format!("{matched}/8 brackets reproduced"));
        for t in [H8_SIGNS_FIRST, H8_SIGNS_SECOND] {
            let rows: Vec<&[i64]> = t.iter().map(|r| r.as_slice()).collect();
            let m = ExactMatrix::from_i64(&rows);
            ok &= m.mul(&m.transpose()) == ExactMatrix::scalar(4, &int(4));
        }
        for n in [4, 8, 16] {
            let set = extracted_generators(n).unwrap();
            let (rank, closure) = (set.rank(), lie_closure_rank(&set));
            ok &= rank == n * (n - 1) / 2 && closure == rank;
            parts.push(format!("n={n}: rank {rank}, closure {closure}"));
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_08_so5() {
    criterion(8, Duration::from_secs(5), || {
        let rebuilt = h5_first() == poly_matrix(&H5_FIRST, 8);
        let g = so5_generators();
        let spins = ["S_1", "S_2", "S_3"]
            .iter()
            .flat_map(|s| ["T_1", "T_2", "T_3"].map(|t| (*s, t)))
            .filter(|(s, t)| !g.get(s).unwrap().commutator(g.get(t).unwrap()).is_zero())
            .count();
        let table = commutator_table(&g);
        let ok = rebuilt && spins == 0 && table.is_closed() && g.len() == 10;
        (ok, format!("reconstruction {rebuilt}, {spins}/9 [S_a, T_b] nonzero, table closed {}", table.is_closed()))
    });
}

#[test]
fn criterion_09_bispherical() {
    criterion(9, Duration::from_secs(5), || {
        let mut r = rng(9);
        let (mut worst, mut unitary, mut cg): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for l1 in 0..=2 {
            for l2 in 0..=2 {
                let rep = verify_bispherical_product(l1, l2, &mut r, 25).unwrap();
                worst = worst.max(rep.max_residual);
                unitary = unitary.max(rep.max_unitarity_residual);
                cg = cg.max(cg_orthogonality_residual(l1, l2).unwrap());
            }
        }
        let ok = worst < PRODUCT_TOL && unitary < UNITARY_TOL && cg < UNITARY_TOL;
        (ok, format!("product {worst:.3e}, unitarity {unitary:.3e}, CG orthogonality {cg:.3e}"))
    });
}

fn verify_all(extra: &[&str]) -> (i32, VerificationReport, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(["verify-all", "--seed", "0"])
        .args(extra)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).expect("report is JSON");
    (out.status.code().unwrap_or(-1), report, elapsed)
}

#[test]
fn criterion_10_verify_all() {
    criterion(10, Duration::from_secs(300), || {
        let (code_a, a, t_a) = verify_all(&["--skip-laplace"]);
        let (_, b, _) = verify_all(&["--skip-laplace"]);
        let (code, full, t_full) = verify_all(&[]);
        let deterministic = a.without_timings() == b.without_timings();
        let failing: Vec<&str> = full.cases.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let ok = code == 0
            && code_a == code
            && deterministic
            && t_a < Duration::from_secs(60)
            && t_full < Duration::from_secs(180);
        let detail = format!(
            "exit {code}, without laplace {:.1} s, total {:.1} s, deterministic {deterministic}, failing cases {:?}",
            t_a.as_secs_f64(),
            t_full.as_secs_f64(),
            failing
        );
        (ok, detail)
    });
}
