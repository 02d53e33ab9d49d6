//! The `verify-all` suite: every structural identity of the library checked
//! at once and summarized in a [`VerificationReport`].

use std::collections::BTreeSet;
use std::time::Instant;

use hurwitz_core::bispherical::{cg_orthogonality_residual, verify_bispherical_product};
use hurwitz_core::cartanweyl::{
    commutator_table, decompose_adjoint, extracted_generators, generating_matrices, h5_first, ladder_checks,
    lie_closure_rank, so5_generators, H8_SIGNS_FIRST, H8_SIGNS_SECOND,
};
use hurwitz_core::cayley::{
    block_identity, cayley_symbolic, cayley_transform, determinant_defect, last_column, last_row, skew_cube_residual,
    source_len, weyl_form_symbolic, CAYLEY_DIMS,
};
use hurwitz_core::exactnum::{int, norm_sq_poly, GaussRational, MultiPoly};
use hurwitz_core::hurwitz::{
    build_hurwitz, clifford_factors, coefficient_matrix, doubling_candidate_16, hurwitz_symbolic,
    reconstruct_from_factors, SUPPORTED_DIMS,
};
use hurwitz_core::ksmap::{quadratic_map, Side, MAP_DIMS};
use hurwitz_core::laplace::{corrupted_map, harmonic_monomial_suite, jacobian_identities, FactorizationChecker};
use hurwitz_core::matrix::{ExactMatrix, PolyMatrix};
use hurwitz_core::param::{verify_cayley_klein, verify_r8, Phases};
use hurwitz_core::random::{random_generic_param_vector, random_param_vector, random_x_poly};
use hurwitz_core::Result;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::reference::{poly_matrix, CAYLEY_3, H5_FIRST, H8_FIRST, H8_FIRST_BRACKETS};
use crate::sci;

/// Componentwise tolerance of the floating-point parameterization checks.
pub const ROUND_TRIP_TOL: f64 = 1e-10;
/// Tolerance on `|u|^2 - r` and on the closed forms of the `R^8` overlaps.
pub const NORM_TOL: f64 = 1e-12;
pub const PRODUCT_RULE_TOL: f64 = 1e-10;
pub const UNITARITY_TOL: f64 = 1e-12;

pub const PARAM_TRIALS: usize = 200;
pub const BISPHERICAL_TRIALS: usize = 25;
pub const RANDOM_POINTS: usize = 100;
pub const MAP_POINTS: usize = 50;
pub const RANDOM_POLYS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub residual_summary: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub seed: u64,
    pub version: String,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    /// The report with every `elapsed_ms` zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> VerificationReport {
        let mut r = self.clone();
        r.cases.iter_mut().for_each(|c| c.elapsed_ms = 0);
        r
    }

    pub fn case(&self, name: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Adds a case that runs the Laplacian check on a deliberately broken map
    /// and expects it to pass, so the suite must fail.
    pub include_corrupted: bool,
    /// Leaves out the Laplacian factorization cases, the slowest part.
    pub skip_laplace: bool,
}

type Outcome = Result<(bool, String)>;
type CaseFn = Box<dyn Fn(&mut ChaCha8Rng) -> Outcome + Send + Sync>;

struct Case {
    name: String,
    run: CaseFn,
}

fn case(name: impl Into<String>, run: impl Fn(&mut ChaCha8Rng) -> Outcome + Send + Sync + 'static) -> Case {
    Case { name: name.into(), run: Box::new(run) }
}

/// Per-case RNG seed: FNV-1a of the case name mixed with the global seed.
fn case_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn hurwitz_orthogonality(rng: &mut ChaCha8Rng) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in SUPPORTED_DIMS {
        match hurwitz_symbolic(n) {
            Ok(h) => {
                let residual = h.mul(&h.transpose()).sub(&PolyMatrix::scalar(n, &norm_sq_poly(n)));
                let mut bad = 0;
                for _ in 0..RANDOM_POINTS {
                    let u = random_param_vector(rng, n);
                    let m = build_hurwitz(n, &u)?;
                    if m.mul(&m.transpose()) != ExactMatrix::scalar(n, &u.norm_sq()) {
                        bad += 1;
                    }
                }
                ok &= residual.is_zero() && bad == 0;
                parts.push(format!("n={n}: symbolic nnz {}, {bad}/{RANDOM_POINTS} points off", residual.nnz()));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("n={n}: {e}"));
            }
        }
    }
    Ok((ok, parts.join("; ")))
}

fn hurwitz_clifford(_: &mut ChaCha8Rng) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [4, 8, 16] {
        let (factors, target, note) = match (clifford_factors(n), hurwitz_symbolic(n)) {
            (Ok(f), Ok(h)) => (f, h, String::new()),
            (Err(e), _) | (_, Err(e)) => {
                // Report how far the doubling candidate is from a Clifford system.
                ok = false;
                let p = doubling_candidate_16();
                let f: Vec<ExactMatrix> = (2..=n).map(|k| coefficient_matrix(&p, k).transpose().neg()).collect();
                let h = p.instantiate(&hurwitz_core::hurwitz::u_vars(n));
                (f, h, format!(" ({e}; candidate shown)"))
            }
        };
        let mut bad = 0;
        let mut pairs = 0;
        for i in 0..factors.len() {
            for j in i..factors.len() {
                pairs += 1;
                if !hurwitz_core::hurwitz::anticommutator_defect(&factors[i], &factors[j], i == j).is_zero() {
                    bad += 1;
                }
            }
        }
        let rebuilt = reconstruct_from_factors(n, &factors) == target;
        ok &= bad == 0 && rebuilt;
        parts.push(format!("n={n}: {bad}/{pairs} anticommutators off, reconstruction {}{note}", verdict(rebuilt)));
    }
    Ok((ok, parts.join("; ")))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "exact"
    } else {
        "differs"
    }
}

fn cayley_weyl(_: &mut ChaCha8Rng) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3, 7] {
        let same = cayley_symbolic(n)? == weyl_form_symbolic(n)?;
        let cube = skew_cube_residual(n)?.is_zero();
        ok &= same && cube;
        parts.push(format!("n={n}: Weyl form {}, S^3 + |s|^2 S = 0 {}", verdict(same), verdict(cube)));
    }
    Ok((ok, parts.join("; ")))
}

fn cayley_reference_entries(_: &mut ChaCha8Rng) -> Outcome {
    let o = cayley_symbolic(3)?;
    let reference = poly_matrix(&CAYLEY_3, 4);
    let off = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| o.get(i, j) != reference.get(i, j)).count();
    Ok((off == 0, format!("{off}/9 entries differ from the reference 3x3 matrix")))
}

fn cayley_blocks(_: &mut ChaCha8Rng) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3, 7] {
        let r = block_identity(n)?;
        ok &= r.passed;
        parts.push(format!("n={n}: residual nnz {}", r.residual.nnz()));
    }
    Ok((ok, parts.join("; ")))
}

fn cayley_orthogonality(rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = 0;
    let mut total = 0;
    for n in CAYLEY_DIMS {
        for _ in 0..20 {
            let u = random_generic_param_vector(rng, source_len(n)?);
            let o = cayley_transform(n, &u)?;
            total += 1;
            if !o.gram_residual().is_zero() || !determinant_defect(n, &u)?.eq(&int(0)) {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{bad}/{total} random points with O O^t != |u|^4 I or det defect")))
}

fn ksmap_norm(_: &mut ChaCha8Rng) -> Outcome {
    let mut bad = Vec::new();
    for n in MAP_DIMS {
        for side in Side::BOTH {
            let m = quadratic_map(n, side)?;
            if !m.norm_composition_residual().is_zero() || !m.is_homogeneous_quadratic() {
                bad.push(format!("n={n} {side}"));
            }
        }
    }
    let summary = if bad.is_empty() {
        "sum x_i^2 = |u|^4 symbolically for n in {2,3,5,9}, both sides".to_string()
    } else {
        format!("fails for {}", bad.join(", "))
    };
    Ok((bad.is_empty(), summary))
}

fn ksmap_consistency(rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = 0;
    let mut total = 0;
    for n in MAP_DIMS {
        for side in Side::BOTH {
            let m = quadratic_map(n, side)?;
            for _ in 0..MAP_POINTS {
                let u = random_generic_param_vector(rng, m.n_source);
                let o = cayley_transform(n, &u)?;
                let expect = match side {
                    Side::Right => last_column(&o),
                    Side::Left => last_row(&o),
                };
                total += 1;
                if m.apply(&u)? != expect {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, format!("{bad}/{total} points disagree with the Cayley last column/row")))
}

fn laplace_case(n: usize, side: Side, rng: &mut ChaCha8Rng) -> Outcome {
    let map = quadratic_map(n, side)?;
    let mut checker = FactorizationChecker::new(map);
    let harmonics = harmonic_monomial_suite(n, 3)?;
    let mut failures = 0;
    let mut nonharmonic = 0;
    for f in &harmonics {
        let r = checker.check(f)?;
        failures += usize::from(!r.passed);
        nonharmonic += usize::from(!r.lhs.is_zero());
    }
    for _ in 0..RANDOM_POLYS {
        let f = random_x_poly(rng, n, 3, 6);
        failures += usize::from(!checker.check(&f)?.passed);
    }
    let jac = jacobian_identities(map)?.all_hold();
    let ok = failures == 0 && nonharmonic == 0 && jac;
    Ok((
        ok,
        format!(
            "{} harmonics + {RANDOM_POLYS} random polynomials, {failures} nonzero residuals, {nonharmonic} harmonic pullbacks not harmonic, Jacobian identities {}",
            harmonics.len(),
            if jac { "hold" } else { "fail" }
        ),
    ))
}

fn corrupted_failures() -> Result<(usize, usize)> {
    let bad = corrupted_map()?;
    let mut checker = FactorizationChecker::new(&bad);
    let suite = harmonic_monomial_suite(3, 3)?;
    let mut failures = 0;
    for f in &suite {
        failures += usize::from(!checker.check(f)?.passed);
    }
    Ok((failures, suite.len()))
}

fn laplace_negative_control(_: &mut ChaCha8Rng) -> Outcome {
    let (failures, total) = corrupted_failures()?;
    Ok((failures > 0, format!("corrupted map rejected by {failures}/{total} harmonic checks")))
}

fn laplace_corrupted(_: &mut ChaCha8Rng) -> Outcome {
    let (failures, total) = corrupted_failures()?;
    Ok((failures == 0, format!("factorization along the corrupted map: {failures}/{total} nonzero residuals")))
}

fn param_cayley_klein(side: Side, rng: &mut ChaCha8Rng) -> Outcome {
    let r = verify_cayley_klein(rng, PARAM_TRIALS, side)?;
    let ok = r.max_component_residual < ROUND_TRIP_TOL && r.max_norm_residual < NORM_TOL;
    Ok((
        ok,
        format!(
            "{} trials: max component residual {}, max | |u|^2 - r | {}",
            r.trials,
            sci(r.max_component_residual),
            sci(r.max_norm_residual)
        ),
    ))
}

fn param_r8(rng: &mut ChaCha8Rng) -> Outcome {
    let r = verify_r8(rng, PARAM_TRIALS, Phases::Conjugated)?;
    let overlap = r.max_overlap_residual.unwrap_or(0.0);
    let ok = r.max_component_residual < ROUND_TRIP_TOL && r.max_norm_residual < NORM_TOL && overlap < NORM_TOL;
    Ok((
        ok,
        format!(
            "{} trials: max component residual {}, max | |u|^2 - r | {}, overlap closed forms {}",
            r.trials,
            sci(r.max_component_residual),
            sci(r.max_norm_residual),
            sci(overlap)
        ),
    ))
}

fn cartan_brackets(_: &mut ChaCha8Rng) -> Outcome {
    let h = poly_matrix(&H8_FIRST, 8);
    let g = decompose_adjoint(&h)?;
    let identity = g.coefficient_matrix(1) == ExactMatrix::identity(8);
    let mut off = Vec::new();
    for (k, terms) in H8_FIRST_BRACKETS {
        let expected: BTreeSet<_> = terms.iter().map(|&(s, i, j)| (int(s), i, j)).collect();
        if g.coefficient(k).map(|c| c.skew_set()) != Some(expected) {
            off.push(format!("u{k}"));
        }
    }
    let rebuilt = g.reconstruct() == h;
    let first = generating_matrices(8)?[0].reconstruct() == h;
    let ok = identity && off.is_empty() && rebuilt && first;
    Ok((
        ok,
        format!(
            "u1 identity {}, {}/7 skew brackets differ{}, rebuild {}, first generating matrix {}",
            verdict(identity),
            off.len(),
            if off.is_empty() { String::new() } else { format!(" ({})", off.join(", ")) },
            verdict(rebuilt),
            verdict(first)
        ),
    ))
}

fn cartan_sign_tables(_: &mut ChaCha8Rng) -> Outcome {
    let ok = [H8_SIGNS_FIRST, H8_SIGNS_SECOND].iter().all(|t| {
        let rows: Vec<&[i64]> = t.iter().map(|r| r.as_slice()).collect();
        let m = ExactMatrix::from_i64(&rows);
        m.mul(&m.transpose()) == ExactMatrix::scalar(4, &int(4))
    });
    Ok((ok, format!("M M^t = 4 I for both 4x4 sign tables: {}", verdict(ok))))
}

fn cartan_span(n: usize) -> Outcome {
    let dim = n * (n - 1) / 2;
    match extracted_generators(n) {
        Ok(set) => {
            let rank = set.rank();
            let closure = lie_closure_rank(&set);
            Ok((
                set.len() == dim && rank == dim && closure == dim,
                format!("{} generators, rank {rank}, Lie closure {closure}, so({n}) has dimension {dim}", set.len()),
            ))
        }
        Err(e) => Ok((false, e.to_string())),
    }
}

fn so5_reconstruction(_: &mut ChaCha8Rng) -> Outcome {
    let ok = h5_first() == poly_matrix(&H5_FIRST, 8);
    Ok((ok, format!("u1 I + u2 Ŝ3 + u3 Ŝ2 + u4 Ŝ1 + u5 Û1 + u6 Û2 + u7 V̂1 + u8 V̂2 vs reference: {}", verdict(ok))))
}

fn so5_spins(_: &mut ChaCha8Rng) -> Outcome {
    let g = so5_generators();
    let mut nonzero = 0;
    for a in 0..3 {
        for b in 3..6 {
            if !g.generators[a].commutator(&g.generators[b]).is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok((nonzero == 0, format!("{nonzero}/9 commutators [S_a, T_b] nonzero")))
}

fn so5_table(_: &mut ChaCha8Rng) -> Outcome {
    let t = commutator_table(&so5_generators());
    let open = t.entries.iter().filter(|e| !e.closed()).count();
    Ok((open == 0, format!("{} pairs, {open} with residual outside the span", t.entries.len())))
}

fn so5_ladder(_: &mut ChaCha8Rng) -> Outcome {
    let checks = ladder_checks();
    let get = |element: &str| {
        checks.iter().find(|c| c.cartan == "S_3" && c.element == element).and_then(|c| c.eigenvalue.clone())
    };
    let i = GaussRational::i();
    let ok = get("U1 + i U2") == Some(i.clone())
        && get("U1 - i U2") == Some(-&i)
        && get("V1 + i V2 (L35 + i L45)") == Some(i.clone())
        && get("V1 - i V2 (L35 - i L45)") == Some(-&i);
    let alt = get("L25 + i L45").map_or("not an eigenvector".to_string(), |v| format!("eigenvalue {v}"));
    Ok((ok, format!("ad(S_3): U± and V1 ± i V2 have eigenvalues ±i; L25 + i L45 is {alt}")))
}

fn bispherical_product(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut unitary: f64 = 0.0;
    for l1 in 0..=2 {
        for l2 in 0..=2 {
            let r = verify_bispherical_product(l1, l2, rng, BISPHERICAL_TRIALS)?;
            worst = worst.max(r.max_residual);
            unitary = unitary.max(r.max_unitarity_residual);
        }
    }
    Ok((
        worst < PRODUCT_RULE_TOL && unitary < UNITARITY_TOL,
        format!("l1, l2 <= 2, {BISPHERICAL_TRIALS} rotations each: max residual {}, max |D D^† - I| {}", sci(worst), sci(unitary)),
    ))
}

fn bispherical_cg(_: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    for l1 in 0..=2 {
        for l2 in 0..=2 {
            worst = worst.max(cg_orthogonality_residual(l1, l2)?);
        }
    }
    Ok((worst < UNITARITY_TOL, format!("max orthogonality defect {}", sci(worst))))
}

fn cases(opts: &SuiteOptions) -> Vec<Case> {
    let mut v = vec![
        case("hurwitz.orthogonality", hurwitz_orthogonality),
        case("hurwitz.clifford", hurwitz_clifford),
        case("cayley.weyl_form", cayley_weyl),
        case("cayley.reference_entries", cayley_reference_entries),
        case("cayley.block_identities", cayley_blocks),
        case("cayley.scaled_orthogonality", cayley_orthogonality),
        case("ksmap.norm_composition", ksmap_norm),
        case("ksmap.cayley_consistency", ksmap_consistency),
        case("laplace.negative_control", laplace_negative_control),
        case("param.cayley_klein.left", |r| param_cayley_klein(Side::Left, r)),
        case("param.cayley_klein.right", |r| param_cayley_klein(Side::Right, r)),
        case("param.r8_r5", param_r8),
        case("cartanweyl.h8_brackets", cartan_brackets),
        case("cartanweyl.sign_tables", cartan_sign_tables),
        case("so5.reconstruction", so5_reconstruction),
        case("so5.commuting_spins", so5_spins),
        case("so5.commutator_table", so5_table),
        case("so5.ladder", so5_ladder),
        case("bispherical.product_rule", bispherical_product),
        case("bispherical.clebsch_gordan", bispherical_cg),
    ];
    for n in [4, 8, 16] {
        v.push(case(format!("cartanweyl.span_closure.n{n:02}"), move |_| cartan_span(n)));
    }
    if !opts.skip_laplace {
        for n in MAP_DIMS {
            for side in Side::BOTH {
                v.push(case(format!("laplace.factorization.n{n}.{side}"), move |r| laplace_case(n, side, r)));
            }
        }
    }
    if opts.include_corrupted {
        v.push(case("laplace.corrupted_map", laplace_corrupted));
    }
    v
}

/// Runs every case (in parallel) and returns the report sorted by case name.
pub fn cmd_verify_all(opts: SuiteOptions) -> VerificationReport {
    let mut results: Vec<CaseResult> = cases(&opts)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(case_seed(opts.seed, &c.name));
            let start = Instant::now();
            let (passed, residual_summary) = match (c.run)(&mut rng) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CaseResult { name: c.name, passed, residual_summary, elapsed_ms: start.elapsed().as_millis() as u64 }
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    VerificationReport {
        suite: "verify-all".into(),
        cases: results,
        seed: opts.seed,
        version: env!("CARGO_PKG_VERSION").into(),
    }
}

/// Components of the quadratic map `(n, side)` as display strings.
pub fn map_components(n: usize, side: Side) -> Result<Vec<String>> {
    Ok(quadratic_map(n, side)?.components().iter().map(MultiPoly::to_string).collect())
}
