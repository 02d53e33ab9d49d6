//! Command-line front end for `hurwitz-core`.
//!
//! [`Cli`] is the clap definition and [`run`] executes a parsed command,
//! returning the rendered output together with the process exit code:
//! 0 when everything checked passed, 1 on a verification failure, 2 on a
//! usage error.

pub mod emit;
pub mod reference;
pub mod suite;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hurwitz_core::bispherical::verify_bispherical_product;
use hurwitz_core::cartanweyl::{commutator_table, extracted_generators, lie_closure_rank, so5_generators};
use hurwitz_core::cayley::cayley_transform;
use hurwitz_core::exactnum::parse_rational_list;
use hurwitz_core::hurwitz::{build_hurwitz, hurwitz_symbolic, ParamVector};
use hurwitz_core::ksmap::{quadratic_map, Side};
use hurwitz_core::laplace::{harmonic_monomial_suite, FactorizationChecker};
use hurwitz_core::matrix::ExactMatrix;
use hurwitz_core::param::{
    cayley_klein, cayley_klein_target, param_r8, spherical_target, verify_cayley_klein, verify_r8, AngleSet,
    CayleyKleinAngles, Phases, R8Angles,
};
use hurwitz_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use emit::EmitTarget;
use suite::{cmd_verify_all, SuiteOptions, NORM_TOL, PRODUCT_RULE_TOL, ROUND_TRIP_TOL, UNITARITY_TOL};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Floats in reports carry 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParamTarget {
    R4r3,
    R8r5,
}

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Hurwitz matrices, Cayley transforms and the quadratic maps built from them")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Hurwitz matrix H_n, symbolic unless --u is given.
    Hurwitz {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// The scaled orthogonal matrix |u|^2 O_n.
    Cayley {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Divide by |u|^2.
        #[arg(long)]
        orthonormal: bool,
    },
    /// The quadratic map x(u) of dimension n.
    Ksmap {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "right")]
        side: Side,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
        u: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Laplacian factorization along the map, over the harmonic monomial suite.
    LaplaceVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "right")]
        side: Side,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Angle parameterizations of the n = 3 and n = 5 maps.
    Param {
        #[arg(long, value_enum, default_value_t = ParamTarget::R4r3)]
        target: ParamTarget,
        /// `name=value` pairs, e.g. `r=1,theta=0.5,psi=0.1,phi=2`.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        angles: String,
        #[arg(long, default_value = "right")]
        side: Side,
        /// Run the random round-trip check instead of mapping one point.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Generators of so(n) extracted from the generating matrices.
    Cartan {
        #[arg(long)]
        n: usize,
        /// Write the generator set and structure constants to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The commutator table of the ten so(5) generators.
    So5Table,
    /// Product rule for rotation matrices of SO(3).
    Bispherical {
        #[arg(long, default_value_t = 1)]
        l1: i32,
        #[arg(long, default_value_t = 1)]
        l2: i32,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
    /// Every identity check in one report.
    VerifyAll {
        /// Add a case that expects the corrupted map to pass (it must not).
        #[arg(long)]
        corrupt: bool,
        /// Leave out the Laplacian factorization cases.
        #[arg(long)]
        skip_laplace: bool,
    },
    /// Serialize an object: hurwitz:N, cayley:N, ksmap:N[:side],
    /// generators:N, so5-table, hadamard:M.
    Emit {
        target: EmitTarget,
        /// Parse the written JSON back and compare with the source object.
        #[arg(long)]
        check: bool,
    },
}

/// Rendered output and exit code of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedDimension { .. }
            | Error::LengthMismatch { .. }
            | Error::ArityMismatch { .. }
            | Error::Parse(_)
            | Error::BadIndices { .. }
            | Error::OutOfDeskScale(_)
            | Error::FamilyMismatch(_)
            | Error::UnknownVariable(_)
    )
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        Outcome { output: format!("error: {e}"), code: if usage_error(e) { EXIT_USAGE } else { EXIT_FAIL } }
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn matrix_text<T: hurwitz_core::matrix::Ring + std::fmt::Display>(m: &hurwitz_core::matrix::Matrix<T>) -> String {
    m.rows().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t")).collect::<Vec<_>>().join("\n")
}

fn params(s: &str) -> Result<ParamVector, Error> {
    ParamVector::new(parse_rational_list(s)?)
}

fn render(format: Format, json: Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => pretty(&json),
        Format::Text => text(),
    }
}

fn passed(b: bool) -> i32 {
    if b {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Executes `cli` and returns what should be printed (or written to `--out`).
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let fmt = cli.format;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let ok = |output: String| Outcome { output, code: EXIT_PASS };
    Ok(match &cli.command {
        Command::Hurwitz { n, u: None } => {
            let h = hurwitz_symbolic(*n)?;
            ok(render(fmt, json!({"n": n, "matrix": h}), || matrix_text(&h)))
        }
        Command::Hurwitz { n, u: Some(u) } => {
            let h = build_hurwitz(*n, &params(u)?)?;
            ok(render(fmt, json!({"n": n, "matrix": h}), || matrix_text(&h)))
        }
        Command::Cayley { n, u: None, .. } => {
            let o = hurwitz_core::cayley::cayley_symbolic(*n)?;
            ok(render(fmt, json!({"n": n, "scale": "|u|^2", "matrix": o}), || matrix_text(&o)))
        }
        Command::Cayley { n, u: Some(u), orthonormal } => {
            let o = cayley_transform(*n, &params(u)?)?;
            let (m, scale): (ExactMatrix, String) = if *orthonormal {
                (o.orthonormal(), "1".into())
            } else {
                (o.matrix.clone(), hurwitz_core::exactnum::format_rational(&o.scale_sq))
            };
            ok(render(fmt, json!({"n": n, "scale": scale, "matrix": m}), || matrix_text(&m)))
        }
        Command::Ksmap { n, side, u, symbolic } => {
            let map = quadratic_map(*n, *side)?;
            match (u, symbolic) {
                (Some(u), false) => {
                    let x: Vec<String> =
                        map.apply(&params(u)?)?.iter().map(hurwitz_core::exactnum::format_rational).collect();
                    ok(render(fmt, json!({"n": n, "side": side, "x": x}), || x.join("\n")))
                }
                _ => ok(render(fmt, serde_json::to_value(map).expect("map serializes"), || {
                    map.components().iter().enumerate().map(|(i, c)| format!("x{} = {c}", i + 1)).collect::<Vec<_>>().join("\n")
                })),
            }
        }
        Command::LaplaceVerify { n, side, degree } => {
            let map = quadratic_map(*n, *side)?;
            let mut checker = FactorizationChecker::new(map);
            let reports = harmonic_monomial_suite(*n, *degree)?
                .iter()
                .map(|f| checker.check(f))
                .collect::<Result<Vec<_>, _>>()?;
            let all = reports.iter().all(|r| r.passed);
            let failed = reports.iter().filter(|r| !r.passed).count();
            let output = render(fmt, serde_json::to_value(&reports).expect("reports serialize"), || {
                format!("{} harmonic test polynomials, {failed} with nonzero residual", reports.len())
            });
            Outcome { output, code: passed(all) }
        }
        Command::Param { target, verify: true, trials, side, .. } => {
            let r = match target {
                ParamTarget::R4r3 => verify_cayley_klein(&mut rng, *trials, *side)?,
                ParamTarget::R8r5 => verify_r8(&mut rng, *trials, Phases::Conjugated)?,
            };
            let good = r.max_component_residual < ROUND_TRIP_TOL
                && r.max_norm_residual < NORM_TOL
                && r.max_overlap_residual.is_none_or(|o| o < NORM_TOL);
            let output = render(fmt, json!({"passed": good, "report": r}), || {
                format!(
                    "{}: max component residual {}, max norm residual {}",
                    if good { "PASS" } else { "FAIL" },
                    sci(r.max_component_residual),
                    sci(r.max_norm_residual)
                )
            });
            Outcome { output, code: passed(good) }
        }
        Command::Param { target, angles, side, .. } => {
            let set = AngleSet::parse(angles)?;
            let (u, x, expected): (Vec<f64>, Vec<f64>, Vec<f64>) = match target {
                ParamTarget::R4r3 => {
                    let a = CayleyKleinAngles::from_set(&set);
                    let u = cayley_klein(&a);
                    (u.to_vec(), quadratic_map(3, *side)?.apply_f64(&u)?, cayley_klein_target(*side, &a).to_vec())
                }
                ParamTarget::R8r5 => {
                    let a = R8Angles::from_set(&set);
                    let u = param_r8(&a);
                    (u.to_vec(), quadratic_map(5, Side::Left)?.apply_f64(&u)?, spherical_target(&a).to_vec())
                }
            };
            let fmt_vec = |v: &[f64]| v.iter().map(|&f| sci(f)).collect::<Vec<_>>().join(", ");
            ok(render(fmt, json!({"u": u, "x": x, "spherical": expected}), || {
                format!("u = ({})\nx = ({})\nspherical = ({})", fmt_vec(&u), fmt_vec(&x), fmt_vec(&expected))
            }))
        }
        Command::Cartan { n, emit: path } => {
            let set = extracted_generators(*n)?;
            let dim = n * (n - 1) / 2;
            let rank = set.rank();
            let closure = lie_closure_rank(&set);
            let summary = json!({"n": n, "generators": set.len(), "rank": rank, "lie_closure_rank": closure, "dimension": dim});
            if let Some(p) = path {
                let doc = emit::emit(EmitTarget::Generators(*n))?;
                std::fs::write(p, pretty(&doc)).map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display())))?;
            }
            let output = render(fmt, summary, || {
                format!("so({n}): {} generators, rank {rank}, Lie closure rank {closure} of {dim}", set.len())
            });
            Outcome { output, code: passed(rank == dim && closure == dim) }
        }
        Command::So5Table => {
            let t = commutator_table(&so5_generators());
            let output = render(fmt, serde_json::to_value(&t).expect("table serializes"), || t.to_string());
            Outcome { output, code: passed(t.is_closed()) }
        }
        Command::Bispherical { l1, l2, trials } => {
            let r = verify_bispherical_product(*l1, *l2, &mut rng, *trials)?;
            let good = r.max_residual < PRODUCT_RULE_TOL && r.max_unitarity_residual < UNITARITY_TOL;
            let output = render(fmt, json!({"passed": good, "report": r}), || {
                format!(
                    "l1={l1} l2={l2}: max residual {}, max unitarity residual {}",
                    sci(r.max_residual),
                    sci(r.max_unitarity_residual)
                )
            });
            Outcome { output, code: passed(good) }
        }
        Command::VerifyAll { corrupt, skip_laplace } => {
            let report = cmd_verify_all(SuiteOptions {
                seed: cli.seed,
                include_corrupted: *corrupt,
                skip_laplace: *skip_laplace,
            });
            let output = render(fmt, serde_json::to_value(&report).expect("report serializes"), || {
                report
                    .cases
                    .iter()
                    .map(|c| {
                        format!(
                            "{} {} ({} ms): {}",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.elapsed_ms,
                            c.residual_summary
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Outcome { output, code: passed(report.all_passed()) }
        }
        Command::Emit { target, check } => {
            let doc = emit::emit(*target)?;
            let good = !*check || emit::round_trip(*target, &doc)?;
            Outcome { output: pretty(&doc), code: passed(good) }
        }
    })
}

/// Sends `outcome` to `--out` or standard output. Returns the exit code.
pub fn deliver(cli: &Cli, outcome: &Outcome) -> i32 {
    if outcome.code == EXIT_USAGE {
        eprintln!("{}", outcome.output);
        return EXIT_USAGE;
    }
    match &cli.out {
        Some(path) => match std::fs::write(path, format!("{}\n", outcome.output)) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_FAIL
            }
        },
        None => {
            println!("{}", outcome.output);
            outcome.code
        }
    }
}
