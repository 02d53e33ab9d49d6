use std::process::Command;

use clap::Parser;
use hurwitz_cli::emit::{emit, round_trip, EmitTarget};
use hurwitz_cli::{run, Cli, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use hurwitz_core::ksmap::Side;
use serde_json::Value;

fn outcome(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("hurwitz").chain(args.iter().copied())).expect("arguments parse");
    let o = run(&cli);
    (o.code, o.output)
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn hurwitz_symbolic_entries_are_polynomial_strings() {
    let (code, out) = outcome(&["hurwitz", "--n", "8"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = &v["matrix"]["rows"];
    assert_eq!(rows[0][0], "u1");
    assert_eq!(rows.as_array().unwrap().len(), 8);
    assert!(rows.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).any(|e| e == "-u5"));
}

#[test]
fn numeric_cayley_is_orthonormal_when_asked() {
    let (code, out) = outcome(&["cayley", "--n", "3", "--u", "1,2,3,4", "--orthonormal"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["scale"], "1");
    assert_eq!(v["matrix"]["rows"][0][2], "1/3");
}

#[test]
fn ksmap_point_and_symbolic() {
    let (code, out) = outcome(&["ksmap", "--n", "3", "--side", "right", "--u", "0,0,0,1"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["x"].as_array().unwrap().len(), 3);
    let (code, out) = outcome(&["ksmap", "--n", "5", "--side", "left", "--symbolic"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 5);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(outcome(&["hurwitz", "--n", "6"]).0, EXIT_USAGE);
    assert_eq!(outcome(&["hurwitz", "--n", "4", "--u", "1,2"]).0, EXIT_USAGE);
    assert_eq!(outcome(&["cayley", "--n", "3", "--u", "1,x,3,4"]).0, EXIT_USAGE);
    assert_eq!(outcome(&["bispherical", "--l1", "3"]).0, EXIT_USAGE);
    assert_eq!(binary(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(binary(&["emit", "octonion:8"]).0, EXIT_USAGE);
}

#[test]
fn failing_verification_exits_one() {
    let (code, out) = outcome(&["verify-all", "--skip-laplace", "--corrupt"]);
    assert_eq!(code, EXIT_FAIL);
    let v: Value = serde_json::from_str(&out).unwrap();
    let corrupted = v["cases"].as_array().unwrap().iter().find(|c| c["name"] == "laplace.corrupted_map").unwrap();
    assert_eq!(corrupted["passed"], false);
}

#[test]
fn every_emit_target_round_trips() {
    let targets = [
        EmitTarget::Hurwitz(2),
        EmitTarget::Hurwitz(4),
        EmitTarget::Hurwitz(8),
        EmitTarget::Cayley(2),
        EmitTarget::Cayley(3),
        EmitTarget::Cayley(7),
        EmitTarget::Ksmap(3, Side::Left),
        EmitTarget::Ksmap(9, Side::Right),
        EmitTarget::Generators(4),
        EmitTarget::Generators(8),
        EmitTarget::So5Table,
        EmitTarget::Hadamard(1),
        EmitTarget::Hadamard(3),
    ];
    for t in targets {
        let doc = emit(t).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert!(round_trip(t, &reparsed).unwrap(), "{t:?}");
    }
    let gens = emit(EmitTarget::Generators(8)).unwrap();
    assert_eq!(gens["set"]["generators"].as_array().unwrap().len(), 28);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("hurwitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h2.json");
    let (code, stdout) = binary(&["emit", "hadamard:2", "--check", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["matrix"]["dim"], 4);
    let gen_path = dir.join("gens.json");
    let (code, _) = binary(&["cartan", "--n", "4", "--emit", gen_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&gen_path).unwrap()).unwrap();
    assert!(round_trip(EmitTarget::Generators(4), &v).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seeded_commands_are_reproducible() {
    let a = outcome(&["--seed", "7", "param", "--target", "r8r5", "--verify", "--trials", "50"]);
    let b = outcome(&["param", "--target", "r8r5", "--verify", "--trials", "50", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_PASS);
    let (code, out) = outcome(&["param", "--target", "r4r3", "--angles", "r=4,theta=0,psi=0,phi=0", "--side", "right"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    let x: Vec<f64> = v["x"].as_array().unwrap().iter().map(|e| e.as_f64().unwrap()).collect();
    let s: Vec<f64> = v["spherical"].as_array().unwrap().iter().map(|e| e.as_f64().unwrap()).collect();
    assert!(x.iter().zip(&s).all(|(p, q)| (p - q).abs() < 1e-12));
}

#[test]
fn text_format_for_tables() {
    let (code, out) = outcome(&["--format", "text", "so5-table"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("[S_1, S_2]"));
}
