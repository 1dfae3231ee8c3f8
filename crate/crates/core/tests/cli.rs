use std::path::PathBuf;

use pi_witt::cli::{run, Outcome};
use serde_json::Value;

fn config(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("configs");
    p.push(format!("{name}.toml"));
    p.to_string_lossy().into_owned()
}

fn pi_witt(args: &[&str]) -> Outcome {
    run(std::iter::once("pi-witt").chain(args.iter().copied()))
}

#[test]
fn worked_examples() {
    let out = pi_witt(&["--config", &config("f2t"), "delta", "exp", "--n", "2", "t"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "(t, 1+t, t+t^2)\n"));
    let out = pi_witt(&["--config", &config("z2"), "witt", "add", "(1,0)", "(1,0)"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "(2, -1)\n"));
}

#[test]
fn universal_sum_polynomials() {
    let out = pi_witt(&[
        "--config",
        &config("z2"),
        "witt",
        "universal",
        "--n",
        "1",
        "--op",
        "add",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "S_0 = x0 + y0\nS_1 = -x0*y0 + x1 + y1\n");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(pi_witt(&["witt"]).code, 2);
    assert_eq!(pi_witt(&["frobnicate"]).code, 2);
    let out = pi_witt(&["witt", "add", "(u, t)", "(u, v)"]);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr
            .starts_with("error: witt add: parse error at position"),
        "{}",
        out.stderr
    );
    assert_eq!(pi_witt(&["verify", "no_such_suite"]).code, 2);
    assert_eq!(
        pi_witt(&["--config", "/nonexistent.toml", "ring", "info"]).code,
        2
    );
    let out = pi_witt(&["--config", &config("z2-u"), "verify", "modpip"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("modpip"));
    assert_eq!(pi_witt(&["--help"]).code, 0);
}

#[test]
fn text_output_round_trips() {
    let out = pi_witt(&[
        "--config",
        &config("f4t-u"),
        "witt",
        "mul",
        "(z*u + t, 1+z)",
        "(u^2, z*t)",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let printed = out.stdout.trim();
    let again = pi_witt(&[
        "--config",
        &config("f4t-u"),
        "witt",
        "add",
        printed,
        "(0, 0)",
    ]);
    assert_eq!(again.stdout.trim(), printed);

    let out = pi_witt(&["--config", &config("zi-u"), "witt", "ghost", "(u + i, 1-i)"]);
    let ghost = out.stdout.trim().to_string();
    let back = pi_witt(&["--config", &config("zi-u"), "witt", "unghost", &ghost]);
    assert_eq!(back.stdout.trim(), "(u + i, 1-i)");
}

#[test]
fn json_outputs_carry_schema() {
    for args in [
        vec!["ring", "info", "--json"],
        vec!["witt", "teich", "--n", "3", "u + t", "--json"],
        vec!["delta", "taylor", "--n", "3", "u^3", "--json"],
        vec!["delta", "terms", "--n", "2", "t*u", "--json"],
        vec!["delta", "constants", "--bounds", "u=1,t=1", "--json"],
    ] {
        let out = pi_witt(&args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema"], 1, "{args:?}");
    }
}

#[test]
fn constants_listing() {
    let out = pi_witt(&["delta", "constants", "--bounds", "u=1,t=2"]);
    assert_eq!(out.stdout, "0\n1\nu\nu + 1\n");
}

#[test]
fn verify_exit_codes_follow_verdicts() {
    let out = pi_witt(&[
        "--config",
        &config("z3-u"),
        "verify",
        "all",
        "--trials",
        "5",
        "--json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let reports: Vec<Value> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(reports.len(), 17);
    let skipped = reports.iter().filter(|r| r["verdict"] == "SKIPPED").count();
    assert_eq!(skipped, 3);

    let out = pi_witt(&["verify", "ghost_hom", "--trials", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("ghost_hom"));

    let out = pi_witt(&["verify", "thm_val", "--trials", "0"]);
    assert_eq!(out.code, 2);
}

#[test]
fn seeds_are_deterministic() {
    let strip = |s: &str| {
        let mut v: Vec<Value> = serde_json::from_str(s).unwrap();
        for r in &mut v {
            r.as_object_mut().unwrap().remove("wall_time_ms");
        }
        serde_json::to_string(&v).unwrap()
    };
    let a = pi_witt(&[
        "verify", "modinj", "--seed", "7", "--trials", "20", "--json",
    ]);
    let b = pi_witt(&[
        "verify", "modinj", "--seed", "7", "--trials", "20", "--json",
    ]);
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}
