//! End-to-end checks of the `pvsieve` binary: output shapes, exit codes,
//! JSON round-trips, and the emitted CSV/SVG/certificate artifacts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvsieve"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pvsieve-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn sieve_prints_the_ladder_and_product() {
    let out = run(&["sieve", "--poly", "3,5,11", "--seq", "2,-1,4"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("f = [1, 33, 83, 3293]"), "{s}");
    assert!(s.contains("N = [0, 2, -31, 301]"), "{s}");
    assert!(s.contains("F(301) = 273319 = 83 \u{00d7} 3293"), "{s}");
}

#[test]
fn sieve_empty_sequence_is_trivial() {
    let out = run(&["sieve", "--poly", "1,1,41", "--seq", ""]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("f = [1]"), "{s}");
    assert!(!s.contains("F("), "no product line for the empty trace: {s}");
}

#[test]
fn sieve_binary_expansion_line() {
    let out = run(&["sieve", "--poly", "3,5,11", "--seq", "2,-1,4", "--binary-expand"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(
        s.contains("f_11(1, 0, 1, -1, 1, 0, 1, 0, 1, 0, 1) = 3293"),
        "{s}"
    );
}

#[test]
fn sieve_rejects_zero_entries_for_binary_expansion() {
    let out = run(&["sieve", "--poly", "3,5,11", "--seq", "2,0,4", "--binary-expand"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("zero"), "{}", stderr(&out));
}

#[test]
fn sieve_json_round_trips() {
    let out = run(&["sieve", "--poly", "1,1,41", "--seq", "1,1", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    // Reprint and reparse: identical value.
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["command"], "sieve");
    assert_eq!(v["polynomial"], serde_json::json!(["41", "1", "1"]));
    let r = &v["results"][0];
    assert_eq!(r["f"], serde_json::json!(["1", "43", "47"]));
    assert_eq!(r["value"], "2021");
    assert_eq!(r["pair"], serde_json::json!(["43", "47"]));
}

#[test]
fn factor_descends_the_euler_square() {
    let out = run(&["factor", "--poly", "1,1,41", "--n", "40", "--p", "41"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("seq = (-1, 1)"), "{s}");
    assert!(s.contains("F(40) = 1681 = 41 \u{00d7} 41"), "{s}");
    assert!(s.contains("check: N_2 = 40, |f_2| = 41"), "{s}");
}

#[test]
fn factor_trivial_presentation() {
    let out = run(&["factor", "--poly", "1,1,41", "--n", "0", "--p", "41"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("seq = (0)"), "{}", stdout(&out));
}

#[test]
fn factor_word_and_matrix_views() {
    let out = run(&[
        "factor", "--poly", "1,1,41", "--n", "40", "--p", "41", "--matrix", "--word",
    ]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("A_0 = (1, 0; 0, 1)"), "{s}");
    assert!(s.contains("word = T^1 U^-1"), "{s}");
    // Non-monic leading coefficient cannot have a word.
    let out = run(&["factor", "--poly", "3,5,11", "--n", "301", "--p", "83", "--word"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn factor_stall_exits_4() {
    let out = run(&["factor", "--poly", "1,1,7", "--n", "1", "--p", "3"]);
    assert_eq!(code(&out), 4);
    assert!(
        stderr(&out).contains("criterion violated at n = 1"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn factor_bad_divisor_exits_2() {
    let out = run(&["factor", "--poly", "1,1,41", "--n", "0", "--p", "7"]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("not a positive divisor"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn verify_lemma_pass_shape() {
    let out = run(&["verify-rf", "--poly", "1,1,41", "--mode", "lemma"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("PASS"), "{s}");
    assert!(s.contains("I = [-4, 3] \u{222a} [-41, 41]"), "{s}");
    assert!(s.contains("checked = [-43, 43]"), "{s}");
}

#[test]
fn verify_range_fail_exits_1() {
    let out = run(&["verify-rf", "--poly", "1,1,7", "--mode", "range", "--lo", "-5", "--hi", "5"]);
    assert_eq!(code(&out), 1);
    let s = stdout(&out);
    assert!(s.contains("FAIL: criterion violated at n = -2"), "{s}");
    assert!(s.contains("no witness for pairs (3, 3)"), "{s}");
}

#[test]
fn verify_no_closure_bound_exits_2() {
    let out = run(&["verify-rf", "--poly", "5,0,1", "--mode", "lemma"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_json_fail_payload() {
    let out = run(&[
        "verify-rf", "--poly", "1,1,7", "--mode", "range", "--lo", "-5", "--hi", "5", "--json",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["status"], "fail");
    assert_eq!(r["kind"], "missing-witness");
    assert_eq!(r["at"], "-2");
    assert_eq!(r["missing"], serde_json::json!([["3", "3"]]));
}

#[test]
fn verify_certificate_is_stable_and_parallel_invariant() {
    let p1 = tmp("cert1.txt");
    let p3 = tmp("cert3.txt");
    let out = run(&[
        "verify-rf", "--poly", "2,0,29", "--mode", "lemma",
        "--emit-cert", p1.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "verify-rf", "--poly", "2,0,29", "--mode", "lemma",
        "--emit-cert", p3.to_str().unwrap(), "--jobs", "3",
    ]);
    assert_eq!(code(&out), 0);
    let a = std::fs::read_to_string(&p1).unwrap();
    let b = std::fs::read_to_string(&p3).unwrap();
    assert_eq!(a, b, "jobs must not change the certificate");
    assert!(a.starts_with("pvsieve-certificate v1\npoly: 29,0,2\nmode: lemma\n"));
    assert!(a.ends_with("end\n"));
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p3);
}

#[test]
fn conic_report_lists_verified_rows() {
    let out = run(&["conic", "--poly", "1,-1,5", "--n", "20", "--pell"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("conic: X^2 - XY + 5Y^2 + X - 20Y = 0"), "{s}");
    assert!(s.contains("8 lattice points:"), "{s}");
    assert!(s.contains("(3, 4)  M = (1, 1; 3, 4)  385 = 5 \u{00d7} 77"), "{s}");
    assert!(s.contains("(0, 0)  exceptional  385 = 1 \u{00d7} 385"), "{s}");
    // The trivial factorization reduces to U = 2an + b, V = 1.
    assert!(s.contains("(0, 0)  exceptional  385 = 1 \u{00d7} 385  pell (U, V) = (39, 1)"), "{s}");
}

#[test]
fn conic_csv_golden() {
    let path = tmp("pts.csv");
    let out = run(&[
        "conic", "--poly", "1,-1,5", "--n", "20", "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        csv,
        "X,Y,p,q,n\n\
         -4,2,35,11,20\n\
         -3,3,55,7,20\n\
         -1,0,385,1,20\n\
         0,0,1,385,20\n\
         0,4,77,5,20\n\
         3,4,5,77,20\n\
         5,2,11,35,20\n\
         5,3,7,55,20\n"
    );
    let _ = std::fs::remove_file(path);
}

#[test]
fn conic_svg_is_wellformed() {
    let path = tmp("pts.svg");
    let out = run(&[
        "conic", "--poly", "1,-1,5", "--n", "20", "--svg", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 8);
    assert_eq!(svg.matches("<text").count(), 8 + 1); // labels + caption
    assert!(svg.matches("<polyline").count() >= 1);
    let _ = std::fs::remove_file(path);
}

#[test]
fn conic_hyperbola_requires_box() {
    let out = run(&["conic", "--poly", "1,0,-2", "--n", "3"]);
    assert_eq!(code(&out), 2);
    let out = run(&["conic", "--poly", "1,0,-2", "--n", "3", "--box", "50"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("lattice point"), "{}", stdout(&out));
}

#[test]
fn conic_json_round_trips() {
    let out = run(&["conic", "--poly", "1,-1,5", "--n", "20", "--pell", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["command"], "conic");
    let pts = v["results"][0]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 8);
    let origin = pts.iter().find(|p| p["x"] == "0" && p["y"] == "0").unwrap();
    assert_eq!(origin["p"], "1");
    assert_eq!(origin["q"], "385");
    assert!(origin.get("matrix").is_none(), "exceptional points have no lift");
    assert_eq!(origin["pell"], serde_json::json!(["39", "1"]));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["sieve", "--poly", "1,2", "--seq", "1"]);
    assert_eq!(code(&out), 2);
    let out = run(&["sieve", "--poly", "1,1,41"]); // missing --seq
    assert_eq!(code(&out), 2);
    let out = run(&["verify-rf", "--poly", "1,1,41", "--mode", "range"]); // no bounds
    assert_eq!(code(&out), 2);
}

#[test]
fn internal_defect_exits_3() {
    let out = run(&["selftest-defect"]);
    assert_eq!(code(&out), 3);
    assert!(
        stderr(&out).contains("internal identity defect"),
        "{}",
        stderr(&out)
    );
}
