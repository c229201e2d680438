use std::process::{Command, Output};

use jimm_core::{BigRational, BigSurd};
use serde_json::Value;

fn jimm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jimm")).args(args).env_remove("JIMM_MAX_BITS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Runs with `--json` and expects success.
fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = jimm(&all);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn out(v: &Value, key: &str) -> String {
    v["output"][key].as_str().unwrap_or_else(|| panic!("no string output.{key} in {v}")).to_string()
}

fn surd(s: &str) -> BigSurd {
    s.parse().unwrap()
}

#[test]
fn rational_pair_and_single() {
    let v = json(&["rational", "1"]);
    assert_eq!(out(&v, "kind"), "pair");
    let mut got = [surd(&out(&v, "lower")), surd(&out(&v, "upper"))];
    got.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
    // {1 + phi, 1 / (1 + phi)}
    let one_plus_phi = surd("(3+sqrt(5))/2");
    assert!(got.contains(&one_plus_phi) && got.contains(&one_plus_phi.recip()));

    assert_eq!(out(&json(&["rational", "1", "--single"]), "value"), "1");
    assert_eq!(out(&json(&["rational", "3", "--single"]), "value"), "3/2");
    let neg = out(&json(&["rational", "-1/2", "--single"]), "value");
    assert_eq!(neg.parse::<BigRational>().unwrap(), "-2".parse().unwrap());
}

#[test]
fn surd_examples() {
    for (input, want) in [("(0+1*sqrt(2))/1", "(1+1*sqrt(2))/1"), ("(3+5*sqrt(2))/7", "(-3+2*sqrt(95))/7")] {
        let v = json(&["surd", input]);
        assert_eq!(out(&v, "kind"), "surd");
        assert_eq!(v["output"]["noble"], Value::Bool(false));
        // the printed value parses back to the same surd
        assert_eq!(surd(&out(&v, "value")), surd(want));
        assert_eq!(out(&v, "value"), want);
    }
    let v = json(&["surd", "(1+1*sqrt(5))/2"]);
    assert_eq!(out(&v, "kind"), "rational");
    assert_eq!(out(&v, "value"), "inf");
    assert_eq!(v["output"]["noble"], Value::Bool(true));
    let v = json(&["surd", "-sqrt(11)"]);
    assert_eq!(surd(&out(&v, "value")), surd("(15-sqrt(901))/26"));
}

#[test]
fn perfect_square_is_an_input_error() {
    let o = jimm(&["surd", "(1+sqrt(9))/2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("perfect square"));
    assert_eq!(code(&jimm(&["rational", "1/x"])), 2);
    assert_eq!(code(&jimm(&["matrix", "1", "2", "3", "4"])), 2);
    assert_eq!(code(&jimm(&["fixed-point", "I"])), 2);
    assert_eq!(code(&jimm(&["frobnicate"])), 2);
}

#[test]
fn constants_to_fifty_digits() {
    let pi = json(&["const", "pi", "--digits", "50"]);
    assert_eq!(out(&pi, "decimal"), "1.7237707925480276079699326494931025145558144289232");
    let first: Vec<i64> = pi["output"]["input_cf"]["terms"].as_array().unwrap()[..5]
        .iter()
        .map(|t| t.as_i64().unwrap())
        .collect();
    assert_eq!(first, [3, 7, 15, 1, 292]);
    let e = json(&["const", "e", "--digits", "50"]);
    assert_eq!(out(&e, "decimal"), "1.3105752928466255215822495496939143349712038085627");
}

#[test]
fn cube_root_of_two() {
    let v = json(&["algebraic", "-2,0,0,1", "--lo", "1", "--hi", "2", "--digits", "16"]);
    assert_eq!(out(&v, "decimal"), "2.784731558453639");
    let head: Vec<i64> =
        v["output"]["output_cf"]["terms"].as_array().unwrap()[..7].iter().map(|t| t.as_i64().unwrap()).collect();
    assert_eq!(head, [2, 1, 3, 1, 1, 1, 4]);
}

#[test]
fn budgets_exit_with_three() {
    assert_eq!(code(&jimm(&["const", "pi", "--digits", "50", "--terms", "2"])), 3);
    assert_eq!(code(&jimm(&["const", "pi", "--digits", "10", "--max-bits", "8"])), 3);
    let capped = Command::new(env!("CARGO_BIN_EXE_jimm"))
        .args(["const", "pi", "--digits", "10"])
        .env("JIMM_MAX_BITS", "8")
        .output()
        .unwrap();
    assert_eq!(code(&capped), 3);
    let bad = Command::new(env!("CARGO_BIN_EXE_jimm"))
        .args(["rational", "1"])
        .env("JIMM_MAX_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    assert_eq!(code(&jimm(&["surd", "sqrt(2)", "--max-bits", "2"])), 3);
    assert_eq!(code(&jimm(&["approx", "40", "--range", "0", "1", "--max-bits", "64"])), 3);
}

#[test]
fn dyer_image_of_a_matrix() {
    let v = json(&["matrix", "1", "2", "0", "1"]);
    assert_eq!(out(&v, "image"), "((2,1),(1,1))");
    assert_eq!(out(&v, "formula"), "(2x+1)/(x+1)");
    // S = VU goes to UVU, which is x -> -x
    let v = json(&["matrix", "0", "-1", "1", "0"]);
    assert_eq!(out(&v, "image"), "((1,0),(0,-1))");
}

#[test]
fn fixed_point_of_t() {
    for args in [&["fixed-point", "T"][..], &["fixed-point", "1", "1", "0", "1"][..]] {
        let v = json(args);
        assert_eq!(surd(&out(&v, "value")), surd("sqrt(2)"));
        assert_eq!(v["output"]["check"]["jimm"], "(1+1*sqrt(2))/1");
        assert_eq!(v["output"]["check"]["holds"], true);
    }
}

#[test]
fn approximant_csv() {
    let dir = tempfile::tempdir().unwrap();
    for tail in ["zeros", "ones"] {
        let path = dir.path().join(format!("theta_{tail}.csv"));
        let p = path.to_str().unwrap();
        let v = json(&["approx", "2", "--range", "0", "1", "--samples", "512", "--tail", tail, "--out", p]);
        assert_eq!(v["output"]["rows"], 512);
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,theta_n_x"));
        let rows: Vec<(BigRational, BigRational)> = lines
            .map(|l| {
                let (x, y) = l.split_once(',').unwrap();
                assert!(x.contains('/') && y.contains('/'), "{l}");
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        assert_eq!(rows.len(), 512);
        assert_eq!(rows[0].0, "0".parse().unwrap());
        assert_eq!(rows[511].0, "1".parse().unwrap());
        assert!(rows.iter().all(|(_, y)| !y.is_negative() && !y.is_infinite()));
    }
    let o = jimm(&["approx", "0", "--range", "1/2", "3/2", "--samples", "3"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "x,theta_n_x\n1/2,1/2\n1/1,1/1\n3/2,3/2\n");
}

#[test]
fn verify_all_passes() {
    let o = jimm(&["verify", "--suite", "all", "--trials", "1000", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8(o.stdout).unwrap();
    for suite in ["fe", "galois", "dual", "group", "tree"] {
        assert!(text.contains(&format!("{suite:<7} 1000 trials, 1000 passed, 0 failed")), "{text}");
    }
}

#[test]
fn verify_is_deterministic() {
    let run = || jimm(&["--json", "verify", "--suite", "fe", "--trials", "50", "--seed", "3"]).stdout;
    assert_eq!(run(), run());
    let v: Value = serde_json::from_slice(&run()).unwrap();
    assert_eq!(v["output"]["suites"][0]["passed"], 50);
}

#[test]
fn every_command_speaks_json() {
    let commands: [&[&str]; 8] = [
        &["rational", "2/3"],
        &["surd", "sqrt(3)"],
        &["const", "e", "--digits", "5"],
        &["algebraic", "-3,0,1", "--lo", "1", "--hi", "2", "--digits", "5"],
        &["matrix", "1", "1", "0", "1"],
        &["fixed-point", "T T"],
        &["approx", "1", "--range", "0", "1", "--samples", "3"],
        &["verify", "--suite", "group", "--trials", "5"],
    ];
    for args in commands {
        let v = json(args);
        assert_eq!(v["command"], args[0], "{v}");
        assert!(v["inputs"].is_object() && v["output"].is_object() && v["certification"].is_string());
    }
    let o = jimm(&["--json", "surd", "sqrt(4)"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 2);
}
