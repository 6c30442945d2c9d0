use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgames")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json from {args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

fn entries(v: &Value) -> Vec<Vec<(f64, f64)>> {
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|z| (z[0].as_f64().unwrap(), z[1].as_f64().unwrap())).collect())
        .collect()
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() <= 1e-9 && (a.1 - b.1).abs() <= 1e-9
}

fn is_perm(v: &Value, f: impl Fn(usize) -> usize) -> bool {
    let e = entries(v);
    e.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, &z)| close(z, if f(i) == j { (1.0, 0.0) } else { (0.0, 0.0) }))
    })
}

#[test]
fn demo_sqrt_not() {
    let (code, v) = json(&["demo", "sqrt-not"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    let rows = v["interactions"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    // z² on the identity pair, z̄² on the NOT pair, zz̄ = 1/2 on mixed ones
    let weight = |seq: &str| {
        let r = rows.iter().find(|r| r["moves"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect::<Vec<_>>().join(" ") == seq).unwrap();
        (r["weight"][0].as_f64().unwrap(), r["weight"][1].as_f64().unwrap())
    };
    assert!(close(weight("⊥_3 ⊥_2 ⊥_1 tt_1 tt_2 tt_3"), (0.0, 0.5)));
    assert!(close(weight("⊥_3 ⊥_2 ⊥_1 tt_1 ff_2 tt_3"), (0.0, -0.5)));
    assert!(close(weight("⊥_3 ⊥_2 ⊥_1 tt_1 tt_2 ff_3"), (0.5, 0.0)));
    assert!(is_perm(&v["matrix"], |x| 1 - x));
}

#[test]
fn demo_sqrt_twist() {
    let (code, v) = json(&["demo", "sqrt-twist"]);
    assert_eq!(code, 0);
    assert_eq!(v["unitary"], true);
    assert!(is_perm(&v["matrix"], |x| [0, 2, 1, 3][x]));
}

#[test]
fn demo_toffoli() {
    let (code, v) = json(&["demo", "toffoli"]);
    assert_eq!(code, 0);
    assert!(is_perm(&v["matrix"], |x| if x >= 6 { x ^ 1 } else { x }));
    assert!(is_perm(&v["cnot"], |x| if x >= 2 { x ^ 1 } else { x }));
}

#[test]
fn demo_schwinger() {
    let (code, v) = json(&["demo", "schwinger", "5"]);
    assert_eq!(code, 0);
    assert!(is_perm(&v["shift"], |x| (x + 4) % 5));
    let clock = entries(&v["clock"]);
    for (k, row) in clock.iter().enumerate() {
        let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
        assert!(close(row[k], (t.cos(), t.sin())));
    }
}

#[test]
fn matrix_and_eq() {
    let (code, v) = json(&["matrix", "id[Bool]"]);
    assert_eq!(code, 0);
    assert!(is_perm(&v, |x| x));
    let (code, v) = json(&["eq", "sqrtnot ; sqrtnot", "perm[1]{0->1,1->0}"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    let (code, v) = json(&["eq", "not", "id[QBit]"]);
    assert_eq!(code, 2);
    assert_eq!(v["equal"], false);
}

#[test]
fn games_and_positions() {
    let (code, v) = json(&["positions", "Bool * Bool"]);
    assert_eq!(code, 0);
    assert_eq!(v["positions"].as_array().unwrap().len(), 8);
    let (code, v) = json(&["game", "Bool -o Bool"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([2, 2]));
    assert_eq!(v["axioms"]["alternation"]["status"], "pass");
}

#[test]
fn check_reports() {
    let (code, v) = json(&["check", "sqrtnot"]);
    assert_eq!(code, 0);
    assert_eq!(v["unitary"], true);
    let (code, v) = json(&["check", "injl[Bool,Bool]"]);
    assert_eq!(code, 0);
    assert_eq!(v["unitary"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["matrix", "id[Bool"]).status.code(), Some(1));
    assert_eq!(run(&["matrix", "id[Bool] ; not"]).status.code(), Some(1));
    assert_eq!(run(&["game", "Bool -o"]).status.code(), Some(1));
    assert_eq!(run(&["demo", "nothing"]).status.code(), Some(1));
    let out = run(&["matrix", "toffoli", "--max-states", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
