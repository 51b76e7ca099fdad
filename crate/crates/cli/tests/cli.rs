use std::collections::BTreeMap;
use std::process::{Command, Output};

use moy_core::diagram::{builtin, parse_diagram, Coloring};
use moy_core::homfly::{homfly_series, HomflyCoeff, Truncation};
use moy_core::qexact::QLaurent;
use moy_core::statesum::eval_table;
use serde_json::Value;

fn moy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moy"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_unknot() {
    let o = moy(&["eval", "unknot", "--N", "2", "--color", "0=1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "q^{1/2} + q^{-1/2}\n");
}

#[test]
fn check_suites_pass() {
    let o = moy(&["check", "tetrahedron", "--suite", "thm2", "--N", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
    assert!(!stdout(&o).contains("FAIL"));
    for suite in ["thm1", "weights", "mu"] {
        assert_eq!(
            code(&moy(&["check", "theta", "--suite", suite, "--N", "2"])),
            0
        );
    }
    assert_eq!(
        code(&moy(&["check", "unknot", "--suite", "thm3", "--N", "2"])),
        0
    );
}

#[test]
fn exit_codes() {
    let o = moy(&["eval", "theta", "--N", "2", "--color", "0=1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex"));
    assert_eq!(
        code(&moy(&["eval", "theta", "--N", "2", "--color", "9=1"])),
        2
    );
    assert_eq!(code(&moy(&["eval", "no-such-diagram", "--N", "2"])), 2);
    assert_eq!(
        code(&moy(&[
            "homfly",
            "tetrahedron",
            "--max-x-degree",
            "1",
            "--q-order",
            "4"
        ])),
        2
    );
    assert_eq!(
        code(&moy(&["check", "theta", "--suite", "thm9", "--N", "2"])),
        1
    );
    assert_eq!(code(&moy(&["eval", "theta"])), 1);
    assert_eq!(code(&moy(&["frobnicate"])), 1);
    assert_eq!(code(&moy(&["--help"])), 0);
}

#[test]
fn builtin_round_trip_through_a_file() {
    let o = moy(&["builtin", "theta"]);
    assert_eq!(code(&o), 0);
    let d = parse_diagram(&stdout(&o)).unwrap();
    assert_eq!(d, builtin("theta").unwrap());
    let path = std::env::temp_dir().join(format!("moy-cli-theta-{}.json", std::process::id()));
    std::fs::write(&path, stdout(&o)).unwrap();
    let from_file = moy(&["table", path.to_str().unwrap(), "--N", "2"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        stdout(&from_file),
        stdout(&moy(&["table", "theta", "--N", "2"]))
    );
    assert_eq!(code(&moy(&["builtin", "square"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "tetrahedron", "--N", "2"][..],
        &["cycles", "theta", "--json"][..],
        &[
            "homfly",
            "theta",
            "--max-x-degree",
            "2",
            "--q-order",
            "6",
            "--json",
        ][..],
    ] {
        assert_eq!(moy(args).stdout, moy(args).stdout);
    }
}

fn parse_entries<V: serde::de::DeserializeOwned>(v: &Value) -> BTreeMap<Coloring, V> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                serde_json::from_value(e["coloring"].clone()).unwrap(),
                serde_json::from_value(e["value"].clone()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn structured_tables_round_trip() {
    let d = builtin("tetrahedron").unwrap();
    let o = moy(&["table", "tetrahedron", "--N", "3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let t: BTreeMap<Coloring, QLaurent> = parse_entries(&v);
    assert_eq!(t, eval_table(&d, 3).unwrap());

    let o = moy(&["series", "tetrahedron", "--N", "3", "--check", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(parse_entries::<QLaurent>(&v["table"]), t);
    assert!(v["report"]["lines"]
        .as_array()
        .unwrap()
        .iter()
        .all(|l| l["pass"] == true));

    let theta = builtin("theta").unwrap();
    let tr = Truncation {
        max_degree: 2,
        q_order: 6,
    };
    let o = moy(&[
        "homfly",
        "theta",
        "--max-x-degree",
        "2",
        "--q-order",
        "6",
        "--check",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let got: BTreeMap<Coloring, HomflyCoeff> = parse_entries(&v["table"]);
    assert_eq!(got, homfly_series(&theta, tr).unwrap().table);
}

#[test]
fn eval_json() {
    let o = moy(&["eval", "unknot", "--N", "3", "--color", "0=1", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let p: QLaurent = serde_json::from_value(v["value"].clone()).unwrap();
    assert_eq!(p, moy_core::qexact::qbinom(3, 1).unwrap());
}
