use std::path::Path;
use std::process::{Command, Output};

use oml_core::catalog::{mo, write_lattice};

fn oml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oml"))
        .args(args)
        .output()
        .expect("run oml")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn file_spec(path: &Path) -> String {
    format!("file:{}", path.display())
}

#[test]
fn missing_lattice_is_a_usage_error() {
    let out = oml(&["validate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--lattice"));
}

#[test]
fn unknown_lattice_name_is_a_usage_error() {
    assert_eq!(oml(&["validate", "--lattice", "mo"]).status.code(), Some(2));
    assert_eq!(
        oml(&["validate", "--lattice", "torus"]).status.code(),
        Some(2)
    );
}

#[test]
fn size_limit_is_an_input_error() {
    let out = oml(&["validate", "--lattice", "bool4", "--max-size", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        oml(&["validate", "--lattice", "bool3", "--max-size", "8"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn validates_lattice_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("mo3.oml");
    write_lattice(&mo(3).unwrap(), &good).unwrap();
    let out = oml(&["validate", "--lattice", &file_spec(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "valid OML, 8 elements");

    let ring = dir.path().join("ring.oml");
    std::fs::write(
        &ring,
        "oml v1\nelements: 6\nnames: 0 p q q' p' 1\ncovers: 0 1\ncovers: 1 2\ncovers: 2 5\n\
         covers: 0 3\ncovers: 3 4\ncovers: 4 5\northo: 5 4 3 2 1 0\n",
    )
    .unwrap();
    let out = oml(&[
        "validate",
        "--lattice",
        &file_spec(&ring),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "NotOrthomodular");
    assert_eq!(v["witness"], serde_json::json!(["p", "q"]));

    let broken = dir.path().join("broken.oml");
    std::fs::write(&broken, "oml v1\nelements: 2\ncovers: 0 7\northo: 1 0\n").unwrap();
    let out = oml(&["validate", "--lattice", &file_spec(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn counterexample_uses_element_names() {
    let out = oml(&["identity", "--lattice", "mo2", "x <+l> y = y <+l> x"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("x=a, y=b"), "{text}");

    let out = oml(&[
        "identity",
        "--lattice",
        "mo2",
        "--format",
        "json",
        "x <+l> y = y <+l> x",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(
        v["counterexample"],
        serde_json::json!([["x", "a"], ["y", "b"]])
    );
    assert_eq!(v["lhs_value"], "a");
    assert_eq!(v["rhs_value"], "b");
    assert_eq!(v["tuples_checked"], 9);
}

#[test]
fn unnamed_elements_print_as_indices() {
    let out = oml(&["identity", "--lattice", "bool2", "x | y = x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("x=e0, y=e1"), "{}", stdout(&out));
}

#[test]
fn malformed_terms_exit_two() {
    for args in [
        &["identity", "--lattice", "mo2", "x <+l> y"][..],
        &["identity", "--lattice", "mo2", "x <q> y = x"],
        &["table", "--lattice", "mo2", "x & (y"],
        &["table", "--lattice", "mo2", "x & y & z"],
        &["table", "--lattice", "mo2", "0 | 1"],
    ] {
        let out = oml(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn one_variable_table() {
    let out = oml(&["table", "--lattice", "mo2", "--format", "json", "x'"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["columns"], serde_json::Value::Null);
    let col: Vec<&str> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[0].as_str().unwrap())
        .collect();
    assert_eq!(col, ["1", "a'", "b'", "a", "b", "0"]);
}

#[test]
fn relations_of_mo2() {
    let out = oml(&["relations", "--lattice", "mo2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Atoms from different blocks: perspective, not commuting.
    assert_eq!(v["commutes"][1][2], false);
    assert_eq!(v["perspective"][1][2], true);
    // a and a' share the complement b.
    assert_eq!(v["commutes"][1][3], true);
    assert_eq!(v["perspective"][1][3], true);
    assert_eq!(v["perspective"][1][0], false);
}

#[test]
fn congruences_of_a_product() {
    let out = oml(&["congruences", "--lattice", "prod:bool1,mo2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "{text}");
    assert_eq!(lines[4], "regular=true uniform=true permutable=true");
}

#[test]
fn free_lists_every_element() {
    let out = oml(&["free", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["x"], "1100:x");
    assert_eq!(v["y"], "1010:y");
    let kinds: Vec<&str> = v["sym_diffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap())
        .collect();
    assert_eq!(
        kinds,
        ["Nabla", "Delta", "PlusL", "PlusR", "PlusLp", "PlusRp"]
    );
    for s in v["sym_diffs"].as_array().unwrap() {
        assert_eq!(s["navara"], s["formula_value"]);
    }
}
