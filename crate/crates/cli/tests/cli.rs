use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], f: &NamedTempFile) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kduality"));
    let (sub, rest) = args.split_first().unwrap();
    cmd.arg(sub).arg(f.path()).args(rest);
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = "0 1 2\n";
const SPHERE: &str = "0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
const RP2: &str = "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 6 2\n2 3 5\n3 4 6\n4 5 2\n5 6 3\n6 2 4\n";

#[test]
fn info_lines() {
    assert_eq!(
        stdout(&run(&["info"], &file(TRIANGLE))),
        "f-vector 3,3,1; DK cells 19\n"
    );
    assert_eq!(stdout(&run(&["info"], &file("7\n"))), "f-vector 1; DK cells 1\n");
}

#[test]
fn malformed_line_is_a_usage_error() {
    let o = run(&["info"], &file("0 1\n1 two\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn unknown_selector_is_a_usage_error() {
    let o = run(&["homology", "--complex", "nerve"], &file(TRIANGLE));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homology_of_sphere_and_projective_plane() {
    let o = run(&["homology", "--colim", "--complex", "delta"], &file(SPHERE));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("delta colim: H0 = Z, H2 = Z\n"));
    let o = run(&["homology", "--json"], &file(RP2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["colim"]["groups"][1]["torsion"][0], "2");
    assert_eq!(
        stdout(&run(&["homology"], &file("0\n"))).lines().next(),
        Some("delta colim: H0 = Z")
    );
}

#[test]
fn per_object_dual_cells_are_contractible() {
    let o = run(
        &["homology", "--per-object", "--complex", "cdk", "--json"],
        &file(TRIANGLE),
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let objs = v["per_object"].as_array().unwrap();
    assert_eq!(objs.len(), 19);
    for o in objs {
        let groups = o["homology"]["groups"].as_array().unwrap();
        let nonzero: Vec<_> = groups
            .iter()
            .filter(|g| g["betti"] != 0 || !g["torsion"].as_array().unwrap().is_empty())
            .collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0]["degree"], 0);
    }
}

#[test]
fn verify_triangle_passes_and_is_reproducible() {
    let f = file(TRIANGLE);
    let args = ["verify", "--samples", "5", "--seed", "7", "--json"];
    let a = run(&args, &f);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["summary"]["pass"].as_u64().unwrap() >= 30);
    assert_eq!(v["summary"]["fail"], 0);
    let b = run(&args, &f);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_point_and_zero_samples() {
    let f = file("0\n");
    assert_eq!(run(&["verify", "--samples", "1"], &f).status.code(), Some(0));
    let o = run(&["verify", "--samples", "0", "--variant", "kop", "--json"], &f);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"][0]["status"], "skipped");
    assert_eq!(v["variants"], serde_json::json!(["kop"]));
}

#[test]
fn injected_fault_fails_on_the_involution_first() {
    let o = run(
        &["verify", "--samples", "3", "--inject-sign-fault", "--json"],
        &file(TRIANGLE),
    );
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let first = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .unwrap();
    assert_eq!(first["id"], "kop/tau-involution");
    assert!(String::from_utf8_lossy(&o.stderr).contains("kop/tau-involution"));
}

#[test]
fn file_dissections_are_checked() {
    let text = "0 1\n[ambient]\n10 11\n11 12\n[family arc k]\n0 1 : 10 11; 11 12\n0 : 10\n1 : 12\n";
    let o = run(&["verify", "--samples", "0", "--json"], &file(text));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"dissection/file-arc/origin"));

    // both ends on 10: X(0) ∩ X(1) should be empty
    let broken = "0 1\n[ambient]\n10 11\n11 12\n[family arc k]\n0 1 : 10 11; 11 12\n0 : 10\n1 : 10\n";
    assert_eq!(run(&["verify", "--samples", "0"], &file(broken)).status.code(), Some(1));
}
