//! End-to-end behaviour of the `mha` binary.

use std::path::Path;
use std::process::{Command, Output};

fn mha(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mha"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn builtins_verify_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "builtin:kg-s3",
        "builtin:group-algebra-s3",
        "builtin:constant-cz2-s3",
        "builtin:pairing-gacs3",
    ] {
        let o = mha(&["verify", name], dir.path());
        assert_eq!(
            code(&o),
            0,
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let text = String::from_utf8_lossy(&o.stdout);
        assert!(text.contains("0 failed: PASS"), "{name}");
        assert!(text.contains("report digest: "), "{name}");
    }
}

#[test]
fn infinite_group_needs_a_window() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&mha(&["verify", "builtin:kg-integers"], dir.path())),
        2
    );
    let o = mha(
        &["verify", "builtin:kg-integers", "--window", "-3..3"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("window: "));
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"format\": \"mha-spec/1\"").unwrap();
    assert_eq!(code(&mha(&["verify", "bad.json"], dir.path())), 2);
    assert_eq!(code(&mha(&["verify", "missing.json"], dir.path())), 2);
    assert_eq!(code(&mha(&["verify", "builtin:nope"], dir.path())), 2);
}

#[test]
fn broken_structure_fails_its_checks() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&mha(
            &["export", "builtin:kg-z2", "--out", "kg.json"],
            dir.path()
        )),
        0
    );
    let path = dir.path().join("kg.json");
    let mut spec: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let counit = spec["counit"].as_array_mut().expect("counit terms");
    let term = counit.first_mut().expect("a counit term");
    term[2] = serde_json::json!("2");
    std::fs::write(&path, serde_json::to_vec_pretty(&spec).unwrap()).unwrap();
    let o = mha(&["verify", "kg.json", "--format", "structured"], dir.path());
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["failed"].as_u64().unwrap() > 0);
}

#[test]
fn exports_are_stable_and_reports_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["kg-s3", "constant-cz2-s3", "pairing-gacs3"] {
        let first = format!("{name}.json");
        let second = format!("{name}.again.json");
        assert_eq!(
            code(&mha(
                &["export", &format!("builtin:{name}"), "--out", &first],
                d
            )),
            0
        );
        assert_eq!(code(&mha(&["export", &first, "--out", &second], d)), 0);
        assert_eq!(
            std::fs::read(d.join(&first)).unwrap(),
            std::fs::read(d.join(&second)).unwrap(),
            "{name}"
        );
        let a = mha(&["verify", &first, "--format", "structured"], d);
        let b = mha(
            &[
                "verify",
                &second,
                "--format",
                "structured",
                "--report",
                "r.json",
            ],
            d,
        );
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert_eq!(std::fs::read(d.join("r.json")).unwrap(), b.stdout);
    }
}

#[test]
fn dual_and_deform_write_verifiable_specs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&mha(&["dual", "builtin:kg-z2", "--out", "dual.json"], d)),
        0
    );
    assert_eq!(code(&mha(&["verify", "dual.json"], d)), 0);
    assert_eq!(
        code(&mha(
            &[
                "deform",
                "builtin:kg-s3",
                "--action",
                "adjoint",
                "--out",
                "deformed.json"
            ],
            d
        )),
        0
    );
    assert_eq!(code(&mha(&["verify", "deformed.json"], d)), 0);
    assert_eq!(
        code(&mha(
            &[
                "double",
                "--pair",
                "dual.json",
                "--action",
                "trivial",
                "--out",
                "double.json"
            ],
            d
        )),
        0
    );
    assert_eq!(code(&mha(&["verify", "double.json"], d)), 0);
}
