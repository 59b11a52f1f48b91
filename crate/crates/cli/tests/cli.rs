//! End-to-end CLI checks: exit codes, report output, JSON emission.

use std::process::Command;

fn singlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_singlab"))
}

#[test]
fn run_reports_a_morse_point() {
    let out = singlab()
        .args(["run", "--f", "x^2+y^2", "--vars", "x,y"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mu: 1"));
    assert!(text.contains("spectrum: 0:1"));
}

#[test]
fn run_emits_json() {
    let dir = std::env::temp_dir().join("singlab_cli_json");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = singlab()
        .args([
            "run",
            "--f",
            "x^3+y^3",
            "--vars",
            "x,y",
            "--spectrum",
            "qh:1/3,1/3",
            "--json",
            path.to_str().unwrap(),
            "--checks",
            "full",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["mu"], 4);
    assert_eq!(value["verifications"]["oracle_mu_matches"], true);
    // rationals are strings of the form p/q
    assert_eq!(value["spectrum"][0][0], "-1/3");
}

#[test]
fn input_error_is_exit_two() {
    let out = singlab()
        .args(["run", "--f", "x^2+q", "--vars", "x,y"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn refused_germ_is_exit_three() {
    // non-isolated singularity
    let out = singlab()
        .args(["run", "--f", "x^2y^2", "--vars", "x,y"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("non-isolated"));
    // outside the supported spectrum classes
    let out = singlab()
        .args(["run", "--f", "x^4+2x^2y^2+y^4", "--vars", "x,y"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn external_spectrum_accepted() {
    let dir = std::env::temp_dir().join("singlab_cli_external");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.txt");
    std::fs::write(&path, "-1/3:1\n0:2\n1/3:1\n").unwrap();
    let out = singlab()
        .args([
            "run",
            "--f",
            "x^3+y^3",
            "--vars",
            "x,y",
            "--spectrum",
            &format!("external:{}", path.display()),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("spectrum: -1/3:1 0:2 1/3:1"));
    assert!(text.contains("n_jordan_type: (none)"));
}

#[test]
fn bad_spectrum_flag_is_exit_two() {
    let out = singlab()
        .args([
            "run",
            "--f",
            "x^2+y^2",
            "--vars",
            "x,y",
            "--spectrum",
            "magic",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
