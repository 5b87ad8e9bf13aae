use std::process::{Command, Output};

fn spindex(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spindex"));
    cmd.args(args).env_remove("SPINDEX_THREADS");
    if let Some(t) = threads {
        cmd.env("SPINDEX_THREADS", t);
    }
    cmd.output().unwrap()
}

#[test]
fn j_delta_record() {
    let out = spindex(&["j-delta", "0", "0", "0", "--prec", "8"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["variable"], "q^(1/2)");
    assert_eq!(v["prec2"], 9);
    assert_eq!(
        v["terms"],
        serde_json::json!([[0, "1"], [2, "-1"], [4, "-2"], [6, "-2"], [8, "-2"]])
    );
}

#[test]
fn negative_arguments() {
    let out = spindex(&["j-fkb", "-1", "2", "0", "--prec", "6", "--output", "text"], None);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "J_fkb(-1,2,0) = -q^2 - q^3 + O(q^(7/2))\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(spindex(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(spindex(&["block", "theta", "1", "1", "3"], None).status.code(), Some(2));
    assert_eq!(
        spindex(&["tri", "info", "no-such-file.json"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        spindex(&["verify", "prop1", "--range", "1", "--prec", "20"], None)
            .status
            .code(),
        Some(0)
    );
    // Odd ν(S*) six-tuples do not approach the stated limit.
    let stab = spindex(
        &["stab-check", "--order", "8", "--shift-max", "8", "--max-color", "2"],
        None,
    );
    assert_eq!(stab.status.code(), Some(1));
    assert_eq!(
        spindex(&["fkb", "fig8-2tet", "--nmax", "4"], None).status.code(),
        Some(1)
    );
}

#[test]
fn thm1_reports_equality() {
    let out = spindex(
        &["verify", "thm1", "fig8-2tet", "--prec", "10", "--output", "text"],
        None,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("agree=true"), "{text}");
}

#[test]
fn machine_output_independent_of_threads() {
    let args = ["fkb", "fig8-3tet", "--prec", "8"];
    let one = spindex(&args, Some("1"));
    let four = spindex(&args, Some("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn tri_info_from_file() {
    let dir = std::env::temp_dir().join(format!("spindex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig8.json");
    let json = spindex_core::Triangulation::fixture("fig8-2tet").unwrap().to_json();
    std::fs::write(&path, json).unwrap();
    let from_file = spindex(&["tri", "info", path.to_str().unwrap()], None);
    let from_name = spindex(&["tri", "info", "fig8-2tet"], None);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_name.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
