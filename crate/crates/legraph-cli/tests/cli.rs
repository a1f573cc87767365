use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .display()
        .to_string()
}

fn legraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legraph"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theta_is_undetermined() {
    let o = legraph(&["simple", &corpus("theta.lg")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("simple: undetermined"));
}

#[test]
fn a_file_is_isotopic_to_itself() {
    for f in ["theta.lg", "k4_chords.lg", "theta_positive.lg"] {
        let o = legraph(&["isotopic", &corpus(f), &corpus(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}");
    }
}

#[test]
fn oracle_three_has_five_matchings() {
    let o = legraph(&["--json", "oracle", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witnesses"]["matchings"], 5);
    assert_eq!(v["tables"]["classes"]["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn mirror_differs_by_ribbon() {
    let o = legraph(&[
        "--json",
        "isotopic",
        &corpus("theta.lg"),
        &corpus("theta_mirror.lg"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "distinct");
    assert_eq!(v["witnesses"]["difference"], "oriented ribbon");
}

#[test]
fn reduce_prints_a_readable_presentation() {
    let o = legraph(&["--json", "reduce", &corpus("theta_positive.lg")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = v["witnesses"]["presentation"].as_str().unwrap();
    let doc = legraph_cli::parse(text).unwrap();
    assert!(doc.presentation.in_p0());
    assert_eq!(legraph_cli::serialize(&doc.presentation, None), text);
}

#[test]
fn input_errors_exit_two() {
    let o = legraph(&["invariants", &corpus("bad_parity.lg")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 8"), "{err}");
    assert_eq!(legraph(&["simple", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(legraph(&["frobnicate"]).status.code(), Some(2));
}
