use std::path::PathBuf;
use std::process::Command;

use ratgraph::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["ratgraph"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn member_exit_codes() {
    let (code, out, _) = call(&["member", &fixture("anbn_tiling.json"), "aaabbb"]);
    assert_eq!((code, out.trim()), (0, "accept"));
    let (code, out, _) = call(&["member", &fixture("grid.json"), "ab"]);
    assert_eq!((code, out.trim()), (0, "accept"));
    let (code, out, _) = call(&["member", &fixture("anbn_ca.json"), ""]);
    assert_eq!((code, out.trim()), (1, "reject"));
    let (code, _, err) = call(&["member", &fixture("anbn_ca.json"), "abx"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = call(&["member", "/nonexistent.json", "a"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ratgraph");
    let ok = Command::new(bin).args(["member", &fixture("anbn_tiling.json"), "ab"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "accept");
    let no = Command::new(bin).args(["member", &fixture("anbn_tiling.json"), "aab"]).output().unwrap();
    assert_eq!(no.status.code(), Some(1));
    let bad = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn degree_table_of_doubling_graph() {
    let (code, out, _) = call(&["degree", &fixture("doubling.json"), "A", "--radius", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 4\n1 16\n2 256\n");
}

#[test]
fn classify_columns() {
    let (code, out, _) = call(&["classify", &fixture("anbn_columns.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains("synchronous=true")));
}

#[test]
fn convert_then_equiv() {
    let dir = std::env::temp_dir().join(format!("ratgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("columns.json").display().to_string();
    let (code, _, report) = call(&["convert", "ts2synch", &fixture("anbn_tiling.json"), "--out", &out]);
    assert_eq!(code, 0);
    assert!(report.contains("conversion: ts2synch"));
    let (code, text, _) = call(&["equiv", &fixture("anbn_tiling.json"), &out, "--max-len", "8"]);
    assert_eq!((code, text.lines().next().unwrap()), (0, "equal up to 8"));
    let (code, text, _) = call(&["equiv", &fixture("anbn_tiling.json"), &fixture("aplus_bplus.json"), "--max-len", "4"]);
    assert_eq!((code, text.lines().next().unwrap()), (1, "differ at aab"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn convert_errors() {
    // the tiling as a graph input
    let (code, _, _) = call(&["convert", "rat2synch", &fixture("anbn_tiling.json")]);
    assert_eq!(code, 2);
    let (code, _, err) = call(&["convert", "startostar", &fixture("doubling.json")]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) = call(&["convert", "startostar", &fixture("sequential_star.json")]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = call(&["convert", "check-globdet", &fixture("two_letters.json")]);
    assert_eq!((code, out.trim()), (1, "not globally deterministic"));
}

#[test]
fn nondeterministic_ca_is_refused() {
    let dir = std::env::temp_dir().join(format!("ratgraph-ca-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nd.json");
    std::fs::write(
        &path,
        r#"{"kind":"ca","gamma":["a","b"],"sigma":["a"],"finals":["b"],"left":"[","right":"]",
           "rules":[["[","a","]","a"],["[","a","]","b"]]}"#,
    )
    .unwrap();
    let (code, _, err) = call(&["convert", "ca2graph", &path.display().to_string()]);
    assert_eq!(code, 3);
    assert!(err.contains("deterministic"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn probes_and_enumeration() {
    let (code, out, _) = call(&["enumerate", &fixture("anbn_ca.json"), "--max-len", "4"]);
    assert_eq!((code, out.as_str()), (0, "ab\naabb\n"));
    let (_, out, _) = call(&["probe", &fixture("anbn_tiling.json"), "determinism", "--width", "4"]);
    assert_eq!(out.trim(), "deterministic up to width 4: true");
    let (_, out, _) = call(&["probe", &fixture("anbn_columns.json"), "ambiguity", "--max-len", "6", "--max-vertex-len", "8"]);
    assert_eq!(out.trim(), "1");
    let (_, out, _) = call(&["probe", &fixture("two_letters.json"), "functional"]);
    assert!(out.contains("s: functional: false (exact: true)"));
}
