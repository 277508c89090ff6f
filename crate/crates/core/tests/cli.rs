//! Report determinism, golden reports and exit codes of the binary.

use std::path::PathBuf;
use std::process::Command as Process;

use cocycle_forge::cli::{run, Command, Format, RunConfig};
use serde_json::Value;

fn config(command: Command, inputs: &[&str], height: usize, degree: usize, seed: u64) -> RunConfig {
    let mut c = RunConfig::new(command, inputs[0]);
    c.input = inputs.iter().map(|s| s.to_string()).collect();
    c.height = height;
    c.degree = degree;
    c.seed = seed;
    c
}

fn cases() -> Vec<(&'static str, RunConfig, Format)> {
    use Command::*;
    vec![
        (
            "classify_manifolds",
            config(Classify, &["fixture:sphere2", "fixture:rp2", "fixture:torus", "fixture:circle"], 1, 2, 7),
            Format::Json,
        ),
        ("classify_sphere3", config(Classify, &["fixture:sphere3"], 1, 3, 0), Format::Json),
        ("classify_sphere3_csv", config(Classify, &["fixture:sphere3"], 1, 3, 0), Format::Csv),
        (
            "equivariant",
            config(EquivariantClassify, &["fixture:z2_point", "fixture:z3_circle", "fixture:antipodal_s2", "fixture:torus_cover"], 1, 2, 0),
            Format::Json,
        ),
        ("glue_sphere3", config(Glue, &["fixture:sphere3_descent"], 1, 3, 3), Format::Json),
        ("gerbe_sphere3", config(Gerbe, &["fixture:sphere3_gerbe", "fixture:sphere3_gerbe_generator"], 3, 3, 0), Format::Json),
        (
            "check",
            config(
                Check,
                &["fixture:sphere3_descent", "fixture:sphere3_gerbe_generator", "fixture:antipodal_s2", "fixture:bad_repeated_vertex"],
                1,
                3,
                0,
            ),
            Format::Json,
        ),
    ]
}

fn golden(name: &str, format: Format) -> PathBuf {
    let ext = if format == Format::Csv { "csv" } else { "json" };
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden").join(format!("{name}.{ext}"))
}

/// Set `UPDATE_GOLDEN=1` to rewrite the stored reports.
#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, cfg, format) in cases() {
        let text = run(&cfg).unwrap().render(format);
        let path = golden(name, format);
        if update {
            std::fs::write(&path, &text).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(text, want, "{name} differs from {}", path.display());
        }
    }
}

#[test]
fn reports_are_reproducible() {
    let cfg = config(Command::Glue, &["fixture:sphere3_descent"], 1, 3, 11);
    assert_eq!(run(&cfg).unwrap().to_json(), run(&cfg).unwrap().to_json());
    let other = config(Command::Glue, &["fixture:sphere3_descent"], 1, 3, 12);
    let (a, b) = (run(&cfg).unwrap(), run(&other).unwrap());
    // different seeds give different data but the same class
    assert_ne!(a.results[0]["witness"], b.results[0]["witness"]);
    assert_eq!(a.results[0]["class"], b.results[0]["class"]);
    assert_eq!(a.results[0]["witness_valid"], Value::Bool(true));
}

#[test]
fn timing_is_opt_in() {
    let mut cfg = config(Command::Classify, &["fixture:circle"], 1, 1, 0);
    assert!(!run(&cfg).unwrap().to_json().contains("timing_ms"));
    cfg.timing = true;
    assert!(run(&cfg).unwrap().to_json().contains("timing_ms"));
}

fn bin(args: &[&str], dir: &std::path::Path) -> (i32, Value) {
    let out = Process::new(env!("CARGO_BIN_EXE_cocycle-forge")).args(args).current_dir(dir).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&stdout).unwrap_or(Value::Null))
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();

    let (code, report) = bin(&["--command", "classify", "--input", "fixture:sphere2", "--degree", "2"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(report["results"][0]["group"], "ℤ");

    write("repeat.json", r#"{"kind": "complex", "simplices": [[0, 1], [2, 2, 3]]}"#);
    let (code, report) = bin(&["--command", "classify", "--input", "repeat.json"], dir.path());
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], "schema");
    assert_eq!(report["error"]["pointer"], "/simplices/1");

    write("broken.json", "{ not json");
    assert_eq!(bin(&["--command", "check", "--input", "broken.json"], dir.path()).0, 2);

    // a precondition failure: the cochain is not closed
    write(
        "open.json",
        r#"{"kind": "complex", "simplices": [[0, 1], [1, 2], [0, 2]],
            "cocycles": [{"s": 1, "k": 1, "c": [1, 0, 0], "h": [0, 0, 0], "omega": [0, 0, 0]}]}"#,
    );
    let (code, report) = bin(&["--command", "classify", "--input", "open.json", "--degree", "1"], dir.path());
    assert_eq!(code, 1);
    assert_eq!(report["error"]["kind"], "not_a_cocycle");

    let (code, report) = bin(&["--command", "classify", "--input", "missing.json"], dir.path());
    assert_eq!(code, 1);
    assert_eq!(report["error"]["kind"], "io");

    // check reports a verdict with the location of the problem
    let (code, report) = bin(&["--command", "check", "--input", "repeat.json"], dir.path());
    assert_eq!(code, 2);
    assert_eq!(report["results"][0]["valid"], false);
    assert_eq!(report["results"][0]["pointer"], "/simplices/1");

    assert_eq!(bin(&["--command", "classify"], dir.path()).0, 2);
}

#[test]
fn output_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let (code, _) = bin(
        &["--command", "classify", "--input", "fixture:torus", "--degree", "1", "--format", "csv", "--out", out.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("/results/0/group,ℤ^2\n"), "{text}");
}

#[test]
fn fixture_directory_can_be_overridden() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("segment.json"), r#"{"kind": "complex", "simplices": [[0, 1]]}"#).unwrap();
    let out = Process::new(env!("CARGO_BIN_EXE_cocycle-forge"))
        .args(["--command", "classify", "--input", "fixture:segment", "--degree", "0"])
        .env("COCYCLE_FORGE_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"][0]["group"], "ℤ");
}
