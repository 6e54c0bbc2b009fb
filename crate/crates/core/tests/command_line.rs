use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_qeraser");

fn small_config(dir: &Path, bits: &str, block_size: usize) -> PathBuf {
    let text = format!(
        r#"[experiment]
mode = "double_delayed_choice"

[experiment.geometry]
d = 1.0e-4
lambda = 7.02e-7
f = 1.0
L = 0.02
n_bins = 64

[experiment.envelope]
kind = "uniform"

[experiment.babu]
tap_p = 0.5

[experiment.alisha]
tap_p = 0.5

[experiment.schedule]
bits = [{bits}]
block_size = {block_size}
"#
    );
    let path = dir.join("cfg.toml");
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1, 0, 1", 800);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        ok(&["simulate", "--config", s(&cfg), "--seed", "5", "--out", s(dir), "--background-rate", "0.0005"]);
        let triples = dir.join("triples.csv");
        for mode in ["omniscient", "alisha"] {
            ok(&["decode", "--config", s(&cfg), "--triples", s(&triples), "--mode", mode, "--out", s(dir)]);
        }
        ok(&["patterns", "--config", s(&cfg), "--out", s(dir)]);
        ok(&["verify", "--config", s(&cfg), "--trials", "50", "--out", s(dir)]);
    }
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 12);
    for name in names {
        let x = std::fs::read(a.join(&name)).unwrap();
        let y = std::fs::read(b.join(&name)).unwrap();
        assert!(x == y, "{name:?} differs between runs");
    }

    ok(&["simulate", "--config", s(&cfg), "--seed", "6", "--out", s(&b)]);
    assert_ne!(std::fs::read(a.join("events.csv")).unwrap(), std::fs::read(b.join("events.csv")).unwrap());
}

#[test]
fn truncated_triples_file_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1, 0", 200);
    ok(&["simulate", "--config", s(&cfg), "--out", s(tmp.path())]);
    let path = tmp.path().join("triples.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    let cut: Vec<&str> = text.lines().collect();
    std::fs::write(&path, cut[..cut.len() - 10].join("\n") + "\n").unwrap();

    let out = run(&["decode", "--config", s(&cfg), "--triples", s(&path), "--out", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("expected 400 records, found 390"), "{err}");
}

#[test]
fn digest_mismatch_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1, 0", 200);
    ok(&["simulate", "--config", s(&cfg), "--out", s(tmp.path())]);
    let other = tmp.path().join("other");
    std::fs::create_dir(&other).unwrap();
    let cfg2 = small_config(&other, "0, 0", 200);
    let triples = tmp.path().join("triples.csv");
    let out = run(&["decode", "--config", s(&cfg2), "--triples", s(&triples), "--out", s(&other)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("digest mismatch"));
}

#[test]
fn malformed_record_reports_its_line() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1", 50);
    ok(&["simulate", "--config", s(&cfg), "--out", s(tmp.path())]);
    let path = tmp.path().join("triples.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let target = lines.iter().position(|l| !l.starts_with('#')).unwrap() + 3;
    lines[target] = "3,0,12,D9,D1'".into();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let out = run(&["decode", "--config", s(&cfg), "--triples", s(&path), "--out", s(tmp.path())]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(&format!("line {}", target + 1)), "{err}");
}

#[test]
fn bad_config_reports_its_line() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1", 50);
    let text = std::fs::read_to_string(&cfg).unwrap().replace("tap_p = 0.5\n\n[experiment.alisha]", "tap_p = 1.5\n\n[experiment.alisha]");
    std::fs::write(&cfg, text).unwrap();
    let out = run(&["patterns", "--config", s(&cfg), "--out", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    // Validation failures point at the table holding the bad value.
    assert!(err.contains("line 14") && err.contains("1.5"), "{err}");
}

#[test]
fn syntax_error_reports_its_line() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1", 50);
    let text = std::fs::read_to_string(&cfg).unwrap().replace("lambda = 7.02e-7", "lambda = = 7.02e-7");
    std::fs::write(&cfg, text).unwrap();
    let out = run(&["patterns", "--config", s(&cfg), "--out", s(tmp.path())]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6"), "{err}");
}

#[test]
fn verify_catches_an_injected_fault() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1", 50);
    let good = ok(&["verify", "--config", s(&cfg), "--trials", "100", "--out", s(tmp.path())]);
    assert!(!good.contains("FAIL"));
    let out = run(&["verify", "--config", s(&cfg), "--trials", "20", "--inject-norm", "1.1", "--out", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL unitarity") && text.contains("worst draw"), "{text}");
}

#[test]
fn sweep_and_single_mode_patterns_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path(), "1", 50);
    let text = ok(&["sweep", "--config", s(&cfg), "--out", s(tmp.path())]);
    assert!(text.starts_with("128 points"));
    let rows = std::fs::read_to_string(tmp.path().join("sweep.csv")).unwrap();
    assert_eq!(rows.lines().filter(|l| !l.starts_with('#')).count(), 128);

    let single = std::fs::read_to_string(&cfg).unwrap().replace("double_delayed_choice", "single_delayed_choice");
    std::fs::write(&cfg, single).unwrap();
    ok(&["patterns", "--config", s(&cfg), "--out", s(tmp.path())]);
    assert!(tmp.path().join("single_patterns.csv").exists());
    let out = run(&["simulate", "--config", s(&cfg), "--out", s(tmp.path())]);
    assert!(out.status.success());
}
