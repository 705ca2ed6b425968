use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use adicforge::session::parse_session;

fn sessions() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/sessions")
}

fn adicforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adicforge")).args(args).output().expect("binary runs")
}

fn run(session: &str, extra: &[&str]) -> Output {
    let path = sessions().join(session);
    let mut args = vec!["run", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    adicforge(&args)
}

#[test]
fn axis_json_matches_golden() {
    let out = run("axis.session", &["--format", "json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/axis.json")).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&golden));
    assert_eq!(out.stdout, golden);
}

#[test]
fn exit_codes() {
    assert_eq!(run("axis.session", &[]).status.code(), Some(0));
    assert_eq!(run("tour.session", &[]).status.code(), Some(0));
    assert_eq!(run("adic_false.session", &[]).status.code(), Some(1));
    assert_eq!(run("budget.session", &[]).status.code(), Some(2));
    assert_eq!(run("error.session", &[]).status.code(), Some(3));
    assert_eq!(run("missing.session", &[]).status.code(), Some(3));
}

#[test]
fn text_prefixes() {
    let text = String::from_utf8(run("adic_false.session", &[]).stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("check adic f")), "{text}");
    assert!(text.contains("1 ∉ rad(0)"));
    let text = String::from_utf8(run("budget.session", &[]).stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("INCONCLUSIVE (budget)")), "{text}");
    let text = String::from_utf8(run("axis.session", &[]).stdout).unwrap();
    assert!(text.lines().filter(|l| !l.starts_with("    ")).all(|l| l.starts_with("OK")), "{text}");
}

#[test]
fn cap_flag_reaches_the_report() {
    let out = run("axis.session", &["--format", "json", "--cap", "2", "--budget", "500", "--no-timing"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["options"]["cap"], 2);
    assert_eq!(v["options"]["budget"], 500);
    assert_eq!(v["statements"][3]["levels_used"], serde_json::json!([0, 1, 2]));
}

#[test]
fn parse_errors_are_located() {
    let dir = std::env::temp_dir().join(format!("adicforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.session");
    std::fs::write(&path, "ring A = QQ[x] adic (x);\nring B = QQ[x").unwrap();
    let out = adicforge(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error at 2:14"), "{err}");
}

#[test]
fn session_corpus_round_trips() {
    let mut count = 0;
    for entry in std::fs::read_dir(sessions()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("session") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_session(&text).unwrap();
        let printed = parsed.to_string();
        let again = parse_session(&printed).unwrap();
        assert_eq!(again, parsed, "{}", path.display());
        assert_eq!(again.to_string(), printed, "{}", path.display());
        count += 1;
    }
    assert!(count >= 5);
}

#[test]
fn fuzz_subcommand() {
    let out = adicforge(&["fuzz", "diagonal", "--seed", "3", "--cases", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("OK diagonal: 4 passed, 0 failed"), "{text}");
    assert_eq!(adicforge(&["fuzz", "no-such-suite"]).status.code(), Some(3));
}
