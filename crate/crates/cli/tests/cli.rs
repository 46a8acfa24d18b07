use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn infgon(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_infgon"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap().trim_end().to_string(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn error_code(run: &Run) -> String {
    let v: Value = serde_json::from_str(run.stderr.trim()).unwrap();
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn arithmetic_verbs() {
    assert_eq!(infgon(&["hom", "--d", "2", "--x", "0,3", "--y", "0,5"], None).stdout, "1");
    assert_eq!(infgon(&["hom", "--d", "2", "--x", "0,3", "--y", "1,4"], None).stdout, "0");
    assert_eq!(infgon(&["ext", "--d", "2", "--x", "0,3", "--y", "2,5"], None).stdout, "[2]");
    assert_eq!(infgon(&["admissible", "--d", "2", "0", "3"], None).stdout, "true");
    assert_eq!(infgon(&["admissible", "--d", "2", "-4", "0"], None).stdout, "false");
    assert_eq!(infgon(&["cross", "0", "5", "2", "7"], None).stdout, "true");
    assert_eq!(infgon(&["cross", "-3", "0", "0", "3"], None).stdout, "false");
}

#[test]
fn t_ell_pipeline() {
    let preset = infgon(&["preset", "theoremB", "--d", "3", "--ell", "2"], None);
    assert_eq!(preset.code, 0);
    let options = infgon(&["mutations", "-", "--arc", "0,4"], Some(&preset.stdout));
    assert_eq!(options.stdout, r#"[{"removed":[0,4],"added":[1,5]},{"removed":[0,4],"added":[2,6]}]"#);
    let mutated = infgon(&["mutate", "-", "--arc", "0,4", "--with", "1,5"], Some(&preset.stdout));
    assert_eq!(mutated.code, 0);
    let report = infgon(&["validate", "-"], Some(&mutated.stdout));
    assert_eq!(report.code, 0, "{}", report.stdout);
    let v: Value = serde_json::from_str(&report.stdout).unwrap();
    assert_eq!(v["weakly_cluster_tilting"], Value::Bool(true));
    let back = infgon(&["mutations", "-", "--arc", "1,5"], Some(&mutated.stdout));
    assert!(back.stdout.contains(r#""added":[0,4]"#), "{}", back.stdout);
    let stale = infgon(&["mutate", "-", "--arc", "0,4", "--with", "2,6"], Some(&mutated.stdout));
    assert_eq!(stale.code, 3);
    assert_eq!(error_code(&stale), "bad_input");
}

#[test]
fn psequence_and_polygon_verbs() {
    let t1 = infgon(&["preset", "theoremB", "--d", "2", "--ell", "1"], None).stdout;
    let seq = infgon(&["psequence", "-", "--from", "0"], Some(&t1));
    assert_eq!(seq.stdout, r#"{"points":[0,3,4],"terminator":{"kind":"right_fountain","at":4}}"#);
    assert_eq!(infgon(&["polygon", "count", "--d", "2", "--n", "6"], None).stdout, "3");
    let listed: Value = serde_json::from_str(&infgon(&["polygon", "enumerate", "--d", "1", "--n", "5"], None).stdout).unwrap();
    assert_eq!(listed.as_array().unwrap().len(), 5);
    let flip = infgon(&["polygon", "mutate", "--d", "1", "--n", "4", "--diagonal", "0,2", "--arc", "0,2"], None);
    assert_eq!(flip.stdout, "[[0,2],[1,3]]");
    assert_eq!(infgon(&["polygon", "count", "--d", "2", "--n", "7"], None).code, 3);
}

#[test]
fn exit_codes() {
    let not_admissible = infgon(&["hom", "--d", "2", "--x", "0,4", "--y", "0,3"], None);
    assert_eq!((not_admissible.code, error_code(&not_admissible)), (3, "bad_input".into()));

    let garbage = infgon(&["validate", "-"], Some("{not json"));
    assert_eq!((garbage.code, error_code(&garbage)), (2, "invalid_diagram".into()));

    let sparse = infgon(&["validate", "-"], Some(r#"{"d":2,"core":[[0,3]]}"#));
    assert_eq!(sparse.code, 2);
    let report: Value = serde_json::from_str(&sparse.stdout).unwrap();
    assert_eq!(report["maximal_on_window"], Value::Bool(false));

    let fountain = infgon(&["preset", "fountain", "--d", "2"], None).stdout;
    let small = infgon(&["validate", "-", "--window", "-1", "1"], Some(&fountain));
    assert_eq!((small.code, error_code(&small)), (4, "window_too_small".into()));

    let unknown = infgon(&["frobnicate"], None);
    assert_eq!((unknown.code, error_code(&unknown)), (3, "bad_input".into()));
    assert_eq!(infgon(&["--help"], None).code, 0);
}

#[test]
fn presets_validate_and_are_stable() {
    for args in [
        vec!["preset", "fountain", "--d", "3", "--anchor", "-2"],
        vec!["preset", "zigzag", "--d", "4"],
        vec!["preset", "theoremB", "--d", "5", "--ell", "4"],
    ] {
        let first = infgon(&args, None);
        assert_eq!(first.stdout, infgon(&args, None).stdout);
        assert_eq!(infgon(&["validate", "-"], Some(&first.stdout)).code, 0, "{args:?}");
    }
}

#[test]
fn render_writes_svg() {
    let dir = std::env::temp_dir().join(format!("infgon-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("fountain.json");
    let output = dir.join("fountain.svg");
    std::fs::write(&input, infgon(&["preset", "fountain", "--d", "2"], None).stdout).unwrap();
    let run = infgon(
        &["render", input.to_str().unwrap(), "--window", "-8", "8", "--out", output.to_str().unwrap()],
        None,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let svg = std::fs::read_to_string(&output).unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    assert!(svg.contains("<path d=\"M"));
    assert!(svg.contains('∞'));
    std::fs::remove_dir_all(&dir).unwrap();
}
