use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn blaschke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blaschke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn six_arcs() -> PathBuf {
    problems().join("six_arcs.json")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_six_arcs_with_trace() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("result.json");
    let trace = dir.path().join("trace.jsonl");
    let out = blaschke(&[
        "solve",
        path_str(&six_arcs()),
        "--out",
        path_str(&result),
        "--trace",
        path_str(&trace),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = read_json(&result);
    assert_eq!(r["converged"], true);
    assert_eq!(r["zeros"].as_array().unwrap().len(), 6);
    let lines: Vec<Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len() as u64, r["iterations"].as_u64().unwrap() + 1);
    let delta0 = lines[0]["delta"].as_f64().unwrap();
    assert!((delta0 - 0.7025).abs() < 5e-4, "{delta0}");
    assert_eq!(lines[1]["moved_index"], 4);
}

#[test]
fn reals_are_written_with_seventeen_digits() {
    let out = blaschke(&["solve", path_str(&six_arcs())]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("\"initial_radius\": 8.5999999999999999e-1"),
        "{text}"
    );
}

#[test]
fn overlapping_arcs_are_rejected_without_output() {
    let dir = TempDir::new().unwrap();
    let problem = write(
        &dir,
        "bad.json",
        r#"{"mode":"partition","C":0.5,"arcs":[{"start":0,"end":2},{"start":1.5,"end":0}]}"#,
    );
    let result = dir.path().join("result.json");
    let trace = dir.path().join("trace.jsonl");
    let out = blaschke(&[
        "solve",
        path_str(&problem),
        "--out",
        path_str(&result),
        "--trace",
        path_str(&trace),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("arcs overlap at angle"));
    assert!(!result.exists());
    assert!(!trace.exists());
}

#[test]
fn malformed_fields_are_named() {
    let dir = TempDir::new().unwrap();
    let unknown = write(
        &dir,
        "u.json",
        r#"{"mode":"partition","C":0.5,"arcs":[],"colour":1}"#,
    );
    let out = blaschke(&["solve", path_str(&unknown)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));

    let foreign = write(
        &dir,
        "f.json",
        r#"{"mode":"partition","C":0.5,"arcs":[{"start":0,"end":0}],"nodes":[1]}"#,
    );
    let out = blaschke(&["solve", path_str(&foreign)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`nodes`"));
}

#[test]
fn forced_non_convergence_keeps_partial_output() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("result.json");
    let trace = dir.path().join("trace.jsonl");
    let out = blaschke(&[
        "solve",
        path_str(&six_arcs()),
        "--epsilon",
        "1e-300",
        "--max-iter",
        "10",
        "--out",
        path_str(&result),
        "--trace",
        path_str(&trace),
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(read_json(&result)["converged"], false);
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 11);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let solved = dir.path().join("solved.json");
    let initial = dir.path().join("initial.json");
    assert_eq!(
        code(&blaschke(&[
            "solve",
            path_str(&six_arcs()),
            "--out",
            path_str(&solved)
        ])),
        0
    );
    let out = blaschke(&[
        "solve",
        path_str(&six_arcs()),
        "--max-iter",
        "0",
        "--out",
        path_str(&initial),
    ]);
    assert_eq!(code(&out), 2);

    let verify = |result: &Path, tol: &str| {
        blaschke(&[
            "verify",
            path_str(result),
            path_str(&six_arcs()),
            "--tol",
            tol,
        ])
    };
    assert_eq!(code(&verify(&solved, "1e-3")), 0);
    // solver ε plus slack
    assert_eq!(code(&verify(&solved, "1.000001e-6")), 0);
    let failed = verify(&initial, "1e-3");
    assert_eq!(code(&failed), 4);
    assert!(String::from_utf8_lossy(&failed.stdout).contains("FAIL"));
    assert_eq!(code(&verify(&initial, "10")), 0);

    let json = blaschke(&[
        "verify",
        path_str(&solved),
        path_str(&six_arcs()),
        "--format",
        "json",
    ]);
    let report: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["measures"].as_array().unwrap().len(), 6);

    let mismatch = blaschke(&[
        "verify",
        path_str(&solved),
        path_str(&problems().join("full_circle.json")),
    ]);
    assert_eq!(code(&mismatch), 1);
}

#[test]
fn trace_subcommand_streams_records() {
    let out = blaschke(&[
        "trace",
        path_str(&six_arcs()),
        "--max-iter",
        "5",
        "--epsilon",
        "1e-300",
    ]);
    assert_eq!(code(&out), 2);
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 6);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["iteration"], i as u64);
    }
}

#[test]
fn interpolate_reports_checks() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("result.json");
    let problem = problems().join("target.json");
    let out = blaschke(&[
        "interpolate",
        path_str(&problem),
        "--out",
        path_str(&result),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = read_json(&result);
    assert_eq!(r["degree"], 3);
    for key in ["nodes", "beta", "separation", "near_one", "radial_rays"] {
        assert_eq!(r["checks"][key]["passed"], true, "{key}");
    }
    assert!(r["checks"]["zero_localization"].is_object());
    let verify = blaschke(&[
        "verify",
        path_str(&result),
        path_str(&problem),
        "--tol",
        "1e-5",
    ]);
    assert_eq!(
        code(&verify),
        0,
        "{}",
        String::from_utf8_lossy(&verify.stdout)
    );
}

#[test]
fn interpolate_rejects_beta_one() {
    let dir = TempDir::new().unwrap();
    let problem = write(
        &dir,
        "p.json",
        r#"{"mode":"interpolation","C":0.5,"nodes":[0,1,2],"beta":{"re":1,"im":0}}"#,
    );
    let result = dir.path().join("r.json");
    let out = blaschke(&[
        "interpolate",
        path_str(&problem),
        "--out",
        path_str(&result),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("beta"));
    assert!(!result.exists());
}

#[test]
fn fip_degree_bound() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("result.json");
    let problem = problems().join("fip.json");
    let out = blaschke(&[
        "interpolate",
        path_str(&problem),
        "--out",
        path_str(&result),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = read_json(&result);
    assert!(r["degree"].as_u64().unwrap() <= 12);
    assert_eq!(r["checks"]["targets"]["passed"], true);
    let verify = blaschke(&[
        "verify",
        path_str(&result),
        path_str(&problem),
        "--tol",
        "1e-5",
    ]);
    assert_eq!(code(&verify), 0);
}

#[test]
fn plot_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let initial = dir.path().join("initial.json");
    blaschke(&[
        "solve",
        path_str(&six_arcs()),
        "--max-iter",
        "0",
        "--out",
        path_str(&initial),
    ]);
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for svg in [&a, &b] {
        let out = blaschke(&[
            "plot",
            path_str(&initial),
            path_str(&six_arcs()),
            "--out",
            path_str(svg),
            "--annulus",
        ]);
        assert_eq!(code(&out), 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.matches(r#"class="zero""#).count(), 6);
    assert_eq!(text.matches(r#"class="tick""#).count(), 6);
    assert!(text.contains(r#"class="annulus""#));
}

#[test]
fn plot_single_arc_and_bad_path() {
    let dir = TempDir::new().unwrap();
    let full = problems().join("full_circle.json");
    let result = dir.path().join("r.json");
    assert_eq!(
        code(&blaschke(&[
            "solve",
            path_str(&full),
            "--out",
            path_str(&result)
        ])),
        0
    );
    let svg = dir.path().join("p.svg");
    let out = blaschke(&[
        "plot",
        path_str(&result),
        path_str(&full),
        "--out",
        path_str(&svg),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="zero""#).count(), 1);
    assert!(!text.contains(r#"class="tick""#));

    let unwritable = dir.path().join("missing/dir/p.svg");
    let out = blaschke(&[
        "plot",
        path_str(&result),
        path_str(&full),
        "--out",
        path_str(&unwritable),
    ]);
    assert_eq!(code(&out), 1);
}
