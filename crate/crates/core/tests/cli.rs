//! End-to-end checks of the command-line surface: flags, exit codes and the
//! stability of file output.

use std::process::Command;

fn g2aw(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_g2aw"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn classify_so3_prints_pair() {
    let out = g2aw(&[
        "classify", "--k", "1", "--l", "-1", "-A", "0.5", "-B", "1", "-C", "1", "-D", "1",
        "--n", "2", "--gauge", "so3",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        text.matches("[irreducible]").count(),
        2,
        "sigma1 = 1.5 > 0 admits the +-a pair:\n{text}"
    );
    assert!(text.contains("sigma1=1.5"));
}

#[test]
fn classify_u1_family_notice() {
    let out = g2aw(&[
        "classify", "--k", "1", "--l", "2", "-A", "1", "-B", "1", "-C", "1", "-D", "1",
        "--n", "0", "--gauge", "u1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1-parameter family"), "{text}");
}

#[test]
fn classify_rejects_zero_scale() {
    let out = g2aw(&[
        "classify", "--k", "1", "--l", "2", "-A", "0", "-B", "1", "-C", "1", "-D", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("A"), "message names the violated invariant: {err}");
}

#[test]
fn classify_json_is_machine_readable() {
    let out = g2aw(&[
        "classify", "--k", "1", "--l", "2", "-A", "1.1", "-B", "0.9", "-C", "1.3", "-D", "0.7",
        "--n", "-1", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["n"], -1);
    assert!(v["solutions"].is_array());
}

#[test]
fn np_solve_csv_deterministic() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("g2aw_test_np1.csv");
    let p2 = dir.join("g2aw_test_np2.csv");
    for p in [&p1, &p2] {
        let out = g2aw(&[
            "np-solve", "--k", "1", "--l", "2", "--csv",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let b1 = std::fs::read(&p1).unwrap();
    let b2 = std::fs::read(&p2).unwrap();
    assert_eq!(b1, b2, "identical flags must produce byte-identical CSV");
    let text = String::from_utf8(b1).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,l,branch,A,B,C,D,lambda,residual"));
    assert_eq!(lines.count(), 2, "two branches on X(1,2)");
    assert!(!text.contains('\r'), "LF line endings only");
    let _ = std::fs::remove_file(&p1);
    let _ = std::fs::remove_file(&p2);
}

#[test]
fn np_solve_x11_prints_both_points() {
    let out = g2aw(&["np-solve", "--k", "1", "--l", "1", "--starts", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("branch").count(), 2, "{text}");
    assert!(text.contains("sigma1"), "{text}");
}

#[test]
fn sweep_figure1_csv() {
    let dir = std::env::temp_dir();
    let path = dir.join("g2aw_test_fig1.csv");
    let out = g2aw(&[
        "sweep", "--k", "1", "--l", "-1", "--n", "2", "--vary", "A", "--from", "0.05",
        "--to", "1.4", "--steps", "271", "--fix", "B=1,C=1,D=1", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("param_value,sigma1,sigma2,sigma3,a_plus,a_minus,b_reducible,def_det")
    );
    assert_eq!(lines.count(), 271);
    assert!(text.contains("NaN"), "branches outside sigma1 > 0 print NaN");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn sweep_single_step() {
    let out = g2aw(&[
        "sweep", "--k", "1", "--l", "-1", "--n", "2", "--vary", "A", "--from", "0.5",
        "--to", "0.5", "--steps", "1", "--fix", "B=1,C=1,D=1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 2, "header plus one row");
}

#[test]
fn sweep_rejects_overspecified_axes() {
    let out = g2aw(&[
        "sweep", "--k", "1", "--l", "-1", "--n", "2", "--vary", "A", "--from", "0.1",
        "--to", "1.0", "--steps", "5", "--fix", "A=1,B=1,C=1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn landscape_grid_csv() {
    let out = g2aw(&[
        "landscape", "--k", "1", "--l", "-1", "-A", "2.52982213", "-B", "2.77821391",
        "-C", "1.71703063", "-D", "-1.94745818", "--n", "-1", "--res", "11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,energy"));
    assert_eq!(lines.count(), 121);
}

#[test]
fn verify_filter_and_json() {
    let out = g2aw(&["verify", "--filter", "squash", "--json"]);
    assert!(out.status.success(), "squash records are all pass/flagged");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let arr = v.as_array().unwrap();
    assert!(!arr.is_empty());
    for rec in arr {
        assert!(rec["claim_id"].as_str().unwrap().starts_with("squash"));
        assert_ne!(rec["status"], "fail");
    }
}
