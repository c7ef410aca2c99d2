use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn nova(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nova")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stdout is not one JSON value ({e}): {text}"))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn scalar(v: &Value) -> i64 {
    match v {
        Value::String(s) => s.parse().unwrap(),
        other => other.as_i64().unwrap(),
    }
}

/// `mul[i][j]` as integers.
fn table(doc: &Value) -> Vec<Vec<Vec<i64>>> {
    doc["mul"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|v| v.as_array().unwrap().iter().map(scalar).collect()).collect())
        .collect()
}

#[test]
fn verify_reports_and_exit_codes() {
    let ok = nova(&["verify", "algebra", &fixture("a2.json")]);
    assert_eq!(code(&ok), 0);
    let r = json(&ok);
    assert_eq!(r["flag"], true);
    assert!(r["witness"].is_null());
    assert!(r["elapsed_ms"].is_u64());

    assert_eq!(code(&nova(&["verify", "algebra", &fixture("zero2.json")])), 0);

    let bad = nova(&["verify", "algebra", &fixture("nonnovikov.json")]);
    assert_eq!(code(&bad), 1);
    let r = json(&bad);
    assert_eq!(r["flag"], false);
    assert_eq!(r["witness"]["indices"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_2_with_json_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"format\": 1, \"kind\": ").unwrap();
    let out = nova(&["verify", "algebra", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(json(&out)["error"].is_string());

    let out = nova(&["verify", "algebra", &fixture("t2.json")]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&nova(&["verify", "algebra", "/nonexistent/a.json"])), 2);
    assert_eq!(code(&nova(&["frobnicate"])), 2);
    assert_eq!(code(&nova(&["check", "nybe", &fixture("a2.json"), &fixture("t2.json")])), 2);
}

#[test]
fn worked_extended_operator_passes() {
    let out = nova(&[
        "check", "ext-o", "--weight", "1", "--kappa", "-2", "--mu", "0",
        &fixture("a2.json"), "regular", &fixture("t2.json"), &fixture("beta2.json"),
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["residual_norm_zero"], true);
    assert_eq!(r["hypotheses"]["balanced"], true);
    // Wrong mass: the hypotheses still hold but the equation does not.
    let out = nova(&[
        "check", "ext-o", "--weight", "1", "--kappa", "-1", &fixture("a2.json"), "regular",
        &fixture("t2.json"), &fixture("beta2.json"),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["residual_norm_zero"], false);
}

/// `r13∘r23 + r12⋆r23 + r13∘r12` expanded over integer structure constants.
fn nybe_oracle(mul: &[Vec<Vec<i64>>], r: &[[i64; 2]; 2]) -> [[[i64; 2]; 2]; 2] {
    let mut out = [[[0i64; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let c = r[i][j] * r[k][l];
                    for t in 0..2 {
                        out[i][k][t] += c * mul[j][l][t];
                        out[i][t][l] += c * (mul[j][k][t] + mul[k][j][t]);
                        out[t][l][j] += c * mul[i][k][t];
                    }
                }
            }
        }
    }
    out
}

#[test]
fn nybe_checks_match_the_expansion() {
    let a2: Value = serde_json::from_str(&std::fs::read_to_string(fixture("a2.json")).unwrap()).unwrap();
    let mul = table(&a2);
    assert_eq!(nybe_oracle(&mul, &[[0, 0], [0, 1]]), [[[0; 2]; 2]; 2]);
    assert_eq!(code(&nova(&["check", "nybe", &fixture("a2.json"), &fixture("r_e2e2.json")])), 0);

    let out = nova(&["check", "nybe", &fixture("a2.json"), &fixture("r_skew.json")]);
    assert_eq!(code(&out), 1);
    let want = nybe_oracle(&mul, &[[0, 1], [-1, 0]]);
    let mut got = [[[0i64; 2]; 2]; 2];
    for t in json(&out)["witness"]["terms"].as_array().unwrap() {
        let idx: Vec<usize> = t["indices"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
        got[idx[0]][idx[1]][idx[2]] = scalar(&t["coeff"]);
    }
    assert_eq!(got, want);
    assert_eq!((want[0][1][1], want[1][0][1], want[1][1][0]), (2, -4, 2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2e1⊗e2⊗e2 − 4e2⊗e1⊗e2 + 2e2⊗e2⊗e1"));
}

#[test]
fn derive_circ_t_and_circ_pm() {
    let out = nova(&["derive", "circ-t", "--weight", "1", &fixture("a2.json"), &fixture("t2.json")]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(table(&doc), vec![vec![vec![-3, 8], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]]);

    let out = nova(&["derive", "circ-pm", "--weight", "1", &fixture("a2.json"), "regular", &fixture("beta2.json")]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    for (k, sign) in [(0, 1), (1, -1)] {
        let m = table(&doc["items"][k]["document"]);
        // e1∘±e1 = e1 ∓ 2(e1+3e2), e1∘±e2 = e2∘±e1 = e2 ∓ 2e2, e2∘±e2 = 0.
        assert_eq!(m[0][0], vec![1 - 2 * sign, -6 * sign]);
        assert_eq!(m[0][1], vec![0, 1 - 2 * sign]);
        assert_eq!(m[1][0], vec![0, 1 - 2 * sign]);
        assert_eq!(m[1][1], vec![0, 0]);
    }
}

#[test]
fn derived_structures_verify() {
    let dir = tempfile::tempdir().unwrap();
    let semi = dir.path().join("semi.json");
    let out = nova(&["derive", "semidirect", &fixture("a2.json"), "regular", "--out", semi.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&semi).unwrap()).unwrap();
    assert_eq!(doc["dim"], 4);
    assert_eq!(code(&nova(&["verify", "algebra", semi.to_str().unwrap()])), 0);

    let post = dir.path().join("post.json");
    let out = nova(&["derive", "post-from-rb", "--weight", "-1", &fixture("a2.json"), &fixture("id.json"), "--out", post.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&nova(&["verify", "postnov", post.to_str().unwrap()])), 0);

    let out = nova(&["derive", "circ-delta", &fixture("a2.json"), &fixture("r_e2e2.json")]);
    assert_eq!(table(&json(&out))[1][1], vec![3, 0]);

    // The identity is not Rota-Baxter of weight 1 on A₂.
    let out = nova(&["derive", "post-from-rb", "--weight", "1", &fixture("a2.json"), &fixture("id.json")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn every_construction_runs_on_the_worked_example() {
    let a2 = fixture("a2.json");
    let (t2, b2, id, r) = (fixture("t2.json"), fixture("beta2.json"), fixture("id.json"), fixture("r_e2e2.json"));
    let skew = fixture("r_skew.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["star", &a2],
        vec!["dual-bimodule", &a2, "regular"],
        vec!["double", &a2, "regular"],
        vec!["star-product", "--weight", "1", &a2, "regular", &t2],
        vec!["diamond", "--weight", "1", &a2, "regular", &id, &id],
        vec!["post-from-o", "--weight", "-1", &a2, "regular", &id],
        vec!["post-on-image", "--weight", "-1", &a2, "regular", &id],
        vec!["delta-r", &a2, &r],
        vec!["lift", &a2, "regular", &t2],
        vec!["dual-pm", &a2, &skew],
    ];
    for c in cases {
        let mut args = vec!["derive"];
        args.extend(c.iter().copied());
        let out = nova(&args);
        assert_eq!(code(&out), 0, "{c:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["format"], 1, "{c:?}");
    }
    let _ = b2;
    // e2⊗e2 solves the equation but its symmetric part is not invariant;
    // the skew tensor has invariant symmetric part but does not solve it.
    assert_eq!(code(&nova(&["derive", "post-from-nybe", &a2, &r])), 1);
    assert_eq!(code(&nova(&["derive", "post-from-nybe", &a2, &skew])), 1);
}

#[test]
fn prop_command() {
    let out = nova(&["prop", "P-SEMI", "--trials", "0"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["check"], "P-SEMI");
    assert!(r["instances"].as_u64().unwrap() > 0);
    assert_eq!(code(&nova(&["prop", "P-TENSOR-OP", "--field", "F2", "--dims", "2", "--trials", "5"])), 0);
    assert_eq!(code(&nova(&["prop", "P-NOPE"])), 2);
    assert_eq!(code(&nova(&["prop", "P-QN", "--field", "F2"])), 2);
}

#[test]
fn solve_rota_baxter_contains_the_identity() {
    let out = nova(&["solve", "rota-baxter", &fixture("a2f3.json"), "--weight", "-1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let found = text.lines().any(|l| serde_json::from_str::<Value>(l).unwrap()["coeffs"] == serde_json::json!([1, 0, 0, 1]));
    assert!(found, "{text}");
}

#[test]
fn solve_rejects_oversized_spaces_and_bad_fields() {
    assert_eq!(code(&nova(&["solve", "novikov", "--dim", "3", "--field", "F7", "--count-only"])), 2);
    assert_eq!(code(&nova(&["solve", "nybe", &fixture("a2.json"), "--count-only"])), 2);
    assert_eq!(code(&nova(&["solve", "nybe", &fixture("a2f3.json"), "--field", "F5"])), 2);
}
