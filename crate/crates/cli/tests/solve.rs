//! Enumeration counts against the pinned goldens and naive re-implementations.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let dir = std::env::var_os("NOVA_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("golden"));
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("golden {name}: {e}"))
}

fn nova(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_nova")).args(args).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn summary(args: &[&str]) -> Value {
    serde_json::from_slice(&nova(args).stdout).unwrap()
}

fn solutions(args: &[&str]) -> BTreeSet<Vec<u64>> {
    String::from_utf8(nova(args).stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            v["coeffs"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect()
        })
        .collect()
}

fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut d = vec![0; len];
    for x in d.iter_mut().rev() {
        *x = index % p;
        index /= p;
    }
    d
}

/// Right-commutativity and left-symmetry of associators on basis triples,
/// straight from the definitions.
fn naive_novikov(c: &[u64], p: u64) -> bool {
    let m = |i: usize, j: usize, k: usize| c[(i * 2 + j) * 2 + k];
    let prod = |x: [u64; 2], y: [u64; 2]| {
        let mut z = [0u64; 2];
        for i in 0..2 {
            for j in 0..2 {
                for (k, zk) in z.iter_mut().enumerate() {
                    *zk = (*zk + x[i] * y[j] * m(i, j, k)) % p;
                }
            }
        }
        z
    };
    let e = |i: usize| if i == 0 { [1, 0] } else { [0, 1] };
    let sub = |x: [u64; 2], y: [u64; 2]| [(x[0] + p - y[0]) % p, (x[1] + p - y[1]) % p];
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                let (x, y, z) = (e(a), e(b), e(d));
                if prod(prod(x, y), z) != prod(prod(x, z), y) {
                    return false;
                }
                let xy = sub(prod(prod(x, y), z), prod(x, prod(y, z)));
                let yx = sub(prod(prod(y, x), z), prod(y, prod(x, z)));
                if xy != yx {
                    return false;
                }
            }
        }
    }
    true
}

fn naive_count(p: u64) -> BTreeSet<Vec<u64>> {
    (0..p.pow(8)).map(|i| digits(i, p, 8)).filter(|c| naive_novikov(c, p)).collect()
}

fn golden_value(name: &str) -> Value {
    serde_json::from_str(golden(name).trim()).unwrap()
}

#[test]
fn novikov_dim2_f2_matches_golden_and_naive_scan() {
    let s = summary(&["solve", "novikov", "--dim", "2", "--field", "F2", "--count-only"]);
    assert_eq!(s, golden_value("novikov-dim2-F2.json"));
    let found = solutions(&["solve", "novikov", "--dim", "2", "--field", "F2"]);
    assert_eq!(found, naive_count(2));
    assert_eq!(found.len(), 52);
}

#[test]
fn novikov_dim2_f3_matches_golden_and_naive_scan() {
    let s = summary(&["solve", "novikov", "--dim", "2", "--field", "F3", "--count-only"]);
    assert_eq!(s, golden_value("novikov-dim2-F3.json"));
    assert_eq!(solutions(&["solve", "novikov", "--dim", "2", "--field", "F3"]), naive_count(3));
}

/// `r13∘r23 + r12⋆r23 + r13∘r12` mod p, expanded term by term.
fn naive_nybe(mul: &[Vec<Vec<u64>>], r: &[u64], p: u64) -> bool {
    let mut out = [[[0u64; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let c = r[i * 2 + j] * r[k * 2 + l];
                    for t in 0..2 {
                        out[i][k][t] += c * mul[j][l][t];
                        out[i][t][l] += c * (mul[j][k][t] + mul[k][j][t]);
                        out[t][l][j] += c * mul[i][k][t];
                    }
                }
            }
        }
    }
    out.iter().flatten().flatten().all(|x| x % p == 0)
}

#[test]
fn nybe_on_a2_over_f3_matches_golden_and_naive_scan() {
    let a: Value = serde_json::from_str(&std::fs::read_to_string(fixture("a2f3.json")).unwrap()).unwrap();
    let mul: Vec<Vec<Vec<u64>>> = serde_json::from_value(a["mul"].clone()).unwrap();
    let s = summary(&["solve", "nybe", &fixture("a2f3.json"), "--field", "F3", "--count-only"]);
    assert_eq!(s, golden_value("nybe-a2-F3.json"));
    let naive: BTreeSet<Vec<u64>> = (0..81).map(|i| digits(i, 3, 4)).filter(|r| naive_nybe(&mul, r, 3)).collect();
    assert_eq!(solutions(&["solve", "nybe", &fixture("a2f3.json"), "--field", "F3"]), naive);
}

#[test]
fn rota_baxter_output_is_byte_identical_to_golden() {
    let out = nova(&["solve", "rota-baxter", &fixture("a2f3.json"), "--weight", "-1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("rota-baxter-a2-F3-w-1.jsonl"));
}

#[test]
fn derived_worked_example_matches_golden() {
    let parse = |s: &str| serde_json::from_str::<Value>(s).unwrap();
    let out = nova(&["derive", "circ-t", "--weight", "1", &fixture("a2.json"), &fixture("t2.json")]);
    assert_eq!(parse(&String::from_utf8(out.stdout).unwrap()), parse(&golden("circ-t-a2.json")));
    let out = nova(&["derive", "circ-pm", "--weight", "1", &fixture("a2.json"), "regular", &fixture("beta2.json")]);
    assert_eq!(parse(&String::from_utf8(out.stdout).unwrap()), parse(&golden("circ-pm-a2.json")));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["solve", "novikov", "--dim", "2", "--field", "F3", "--jobs", "0"];
    assert_eq!(nova(&args).stdout, nova(&args).stdout);
    let args = ["solve", "nybe", &fixture("a2f3.json"), "--field", "F3"];
    assert_eq!(nova(&args).stdout, nova(&args).stdout);
}

#[test]
fn shards_partition_the_whole_scan() {
    let whole = solutions(&["solve", "novikov", "--dim", "2", "--field", "F3"]);
    let mut union = BTreeSet::new();
    let mut total = 0;
    for i in 0..3 {
        let shard = format!("{i}/3");
        let part = solutions(&["solve", "novikov", "--dim", "2", "--field", "F3", "--shard", &shard]);
        total += part.len();
        union.extend(part);
        let s = summary(&["solve", "novikov", "--dim", "2", "--field", "F3", "--shard", &shard, "--count-only"]);
        assert_eq!(s["shard"], shard);
    }
    assert_eq!(total, whole.len());
    assert_eq!(union, whole);
}
