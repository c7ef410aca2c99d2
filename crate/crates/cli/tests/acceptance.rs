//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use nova_cli::props::{run_property, PropConfig, PropOutcome};
use nova_core::algebra::regular;
use nova_core::lift::circ_delta;
use nova_core::operators::{circ_t, ext_o_residual, pm_products, MassParams};
use nova_core::sample::{a2, beta2, t2};
use nova_core::solver::{
    build, enumerate, merge_shards, reverify, Found, SearchResult, SearchSpec, Shard, Target,
};
use nova_core::ybe::{nybe_residual, o_nybe_residual};
use nova_core::{Algebra, Field, Tensor2};
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let dir = std::env::var_os("NOVA_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("golden"));
    std::fs::read_to_string(dir.join(name)).unwrap_or_default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prop(id: &str, field: Field, trials: usize, dims: Option<usize>) -> Result<PropOutcome, String> {
    let cfg = PropConfig { field: Some(field), trials, seed: 0, dims, jobs: 1 };
    let o = run_property(id, &cfg).map_err(|e| e.to_string())?;
    ensure(o.passed(), || {
        format!("{id} over {field}: {} counterexamples, first: {}", o.failures.len(), o.failures[0].detail)
    })?;
    Ok(o)
}

fn summary(o: &PropOutcome) -> String {
    format!("{} {}: {} instances, {} hypothesis hits", o.id, o.field, o.instances, o.hypothesis_hits)
}

fn nova(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nova")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("{args:?} exited {:?}", out.status.code()))?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn worked_example() -> Verdict {
    let start = Instant::now();
    let f = Field::Rational;
    let alg = a2(f);
    let ctx = regular(&alg).map_err(|e| e.to_string())?;
    let report = ext_o_residual(&ctx, &t2(f), &beta2(f), &MassParams::ints(f, 1, -2, 0)).map_err(|e| e.to_string())?;
    ensure(report.holds(), || "extended O-operator residual is nonzero".into())?;

    let want_t = Algebra::from_ints(f, &[&[&[-3, 8], &[0, 0]], &[&[0, 0], &[0, 0]]]);
    ensure(circ_t(&alg, &t2(f), &f.one()).map_err(|e| e.to_string())? == want_t, || "∘_T differs".into())?;
    let (plus, minus) = pm_products(&ctx, &beta2(f), &f.one()).map_err(|e| e.to_string())?;
    let want_plus = Algebra::from_ints(f, &[&[&[-1, -6], &[0, -1]], &[&[0, -1], &[0, 0]]]);
    let want_minus = Algebra::from_ints(f, &[&[&[3, 6], &[0, 3]], &[&[0, 3], &[0, 0]]]);
    ensure(plus == want_plus && minus == want_minus, || "∘± differ".into())?;

    let (a, t, b) = (fixture("a2.json"), fixture("t2.json"), fixture("beta2.json"));
    let r = nova(&["check", "ext-o", "--weight", "1", "--kappa", "-2", "--mu", "0", &a, "regular", &t, &b])?;
    ensure(r["residual_norm_zero"] == true, || "CLI residual nonzero".into())?;
    nova(&["derive", "circ-t", "--weight", "1", &a, &t])?;
    nova(&["derive", "circ-pm", "--weight", "1", &a, "regular", &b])?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("residual zero, ∘_T and ∘± exact, {} ms", elapsed.as_millis()))
}

fn algebras(field: Field) -> Result<Vec<Algebra>, String> {
    let target = Target::NovikovAlgebra { dim: 2 };
    let spec = SearchSpec { jobs: 1, ..SearchSpec::new(target.clone(), field) };
    let result = enumerate(&spec).map_err(|e| e.to_string())?;
    result
        .solutions
        .iter()
        .map(|s| match build(&target, field, &s.coeffs) {
            Ok(Found::Algebra(a)) => Ok(a),
            other => Err(format!("unexpected candidate {other:?}")),
        })
        .collect()
}

fn exhaustive_tensor_op() -> Verdict {
    let start = Instant::now();
    let f = Field::Prime(3);
    let algs = algebras(f)?;
    let mut pairs = 0u64;
    let mut solutions = 0u64;
    for alg in &algs {
        for index in 0..81u64 {
            let digits = nova_core::solver::decode(index, 3, 4);
            let grid: Vec<&[u32]> = digits.chunks(2).collect();
            let r = Tensor2::from_grid(f, grid.iter().map(|row| row.iter().map(|&d| f.element(d as u64)).collect()).collect())
                .map_err(|e| e.to_string())?;
            let lhs = nybe_residual(alg, &r).map_err(|e| e.to_string())?.is_zero();
            let rhs = o_nybe_residual(alg, &r).map_err(|e| e.to_string())?.is_zero();
            ensure(lhs == rhs, || format!("disagreement on {alg:?} with {r:?}"))?;
            pairs += 1;
            solutions += lhs as u64;
        }
    }
    let elapsed = start.elapsed();
    ensure(algs.len() == 177, || format!("{} algebras, expected 177", algs.len()))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} algebras × 81 tensors = {pairs} pairs, {solutions} solutions, 0 disagreements, {} ms", algs.len(), elapsed.as_millis()))
}

fn cor_bax() -> Verdict {
    let o = prop("P-COR-BAX", Field::Prime(5), 200, None)?;
    Ok(summary(&o))
}

fn semi_dual() -> Verdict {
    let s = prop("P-SEMI", Field::Prime(2), 0, None)?;
    let d = prop("P-DUAL", Field::Prime(2), 0, None)?;
    Ok(format!("{}; {}", summary(&s), summary(&d)))
}

fn theorem_sweeps() -> Verdict {
    let mut parts = Vec::new();
    for id in ["P-EXT-STAR", "P-DELTA-PM", "P-R-PM"] {
        for p in [5, 7] {
            let o = prop(id, Field::Prime(p), 500, Some(3))?;
            ensure(o.hypothesis_hits > 0, || format!("{id} F{p}: no instance met the hypotheses"))?;
            parts.push(format!("{id} F{p} {}/{}", o.hypothesis_hits, o.instances));
        }
    }
    Ok(format!("hypothesis hits/instances: {}", parts.join(", ")))
}

fn goper() -> Verdict {
    let start = Instant::now();
    let o = prop("P-GOPER", Field::Prime(2), 0, None)?;
    let algs = algebras(Field::Prime(2))?.len() as u64;
    ensure(o.instances == algs * 16, || format!("{} instances, expected {}", o.instances, algs * 16))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{algs} algebras × 16 maps, {} ms", elapsed.as_millis()))
}

fn circ_delta_check() -> Verdict {
    let f = Field::Rational;
    let d = circ_delta(&a2(f), &Tensor2::simple(f, 2, 1, 1)).map_err(|e| e.to_string())?;
    ensure(d.basis_product(1, 1).coords() == [f.int(3), f.zero()], || {
        format!("e2*∘e2* = {:?}", d.basis_product(1, 1))
    })?;
    let mut parts = vec!["e2*∘_Δ e2* = 3e1*".to_string()];
    for field in [Field::Prime(3), Field::Prime(5), Field::Rational] {
        parts.push(summary(&prop("P-CIRC-DELTA", field, 50, None)?));
    }
    // The closed and pairing forms are also compared inside these sweeps.
    for (id, field) in [("P-TENSOR-OP", Field::Prime(3)), ("P-GNYBE-PROD", Field::Prime(3))] {
        parts.push(summary(&prop(id, field, 20, None)?));
    }
    Ok(parts.join("; "))
}

fn golden_line(name: &str) -> Option<Value> {
    serde_json::from_str(golden(name).trim()).ok()
}

fn determinism() -> Verdict {
    let f3 = Field::Prime(3);
    let specs = [
        ("novikov-dim2-F2.json", SearchSpec::new(Target::NovikovAlgebra { dim: 2 }, Field::Prime(2))),
        ("novikov-dim2-F3.json", SearchSpec::new(Target::NovikovAlgebra { dim: 2 }, f3)),
        ("nybe-a2-F3.json", SearchSpec::new(Target::NybeSolution { alg: a2(f3) }, f3)),
        ("rota-baxter-a2-F3-w-1.jsonl", SearchSpec::new(Target::RotaBaxter { alg: a2(f3), lambda: f3.int(-1) }, f3)),
    ];
    let mut parts = Vec::new();
    for (name, spec) in specs {
        let run = |s: &SearchSpec| enumerate(s).map_err(|e| e.to_string());
        let first = run(&spec)?;
        let second = run(&SearchSpec { jobs: 1, ..spec.clone() })?;
        ensure(first.to_json_lines() == second.to_json_lines(), || format!("{name}: reruns differ"))?;
        ensure(reverify(&spec, &first).map_err(|e| e.to_string())?, || format!("{name}: a solution fails re-verification"))?;
        for k in [2u64, 3, 5] {
            let parts: Vec<SearchResult> = (0..k)
                .map(|index| run(&SearchSpec { shard: Shard { index, count: k }, ..spec.clone() }))
                .collect::<Result<_, _>>()?;
            let merged = merge_shards(&spec, parts);
            ensure(merged.hash == first.hash && merged.solutions == first.solutions, || {
                format!("{name}: {k} shards disagree with the whole scan")
            })?;
        }
        if name.ends_with(".jsonl") {
            ensure(first.to_json_lines() == golden(name), || format!("{name}: output differs from golden"))?;
        } else {
            let g = golden_line(name).ok_or_else(|| format!("{name}: golden missing"))?;
            ensure(g["count"] == first.solutions.len() && g["hash"] == first.hash.as_str(), || {
                format!("{name}: count {} hash {} against golden {g}", first.solutions.len(), first.hash)
            })?;
        }
        parts.push(format!("{name} {}", first.solutions.len()));
    }
    Ok(format!("stable across reruns and 2/3/5 shards, all re-verified: {}", parts.join(", ")))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("worked example", worked_example),
        ("exhaustive NYBE vs O-operator form over F3", exhaustive_tensor_op),
        ("P-COR-BAX", cor_bax),
        ("P-SEMI and P-DUAL", semi_dual),
        ("P-EXT-STAR, P-DELTA-PM, P-R-PM", theorem_sweeps),
        ("P-GOPER exhaustive", goper),
        ("P-CIRC-DELTA", circ_delta_check),
        ("determinism and goldens", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("PASS {} {name} ({secs:.1} s): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1} s): {msg}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
