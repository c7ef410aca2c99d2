//! `verify`, `check`, `derive`, `prop` and `solve`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nova_core::algebra::{
    bimodnov_full_residual, bimodule_residual, coregular, dual_bimodule, novikov_residual, regular, semidirect, star,
};
use nova_core::lift::{
    circ_delta, delta_r, double, generalized_o_residual, generalized_o_weight_residual, gnybe_residual, lift_map,
};
use nova_core::operators::{
    balanced_residual, baxter_residual, circ_t, diamond_product, equivalent_residual, ext_o_residual,
    hkappa_residual, homomorphism_residual, invariant_residual, o_operator_residual, pm_products,
    rota_baxter_residual, star_product, MassParams,
};
use nova_core::postnov::{
    derivation_residual, post_from_nybe, post_from_o, post_from_rb, post_from_trialgebra, post_on_image,
    post_residual, trialgebra_residual,
};
use nova_core::solver::{enumerate, SearchSpec, Shard, Target};
use nova_core::ybe::{
    adjoint_residual, bilform_invariance, dual_pm_products, enybe_residual, invariance_tensor_residual,
    nybe_residual, o_nybe_residual, quad_transport, BilForm, RTensor,
};
use nova_core::{Algebra, BimodNov, Bimodule, Field, Matrix, Residual, Scalar, Tensor2};
use serde_json::json;

use crate::doc::{Document, Object};
use crate::props::{run_property, PropConfig, PropError};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "nova", version, about = "Novikov algebras, extended O-operators and Yang-Baxter equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the defining identities of a document.
    Verify {
        /// algebra, bimodule, bimodnov, postnov, trialgebra or bilform.
        kind: String,
        /// The document; `bilform` takes the algebra first.
        files: Vec<PathBuf>,
        #[command(flatten)]
        opts: Common,
    },
    /// Evaluate a residual on a context and maps or tensors.
    Check {
        kind: String,
        /// Algebra first, then the context (`regular`, `coregular` or a file) and maps.
        files: Vec<String>,
        #[command(flatten)]
        opts: Common,
    },
    /// Build a derived structure.
    Derive {
        construction: String,
        inputs: Vec<String>,
        #[command(flatten)]
        opts: Common,
    },
    /// Run a named property.
    Prop {
        id: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest dimension of random instances.
        #[arg(long)]
        dims: Option<usize>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        opts: Common,
    },
    /// Enumerate every solution over a small prime field.
    Solve {
        /// novikov, nybe, enybe, ext-o, rota-baxter, invariant-tensor or quadratic-form.
        target: String,
        inputs: Vec<String>,
        /// Dimension for `solve novikov`.
        #[arg(long)]
        dim: Option<usize>,
        /// `i/k`: scan the i-th of k slices of the candidate space.
        #[arg(long)]
        shard: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        opts: Common,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    /// Q, F2, F3, F5 or F7.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub verbose: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit 2 on input errors, 1 on failed preconditions.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failed(String),
}

type CliResult<T> = Result<T, CliError>;

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// What a command prints.
pub enum Output {
    Report(Report),
    Document(Document),
    /// Preformatted stdout text and an exit code.
    Text(String, i32),
}

pub fn execute(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Verify { kind, files, opts } => verify(&kind, &files, &opts).map(Output::Report),
        Command::Check { kind, files, opts } => check(&kind, &files, &opts).map(Output::Report),
        Command::Derive { construction, inputs, opts } => derive(&construction, &inputs, &opts).map(Output::Document),
        Command::Prop { id, trials, seed, dims, jobs, opts } => {
            let field = opts.field.as_deref().map(Field::parse).transpose().map_err(input)?;
            let cfg = PropConfig { field, trials, seed, dims, jobs };
            let outcome = run_property(&id, &cfg).map_err(|e| match e {
                PropError::UnknownId(_) | PropError::BadField(_) => input(e),
            })?;
            for f in outcome.failures.iter().take(3) {
                eprintln!("counterexample: {}\n{}", f.detail, f.instance.to_json());
            }
            Ok(Output::Report(Report::from_outcome(&outcome, opts.verbose)))
        }
        Command::Solve { target, inputs, dim, shard, jobs, count_only, opts } => {
            solve(&target, &inputs, dim, shard.as_deref(), jobs, count_only, &opts)
        }
    }
}

// ------------------------------------------------------------------ inputs

fn read_doc(path: &Path) -> CliResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn wrong_kind(path: &str, want: &str, got: &Document) -> CliError {
    input(format!("{path}: expected a {want} document, found {}", got.kind()))
}

fn load_algebra(path: &str) -> CliResult<Algebra> {
    let d = read_doc(Path::new(path))?;
    match d.object {
        Object::Algebra(a) => Ok(a),
        _ => Err(wrong_kind(path, "algebra", &d)),
    }
}

fn load_map(path: &str) -> CliResult<Matrix> {
    let d = read_doc(Path::new(path))?;
    match d.object {
        Object::LinMap(m) => Ok(m),
        _ => Err(wrong_kind(path, "linmap", &d)),
    }
}

fn load_tensor(path: &str) -> CliResult<Tensor2> {
    let d = read_doc(Path::new(path))?;
    match d.object {
        Object::Tensor2(t) => Ok(t),
        _ => Err(wrong_kind(path, "tensor2", &d)),
    }
}

fn load_form(path: &str) -> CliResult<BilForm> {
    let d = read_doc(Path::new(path))?;
    match d.object {
        Object::BilForm(b) => Ok(b),
        _ => Err(wrong_kind(path, "bilform", &d)),
    }
}

/// `regular`, `coregular`, `trivial` (regular actions, zero module product),
/// or a bimodnov or bimodule document over `alg`.
fn load_context(alg: &Algebra, spec: &str) -> CliResult<BimodNov> {
    let ctx = match spec {
        "regular" => regular(alg).map_err(input)?,
        "coregular" => coregular(alg),
        "trivial" => BimodNov::with_trivial_product(Bimodule::regular(alg)),
        path => {
            let d = read_doc(Path::new(path))?;
            match d.object {
                Object::BimodNov(b) => b,
                Object::Bimodule(b) => BimodNov::with_trivial_product(b),
                _ => return Err(wrong_kind(path, "bimodnov or bimodule", &d)),
            }
        }
    };
    if ctx.base() != alg {
        return Err(input(format!("context `{spec}` is over a different algebra")));
    }
    Ok(ctx)
}

fn need<'a>(files: &'a [String], n: usize, usage: &str) -> CliResult<&'a [String]> {
    if files.len() != n {
        return Err(input(format!("expected {n} inputs: {usage}")));
    }
    Ok(files)
}

fn scalar(field: Field, s: &Option<String>, name: &str) -> CliResult<Scalar> {
    match s {
        None => Ok(field.zero()),
        Some(t) => field.parse_scalar(t).map_err(|e| input(format!("--{name}: {e}"))),
    }
}

fn check_field(opts: &Common, field: Field) -> CliResult<()> {
    if let Some(f) = &opts.field {
        let want = Field::parse(f).map_err(input)?;
        if want != field {
            return Err(input(format!("--field {want} does not match the input field {field}")));
        }
    }
    Ok(())
}

fn params(field: Field, opts: &Common) -> CliResult<MassParams> {
    Ok(MassParams::new(
        scalar(field, &opts.weight, "weight")?,
        scalar(field, &opts.kappa, "kappa")?,
        scalar(field, &opts.mu, "mu")?,
    ))
}

// ------------------------------------------------------------------ verify

fn verify(kind: &str, files: &[PathBuf], opts: &Common) -> CliResult<Report> {
    let start = Instant::now();
    let single = || -> CliResult<Document> {
        match files {
            [f] => read_doc(f),
            _ => Err(input(format!("verify {kind} takes one file"))),
        }
    };
    let res = match kind {
        "bilform" => {
            let [a, b] = files else { return Err(input("verify bilform takes an algebra and a form")) };
            let alg = load_algebra(&a.to_string_lossy())?;
            let form = load_form(&b.to_string_lossy())?;
            let mut res = bilform_invariance(&alg, &form).map_err(input)?;
            if !form.is_nondegenerate() {
                res.record("nondegenerate", &[], nova_core::Vector::from_ints(alg.field(), &[1]));
            }
            res
        }
        _ => {
            let d = single()?;
            check_field(opts, d.field)?;
            if d.kind() != kind {
                return Err(input(format!("expected a {kind} document, found {}", d.kind())));
            }
            match d.object {
                Object::Algebra(a) => novikov_residual(&a),
                Object::Bimodule(b) => bimodule_residual(&b),
                Object::BimodNov(b) => bimodnov_full_residual(&b),
                Object::PostNov(p) => post_residual(&p),
                Object::Trialgebra(t) => {
                    let mut r = trialgebra_residual(&t);
                    r.merge(derivation_residual(&t));
                    r
                }
                _ => return Err(input(format!("nothing to verify for kind {kind}"))),
            }
        }
    };
    Ok(Report::from_residual(&format!("verify {kind}"), &res, start.elapsed(), opts.verbose))
}

// ------------------------------------------------------------------ check

const CHECK_USAGE: &str = "ext-o, ext-equation, o-operator, rota-baxter, baxter, hkappa, balanced, invariant, \
homomorphism, equivalent, nybe, enybe, gnybe, o-nybe, invariance, self-adjoint, skew-adjoint, generalized-o, \
generalized-o-weight";

fn check(kind: &str, files: &[String], opts: &Common) -> CliResult<Report> {
    let start = Instant::now();
    let Some(first) = files.first() else { return Err(input("missing the algebra file")) };
    let alg = load_algebra(first)?;
    let f = alg.field();
    check_field(opts, f)?;
    let name = format!("check {kind}");
    let done = |res: Residual| Ok(Report::from_residual(&name, &res, start.elapsed(), opts.verbose));
    let ctx_map = |usage: &str| -> CliResult<(BimodNov, Matrix)> {
        let fs = need(files, 3, usage)?;
        Ok((load_context(&alg, &fs[1])?, load_map(&fs[2])?))
    };
    match kind {
        "ext-o" | "ext-equation" => {
            let fs = need(files, 4, "algebra context alpha beta")?;
            let ctx = load_context(&alg, &fs[1])?;
            let (a, b) = (load_map(&fs[2])?, load_map(&fs[3])?);
            let rep = ext_o_residual(&ctx, &a, &b, &params(f, opts)?).map_err(input)?;
            if kind == "ext-equation" {
                return done(rep.equation);
            }
            let eq_zero = rep.equation.is_zero();
            let flag = rep.holds();
            let mut all = rep.equation.clone().prefixed("equation");
            all.merge(rep.balanced.clone().prefixed("balanced"));
            all.merge(rep.invariant.clone().prefixed("invariant"));
            all.merge(rep.equivalent.clone().prefixed("equivalent"));
            let mut r = Report::from_residual(&name, &all, start.elapsed(), opts.verbose);
            r.flag = flag;
            r.residual_norm_zero = eq_zero;
            Ok(r.with(
                "hypotheses",
                json!({
                    "balanced": rep.balanced.is_zero(),
                    "invariant": rep.invariant.is_zero(),
                    "equivalent": rep.equivalent.is_zero(),
                }),
            ))
        }
        "o-operator" => {
            let (ctx, a) = ctx_map("algebra context alpha")?;
            done(o_operator_residual(&ctx, &a, &scalar(f, &opts.weight, "weight")?).map_err(input)?)
        }
        "generalized-o" => {
            let (ctx, a) = ctx_map("algebra context alpha")?;
            done(generalized_o_residual(ctx.bimodule(), &a).map_err(input)?)
        }
        "generalized-o-weight" => {
            let (ctx, a) = ctx_map("algebra context alpha")?;
            done(generalized_o_weight_residual(&ctx, &a, &scalar(f, &opts.weight, "weight")?).map_err(input)?)
        }
        "balanced" => {
            let (ctx, b) = ctx_map("algebra context beta")?;
            done(balanced_residual(ctx.bimodule(), &b).map_err(input)?)
        }
        "invariant" => {
            let (ctx, b) = ctx_map("algebra context beta")?;
            done(invariant_residual(ctx.bimodule(), &b, &scalar(f, &opts.kappa, "kappa")?).map_err(input)?)
        }
        "homomorphism" => {
            let (ctx, b) = ctx_map("algebra context beta")?;
            done(homomorphism_residual(ctx.bimodule(), &b).map_err(input)?)
        }
        "equivalent" => {
            let (ctx, b) = ctx_map("algebra context beta")?;
            done(equivalent_residual(&ctx, &b, &scalar(f, &opts.mu, "mu")?).map_err(input)?)
        }
        "rota-baxter" | "baxter" | "hkappa" => {
            let fs = need(files, 2, "algebra T")?;
            let t = load_map(&fs[1])?;
            let w = scalar(f, &opts.weight, "weight")?;
            let res = match kind {
                "rota-baxter" => rota_baxter_residual(&alg, &t, &w),
                "baxter" => baxter_residual(&alg, &t),
                _ => hkappa_residual(&alg, &t, &w, &scalar(f, &opts.kappa, "kappa")?),
            };
            done(res.map_err(input)?)
        }
        "nybe" | "enybe" | "gnybe" | "o-nybe" | "invariance" => {
            let fs = need(files, 2, "algebra r")?;
            let r = load_tensor(&fs[1])?;
            match kind {
                "nybe" => Ok(Report::from_tensor(&name, kind, &nybe_residual(&alg, &r).map_err(input)?, start.elapsed())),
                "enybe" => {
                    let eps = scalar(f, &opts.epsilon, "epsilon")?;
                    Ok(Report::from_tensor(&name, kind, &enybe_residual(&alg, &r, &eps).map_err(input)?, start.elapsed()))
                }
                "gnybe" => done(gnybe_residual(&alg, &r).map_err(input)?),
                "o-nybe" => done(o_nybe_residual(&alg, &r).map_err(input)?),
                _ => done(invariance_tensor_residual(&alg, &r).map_err(input)?),
            }
        }
        "self-adjoint" | "skew-adjoint" => {
            let fs = need(files, 3, "algebra form T")?;
            let (b, t) = (load_form(&fs[1])?, load_map(&fs[2])?);
            let sign = if kind == "self-adjoint" { 1 } else { -1 };
            done(adjoint_residual(&b, &t, sign).map_err(input)?)
        }
        _ => Err(input(format!("unknown check `{kind}`; expected one of {CHECK_USAGE}"))),
    }
}

// ------------------------------------------------------------------ derive

fn derive(what: &str, inputs: &[String], opts: &Common) -> CliResult<Document> {
    if what == "post-from-trialgebra" {
        let fs = need(inputs, 1, "trialgebra")?;
        let d = read_doc(Path::new(&fs[0]))?;
        let Object::Trialgebra(t) = d.object else { return Err(wrong_kind(&fs[0], "trialgebra", &d)) };
        return Ok(Document::new(d.field, Object::PostNov(post_from_trialgebra(&t).map_err(failed)?)));
    }
    if what == "dual-bimodule" && inputs.len() == 1 {
        let d = read_doc(Path::new(&inputs[0]))?;
        let b = match d.object {
            Object::Bimodule(b) => b,
            Object::BimodNov(b) => b.bimodule().clone(),
            _ => return Err(wrong_kind(&inputs[0], "bimodule", &d)),
        };
        return Ok(Document::new(d.field, Object::Bimodule(dual_bimodule(&b).map_err(failed)?)));
    }
    let Some(first) = inputs.first() else { return Err(input("missing the algebra file")) };
    let alg = load_algebra(first)?;
    let f = alg.field();
    check_field(opts, f)?;
    let w = || scalar(f, &opts.weight, "weight");
    let doc = |o: Object| Ok(Document::new(f, o));
    let pair = |a: Algebra, b: Algebra| Ok(Document::bundle(f, vec![("plus", Object::Algebra(a)), ("minus", Object::Algebra(b))]));
    let ctx_at = |k: usize| load_context(&alg, &inputs[k]);
    match what {
        "star" => {
            need(inputs, 1, "algebra")?;
            doc(Object::Algebra(star(&alg)))
        }
        "dual-bimodule" => {
            need(inputs, 2, "algebra context")?;
            doc(Object::Bimodule(dual_bimodule(ctx_at(1)?.bimodule()).map_err(failed)?))
        }
        "semidirect" => {
            need(inputs, 2, "algebra context")?;
            let ctx = ctx_at(1)?;
            let res = bimodnov_full_residual(&ctx);
            if let Some(fl) = res.first() {
                return Err(failed(format!("context is not a bimodule Novikov algebra ({})", fl.identity)));
            }
            doc(Object::Algebra(semidirect(&ctx)))
        }
        "double" => {
            need(inputs, 2, "algebra context")?;
            doc(Object::Algebra(double(ctx_at(1)?.bimodule()).map_err(failed)?.algebra().clone()))
        }
        "circ-t" => {
            let fs = need(inputs, 2, "algebra T")?;
            doc(Object::Algebra(circ_t(&alg, &load_map(&fs[1])?, &w()?).map_err(failed)?))
        }
        "circ-pm" => {
            let fs = need(inputs, 3, "algebra context beta")?;
            let (p, m) = pm_products(&ctx_at(1)?, &load_map(&fs[2])?, &w()?).map_err(failed)?;
            pair(p, m)
        }
        "star-product" => {
            let fs = need(inputs, 3, "algebra context alpha")?;
            let sp = star_product(&ctx_at(1)?, &load_map(&fs[2])?, &w()?).map_err(failed)?;
            if let Some(fl) = sp.conditions.first() {
                return Err(failed(format!("the induced product is not Novikov ({})", fl.identity)));
            }
            doc(Object::Algebra(sp.product))
        }
        "diamond" => {
            let fs = need(inputs, 4, "algebra context delta_plus delta_minus")?;
            let d = diamond_product(&ctx_at(1)?, &load_map(&fs[2])?, &load_map(&fs[3])?, &w()?).map_err(failed)?;
            doc(Object::Algebra(d.product))
        }
        "post-from-o" | "post-on-image" => {
            let fs = need(inputs, 3, "algebra context alpha")?;
            let (ctx, a) = (ctx_at(1)?, load_map(&fs[2])?);
            let p = if what == "post-from-o" {
                post_from_o(&ctx, &a, &w()?).map_err(failed)?
            } else {
                post_on_image(&ctx, &a, &w()?).map_err(failed)?.post
            };
            doc(Object::PostNov(p))
        }
        "post-from-rb" => {
            let fs = need(inputs, 2, "algebra T")?;
            doc(Object::PostNov(post_from_rb(&alg, &load_map(&fs[1])?, &w()?).map_err(failed)?))
        }
        "post-from-nybe" | "dual-pm" => {
            let fs = need(inputs, 2, "algebra r")?;
            let r = RTensor::new(load_tensor(&fs[1])?).map_err(input)?;
            if what == "dual-pm" {
                let (p, m) = dual_pm_products(&alg, &r).map_err(failed)?;
                return pair(p, m);
            }
            doc(Object::PostNov(post_from_nybe(&alg, &r).map_err(failed)?))
        }
        "circ-delta" => {
            let fs = need(inputs, 2, "algebra r")?;
            doc(Object::Algebra(circ_delta(&alg, &load_tensor(&fs[1])?).map_err(failed)?))
        }
        "delta-r" => {
            let fs = need(inputs, 2, "algebra r")?;
            let r = load_tensor(&fs[1])?;
            if r.dim() != alg.dim() || r.field() != f {
                return Err(input("tensor and algebra must share a dimension and field"));
            }
            let names: Vec<String> = (1..=alg.dim()).map(|k| format!("e{k}")).collect();
            let items = (0..alg.dim()).map(|k| (names[k].as_str(), Object::Tensor2(delta_r(&alg, &r, &alg.basis(k)))));
            Ok(Document::bundle(f, items.collect()))
        }
        "lift" => {
            let fs = need(inputs, 3, "algebra context gamma")?;
            let d = double(ctx_at(1)?.bimodule()).map_err(failed)?;
            let l = lift_map(&d, &load_map(&fs[2])?).map_err(input)?;
            Ok(Document::bundle(
                f,
                vec![
                    ("double", Object::Algebra(d.algebra().clone())),
                    ("map", Object::LinMap(l.map.clone())),
                    ("tensor", Object::Tensor2(l.tensor.clone())),
                    ("plus", Object::Tensor2(l.plus.clone())),
                    ("minus", Object::Tensor2(l.minus.clone())),
                    ("hat_plus", Object::LinMap(l.hat_plus())),
                    ("hat_minus", Object::LinMap(l.hat_minus())),
                ],
            ))
        }
        "quad-transport" => {
            let fs = need(inputs, 4, "algebra form T beta")?;
            let q = quad_transport(&alg, &load_form(&fs[1])?, &load_map(&fs[2])?, &load_map(&fs[3])?)
                .map_err(failed)?;
            Ok(Document::bundle(
                f,
                vec![
                    ("p_t", Object::LinMap(q.p_t)),
                    ("p_beta", Object::LinMap(q.p_beta)),
                    ("delta_plus", Object::Tensor2(q.delta_plus)),
                    ("delta_minus", Object::Tensor2(q.delta_minus)),
                ],
            ))
        }
        _ => Err(input(format!("unknown construction `{what}`"))),
    }
}

// ------------------------------------------------------------------ solve

fn solve(
    what: &str,
    inputs: &[String],
    dim: Option<usize>,
    shard: Option<&str>,
    jobs: usize,
    count_only: bool,
    opts: &Common,
) -> CliResult<Output> {
    let flag_field = opts.field.as_deref().map(Field::parse).transpose().map_err(input)?;
    let (target, field) = if what == "novikov" {
        let dim = dim.ok_or_else(|| input("solve novikov needs --dim"))?;
        let field = flag_field.ok_or_else(|| input("solve novikov needs --field"))?;
        (Target::NovikovAlgebra { dim }, field)
    } else {
        let Some(first) = inputs.first() else { return Err(input("missing the algebra file")) };
        let alg = load_algebra(first)?;
        let f = alg.field();
        check_field(opts, f)?;
        let target = match what {
            "nybe" => Target::NybeSolution { alg },
            "enybe" => Target::EnybeSolution { epsilon: scalar(f, &opts.epsilon, "epsilon")?, alg },
            "rota-baxter" => Target::RotaBaxter { lambda: scalar(f, &opts.weight, "weight")?, alg },
            "invariant-tensor" => Target::InvariantSymmetricTensor { alg },
            "quadratic-form" => Target::QuadraticForm { alg },
            "ext-o" => {
                let fs = need(inputs, 3, "algebra context beta")?;
                let ctx = load_context(&alg, &fs[1])?;
                Target::ExtOOperator { ctx, beta: load_map(&fs[2])?, params: params(f, opts)? }
            }
            _ => return Err(input(format!("unknown solve target `{what}`"))),
        };
        (target, f)
    };
    let mut spec = SearchSpec::new(target, field);
    spec.jobs = jobs;
    if let Some(s) = shard {
        spec.shard = Shard::parse(s).map_err(input)?;
    }
    let result = enumerate(&spec).map_err(input)?;
    eprintln!(
        "{}: {} solutions among {} candidates, shard {}/{} ({} ms)",
        result.kind,
        result.solutions.len(),
        result.candidates,
        result.shard.index,
        result.shard.count,
        result.elapsed.as_millis()
    );
    let text = if count_only {
        let v = json!({
            "kind": result.kind,
            "field": result.field.to_string(),
            "shard": format!("{}/{}", result.shard.index, result.shard.count),
            "count": result.solutions.len(),
            "candidates": result.candidates,
            "hash": result.hash,
        });
        format!("{v}\n")
    } else {
        result.to_json_lines()
    };
    Ok(Output::Text(text, 0))
}
