use nova_core::algebra::{bimodnov_full_residual, coregular, novikov_residual, regular};
use nova_core::operators::{
    balanced_residual, baxter_residual, circ_t, equivalent_residual, ext_equation_residual, ext_o_residual,
    hkappa_residual, homomorphism_residual, invariant_residual, is_o_operator, is_rota_baxter, pm_context, star_grid,
    star_product, MassParams,
};
use nova_core::postnov::{baxter_post, post_from_rb, post_residual};
use nova_core::solver::{random_matrix, random_scalar};
use nova_core::{Algebra, BimodNov, Bimodule, Field, Matrix, Scalar, Vector};
use rand::Rng;

use super::{
    all_matrices, enumerated, map_space, random_algebra, random_combination, random_nonzero, Check, Run, Tally,
};
use crate::doc::{Document, Object};

// ------------------------------------------------------- linear conditions

/// `l(β(u))v − r(β(v))u`.
pub(crate) fn balanced_values(ctx: &Bimodule, beta: &Matrix) -> Vec<Vector> {
    let m = ctx.mdim();
    let mut out = Vec::new();
    for u in 0..m {
        for v in 0..m {
            out.push(&ctx.l(&beta.column(u)).column(v) - &ctx.r(&beta.column(v)).column(u));
        }
    }
    out
}

/// `x∘β(u) − β(l(x)u)` and `β(u)∘x − β(r(x)u)`.
pub(crate) fn hom_values(ctx: &Bimodule, beta: &Matrix) -> Vec<Vector> {
    let alg = ctx.base();
    let mut out = Vec::new();
    for x in 0..alg.dim() {
        let ex = alg.basis(x);
        for u in 0..ctx.mdim() {
            let bu = beta.column(u);
            out.push(&alg.product(&ex, &bu) - &beta.apply(&ctx.l_basis()[x].column(u)));
            out.push(&alg.product(&bu, &ex) - &beta.apply(&ctx.r_basis()[x].column(u)));
        }
    }
    out
}

pub(crate) fn bal_hom_values(ctx: &Bimodule, beta: &Matrix) -> Vec<Vector> {
    let mut out = balanced_values(ctx, beta);
    out.extend(hom_values(ctx, beta));
    out
}

/// `l(β(u·v))w − (l(β(u))v)·w` and `r(β(v·w))u − u·(r(β(w))v)`.
fn equivalent_values(ctx: &BimodNov, beta: &Matrix) -> Vec<Vector> {
    let m = ctx.mdim();
    let e = |k| ctx.module_basis(k);
    let mut out = Vec::new();
    for u in 0..m {
        for v in 0..m {
            for w in 0..m {
                let lhs = ctx.l(&beta.apply(&ctx.dot(&e(u), &e(v)))).column(w);
                out.push(&lhs - &ctx.dot(&ctx.l(&beta.column(u)).column(v), &e(w)));
                let lhs = ctx.r(&beta.apply(&ctx.dot(&e(v), &e(w)))).column(u);
                out.push(&lhs - &ctx.dot(&e(u), &ctx.r(&beta.column(w)).column(v)));
            }
        }
    }
    out
}

/// Which conditions a drawn `β` must meet.
#[derive(Clone, Copy)]
pub(crate) struct BetaReq {
    pub balanced: bool,
    pub hom: bool,
    /// Equivalent of this mass, when nonzero.
    pub equivalent: bool,
}

/// A random `β` from the solution space of `req`, checked against the library
/// residuals. The second value is false if they disagree.
pub(crate) fn draw_beta(rng: &mut impl Rng, ctx: &BimodNov, req: BetaReq, mu: &Scalar) -> (Matrix, bool) {
    let f = ctx.field();
    let (n, m) = (ctx.base().dim(), ctx.mdim());
    let space = map_space(f, n, m, |b| {
        let mut v = Vec::new();
        if req.balanced {
            v.extend(balanced_values(ctx.bimodule(), b));
        }
        if req.hom {
            v.extend(hom_values(ctx.bimodule(), b));
        }
        if req.equivalent && !mu.is_zero() {
            v.extend(equivalent_values(ctx, b));
        }
        v
    });
    let beta = random_combination(rng, f, n, m, &space);
    let b = ctx.bimodule();
    let ok = (!req.balanced || balanced_residual(b, &beta).is_ok_and(|r| r.is_zero()))
        && (!req.hom || homomorphism_residual(b, &beta).is_ok_and(|r| r.is_zero()))
        && (!req.equivalent || equivalent_residual(ctx, &beta, mu).is_ok_and(|r| r.is_zero()));
    (beta, ok)
}

// ------------------------------------------------------- α search

/// The extended O-operator equation over `F_p` on plain integers.
struct FastExt {
    p: u64,
    n: usize,
    m: usize,
    /// `mul[(i*n + j)*n + k]`: coefficient of `e_k` in `e_i∘e_j`.
    mul: Vec<u64>,
    /// `l[(x*m + row)*m + col]`.
    l: Vec<u64>,
    r: Vec<u64>,
    /// `λ(e_u·e_v)` as `lam_dot[(u*m + v)*m + w]`.
    lam_dot: Vec<u64>,
    /// `κβ(u)∘β(v) + μβ(u·v)` as `rhs[(u*m + v)*n + k]`.
    rhs: Vec<u64>,
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Prime { value, .. } => *value as u64,
        Scalar::Rational(_) => unreachable!("fast path is for prime fields"),
    }
}

impl FastExt {
    fn new(ctx: &BimodNov, beta: &Matrix, params: &MassParams) -> Option<FastExt> {
        let Field::Prime(p) = ctx.field() else { return None };
        if p >= 1 << 12 {
            return None;
        }
        let alg = ctx.base();
        let (n, m) = (alg.dim(), ctx.mdim());
        let mut mul = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                mul.extend(alg.basis_product(i, j).coords().iter().map(residue));
            }
        }
        let flat = |ms: &[Matrix]| -> Vec<u64> { ms.iter().flat_map(|mat| mat.entries().iter().map(residue)).collect() };
        let l = flat(ctx.bimodule().l_basis());
        let r = flat(ctx.bimodule().r_basis());
        let mut lam_dot = Vec::with_capacity(m * m * m);
        let mut rhs = Vec::with_capacity(m * m * n);
        for u in 0..m {
            for v in 0..m {
                let uv = ctx.product().basis_product(u, v);
                lam_dot.extend(uv.scale(&params.lambda).coords().iter().map(residue));
                let mut x = alg.product(&beta.column(u), &beta.column(v)).scale(&params.kappa);
                x.axpy(&params.mu, &beta.apply(uv));
                rhs.extend(x.coords().iter().map(residue));
            }
        }
        Some(FastExt { p: p as u64, n, m, mul, l, r, lam_dot, rhs })
    }

    /// `a[k*m + j]` is the `e_k` coordinate of `α(e_j)`.
    fn holds(&self, a: &[u64]) -> bool {
        let (n, m, p) = (self.n, self.m, self.p);
        let mut inner = vec![0u64; m];
        for u in 0..m {
            for v in 0..m {
                for (w, slot) in inner.iter_mut().enumerate() {
                    let mut s = self.lam_dot[(u * m + v) * m + w];
                    for x in 0..n {
                        s += a[x * m + u] * self.l[(x * m + w) * m + v] + a[x * m + v] * self.r[(x * m + w) * m + u];
                    }
                    *slot = s % p;
                }
                for k in 0..n {
                    let mut s = 0u64;
                    for i in 0..n {
                        let ai = a[i * m + u];
                        if ai == 0 {
                            continue;
                        }
                        for j in 0..n {
                            s += ai * a[j * m + v] % p * self.mul[(i * n + j) * n + k];
                        }
                    }
                    let mut t = 0u64;
                    for (w, iw) in inner.iter().enumerate() {
                        t += a[k * m + w] * iw;
                    }
                    if (s % p + p - t % p) % p != self.rhs[(u * m + v) * n + k] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Candidate maps scanned by the α search before falling back.
const ALPHA_LIMIT: u64 = 60_000;

/// A uniformly chosen solution `α` of the extended O-operator equation among
/// all maps with small entries, or `None` if there is none or the space is too
/// large. Solutions of the fast path are re-checked with the library residual.
pub(crate) fn find_alpha(
    rng: &mut impl Rng,
    ctx: &BimodNov,
    beta: &Matrix,
    params: &MassParams,
    check: &mut Check,
) -> Option<Matrix> {
    let f = ctx.field();
    let (n, m) = (ctx.base().dim(), ctx.mdim());
    let vals = super::small_values(f);
    let count = (vals.len() as u64).checked_pow((n * m) as u32)?;
    if count > ALPHA_LIMIT {
        return None;
    }
    let decode = |mut idx: u64| -> Vec<u64> {
        let mut a = vec![0u64; n * m];
        for slot in a.iter_mut().rev() {
            *slot = idx % vals.len() as u64;
            idx /= vals.len() as u64;
        }
        a
    };
    let to_matrix = |a: &[u64]| {
        let entries = a.iter().map(|&k| vals[k as usize].clone()).collect();
        super::matrix_from_entries(f, n, m, entries)
    };
    let mut chosen: Option<Matrix> = None;
    let mut seen = 0u64;
    let mut consider = |mat: Matrix, rng: &mut dyn rand::RngCore| {
        seen += 1;
        if rng.gen_range(0..seen) == 0 {
            chosen = Some(mat);
        }
    };
    match FastExt::new(ctx, beta, params) {
        Some(fast) => {
            for idx in 0..count {
                let a = decode(idx);
                if fast.holds(&a) {
                    consider(to_matrix(&a), rng);
                }
            }
        }
        None => {
            for idx in 0..count {
                let mat = to_matrix(&decode(idx));
                let mut res = nova_core::Residual::fail_fast();
                if nova_core::operators::ext_equation_into(ctx, &mat, beta, params, &mut res).is_ok() && res.is_zero() {
                    consider(mat, rng);
                }
            }
        }
    }
    if let Some(a) = &chosen {
        let ok = ext_equation_residual(ctx, a, beta, params).is_ok_and(|r| r.is_zero());
        check.expect(ok, || "the α search returned a map failing the extended O-operator equation".into());
    }
    chosen
}

/// A solution when one exists, otherwise a random map.
pub(crate) fn alpha_or_random(rng: &mut impl Rng, ctx: &BimodNov, beta: &Matrix, params: &MassParams, check: &mut Check) -> Matrix {
    let (n, m) = (ctx.base().dim(), ctx.mdim());
    match find_alpha(rng, ctx, beta, params, check) {
        Some(a) => a,
        None => scalar_solution(ctx, beta, params).unwrap_or_else(|| random_matrix(rng, ctx.field(), n, m)),
    }
}

/// On the regular context with `β = t·id`, `α = s·id` solves the equation iff
/// `−s² − sλ = κt² + μt`; tries `s` over the small scalars.
fn scalar_solution(ctx: &BimodNov, beta: &Matrix, params: &MassParams) -> Option<Matrix> {
    let f = ctx.field();
    let n = ctx.base().dim();
    if ctx.mdim() != n || !beta.is_square() {
        return None;
    }
    for s in super::small_values(f) {
        let a = Matrix::identity(f, n).scale(&s);
        if ext_equation_residual(ctx, &a, beta, params).is_ok_and(|r| r.is_zero()) {
            return Some(a);
        }
    }
    None
}

// ------------------------------------------------------- instances

pub(crate) struct ExtInstance {
    pub ctx: BimodNov,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub params: MassParams,
}

impl ExtInstance {
    pub fn document(&self) -> Document {
        let f = self.ctx.field();
        let p = &self.params;
        let row = vec![vec![p.lambda.clone(), p.kappa.clone(), p.mu.clone()]];
        let params = Matrix::from_rows(f, row).expect("one row");
        Document::bundle(
            f,
            vec![
                ("context", Object::BimodNov(self.ctx.clone())),
                ("alpha", Object::LinMap(self.alpha.clone())),
                ("beta", Object::LinMap(self.beta.clone())),
                ("params (lambda, kappa, mu)", Object::LinMap(params)),
            ],
        )
    }
}

/// The worked instance: `A₂`, `T₂`, `β₂` at `(λ, κ, μ) = (1, −2, 0)`.
pub(crate) fn worked(field: Field) -> ExtInstance {
    let a2 = nova_core::sample::a2(field);
    ExtInstance {
        ctx: regular(&a2).expect("A₂ is Novikov"),
        alpha: nova_core::sample::t2(field),
        beta: nova_core::sample::beta2(field),
        params: MassParams::ints(field, 1, -2, 0),
    }
}

/// A random context over `alg`: regular, coregular, or the regular bimodule
/// with the zero product.
pub(crate) fn random_context(rng: &mut impl Rng, alg: &Algebra) -> BimodNov {
    match rng.gen_range(0..4) {
        0 | 1 => regular(alg).expect("enumerated algebras are Novikov"),
        2 => coregular(alg),
        _ => BimodNov::with_trivial_product(Bimodule::regular(alg)),
    }
}

// ------------------------------------------------------- properties

fn ext_star_check(inst: &ExtInstance, mut c: Check) -> Check {
    let hyp = ext_o_residual(&inst.ctx, &inst.alpha, &inst.beta, &inst.params).map(|r| r.holds());
    let hyp = c.ok(hyp, "ext_o_residual").unwrap_or(false);
    c.implies("extended O-operator ⇒ ∗ Novikov", hyp, || {
        star_product(&inst.ctx, &inst.alpha, &inst.params.lambda)
            .is_ok_and(|s| s.conditions.is_zero() && novikov_residual(&s.product).is_zero())
    });
    c.done(|| inst.document())
}

fn ext_star_instance(rng: &mut impl Rng, ctx: BimodNov, c: &mut Check) -> ExtInstance {
    let f = ctx.field();
    let params = MassParams::new(random_scalar(rng, f), random_scalar(rng, f), random_scalar(rng, f));
    let req = BetaReq { balanced: true, hom: true, equivalent: true };
    let (beta, ok) = draw_beta(rng, &ctx, req, &params.mu);
    c.expect(ok, || "drawn β fails the library's balanced/homomorphism/equivalent residuals".into());
    let alpha = alpha_or_random(rng, &ctx, &beta, &params, c);
    ExtInstance { ctx, alpha, beta, params }
}

/// One instance per enumerated dimension-2 algebra (evenly thinned to `cap`),
/// then `trials` random ones.
fn algebra_sweep<F>(run: &Run, cap: usize, eval: F) -> Tally
where
    F: Fn(&mut rand_chacha::ChaCha8Rng, &Algebra) -> Check + Send + Sync,
{
    let all = enumerated(run.field, 2);
    let step = all.len().div_ceil(cap).max(1);
    let algs: Vec<(u64, Algebra)> = all.into_iter().step_by(step).enumerate().map(|(k, a)| (k as u64, a)).collect();
    let t = run.sweep(algs, |(k, a)| eval(&mut run.rng(1, *k), a));
    let dim = run.max_dim(3);
    t.merge(run.random(2, |rng| {
        let a = random_algebra(rng, run.field, dim);
        eval(rng, &a)
    }))
}

pub(crate) fn ext_star(run: &Run) -> Tally {
    let mut t = Tally::default();
    t.add(ext_star_check(&worked(run.field), Check::new()));
    t.merge(algebra_sweep(run, 150, |rng, alg| {
        let mut c = Check::new();
        let ctx = random_context(rng, alg);
        let inst = ext_star_instance(rng, ctx, &mut c);
        ext_star_check(&inst, c)
    }))
}

/// `δ(u)∘δ(v) − δ(u∗v)` is zero on all basis pairs.
fn is_star_hom(ctx: &BimodNov, alpha: &Matrix, delta: &Matrix, lambda: &Scalar) -> nova_core::Result<bool> {
    let star = star_grid(ctx, alpha, lambda)?;
    let alg = ctx.base();
    let m = ctx.mdim();
    for u in 0..m {
        for v in 0..m {
            let lhs = alg.product(&delta.column(u), &delta.column(v));
            if lhs != delta.apply(star.basis_product(u, v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn delta_pm(run: &Run) -> Tally {
    let eval = |inst: &ExtInstance, sign: i64, mut c: Check| {
        let lhs = ext_equation_residual(&inst.ctx, &inst.alpha, &inst.beta, &inst.params).map(|r| r.is_zero());
        let delta = if sign > 0 { inst.alpha.add(&inst.beta) } else { inst.alpha.sub(&inst.beta) };
        let rhs = is_star_hom(&inst.ctx, &inst.alpha, &delta, &inst.params.lambda);
        let hom = homomorphism_residual(inst.ctx.bimodule(), &inst.beta).map(|r| r.is_zero());
        if let (Some(l), Some(r), Some(h)) = (c.ok(lhs, "ext equation"), c.ok(rhs, "star product"), c.ok(hom, "hom")) {
            c.expect(h, || "β is not a homomorphism".into());
            c.equiv(&format!("mass (-1, {}λ) vs δ homomorphism", if sign > 0 { "+" } else { "-" }), l, r);
        }
        c.done(|| inst.document())
    };
    let mut t = Tally::default();
    let f = run.field;
    for sign in [1, -1] {
        let mut w = worked(f);
        w.params = MassParams::new(f.one(), f.int(-1), f.int(sign));
        t.add(eval(&w, sign, Check::new()));
    }
    t.merge(algebra_sweep(run, 150, |rng, alg| {
        let mut c = Check::new();
        let ctx = random_context(rng, alg);
        let sign = if rng.gen() { 1 } else { -1 };
        let lambda = random_scalar(rng, f);
        let params = MassParams::new(lambda.clone(), f.int(-1), &lambda * &f.int(sign));
        let req = BetaReq { balanced: rng.gen(), hom: true, equivalent: false };
        let (beta, ok) = draw_beta(rng, &ctx, req, &f.zero());
        c.expect(ok, || "drawn β fails the library's homomorphism residual".into());
        let alpha = if rng.gen_range(0..4) == 0 {
            random_matrix(rng, f, ctx.base().dim(), ctx.mdim())
        } else {
            alpha_or_random(rng, &ctx, &beta, &params, &mut c)
        };
        eval(&ExtInstance { ctx, alpha, beta, params }, sign, c)
    }))
}

pub(crate) fn r_pm(run: &Run) -> Tally {
    let f = run.field;
    let eval = |inst: &ExtInstance, kappa: &Scalar, sign: i64, mut c: Check| {
        let (ctx, beta, lambda) = (&inst.ctx, &inst.beta, &inst.params.lambda);
        let hyp = balanced_residual(ctx.bimodule(), beta).map(|r| r.is_zero())
            .and_then(|b| Ok(b && invariant_residual(ctx.bimodule(), beta, kappa)?.is_zero()))
            .and_then(|b| Ok(b && equivalent_residual(ctx, beta, lambda)?.is_zero()));
        let hyp = c.ok(hyp, "hypotheses").unwrap_or(false) && !kappa.is_zero();
        c.hit(hyp);
        if hyp {
            for s in [1, -1] {
                let pm = pm_context(ctx, beta, lambda, s);
                if let Some(pm) = c.ok(pm, "pm_context") {
                    let res = bimodnov_full_residual(&pm);
                    c.expect(res.is_zero(), || format!("sign {s}: (M±, ·±, l, r) fails {}", res.first().map_or("", |x| x.identity.as_str())));
                    if s == sign {
                        let p = MassParams::new(lambda.clone(), f.int(-1), lambda * &f.int(s));
                        let lhs = ext_o_residual(ctx, &inst.alpha, beta, &p).map(|r| r.holds());
                        let delta = if s > 0 { inst.alpha.add(beta) } else { inst.alpha.sub(beta) };
                        let rhs = is_o_operator(&pm, &delta, &f.one());
                        if let (Some(l), Some(r)) = (c.ok(lhs, "ext_o"), c.ok(rhs, "o-operator")) {
                            c.equiv(&format!("sign {s}: extended of mass (-1, ±λ) vs weight-1 O-operator"), l, r);
                        }
                    }
                }
            }
        }
        c.done(|| inst.document())
    };
    let mut t = Tally::default();
    for sign in [1, -1] {
        let w = worked(f);
        let kappa = w.params.kappa.clone();
        t.add(eval(&w, &kappa, sign, Check::new()));
    }
    t.merge(algebra_sweep(run, 150, |rng, alg| {
        let mut c = Check::new();
        let ctx = random_context(rng, alg);
        let sign = if rng.gen() { 1 } else { -1 };
        let lambda = random_scalar(rng, f);
        let kappa = random_nonzero(rng, f);
        let req = BetaReq { balanced: true, hom: true, equivalent: true };
        let (beta, ok) = draw_beta(rng, &ctx, req, &lambda);
        c.expect(ok, || "drawn β fails the library residuals".into());
        let params = MassParams::new(lambda.clone(), f.int(-1), &lambda * &f.int(sign));
        let alpha = if rng.gen_range(0..4) == 0 {
            random_matrix(rng, f, ctx.base().dim(), ctx.mdim())
        } else {
            alpha_or_random(rng, &ctx, &beta, &params, &mut c)
        };
        eval(&ExtInstance { ctx, alpha, beta, params }, &kappa, sign, c)
    }))
}

fn endo_doc(alg: &Algebra, t: &Matrix) -> Document {
    Document::bundle(alg.field(), vec![("algebra", Object::Algebra(alg.clone())), ("T", Object::LinMap(t.clone()))])
}

fn cor_bax_check(alg: &Algebra, t: &Matrix) -> Check {
    let f = alg.field();
    let n = alg.dim();
    let mut c = Check::new();
    let reg = regular(alg).expect("enumerated algebras are Novikov");
    let zero = Matrix::zeros(f, n, n);
    let id = Matrix::identity(f, n);
    for lambda in 0..=2i64 {
        for sign in [1i64, -1] {
            let lhs = hkappa_residual(alg, t, &f.int(lambda), &f.int(-1 + sign * lambda)).map(|r| r.is_zero());
            let shifted = if sign > 0 { t.add(&id) } else { t.sub(&id) };
            let weight = f.int(lambda - 2 * sign);
            let p = MassParams::new(weight.clone(), f.zero(), f.zero());
            let rhs = ext_o_residual(&reg, &shifted, &zero, &p).map(|r| r.holds());
            let rb = is_rota_baxter(alg, &shifted, &weight);
            if let (Some(l), Some(r), Some(b)) = (c.ok(lhs, "hkappa"), c.ok(rhs, "ext_o"), c.ok(rb, "rota-baxter")) {
                c.equiv(&format!("λ = {lambda}, sign {sign}"), l, r);
                c.expect(r == b, || "ext_o with β = 0 disagrees with the Rota-Baxter check".into());
            }
        }
    }
    c.done(|| endo_doc(alg, t))
}

/// `trials` random endomorphisms on each enumerated dimension-2 algebra, plus
/// the same number on random algebras up to dimension 3.
pub(crate) fn cor_bax(run: &Run) -> Tally {
    let f = run.field;
    let a2 = nova_core::sample::a2(f);
    let mut t = Tally::default();
    t.add(cor_bax_check(&a2, &nova_core::sample::t2(f)));
    t.add(cor_bax_check(&a2, &Matrix::identity(f, 2)));
    let algs = enumerated(f, 2);
    let items: Vec<(usize, u64)> = (0..algs.len()).flat_map(|i| (0..run.trials()).map(move |k| (i, k))).collect();
    let t = t.merge(run.sweep(items, |&(i, k)| {
        let mut rng = run.rng(i as u64 + 10, k);
        cor_bax_check(&algs[i], &random_matrix(&mut rng, f, 2, 2))
    }));
    let dim = run.max_dim(3);
    t.merge(run.random(3, |rng| {
        let alg = random_algebra(rng, f, dim);
        let n = alg.dim();
        cor_bax_check(&alg, &random_matrix(rng, f, n, n))
    }))
}

fn baxter_check(alg: &Algebra, t: &Matrix) -> Check {
    let f = alg.field();
    let n = alg.dim();
    let mut c = Check::new();
    let id = Matrix::identity(f, n);
    let bax = baxter_residual(alg, t).map(|r| r.is_zero());
    let plus = is_rota_baxter(alg, &t.add(&id), &f.int(-2));
    let minus = is_rota_baxter(alg, &t.sub(&id), &f.int(2));
    if let (Some(b), Some(p), Some(m)) = (c.ok(bax, "baxter"), c.ok(plus, "T+id"), c.ok(minus, "T-id")) {
        c.equiv("Baxter vs T+id of weight -2", b, p);
        c.equiv("Baxter vs T-id of weight 2", b, m);
        if b {
            let post = baxter_post(alg, t);
            if let Some(post) = c.ok(post, "baxter_post") {
                c.expect(post_residual(&post).is_zero(), || "the Baxter post-Novikov structure fails".into());
            }
            let half = f.half().expect("odd characteristic");
            let other = post_from_rb(alg, &t.sub(&id).scale(&half), &f.one());
            if let Some(other) = c.ok(other, "post_from_rb((T-id)/2)") {
                c.expect(post_residual(&other).is_zero(), || "the (T-id)/2 post-Novikov structure fails".into());
            }
        }
    }
    c.done(|| endo_doc(alg, t))
}

pub(crate) fn baxter(run: &Run) -> Tally {
    let f = run.field;
    let a2 = nova_core::sample::a2(f);
    let mut t = Tally::default();
    for m in [Matrix::identity(f, 2), Matrix::identity(f, 2).neg(), nova_core::sample::t2(f)] {
        t.add(baxter_check(&a2, &m));
    }
    let algs = enumerated(f, 2);
    let t = match all_matrices(f, 2, 2, 81) {
        Some(maps) => {
            let items: Vec<(usize, usize)> = (0..algs.len()).flat_map(|i| (0..maps.len()).map(move |k| (i, k))).collect();
            t.merge(run.sweep(items, |&(i, k)| baxter_check(&algs[i], &maps[k])))
        }
        None => t,
    };
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let n = alg.dim();
        // Half the draws are ±id plus a small perturbation to hit Baxter maps.
        let m = if rng.gen() {
            let s = if rng.gen() { f.one() } else { -&f.one() };
            Matrix::identity(f, n).scale(&s)
        } else {
            random_matrix(rng, f, n, n)
        };
        baxter_check(&alg, &m)
    }))
}

pub(crate) fn cons(run: &Run) -> Tally {
    let f = run.field;
    let eval = |inst: &ExtInstance, mut c: Check| {
        let alg = inst.ctx.base();
        let (t, beta, p) = (&inst.alpha, &inst.beta, &inst.params);
        let hyp = ext_o_residual(&inst.ctx, t, beta, p).map(|r| r.holds());
        let hyp = c.ok(hyp, "ext_o").unwrap_or(false);
        c.implies("extended O-operator ⇒ ∘_T Novikov", hyp, || {
            circ_t(alg, t, &p.lambda).is_ok_and(|a| novikov_residual(&a).is_zero())
        });
        if hyp && !p.kappa.is_zero() && f.half().is_ok() {
            for s in [1, -1] {
                let ok = pm_context(&inst.ctx, beta, &p.lambda, s).is_ok_and(|pm| bimodnov_full_residual(&pm).is_zero());
                c.expect(ok, || format!("sign {s}: (A±, ∘±, L, R) is not bimodule Novikov"));
            }
        }
        c.done(|| inst.document())
    };
    let mut t = Tally::default();
    t.add(eval(&worked(f), Check::new()));
    t.merge(algebra_sweep(run, 150, |rng, alg| {
        let mut c = Check::new();
        let ctx = regular(alg).expect("enumerated algebras are Novikov");
        let kappa = random_scalar(rng, f);
        let params = MassParams::new(random_scalar(rng, f), kappa.clone(), f.zero());
        let req = BetaReq { balanced: true, hom: !kappa.is_zero(), equivalent: false };
        let (beta, ok) = draw_beta(rng, &ctx, req, &f.zero());
        c.expect(ok, || "drawn β fails the library residuals".into());
        let alpha = alpha_or_random(rng, &ctx, &beta, &params, &mut c);
        eval(&ExtInstance { ctx, alpha, beta, params }, c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn fast_path_agrees_with_the_library_on_every_map() {
        let f = Field::Prime(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for alg in enumerated(f, 2).iter().step_by(11) {
            for ctx in [regular(alg).unwrap(), coregular(alg)] {
                let beta = random_matrix(&mut rng, f, 2, 2);
                let p = MassParams::new(random_scalar(&mut rng, f), random_scalar(&mut rng, f), random_scalar(&mut rng, f));
                let fast = FastExt::new(&ctx, &beta, &p).unwrap();
                for a in all_matrices(f, 2, 2, 81).unwrap() {
                    let flat: Vec<u64> = a.entries().iter().map(residue).collect();
                    let slow = ext_equation_residual(&ctx, &a, &beta, &p).unwrap().is_zero();
                    assert_eq!(fast.holds(&flat), slow);
                }
            }
        }
    }

    #[test]
    fn worked_instance_is_extended() {
        let w = worked(Field::Rational);
        assert!(ext_o_residual(&w.ctx, &w.alpha, &w.beta, &w.params).unwrap().holds());
    }
}
