use nova_core::algebra::{bimodnov_full_residual, coregular, novikov_residual, regular};
use nova_core::operators::{is_o_operator, is_rota_baxter, MassParams};
use nova_core::postnov::{
    associated, derivation_residual, hom_residual, lr_bimodule, post_from_nybe, post_from_o, post_from_rb,
    post_from_trialgebra, post_on_image, post_residual, trialgebra_residual, CommTrialgebra, PostNov,
};
use nova_core::solver::{random_matrix, trunc_poly};
use nova_core::ybe::{is_invariant, nybe_residual, RTensor};
use nova_core::{Algebra, BimodNov, Field, Matrix, Tensor2, Vector};
use rand::Rng;

use super::ops::{find_alpha, random_context};
use super::{all_matrices, all_tensors, enumerated, map_space, random_algebra, random_combination, Check, Run, Tally};
use crate::doc::{Document, Object};

/// Where a post-Novikov candidate comes from.
enum Source {
    RotaBaxter { alg: Algebra, t: Matrix, lambda: i64 },
    OOperator { ctx: BimodNov, alpha: Matrix, lambda: i64 },
    Nybe { alg: Algebra, r: Tensor2 },
    Trialgebra(CommTrialgebra),
    Random(PostNov),
}

impl Source {
    fn field(&self) -> Field {
        match self {
            Source::RotaBaxter { alg, .. } | Source::Nybe { alg, .. } => alg.field(),
            Source::OOperator { ctx, .. } => ctx.field(),
            Source::Trialgebra(t) => t.dot.field(),
            Source::Random(p) => p.field(),
        }
    }

    /// The structure, or `None` when the construction's precondition fails.
    fn build(&self) -> Option<PostNov> {
        let f = self.field();
        match self {
            Source::RotaBaxter { alg, t, lambda } => post_from_rb(alg, t, &f.int(*lambda)).ok(),
            Source::OOperator { ctx, alpha, lambda } => post_from_o(ctx, alpha, &f.int(*lambda)).ok(),
            Source::Nybe { alg, r } => {
                let rt = RTensor::new(r.clone()).ok()?;
                post_from_nybe(alg, &rt).ok()
            }
            Source::Trialgebra(t) => {
                if trialgebra_residual(t).is_zero() && derivation_residual(t).is_zero() {
                    post_from_trialgebra(t).ok()
                } else {
                    None
                }
            }
            Source::Random(p) => Some(p.clone()),
        }
    }

    fn document(&self) -> Document {
        let f = self.field();
        let weight = |l: i64| Object::LinMap(Matrix::from_rows(f, vec![vec![f.int(l)]]).expect("1x1"));
        match self {
            Source::RotaBaxter { alg, t, lambda } => Document::bundle(
                f,
                vec![("algebra", Object::Algebra(alg.clone())), ("T", Object::LinMap(t.clone())), ("weight", weight(*lambda))],
            ),
            Source::OOperator { ctx, alpha, lambda } => Document::bundle(
                f,
                vec![
                    ("context", Object::BimodNov(ctx.clone())),
                    ("alpha", Object::LinMap(alpha.clone())),
                    ("weight", weight(*lambda)),
                ],
            ),
            Source::Nybe { alg, r } => {
                Document::bundle(f, vec![("algebra", Object::Algebra(alg.clone())), ("r", Object::Tensor2(r.clone()))])
            }
            Source::Trialgebra(t) => Document::new(f, Object::Trialgebra(t.clone())),
            Source::Random(p) => Document::new(f, Object::PostNov(p.clone())),
        }
    }
}

/// Caps the number of enumerated algebras so that each contributes `per`
/// candidates within `budget`.
fn thinned(field: Field, per: usize, budget: usize) -> Vec<Algebra> {
    let all = enumerated(field, 2);
    let cap = (budget / per.max(1)).max(4);
    let step = all.len().div_ceil(cap).max(1);
    all.into_iter().step_by(step).collect()
}

fn weights(field: Field) -> Vec<i64> {
    if field == Field::Prime(2) {
        vec![0, 1]
    } else {
        vec![0, 1, -1]
    }
}

/// Commutative associative products used for trialgebras.
fn dot_algebras(field: Field) -> Vec<Algebra> {
    let v = |c: &[i64]| Vector::from_ints(field, c);
    let mut out: Vec<Algebra> = super::small_values(field)
        .into_iter()
        .map(|c| Algebra::from_fn(field, 1, |_, _| Vector::new(field, vec![c.clone()]).expect("field matches")))
        .collect();
    // e1e1 = e2 (augmentation ideal of k[x]/(x³)).
    out.push(Algebra::from_fn(field, 2, |i, j| if i + j == 0 { v(&[0, 1]) } else { v(&[0, 0]) }));
    // k × k.
    out.push(Algebra::from_fn(field, 2, |i, j| if i == j { Vector::basis(field, 2, i) } else { v(&[0, 0]) }));
    // k[x]/(x²) with unit e1.
    out.push(Algebra::from_fn(field, 2, |i, j| match i + j {
        0 => v(&[1, 0]),
        1 => v(&[0, 1]),
        _ => v(&[0, 0]),
    }));
    // The augmentation ideal of k[x]/(x⁴): e_i e_j = e_{i+j+1}.
    out.push(Algebra::from_fn(field, 3, |i, j| {
        if i + j + 1 < 3 {
            Vector::basis(field, 3, i + j + 1)
        } else {
            Vector::zeros(field, 3)
        }
    }));
    out.push(Algebra::zero(field, 2));
    out
}

/// `D(ab) − D(a)b − aD(b)`.
fn derivation_values(dot: &Algebra, d: &Matrix) -> Vec<Vector> {
    let n = dot.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply(dot.basis_product(i, j));
            let rhs = &dot.product(&d.column(i), &dot.basis(j)) + &dot.product(&dot.basis(i), &d.column(j));
            out.push(&lhs - &rhs);
        }
    }
    out
}

fn trialgebras(run: &Run) -> Vec<Source> {
    let f = run.field;
    let mut out = Vec::new();
    for (k, dot) in dot_algebras(f).into_iter().enumerate() {
        let n = dot.dim();
        let ders = map_space(f, n, n, |d| derivation_values(&dot, d));
        let mut rng = run.rng(40, k as u64);
        let mut maps: Vec<Matrix> = (0..4).map(|_| random_combination(&mut rng, f, n, n, &ders)).collect();
        maps.push(random_matrix(&mut rng, f, n, n));
        let neg = dot.scaled(&-&f.one());
        let random_circ = super::random_table(&mut rng, f, n);
        for d in maps {
            for circ in [Algebra::zero(f, n), neg.clone(), random_circ.clone()] {
                out.push(Source::Trialgebra(CommTrialgebra::new(dot.clone(), circ, d.clone()).expect("sizes match")));
            }
        }
    }
    out
}

/// Every candidate source: Rota-Baxter maps, O-operators, NYBE solutions,
/// trialgebras and random structures.
fn sources(run: &Run) -> Vec<Source> {
    let f = run.field;
    let mut out = Vec::new();
    let a2 = nova_core::sample::a2(f);
    out.push(Source::RotaBaxter { alg: a2.clone(), t: Matrix::identity(f, 2), lambda: -1 });
    let maps = all_matrices(f, 2, 2, 2401).unwrap_or_default();
    for alg in thinned(f, maps.len() * 3, 30_000) {
        for t in &maps {
            for &lambda in &weights(f) {
                let ok = is_rota_baxter(&alg, t, &f.int(lambda)).unwrap_or(false);
                if ok {
                    out.push(Source::RotaBaxter { alg: alg.clone(), t: t.clone(), lambda });
                }
            }
        }
    }
    let mut scratch = Check::new();
    for (k, alg) in thinned(f, 6, 240).into_iter().enumerate() {
        let mut rng = run.rng(41, k as u64);
        for &lambda in &weights(f) {
            let ctx = random_context(&mut rng, &alg);
            let zero = Matrix::zeros(f, alg.dim(), ctx.mdim());
            let p = MassParams::new(f.int(lambda), f.zero(), f.zero());
            if let Some(alpha) = find_alpha(&mut rng, &ctx, &zero, &p, &mut scratch) {
                out.push(Source::OOperator { ctx, alpha, lambda });
            }
        }
    }
    if f.half().is_ok() {
        let tensors = all_tensors(f, 2, 2401).unwrap_or_default();
        for alg in thinned(f, tensors.len(), 8000) {
            for r in &tensors {
                let sym = r + &r.flip();
                let solves = nybe_residual(&alg, r).is_ok_and(|x| x.is_zero());
                if solves && is_invariant(&alg, &sym).unwrap_or(false) {
                    out.push(Source::Nybe { alg: alg.clone(), r: r.clone() });
                }
            }
        }
    }
    out.extend(trialgebras(run));
    let dim = run.max_dim(3);
    for k in 0..run.trials() {
        let mut rng = run.rng(42, k);
        let alg = random_algebra(&mut rng, f, dim);
        let n = alg.dim();
        match rng.gen_range(0..3) {
            0 => {
                let lambda = *super::pick(&mut rng, &weights(f));
                out.push(Source::RotaBaxter { alg, t: random_matrix(&mut rng, f, n, n), lambda });
            }
            1 => {
                let lambda = *super::pick(&mut rng, &weights(f));
                let ctx = random_context(&mut rng, &alg);
                let zero = Matrix::zeros(f, n, ctx.mdim());
                let p = MassParams::new(f.int(lambda), f.zero(), f.zero());
                let alpha = find_alpha(&mut rng, &ctx, &zero, &p, &mut scratch)
                    .unwrap_or_else(|| random_matrix(&mut rng, f, n, ctx.mdim()));
                out.push(Source::OOperator { ctx, alpha, lambda });
            }
            _ => {
                let table = |rng: &mut rand_chacha::ChaCha8Rng| super::random_table(rng, f, n);
                let (c, l, r) = (alg, table(&mut rng), table(&mut rng));
                out.push(Source::Random(PostNov::new(c, l, r).expect("sizes match")));
            }
        }
    }
    out
}

fn each_post(run: &Run, eval: impl Fn(&PostNov, &mut Check) + Send + Sync) -> Tally {
    run.sweep(sources(run), |s| {
        let mut c = Check::new();
        if let Some(p) = s.build() {
            eval(&p, &mut c);
        }
        c.done(|| s.document())
    })
}

pub(crate) fn assoc(run: &Run) -> Tally {
    each_post(run, |p, c| {
        c.implies("post-Novikov ⇒ associated Novikov", post_residual(p).is_zero(), || {
            novikov_residual(&associated(p)).is_zero()
        });
    })
}

pub(crate) fn lrbimod(run: &Run) -> Tally {
    each_post(run, |p, c| {
        c.implies("post-Novikov ⇒ (A, ∘, L▷, R◁) bimodule Novikov", post_residual(p).is_zero(), || {
            lr_bimodule(p).is_ok_and(|b| bimodnov_full_residual(&b).is_zero())
        });
    })
}

pub(crate) fn compat(run: &Run) -> Tally {
    each_post(run, |p, c| {
        let f = p.field();
        c.implies("post-Novikov ⇒ id is a weight-1 O-operator recovering it", post_residual(p).is_zero(), || {
            let Ok(ctx) = lr_bimodule(p) else { return false };
            let id = Matrix::identity(f, p.dim());
            is_o_operator(&ctx, &id, &f.one()).unwrap_or(false) && post_from_o(&ctx, &id, &f.one()).as_ref() == Ok(p)
        });
    })
}

pub(crate) fn hom(run: &Run) -> Tally {
    let f = run.field;
    let mut items: Vec<Source> = sources(run)
        .into_iter()
        .filter(|s| matches!(s, Source::OOperator { .. } | Source::RotaBaxter { .. }))
        .collect();
    let a2 = nova_core::sample::a2(f);
    items.push(Source::OOperator { ctx: coregular(&a2), alpha: Matrix::zeros(f, 2, 2), lambda: 1 });
    run.sweep(items, |s| {
        let mut c = Check::new();
        let (ctx, alpha, lambda) = match s {
            Source::OOperator { ctx, alpha, lambda } => (ctx.clone(), alpha.clone(), *lambda),
            Source::RotaBaxter { alg, t, lambda } => (regular(alg).expect("Novikov"), t.clone(), *lambda),
            _ => unreachable!(),
        };
        let lambda = f.int(lambda);
        let hyp = is_o_operator(&ctx, &alpha, &lambda).unwrap_or(false);
        c.implies("O-operator ⇒ homomorphism", hyp, || {
            post_from_o(&ctx, &alpha, &lambda)
                .and_then(|p| hom_residual(&p, ctx.base(), &alpha))
                .is_ok_and(|r| r.is_zero())
        });
        if hyp {
            if let Ok(img) = post_on_image(&ctx, &alpha, &lambda) {
                c.expect(post_residual(&img.post).is_zero(), || "the structure on the image is not post-Novikov".into());
            }
        }
        c.done(|| s.document())
    })
}

pub(crate) fn tri(run: &Run) -> Tally {
    let mut items = trialgebras(run);
    let f = run.field;
    let dim = run.max_dim(3);
    for k in 0..run.trials() {
        let mut rng = run.rng(43, k);
        let n = rng.gen_range(1..=dim.min(3));
        let table = |rng: &mut rand_chacha::ChaCha8Rng| super::random_table(rng, f, n);
        let dot = if rng.gen() { trunc_poly(f, n) } else { table(&mut rng) };
        let circ = table(&mut rng);
        let d = random_matrix(&mut rng, f, n, n);
        items.push(Source::Trialgebra(CommTrialgebra::new(dot, circ, d).expect("sizes match")));
    }
    run.sweep(items, |s| {
        let mut c = Check::new();
        let Source::Trialgebra(t) = s else { unreachable!() };
        let hyp = trialgebra_residual(t).is_zero() && derivation_residual(t).is_zero();
        c.implies("trialgebra with derivation ⇒ post-Novikov", hyp, || {
            post_from_trialgebra(t).is_ok_and(|p| post_residual(&p).is_zero())
        });
        c.done(|| s.document())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_algebras_are_commutative_and_associative() {
        let f = Field::Prime(5);
        for a in dot_algebras(f) {
            let n = a.dim();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(a.basis_product(i, j), a.basis_product(j, i));
                    for k in 0..n {
                        let l = a.product(a.basis_product(i, j), &a.basis(k));
                        let r = a.product(&a.basis(i), a.basis_product(j, k));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}
