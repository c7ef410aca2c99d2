use nova_core::algebra::{coregular, novikov_residual};
use nova_core::lift::{
    circ_delta, circ_delta_closed, double, generalized_o_residual, generalized_o_weight_residual, gnybe_residual,
    lift_map, DoubleAlg, LiftedMap,
};
use nova_core::operators::{
    balanced_residual, ext_o_residual, homomorphism_residual, is_o_operator, is_rota_baxter, MassParams,
};
use nova_core::solver::{random_matrix, random_scalar};
use nova_core::ybe::{coregular_bimodule, dual_ext_residual, enybe_residual, nybe_residual, RTensor};
use nova_core::{Algebra, BimodNov, Bimodule, Field, Matrix, Scalar, Tensor2};
use rand::Rng;

use super::ops::{alpha_or_random, bal_hom_values, find_alpha};
use super::ybe::{quarter, sweep_algebras, sym_invariant, tensor_doc, tensors_with_invariant_sym};
use super::{
    all_matrices, all_skew, all_tensors, delta_agrees, enumerated, map_space, random_algebra, random_combination,
    small_values, Check, Run, Tally,
};
use crate::doc::{Document, Object};

/// Bimodules `V` over `alg` used by the lifting properties.
fn bimodules(alg: &Algebra) -> Vec<Bimodule> {
    vec![Bimodule::regular(alg), coregular_bimodule(alg), Bimodule::trivial(alg, 1)]
}

fn map_doc(v: &Bimodule, maps: Vec<(&str, &Matrix)>) -> Document {
    let mut items = vec![("bimodule", Object::Bimodule(v.clone()))];
    items.extend(maps.into_iter().map(|(k, m)| (k, Object::LinMap(m.clone()))));
    Document::bundle(v.field(), items)
}

/// A balanced homomorphism `V → A` half of the time, else a random map.
fn draw_beta(rng: &mut impl Rng, v: &Bimodule) -> Matrix {
    let (n, m) = (v.base().dim(), v.mdim());
    if rng.gen_bool(0.5) {
        random_combination(rng, v.field(), n, m, &map_space(v.field(), n, m, |b| bal_hom_values(v, b)))
    } else {
        random_matrix(rng, v.field(), n, m)
    }
}

fn is_bal_hom(v: &Bimodule, beta: &Matrix) -> nova_core::Result<bool> {
    Ok(balanced_residual(v, beta)?.is_zero() && homomorphism_residual(v, beta)?.is_zero())
}

fn lifted(c: &mut Check, d: &DoubleAlg, m: &Matrix) -> Option<LiftedMap> {
    c.ok(lift_map(d, m), "lift")
}

/// Random `(V, β)` pairs on algebras up to `dim`.
fn random_pair(rng: &mut impl Rng, f: Field, dim: usize) -> (Bimodule, Matrix) {
    let alg = random_algebra(rng, f, dim);
    let bs = bimodules(&alg);
    let v = bs[rng.gen_range(0..bs.len())].clone();
    let beta = draw_beta(rng, &v);
    (v, beta)
}

pub(crate) fn lift_bal(run: &Run) -> Tally {
    let f = run.field;
    let eval = |(v, beta): &(Bimodule, Matrix)| {
        let mut c = Check::new();
        let lhs = is_bal_hom(v, beta);
        let rhs = double(v).and_then(|d| {
            let p = lift_map(&d, beta)?.hat_plus();
            is_bal_hom(&coregular_bimodule(d.algebra()), &p)
        });
        if let (Some(l), Some(r)) = (c.ok(lhs, "V side"), c.ok(rhs, "double side")) {
            c.equiv("β balanced homomorphism vs its lift on the dual of the double", l, r);
        }
        c.done(|| map_doc(v, vec![("beta", beta)]))
    };
    let mut items = Vec::new();
    for alg in sweep_algebras(f, 60, 20_000, false) {
        for v in bimodules(&alg) {
            let (n, m) = (alg.dim(), v.mdim());
            match all_matrices(f, n, m, 81) {
                Some(ms) => items.extend(ms.into_iter().map(|b| (v.clone(), b))),
                None => {
                    let mut rng = run.rng(1, items.len() as u64);
                    items.extend((0..8).map(|_| (v.clone(), draw_beta(&mut rng, &v))));
                }
            }
        }
    }
    let t = run.sweep(items, eval);
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| eval(&random_pair(rng, f, dim))))
}

struct LiftInstance {
    v: Bimodule,
    alpha: Matrix,
    beta: Matrix,
    kappa: Scalar,
}

impl LiftInstance {
    fn document(&self) -> Document {
        let k = Matrix::from_rows(self.v.field(), vec![vec![self.kappa.clone()]]).expect("1x1");
        map_doc(&self.v, vec![("alpha", &self.alpha), ("beta", &self.beta), ("kappa", &k)])
    }

    fn params(&self) -> MassParams {
        let f = self.v.field();
        MassParams::new(f.zero(), self.kappa.clone(), f.zero())
    }

    fn ctx(&self) -> BimodNov {
        BimodNov::with_trivial_product(self.v.clone())
    }
}

/// `(V, α, β, κ)` with `β` a balanced homomorphism and `α` solving the
/// equation of mass `(κ, 0)` when a small solution exists.
fn lift_instance(rng: &mut impl Rng, v: Bimodule, c: &mut Check) -> LiftInstance {
    let f = v.field();
    let (n, m) = (v.base().dim(), v.mdim());
    let beta = random_combination(rng, f, n, m, &map_space(f, n, m, |b| bal_hom_values(&v, b)));
    let kappa = random_scalar(rng, f);
    let ctx = BimodNov::with_trivial_product(v.clone());
    let p = MassParams::new(f.zero(), kappa.clone(), f.zero());
    let alpha = if rng.gen_range(0..4) > 0 {
        alpha_or_random(rng, &ctx, &beta, &p, c)
    } else {
        random_matrix(rng, f, n, m)
    };
    LiftInstance { v, alpha, beta, kappa }
}

fn lift_instances(run: &Run, stream: u64, per: usize) -> Vec<LiftInstance> {
    let f = run.field;
    let mut setup = Check::new();
    let mut out = Vec::new();
    for (i, alg) in sweep_algebras(f, 3 * per, 3000, false).into_iter().enumerate() {
        for v in bimodules(&alg) {
            for j in 0..per {
                let mut rng = run.rng(stream, (i * 64 + j) as u64);
                out.push(lift_instance(&mut rng, v.clone(), &mut setup));
            }
        }
    }
    let dim = run.max_dim(3);
    for k in 0..run.trials() {
        let mut rng = run.rng(stream + 1, k);
        let alg = random_algebra(&mut rng, f, dim);
        let bs = bimodules(&alg);
        let v = bs[rng.gen_range(0..bs.len())].clone();
        out.push(lift_instance(&mut rng, v, &mut setup));
    }
    out
}

pub(crate) fn lift_ext(run: &Run) -> Tally {
    run.sweep(lift_instances(run, 10, 4), |inst| {
        let mut c = Check::new();
        let p = inst.params();
        let lhs = ext_o_residual(&inst.ctx(), &inst.alpha, &inst.beta, &p).map(|r| r.holds());
        let rhs = double(&inst.v).and_then(|d| {
            let a = lift_map(&d, &inst.alpha)?.hat_minus();
            let b = lift_map(&d, &inst.beta)?.hat_plus();
            ext_o_residual(&coregular(d.algebra()), &a, &b, &p).map(|r| r.holds())
        });
        if let (Some(l), Some(r)) = (c.ok(lhs, "V side"), c.ok(rhs, "double side")) {
            c.equiv("α extended vs its lift extended on the dual of the double", l, r);
        }
        c.done(|| inst.document())
    })
}

fn nybe_zero(alg: &Algebra, r: &Tensor2) -> nova_core::Result<bool> {
    Ok(nybe_residual(alg, r)?.is_zero())
}

/// `(2/λ)(Ť − τŤ) + 2ǐd` and `(2/λ)(Ť − τŤ) − 2τǐd` in the double of the
/// regular bimodule.
pub(crate) fn rb_tensors(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> nova_core::Result<(DoubleAlg, Tensor2, Tensor2)> {
    let f = alg.field();
    let d = double(&Bimodule::regular(alg))?;
    let lt = lift_map(&d, t)?;
    let li = lift_map(&d, &Matrix::identity(f, alg.dim()))?;
    let two = f.int(2);
    let base = lt.minus.scale(&(&two * &lambda.inv().ok_or(nova_core::Error::DivisionByZero)?));
    let plus = &base + &li.tensor.scale(&two);
    let minus = &base - &li.tensor.flip().scale(&two);
    Ok((d, plus, minus))
}

pub(crate) fn cor_gn(run: &Run) -> Tally {
    let f = run.field;
    let t = run.sweep(lift_instances(run, 20, 3), |inst| {
        let mut c = Check::new();
        if !c.ok(is_bal_hom(&inst.v, &inst.beta), "β check").unwrap_or(false) {
            c.expect(false, || "the drawn β is not a balanced homomorphism".into());
            return c.done(|| inst.document());
        }
        let p = inst.params();
        let ctx = inst.ctx();
        let Some(d) = c.ok(double(&inst.v), "double") else { return c.done(|| inst.document()) };
        let (Some(pa), Some(qb)) = (lifted(&mut c, &d, &inst.alpha), lifted(&mut c, &d, &inst.beta)) else {
            return c.done(|| inst.document());
        };
        let hat = d.algebra();
        let eps = &(&inst.kappa + &f.one()) * &quarter(f);
        if let Some(ext) = c.ok(ext_o_residual(&ctx, &inst.alpha, &inst.beta, &p).map(|r| r.holds()), "ext") {
            for (name, r) in [("𝒫̌₋ + 𝒬̌₊", &pa.minus + &qb.plus), ("𝒫̌₋ − 𝒬̌₊", &pa.minus - &qb.plus)] {
                if let Some(e) = c.ok(enybe_residual(hat, &r, &eps).map(|x| x.is_zero()), "enybe") {
                    c.equiv(&format!("α extended vs {name} solving the ENYBE"), ext, e);
                }
                if inst.kappa == f.int(-1) {
                    c.implies("mass −1 gives NYBE solutions", ext, || nybe_zero(hat, &r).unwrap_or(false));
                }
            }
        }
        let o = is_o_operator(&ctx, &inst.alpha, &f.zero());
        if let (Some(o), Some(n)) = (c.ok(o, "O-operator"), c.ok(nybe_zero(hat, &pa.minus), "nybe")) {
            c.equiv("α weight-0 O-operator vs 𝒫̌₋ solving the NYBE", o, n);
        }
        c.done(|| inst.document())
    });
    // Rota-Baxter operators of nonzero weight.
    let mut items = Vec::new();
    let weights: Vec<Scalar> = small_values(f).into_iter().filter(|s| !s.is_zero()).collect();
    for alg in sweep_algebras(f, 625 * weights.len(), 60_000, false) {
        if let Some(ts) = all_matrices(f, alg.dim(), alg.dim(), 625) {
            for t in ts {
                for w in &weights {
                    items.push((alg.clone(), t.clone(), w.clone()));
                }
            }
        }
    }
    let t = t.merge(run.sweep(items, |(alg, tm, lambda)| rb_check(alg, tm, lambda)));
    let dim = run.max_dim(3);
    t.merge(run.random(30, |rng| {
        let alg = random_algebra(rng, f, dim);
        let lambda = super::random_nonzero(rng, f);
        rb_check(&alg, &random_matrix(rng, f, alg.dim(), alg.dim()), &lambda)
    }))
}

fn rb_check(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> Check {
    let mut c = Check::new();
    let rb = is_rota_baxter(alg, t, lambda);
    if let (Some(rb), Some((d, plus, minus))) = (c.ok(rb, "rota-baxter"), c.ok(rb_tensors(alg, t, lambda), "tensors")) {
        for (name, r) in [("+2ǐd", &plus), ("−2τǐd", &minus)] {
            if let Some(n) = c.ok(nybe_zero(d.algebra(), r), "nybe") {
                c.equiv(&format!("Rota-Baxter of weight {lambda} vs (2/λ)(Ť − τŤ) {name} solving the NYBE"), rb, n);
            }
        }
    }
    c.done(|| {
        let w = Matrix::from_rows(alg.field(), vec![vec![lambda.clone()]]).expect("1x1");
        Document::bundle(
            alg.field(),
            vec![("algebra", Object::Algebra(alg.clone())), ("T", Object::LinMap(t.clone())), ("lambda", Object::LinMap(w))],
        )
    })
}

/// `e2*∘_Δ e2* = 3e1*` on `A₂` with `r = e2⊗e2`.
fn worked_delta(f: Field) -> Check {
    let mut c = Check::new();
    let a2 = nova_core::sample::a2(f);
    let r = Tensor2::simple(f, 2, 1, 1);
    if let Some(p) = c.ok(circ_delta(&a2, &r), "∘_Δ") {
        let want = nova_core::Vector::basis(f, 2, 0).scale(&f.int(3));
        c.expect(p.basis_product(1, 1) == &want, || format!("e2*∘e2* = {:?}", p.basis_product(1, 1)));
    }
    c.done(|| tensor_doc(&a2, &r))
}

pub(crate) fn circ_delta_prop(run: &Run) -> Tally {
    let f = run.field;
    let mut t = Tally::default();
    t.add(worked_delta(f));
    let eval = |(alg, r): &(Algebra, Tensor2)| {
        let mut c = Check::new();
        c.hit(true);
        delta_agrees(alg, r, &mut c);
        c.done(|| tensor_doc(alg, r))
    };
    let mut items = Vec::new();
    if let Some(ts) = all_tensors(f, 2, 81) {
        for alg in enumerated(f, 2) {
            items.extend(ts.iter().map(|r| (alg.clone(), r.clone())));
        }
    }
    let t = t.merge(run.sweep(items, eval));
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let r = Tensor2::from_matrix(&random_matrix(rng, f, alg.dim(), alg.dim()));
        eval(&(alg, r))
    }))
}

fn gnybe_zero(alg: &Algebra, r: &Tensor2) -> nova_core::Result<bool> {
    Ok(gnybe_residual(alg, r)?.is_zero())
}

fn dual_novikov(alg: &Algebra, r: &Tensor2) -> nova_core::Result<bool> {
    Ok(novikov_residual(&circ_delta_closed(alg, r)?).is_zero())
}

pub(crate) fn gnybe_prod(run: &Run) -> Tally {
    let f = run.field;
    let eval = |(alg, r): &(Algebra, Tensor2)| {
        let mut c = Check::new();
        if let (Some(g), Some(n)) = (c.ok(gnybe_zero(alg, r), "gnybe"), c.ok(dual_novikov(alg, r), "∘_Δ")) {
            c.equiv("skew GNYBES vs ∘_Δ Novikov", g, n);
        }
        c.done(|| tensor_doc(alg, r))
    };
    let mut items = Vec::new();
    for alg in sweep_algebras(f, 1, 4000, true) {
        if let Some(ts) = all_skew(f, alg.dim(), 729) {
            items.extend(ts.into_iter().map(|r| (alg.clone(), r)));
        }
    }
    let t = run.sweep(items, eval);
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let m = random_matrix(rng, f, alg.dim(), alg.dim());
        eval(&(alg, Tensor2::from_matrix(&m.sub(&m.transpose()))))
    }))
}

pub(crate) fn gnybe_ext(run: &Run) -> Tally {
    let f = run.field;
    let mut items = Vec::new();
    let mut rng = run.rng(40, 0);
    for alg in sweep_algebras(f, 125, 6000, true) {
        for r in tensors_with_invariant_sym(&alg, &mut rng, 100) {
            items.push((alg.clone(), r));
        }
    }
    let dim = run.max_dim(3);
    for k in 0..run.trials() {
        let mut rng = run.rng(41, k);
        let alg = random_algebra(&mut rng, f, dim);
        let ts = tensors_with_invariant_sym(&alg, &mut rng, 0);
        items.push((alg, super::pick(&mut rng, &ts).clone()));
    }
    let kappas = small_values(f);
    run.sweep(items, |(alg, r)| {
        let mut c = Check::new();
        c.expect(sym_invariant(alg, r), || "generated symmetric part is not invariant".into());
        let Some(g) = c.ok(gnybe_zero(alg, r), "gnybe") else { return c.done(|| tensor_doc(alg, r)) };
        let Some(rt) = c.ok(RTensor::new(r.clone()), "RTensor") else { return c.done(|| tensor_doc(alg, r)) };
        for kappa in &kappas {
            if let Some(ext) = c.ok(dual_ext_residual(alg, &rt, kappa).map(|x| x.holds()), "dual ext") {
                c.implies(&format!("extended of mass ({kappa}, 0) gives a GNYBES solution"), ext, || g);
            }
            let eps = &(kappa + &f.one()) * &quarter(f);
            if let Some(e) = c.ok(enybe_residual(alg, r, &eps).map(|x| x.is_zero()), "enybe") {
                c.implies("ENYBE solutions solve the GNYBES", e, || g);
            }
        }
        c.done(|| tensor_doc(alg, r))
    })
}

fn goper_check(v: &Bimodule, alpha: &Matrix) -> Check {
    let mut c = Check::new();
    let lhs = double(v).and_then(|d| gnybe_zero(d.algebra(), &lift_map(&d, alpha)?.minus));
    let rhs = generalized_o_residual(v, alpha).map(|r| r.is_zero());
    if let (Some(l), Some(r)) = (c.ok(lhs, "gnybe in the double"), c.ok(rhs, "generalized O-operator")) {
        c.equiv("𝒫̌₋ solving the GNYBES vs generalized O-operator identities", l, r);
    }
    c.done(|| map_doc(v, vec![("alpha", alpha)]))
}

pub(crate) fn goper(run: &Run) -> Tally {
    let f = run.field;
    let mut items = Vec::new();
    for alg in enumerated(f, 2) {
        let v = Bimodule::regular(&alg);
        if let Some(ms) = all_matrices(f, 2, 2, 16) {
            items.extend(ms.into_iter().map(|a| (v.clone(), a)));
        }
    }
    let t = run.sweep(items, |(v, a)| goper_check(v, a));
    let dim = run.max_dim(2);
    t.merge(run.random(0, |rng| {
        let (v, _) = random_pair(rng, f, dim);
        let a = random_matrix(rng, f, v.base().dim(), v.mdim());
        goper_check(&v, &a)
    }))
}

pub(crate) fn goper_cor(run: &Run) -> Tally {
    let f = run.field;
    let dim = run.max_dim(2);
    run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let ctx = super::ops::random_context(rng, &alg);
        let (n, m) = (alg.dim(), ctx.mdim());
        let mut c = Check::new();
        let beta = random_combination(rng, f, n, m, &map_space(f, n, m, |b| bal_hom_values(ctx.bimodule(), b)));
        let lambda = random_scalar(rng, f);
        let p = MassParams::new(lambda.clone(), random_scalar(rng, f), random_scalar(rng, f));
        let alpha = find_alpha(rng, &ctx, &beta, &p, &mut c).unwrap_or_else(|| random_matrix(rng, f, n, m));
        let doc = || {
            let row = vec![vec![p.lambda.clone(), p.kappa.clone(), p.mu.clone()]];
            Document::bundle(
                f,
                vec![
                    ("context", Object::BimodNov(ctx.clone())),
                    ("alpha", Object::LinMap(alpha.clone())),
                    ("beta", Object::LinMap(beta.clone())),
                    ("params (lambda, kappa, mu)", Object::LinMap(Matrix::from_rows(f, row).expect("one row"))),
                ],
            )
        };
        let Some(hyp) = c.ok(ext_o_residual(&ctx, &alpha, &beta, &p).map(|r| r.holds()), "ext") else {
            return c.done(doc);
        };
        if hyp {
            let lhs = double(ctx.bimodule()).and_then(|d| gnybe_zero(d.algebra(), &lift_map(&d, &alpha)?.minus));
            let rhs = generalized_o_weight_residual(&ctx, &alpha, &lambda).map(|r| r.is_zero());
            if let (Some(l), Some(r)) = (c.ok(lhs, "gnybe in the double"), c.ok(rhs, "weighted identities")) {
                c.equiv("𝒫̌₋ solving the GNYBES vs weighted generalized O-operator identities", l, r);
            }
        }
        c.hit(hyp);
        c.done(doc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nova_core::algebra::regular;

    #[test]
    fn worked_delta_value() {
        for f in [Field::Rational, Field::Prime(5)] {
            assert!(!worked_delta(f).failed());
        }
    }

    #[test]
    fn literal_minus_identity_form_is_not_equivalent() {
        let f = Field::Prime(3);
        let mut mismatch = false;
        for alg in enumerated(f, 2).into_iter().step_by(7) {
            for t in all_matrices(f, 2, 2, 81).unwrap() {
                let lambda = f.one();
                let (d, _, _) = rb_tensors(&alg, &t, &lambda).unwrap();
                let lt = lift_map(&d, &t).unwrap();
                let li = lift_map(&d, &Matrix::identity(f, 2)).unwrap();
                let two = f.int(2);
                let r = &lt.minus.scale(&two) - &li.tensor.scale(&two);
                mismatch |= is_rota_baxter(&alg, &t, &lambda).unwrap() != nybe_zero(d.algebra(), &r).unwrap();
            }
        }
        assert!(mismatch);
    }

    #[test]
    fn gnybe_matches_novikov_dual_product_for_all_tensors_in_dim_2() {
        let f = Field::Prime(3);
        for alg in enumerated(f, 2).into_iter().step_by(5) {
            for r in all_tensors(f, 2, 81).unwrap() {
                assert_eq!(gnybe_zero(&alg, &r).unwrap(), dual_novikov(&alg, &r).unwrap());
            }
        }
    }

    #[test]
    fn regular_double_has_twice_the_dimension() {
        let f = Field::Prime(3);
        let a2 = nova_core::sample::a2(f);
        let d = double(&Bimodule::regular(&a2)).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(regular(d.algebra()).is_ok());
    }
}

