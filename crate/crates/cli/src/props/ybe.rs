use nova_core::algebra::{coregular, regular};
use nova_core::operators::{ext_o_residual, is_o_operator, is_rota_baxter, pm_context, MassParams};
use nova_core::solver::{random_matrix, random_scalar};
use nova_core::ybe::{
    bar_maps, bilform_invariance, dual_ext_residual, enybe_residual, hat, invariance_residual, is_invariant,
    is_quadratic, nybe_residual, o_nybe_residual, quad_transport, right_dual, star_dual, BilForm, RTensor,
};
use nova_core::{Algebra, Field, Matrix, Scalar, Tensor2, Vector};
use rand::Rng;

use super::ops::bal_hom_values;
use super::{
    all_combinations, all_matrices, all_skew, all_tensors, delta_agrees, enumerated, map_space, pick, random_algebra,
    random_combination, small_values, Check, Run, Tally,
};
use crate::doc::{Document, Object};

pub(crate) fn tensor_doc(alg: &Algebra, r: &Tensor2) -> Document {
    Document::bundle(alg.field(), vec![("algebra", Object::Algebra(alg.clone())), ("r", Object::Tensor2(r.clone()))])
}

/// Thins the enumerated dimension-2 algebras so that `per` instances each fit
/// in `budget`, and appends the dimension-3 family when `dim3`.
pub(crate) fn sweep_algebras(field: Field, per: usize, budget: usize, dim3: bool) -> Vec<Algebra> {
    let all = enumerated(field, 2);
    let cap = (budget / per.max(1)).max(4);
    let step = all.len().div_ceil(cap).max(1);
    let mut out: Vec<Algebra> = all.into_iter().step_by(step).collect();
    if dim3 {
        out.extend(enumerated(field, 3));
    }
    out
}

// ------------------------------------------------------------ invariance

/// `(L(x)⊗id + id⊗L⋆(x))s` for each basis `x`, and `s − τs`.
fn invariance_values(alg: &Algebra, s: &Matrix) -> Vec<Vector> {
    let t = Tensor2::from_matrix(s);
    let mut out = vec![(&t - &t.flip()).as_vector()];
    for x in 0..alg.dim() {
        let ex = alg.basis(x);
        out.push((&t.apply_first(&alg.left(&ex)) + &t.apply_second(&alg.star_left(&ex))).as_vector());
    }
    out
}

/// Basis of the invariant symmetric tensors.
pub(crate) fn invariant_space(alg: &Algebra) -> Vec<Matrix> {
    let n = alg.dim();
    map_space(alg.field(), n, n, |s| invariance_values(alg, s))
}

/// `s + a` with `s` from `sym` and `a` skew.
fn with_skew(s: &Matrix, a: &Tensor2) -> Tensor2 {
    &Tensor2::from_matrix(s) + a
}

/// Tensors with invariant symmetric part on `alg`: every combination of the
/// invariant space with every skew part when small, else random draws.
pub(crate) fn tensors_with_invariant_sym(alg: &Algebra, rng: &mut impl Rng, limit: u64) -> Vec<Tensor2> {
    let f = alg.field();
    let n = alg.dim();
    let space = invariant_space(alg);
    let syms = all_combinations(f, n, n, &space, limit).unwrap_or_else(|| {
        (0..6).map(|_| random_combination(rng, f, n, n, &space)).collect()
    });
    let skews = all_skew(f, n, limit).unwrap_or_else(|| {
        (0..6)
            .map(|_| {
                let m = random_matrix(rng, f, n, n);
                Tensor2::from_matrix(&m.sub(&m.transpose()))
            })
            .collect()
    });
    let mut out = Vec::new();
    for s in &syms {
        for a in &skews {
            out.push(with_skew(s, a));
        }
    }
    out
}

/// The symmetric part is invariant according to the library.
pub(crate) fn sym_invariant(alg: &Algebra, r: &Tensor2) -> bool {
    is_invariant(alg, &(r + &r.flip())).unwrap_or(false)
}

pub(crate) fn quarter(f: Field) -> Scalar {
    let h = f.half().expect("odd characteristic");
    &h * &h
}

// ------------------------------------------------------------ properties

pub(crate) fn tensor_op(run: &Run) -> Tally {
    let f = run.field;
    let eval = |(alg, r): &(Algebra, Tensor2)| {
        let mut c = Check::new();
        let lhs = nybe_residual(alg, r).map(|t| t.is_zero());
        let rhs = o_nybe_residual(alg, r).map(|t| t.is_zero());
        if let (Some(l), Some(rr)) = (c.ok(lhs, "nybe"), c.ok(rhs, "o-nybe")) {
            c.equiv("NYBE vs O-operator form", l, rr);
        }
        delta_agrees(alg, r, &mut c);
        c.done(|| tensor_doc(alg, r))
    };
    let a2 = nova_core::sample::a2(f);
    let mut items = vec![
        (a2.clone(), Tensor2::simple(f, 2, 1, 1)),
        (a2.clone(), &Tensor2::simple(f, 2, 0, 1) - &Tensor2::simple(f, 2, 1, 0)),
    ];
    if let Some(ts) = all_tensors(f, 2, 2401) {
        for alg in sweep_algebras(f, ts.len(), 400_000, false) {
            items.extend(ts.iter().map(|r| (alg.clone(), r.clone())));
        }
    }
    let t = run.sweep(items, eval);
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let n = alg.dim();
        let r = if rng.gen() {
            let x = random_matrix(rng, f, n, 1).column(0);
            let y = random_matrix(rng, f, n, 1).column(0);
            Tensor2::outer(&x, &y)
        } else {
            Tensor2::from_matrix(&random_matrix(rng, f, n, n))
        };
        eval(&(alg, r))
    }))
}

fn inv_instances(run: &Run, per_alg_limit: u64, budget: usize) -> Vec<(Algebra, Tensor2)> {
    let f = run.field;
    let mut out = Vec::new();
    let mut rng = run.rng(50, 0);
    let probe = enumerated(f, 2);
    let per = tensors_with_invariant_sym(&probe[probe.len() / 2], &mut rng, per_alg_limit).len();
    for alg in sweep_algebras(f, per * small_values(f).len(), budget, true) {
        for r in tensors_with_invariant_sym(&alg, &mut rng, per_alg_limit) {
            out.push((alg.clone(), r));
        }
    }
    let dim = run.max_dim(3);
    for k in 0..run.trials() {
        let mut rng = run.rng(51, k);
        let alg = random_algebra(&mut rng, f, dim);
        let ts = tensors_with_invariant_sym(&alg, &mut rng, 0);
        out.push((alg.clone(), pick(&mut rng, &ts).clone()));
    }
    out
}

pub(crate) fn enybe_ext(run: &Run) -> Tally {
    let f = run.field;
    let kappas = small_values(f);
    let items: Vec<(Algebra, Tensor2, Scalar)> = inv_instances(run, 200, 30_000)
        .into_iter()
        .flat_map(|(a, r)| kappas.iter().map(move |k| (a.clone(), r.clone(), k.clone())))
        .collect();
    run.sweep(items, |(alg, r, kappa)| {
        let mut c = Check::new();
        c.expect(sym_invariant(alg, r), || "generated symmetric part is not invariant".into());
        let eps = &(kappa + &f.one()) * &quarter(f);
        let lhs = enybe_residual(alg, r, &eps).map(|t| t.is_zero());
        let rhs = RTensor::new(r.clone()).and_then(|rt| dual_ext_residual(alg, &rt, kappa)).map(|x| x.holds());
        if let (Some(l), Some(rr)) = (c.ok(lhs, "enybe"), c.ok(rhs, "dual ext")) {
            c.equiv(&format!("ENYBE of mass (κ+1)/4 vs extended of mass (κ, 0), κ = {kappa}"), l, rr);
        }
        delta_agrees(alg, r, &mut c);
        c.done(|| tensor_doc(alg, r))
    })
}

/// `(α±β)(a∗b) = (α±β)(a)∘(α±β)(b)` with `a∗b = L⋆*(r̂a)b + R*(r̂ᵗb)a`.
fn star_hom(alg: &Algebra, rt: &RTensor, sign: i64) -> bool {
    let n = alg.dim();
    let d = if sign > 0 { rt.alpha().add(rt.beta()) } else { rt.alpha().sub(rt.beta()) };
    for a in 0..n {
        for b in 0..n {
            let ea = Vector::basis(alg.field(), n, a);
            let eb = Vector::basis(alg.field(), n, b);
            let star = &star_dual(alg, &rt.hat().apply(&ea)).apply(&eb) + &right_dual(alg, &rt.hat_t().apply(&eb)).apply(&ea);
            if d.apply(&star) != alg.product(&d.column(a), &d.column(b)) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn cor_enybe(run: &Run) -> Tally {
    let f = run.field;
    run.sweep(inv_instances(run, 400, 40_000), |(alg, r)| {
        let mut c = Check::new();
        c.expect(sym_invariant(alg, r), || "generated symmetric part is not invariant".into());
        let Some(rt) = c.ok(RTensor::new(r.clone()), "RTensor") else { return c.done(|| tensor_doc(alg, r)) };
        let one = f.one();
        let co = coregular(alg);
        let verdicts = (|| -> nova_core::Result<Vec<(&str, bool)>> {
            let plus = pm_context(&co, rt.beta(), &f.zero(), 1)?;
            let minus = pm_context(&co, rt.beta(), &f.zero(), -1)?;
            Ok(vec![
                ("NYBE", nybe_residual(alg, r)?.is_zero()),
                ("O-operator form", o_nybe_residual(alg, r)?.is_zero()),
                ("r̂ weight-1 O-operator on ∘₊", is_o_operator(&plus, rt.hat(), &one)?),
                ("−r̂ᵗ weight-1 O-operator on ∘₋", is_o_operator(&minus, &rt.hat_t().neg(), &one)?),
                ("α extended of mass (−1, 0)", dual_ext_residual(alg, &rt, &f.int(-1))?.holds()),
                ("α+β a ∗-homomorphism", star_hom(alg, &rt, 1)),
                ("α−β a ∗-homomorphism", star_hom(alg, &rt, -1)),
            ])
        })();
        if let Some(vs) = c.ok(verdicts, "verdicts") {
            let first = vs[0].1;
            c.hit(first);
            for (name, v) in &vs[1..] {
                c.expect(*v == first, || format!("{name} is {v} but NYBE is {first}"));
            }
        }
        delta_agrees(alg, r, &mut c);
        c.done(|| tensor_doc(alg, r))
    })
}

pub(crate) fn skew(run: &Run) -> Tally {
    let f = run.field;
    let eval = |(alg, r): &(Algebra, Tensor2)| {
        let mut c = Check::new();
        let lhs = nybe_residual(alg, r).map(|t| t.is_zero());
        let rhs = is_o_operator(&coregular(alg), &hat(r).0, &f.zero());
        if let (Some(l), Some(rr)) = (c.ok(lhs, "nybe"), c.ok(rhs, "o-operator")) {
            c.equiv("skew NYBE vs weight-0 O-operator on the dual", l, rr);
        }
        delta_agrees(alg, r, &mut c);
        c.done(|| tensor_doc(alg, r))
    };
    let mut items = Vec::new();
    for alg in sweep_algebras(f, 1, 2000, true) {
        if let Some(ts) = all_skew(f, alg.dim(), 400) {
            items.extend(ts.into_iter().map(|r| (alg.clone(), r)));
        }
    }
    let t = run.sweep(items, eval);
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let m = random_matrix(rng, f, alg.dim(), alg.dim());
        let r = Tensor2::from_matrix(&m.sub(&m.transpose()));
        eval(&(alg, r))
    }))
}

pub(crate) fn lem_r(run: &Run) -> Tally {
    let f = run.field;
    let eval = |(alg, s): &(Algebra, Tensor2)| {
        let mut c = Check::new();
        if let Some(rep) = c.ok(invariance_residual(alg, s), "invariance") {
            c.hit(rep.invariant());
            c.expect(rep.consistent(), || {
                format!(
                    "tensor form {}, balanced {}, homomorphism {}",
                    rep.tensor.is_zero(),
                    rep.balanced.is_zero(),
                    rep.homomorphism.is_zero()
                )
            });
        }
        c.done(|| tensor_doc(alg, s))
    };
    let mut items = Vec::new();
    for alg in sweep_algebras(f, 27, 20_000, true) {
        let n = alg.dim();
        let syms = all_matrices(f, 1, n * (n + 1) / 2, 729).map(|rows| {
            rows.iter()
                .map(|row| {
                    let mut t = Tensor2::zeros(f, n);
                    let mut k = 0;
                    for i in 0..n {
                        for j in i..n {
                            t.set(i, j, row.get(0, k).clone());
                            t.set(j, i, row.get(0, k).clone());
                            k += 1;
                        }
                    }
                    t
                })
                .collect::<Vec<_>>()
        });
        let syms = syms.unwrap_or_else(|| invariant_space(&alg).iter().map(Tensor2::from_matrix).collect());
        items.extend(syms.into_iter().map(|s| (alg.clone(), s)));
    }
    let t = run.sweep(items, eval);
    let dim = run.max_dim(3);
    t.merge(run.random(0, |rng| {
        let alg = random_algebra(rng, f, dim);
        let n = alg.dim();
        let s = if rng.gen() {
            let m = random_matrix(rng, f, n, n);
            Tensor2::from_matrix(&m.add(&m.transpose()))
        } else {
            Tensor2::from_matrix(&random_combination(rng, f, n, n, &invariant_space(&alg)))
        };
        eval(&(alg, s))
    }))
}

// ------------------------------------------------------------ quadratic

/// `B(a∘b, c) + B(b, a⋆c)` on basis triples and `G − Gᵀ`.
fn form_values(alg: &Algebra, g: &Matrix) -> Vec<Vector> {
    let f = alg.field();
    let n = alg.dim();
    let b = |x: &Vector, y: &Vector| -> Scalar {
        let gy = g.apply(y);
        x.coords().iter().zip(gy.coords()).fold(f.zero(), |acc, (p, q)| &acc + &(p * q))
    };
    let mut vals = Vec::new();
    for i in 0..n {
        for j in 0..n {
            vals.push(&g.get(i, j).clone() - g.get(j, i));
            for k in 0..n {
                let (ei, ej, ek) = (alg.basis(i), alg.basis(j), alg.basis(k));
                vals.push(&b(alg.basis_product(i, j), &ek) + &b(&ej, &alg.star_product(&ei, &ek)));
            }
        }
    }
    vec![Vector::new(f, vals).expect("field matches")]
}

/// A nondegenerate invariant symmetric form on `alg`, if a few draws find one.
fn quadratic_form(rng: &mut impl Rng, alg: &Algebra) -> Option<BilForm> {
    let f = alg.field();
    let n = alg.dim();
    let space = map_space(f, n, n, |g| form_values(alg, g));
    if space.is_empty() {
        return None;
    }
    for _ in 0..12 {
        let g = random_combination(rng, f, n, n, &space);
        if let Ok(b) = BilForm::new(g) {
            if b.is_nondegenerate() {
                return Some(b);
            }
        }
    }
    None
}

struct Quad {
    alg: Algebra,
    form: BilForm,
}

/// Quadratic algebras: the thinned enumeration, the dimension-3 family and the
/// zero algebras, each with a random nondegenerate invariant form.
fn quadratic_algebras(run: &Run, c: &mut Check) -> Vec<Quad> {
    let f = run.field;
    let mut rng = run.rng(60, 0);
    let mut algs = sweep_algebras(f, 1, 400, true);
    algs.push(Algebra::zero(f, 1));
    algs.push(Algebra::zero(f, 2));
    let mut out = Vec::new();
    for alg in algs {
        if let Some(form) = quadratic_form(&mut rng, &alg) {
            let ok = is_quadratic(&alg, &form).unwrap_or(false)
                && bilform_invariance(&alg, &form).is_ok_and(|r| r.is_zero());
            c.expect(ok, || "a generated form is not quadratic according to the library".into());
            out.push(Quad { alg, form });
        }
    }
    out
}

fn quad_doc(q: &Quad, extra: Vec<(&str, Object)>) -> Document {
    let mut items = vec![("algebra", Object::Algebra(q.alg.clone())), ("form", Object::BilForm(q.form.clone()))];
    items.extend(extra);
    Document::bundle(q.alg.field(), items)
}

pub(crate) fn qn(run: &Run) -> Tally {
    let f = run.field;
    let mut setup = Check::new();
    let quads = quadratic_algebras(run, &mut setup);
    let mut t = Tally::default();
    t.add(setup.done(|| Document::new(f, Object::Bundle(Vec::new()))));
    let mut items = Vec::new();
    for (k, q) in quads.iter().enumerate() {
        let mut rng = run.rng(61, k as u64);
        let mut rs = tensors_with_invariant_sym(&q.alg, &mut rng, 150);
        for _ in 0..run.trials() / quads.len().max(1) as u64 {
            let ts = tensors_with_invariant_sym(&q.alg, &mut rng, 0);
            rs.push(pick(&mut rng, &ts).clone());
        }
        for r in rs {
            items.push((k, r, random_scalar(&mut rng, f)));
        }
    }
    t.merge(run.sweep(items, |(k, r, kappa)| {
        let q = &quads[*k];
        let alg = &q.alg;
        let mut c = Check::new();
        let eps = &(kappa + &f.one()) * &quarter(f);
        let lhs = enybe_residual(alg, r, &eps).map(|x| x.is_zero());
        let rhs = RTensor::new(r.clone()).and_then(|rt| {
            let (ab, bb) = bar_maps(&q.form, &rt);
            let p = MassParams::new(f.zero(), kappa.clone(), f.zero());
            ext_o_residual(&regular(alg)?, &ab, &bb, &p).map(|x| x.holds())
        });
        if let (Some(l), Some(rr)) = (c.ok(lhs, "enybe"), c.ok(rhs, "ext_o")) {
            c.equiv(&format!("ENYBE vs ᾱ extended of mass ({kappa}, 0)"), l, rr);
        }
        if r.is_skew() {
            let lhs = nybe_residual(alg, r).map(|x| x.is_zero());
            let rhs = RTensor::new(r.clone()).and_then(|rt| is_rota_baxter(alg, &bar_maps(&q.form, &rt).0, &f.zero()));
            if let (Some(l), Some(rr)) = (c.ok(lhs, "nybe"), c.ok(rhs, "rota-baxter")) {
                c.equiv("skew NYBE vs ᾱ Rota-Baxter of weight 0", l, rr);
            }
        }
        c.done(|| quad_doc(q, vec![("r", Object::Tensor2(r.clone()))]))
    }))
}

/// `GT − sign·TᵀG`.
fn adjoint_values(g: &Matrix, t: &Matrix, sign: i64) -> Vec<Vector> {
    let d = g.mul(t).sub(&t.transpose().mul(g).scale(&g.field().int(sign)));
    vec![Vector::new(g.field(), d.entries().to_vec()).expect("field matches")]
}

pub(crate) fn dual_exo(run: &Run) -> Tally {
    let f = run.field;
    let mut setup = Check::new();
    let quads = quadratic_algebras(run, &mut setup);
    let mut t = Tally::default();
    t.add(setup.done(|| Document::new(f, Object::Bundle(Vec::new()))));
    let per = (run.trials() as usize / quads.len().max(1)).max(8);
    let mut items = Vec::new();
    for k in 0..quads.len() {
        for j in 0..per {
            items.push((k, j as u64));
        }
    }
    t.merge(run.sweep(items, |&(k, j)| {
        let q = &quads[k];
        let alg = &q.alg;
        let n = alg.dim();
        let g = q.form.grid();
        let mut rng = run.rng(62 + k as u64, j);
        let mut c = Check::new();
        let reg = Bimodule::regular(alg);
        let betas = map_space(f, n, n, |b| {
            let mut v = bal_hom_values(&reg, b);
            v.extend(adjoint_values(g, b, 1));
            v
        });
        let beta = random_combination(&mut rng, f, n, n, &betas);
        let kappa = random_scalar(&mut rng, f);
        let p = MassParams::new(f.zero(), kappa.clone(), f.zero());
        let ctx = regular(alg).expect("Novikov");
        let skews = map_space(f, n, n, |m| adjoint_values(g, m, -1));
        let skew_adjoint = j % 2 == 0;
        let candidates = if skew_adjoint {
            all_combinations(f, n, n, &skews, 729).unwrap_or_else(|| vec![random_combination(&mut rng, f, n, n, &skews)])
        } else {
            all_matrices(f, n, n, 2401).unwrap_or_else(|| vec![random_matrix(&mut rng, f, n, n)])
        };
        let solving: Vec<&Matrix> = candidates
            .iter()
            .filter(|m| ext_o_residual(&ctx, m, &beta, &p).is_ok_and(|r| r.holds()))
            .collect();
        let tm = if !solving.is_empty() && rng.gen_range(0..3) > 0 {
            (*pick(&mut rng, &solving)).clone()
        } else {
            pick(&mut rng, &candidates).clone()
        };
        let lhs = ext_o_residual(&ctx, &tm, &beta, &p).map(|r| r.holds());
        let qt = quad_transport(alg, &q.form, &tm, &beta);
        if let (Some(l), Some(qt)) = (c.ok(lhs, "ext_o"), c.ok(qt, "quad_transport")) {
            let rhs = ext_o_residual(&coregular(alg), &qt.p_t, &qt.p_beta, &p).map(|r| r.holds());
            if let Some(rr) = c.ok(rhs, "dual ext_o") {
                c.equiv("T extended vs P_T extended on the dual", l, rr);
            }
            if skew_adjoint {
                let eps = &(&kappa + &f.one()) * &quarter(f);
                for (name, d) in [("δ̌₊", &qt.delta_plus), ("δ̌₋", &qt.delta_minus)] {
                    if let Some(e) = c.ok(enybe_residual(alg, d, &eps).map(|x| x.is_zero()), "enybe") {
                        c.equiv(&format!("T extended vs {name} solving the ENYBE"), l, e);
                    }
                }
            }
        }
        c.done(|| {
            quad_doc(
                q,
                vec![
                    ("T", Object::LinMap(tm.clone())),
                    ("beta", Object::LinMap(beta.clone())),
                    ("kappa", Object::LinMap(Matrix::from_rows(f, vec![vec![kappa.clone()]]).expect("1x1"))),
                ],
            )
        })
    }))
}

use nova_core::Bimodule;
