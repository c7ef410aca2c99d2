use nova_core::algebra::{
    abnova_residual, bimodnov_full_residual, bimodnov_holds, bimodule_residual, coregular, dual_bimodule, novikov_residual,
    regular, semidirect,
};
use nova_core::operators::pm_context;
use nova_core::solver::{random_matrix, random_scalar};
use nova_core::{Algebra, BimodNov, Bimodule, Field, Matrix, Vector};
use rand::Rng;

use super::{all_matrices, enumerated, random_algebra, Check, Run, Tally};
use crate::doc::{Document, Object};

/// Largest exhaustive sweep over mdim-1 structures.
const SWEEP_LIMIT: u64 = 250_000;

/// Every mdim-1 bimodule Novikov structure on the algebras of the sweep:
/// `l(e_i) = (l_i)`, `r(e_i) = (r_i)`, `v·v = c v`.
fn mdim1_structures(field: Field) -> Vec<BimodNov> {
    let mut algs = enumerated(field, 2);
    let per = |n: usize| (super::small_values(field).len() as u64).pow(2 * n as u32 + 1);
    if algs.len() as u64 * per(2) > SWEEP_LIMIT {
        algs = enumerated(field, 1);
    }
    let mut out = Vec::new();
    for alg in algs {
        let n = alg.dim();
        for row in all_matrices(field, 1, 2 * n + 1, SWEEP_LIMIT).expect("bounded above") {
            let m1 = |k: usize| Matrix::from_rows_sized(field, 1, 1, vec![vec![row.get(0, k).clone()]]).expect("1x1");
            let l = (0..n).map(m1).collect();
            let r = (n..2 * n).map(m1).collect();
            let b = Bimodule::new(alg.clone(), 1, l, r).expect("sizes match");
            let c = row.get(0, 2 * n).clone();
            let product = Algebra::from_fn(field, 1, |_, _| Vector::new(field, vec![c.clone()]).expect("field matches"));
            out.push(BimodNov::new(b, product).expect("sizes match"));
        }
    }
    out
}

/// A random structure: a known-good context, or random actions and product.
fn random_structure(rng: &mut impl Rng, field: Field, max_dim: usize) -> BimodNov {
    let alg = random_algebra(rng, field, max_dim);
    let n = alg.dim();
    match rng.gen_range(0..6) {
        0 => regular(&alg).expect("enumerated algebras are Novikov"),
        1 => coregular(&alg),
        2 if field.half().is_ok() => {
            let reg = regular(&alg).expect("enumerated algebras are Novikov");
            let beta = Matrix::identity(field, n).scale(&random_scalar(rng, field));
            pm_context(&reg, &beta, &random_scalar(rng, field), if rng.gen() { 1 } else { -1 }).expect("odd characteristic")
        }
        3 => {
            let m = rng.gen_range(1..=2);
            let product = Algebra::from_fn(field, m, |_, _| Vector::zeros(field, m));
            BimodNov::new(Bimodule::trivial(&alg, m), product).expect("sizes match")
        }
        _ => {
            let m = rng.gen_range(1..=2);
            let l = (0..n).map(|_| random_matrix(rng, field, m, m)).collect();
            let r = (0..n).map(|_| random_matrix(rng, field, m, m)).collect();
            let b = Bimodule::new(alg, m, l, r).expect("sizes match");
            let prod = random_matrix(rng, field, m, m * m);
            let product = Algebra::from_fn(field, m, |i, j| prod.column(i * m + j));
            BimodNov::new(b, product).expect("sizes match")
        }
    }
}

fn semi_check(b: &BimodNov) -> Check {
    let mut c = Check::new();
    let full = bimodnov_full_residual(b).is_zero();
    c.expect(full == bimodnov_holds(b), || "fail-fast and full residuals disagree".into());
    let semi = novikov_residual(&semidirect(b)).is_zero();
    c.equiv("bimodule Novikov vs semidirect Novikov", full, semi);
    match abnova_residual(b) {
        Ok(res) => c.expect(res.is_zero() == full, || "abnova residual disagrees with the full residual".into()),
        Err(_) => c.expect(!full, || "abnova rejected a structure whose full residual vanishes".into()),
    }
    c.done(|| Document::new(b.field(), Object::BimodNov(b.clone())))
}

pub(crate) fn semi(run: &Run) -> Tally {
    let f = run.field;
    let a2 = nova_core::sample::a2(f);
    let fixed = vec![regular(&a2).expect("A₂ is Novikov"), coregular(&a2)];
    let t = run.sweep(fixed, semi_check);
    let t = t.merge(run.sweep(mdim1_structures(f), semi_check));
    let dim = run.max_dim(2);
    t.merge(run.random(0, |rng| semi_check(&random_structure(rng, f, dim))))
}

fn dual_check(b: &Bimodule) -> Check {
    let mut c = Check::new();
    let valid = bimodule_residual(b).is_zero();
    c.hit(valid);
    match dual_bimodule(b) {
        Ok(d) => {
            c.expect(valid, || "dual_bimodule accepted an invalid bimodule".into());
            c.expect(bimodule_residual(&d).is_zero(), || "the dual bimodule fails the bimodule identities".into());
            match dual_bimodule(&d) {
                Ok(dd) => c.expect(&dd == b, || "dualizing twice does not return the bimodule".into()),
                Err(e) => c.expect(false, || format!("dual of the dual: {e}")),
            }
        }
        Err(_) => c.expect(!valid, || "dual_bimodule rejected a valid bimodule".into()),
    }
    c.done(|| Document::new(b.field(), Object::Bimodule(b.clone())))
}

pub(crate) fn dual(run: &Run) -> Tally {
    let f = run.field;
    let a2 = nova_core::sample::a2(f);
    let mut c = Check::new();
    let d = dual_bimodule(&Bimodule::regular(&a2));
    if let Some(d) = c.ok(d, "dual of the regular bimodule") {
        c.expect(&d == coregular(&a2).bimodule(), || "the dual of the regular bimodule is not the coregular one".into());
    }
    let mut t = Tally::default();
    t.add(c.done(|| Document::new(f, Object::Algebra(a2.clone()))));
    let bims: Vec<Bimodule> = mdim1_structures(f)
        .into_iter()
        .filter(|b| b.product().basis_product(0, 0).is_zero())
        .map(|b| b.bimodule().clone())
        .collect();
    let t = t.merge(run.sweep(bims, dual_check));
    let dim = run.max_dim(2);
    t.merge(run.random(0, |rng| dual_check(random_structure(rng, f, dim).bimodule())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mdim1_sweep_sizes() {
        let f = Field::Prime(2);
        assert_eq!(mdim1_structures(f).len(), 52 * 32);
        assert_eq!(mdim1_structures(Field::Prime(5)).len(), 5 * 125);
    }
}
