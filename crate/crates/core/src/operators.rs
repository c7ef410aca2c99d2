//! Linear maps `M → A` between a bimodule Novikov algebra and its base:
//! balanced, A-invariant and equivalent maps, extended O-operators, and the
//! products they induce on `M` and on `A`.
//!
//! A map is a [`Matrix`] with `dim A` rows and `dim M` columns.

use crate::algebra::{regular_unchecked, Algebra, BimodNov, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::residual::Residual;
use crate::scalar::{Field, Scalar};

/// Weight `λ`, masses `κ, μ` and the tensor mass `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassParams {
    pub lambda: Scalar,
    pub kappa: Scalar,
    pub mu: Scalar,
    pub epsilon: Scalar,
}

impl MassParams {
    pub fn new(lambda: Scalar, kappa: Scalar, mu: Scalar) -> MassParams {
        let epsilon = lambda.field().zero();
        MassParams { lambda, kappa, mu, epsilon }
    }

    pub fn ints(field: Field, lambda: i64, kappa: i64, mu: i64) -> MassParams {
        MassParams::new(field.int(lambda), field.int(kappa), field.int(mu))
    }

    /// Weight `λ` and both masses zero.
    pub fn weight(lambda: Scalar) -> MassParams {
        let f = lambda.field();
        MassParams::new(lambda, f.zero(), f.zero())
    }

    pub fn field(&self) -> Field {
        self.lambda.field()
    }
}

/// Checks that `m` maps the module of `ctx` into its base.
pub fn check_map(ctx: &Bimodule, m: &Matrix) -> Result<()> {
    if m.rows() != ctx.base().dim() || m.cols() != ctx.mdim() {
        return Err(Error::DimMismatch(format!(
            "map must be {}x{}, got {}x{}",
            ctx.base().dim(),
            ctx.mdim(),
            m.rows(),
            m.cols()
        )));
    }
    if m.field() != ctx.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn check_endo(alg: &Algebra, t: &Matrix) -> Result<()> {
    if t.rows() != alg.dim() || t.cols() != alg.dim() {
        return Err(Error::DimMismatch(format!("endomorphism must be {0}x{0}", alg.dim())));
    }
    if t.field() != alg.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn columns(m: &Matrix) -> Vec<Vector> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// `l(β(u))v = r(β(v))u`.
pub fn balanced_residual(ctx: &Bimodule, beta: &Matrix) -> Result<Residual> {
    let mut res = Residual::new();
    balanced_into(ctx, beta, &mut res)?;
    Ok(res)
}

pub fn balanced_into(ctx: &Bimodule, beta: &Matrix, res: &mut Residual) -> Result<()> {
    check_map(ctx, beta)?;
    let b = columns(beta);
    let lb: Vec<Matrix> = b.iter().map(|x| ctx.l(x)).collect();
    let rb: Vec<Matrix> = b.iter().map(|x| ctx.r(x)).collect();
    for u in 0..ctx.mdim() {
        for v in 0..ctx.mdim() {
            let lhs = lb[u].column(v);
            let rhs = rb[v].column(u);
            res.check("balanced", &[u, v], &lhs, &rhs);
            if res.done() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// `κ(x∘β(u)) = κβ(l(x)u)` and `κ(β(u)∘x) = κβ(r(x)u)`; vacuous at `κ = 0`.
pub fn invariant_residual(ctx: &Bimodule, beta: &Matrix, kappa: &Scalar) -> Result<Residual> {
    let mut res = Residual::new();
    invariant_into(ctx, beta, kappa, &mut res)?;
    Ok(res)
}

pub fn invariant_into(ctx: &Bimodule, beta: &Matrix, kappa: &Scalar, res: &mut Residual) -> Result<()> {
    check_map(ctx, beta)?;
    if kappa.is_zero() {
        return Ok(());
    }
    hom_scaled(ctx, beta, kappa, "invariant", res);
    Ok(())
}

/// `β(l(x)u) = x∘β(u)` and `β(r(x)u) = β(u)∘x`.
pub fn homomorphism_residual(ctx: &Bimodule, beta: &Matrix) -> Result<Residual> {
    let mut res = Residual::new();
    homomorphism_into(ctx, beta, &mut res)?;
    Ok(res)
}

pub fn homomorphism_into(ctx: &Bimodule, beta: &Matrix, res: &mut Residual) -> Result<()> {
    check_map(ctx, beta)?;
    hom_scaled(ctx, beta, &ctx.field().one(), "hom", res);
    Ok(())
}

fn hom_scaled(ctx: &Bimodule, beta: &Matrix, k: &Scalar, name: &str, res: &mut Residual) {
    let alg = ctx.base();
    let (left, right) = (format!("{name}-left"), format!("{name}-right"));
    for x in 0..alg.dim() {
        let ex = alg.basis(x);
        for u in 0..ctx.mdim() {
            let bu = beta.column(u);
            let lhs = alg.product(&ex, &bu);
            let rhs = beta.apply(&ctx.l_basis()[x].column(u));
            res.record(&left, &[x, u], (&lhs - &rhs).scale(k));
            let lhs = alg.product(&bu, &ex);
            let rhs = beta.apply(&ctx.r_basis()[x].column(u));
            res.record(&right, &[x, u], (&lhs - &rhs).scale(k));
            if res.done() {
                return;
            }
        }
    }
}

/// `μ l(β(u·v))w = μ (l(β(u))v)·w` and `μ r(β(v·w))u = μ u·(r(β(w))v)`;
/// vacuous at `μ = 0`.
pub fn equivalent_residual(ctx: &BimodNov, beta: &Matrix, mu: &Scalar) -> Result<Residual> {
    let mut res = Residual::new();
    equivalent_into(ctx, beta, mu, &mut res)?;
    Ok(res)
}

pub fn equivalent_into(ctx: &BimodNov, beta: &Matrix, mu: &Scalar, res: &mut Residual) -> Result<()> {
    check_map(ctx.bimodule(), beta)?;
    if mu.is_zero() {
        return Ok(());
    }
    let m = ctx.mdim();
    let b = columns(beta);
    for u in 0..m {
        let eu = ctx.module_basis(u);
        for v in 0..m {
            let ev = ctx.module_basis(v);
            let buv = beta.apply(&ctx.dot(&eu, &ev));
            let l_buv = ctx.l(&buv);
            let lbu_v = ctx.l(&b[u]).column(v);
            for w in 0..m {
                let ew = ctx.module_basis(w);
                let lhs = l_buv.column(w);
                let rhs = ctx.dot(&lbu_v, &ew);
                res.record("equivalent-left", &[u, v, w], (&lhs - &rhs).scale(mu));
                let lhs = ctx.r(&beta.apply(&ctx.dot(&ev, &ew))).column(u);
                let rhs = ctx.dot(&eu, &ctx.r(&b[w]).column(v));
                res.record("equivalent-right", &[u, v, w], (&lhs - &rhs).scale(mu));
                if res.done() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// The defining equation of an extended O-operator alone:
/// `α(u)∘α(v) − α(l(α(u))v + r(α(v))u + λu·v) = κβ(u)∘β(v) + μβ(u·v)`.
pub fn ext_equation_residual(ctx: &BimodNov, alpha: &Matrix, beta: &Matrix, p: &MassParams) -> Result<Residual> {
    let mut res = Residual::new();
    ext_equation_into(ctx, alpha, beta, p, &mut res)?;
    Ok(res)
}

pub fn ext_equation_into(
    ctx: &BimodNov,
    alpha: &Matrix,
    beta: &Matrix,
    p: &MassParams,
    res: &mut Residual,
) -> Result<()> {
    check_map(ctx.bimodule(), alpha)?;
    check_map(ctx.bimodule(), beta)?;
    let alg = ctx.base();
    let m = ctx.mdim();
    let a = columns(alpha);
    let b = columns(beta);
    let la: Vec<Matrix> = a.iter().map(|x| ctx.l(x)).collect();
    let ra: Vec<Matrix> = a.iter().map(|x| ctx.r(x)).collect();
    for u in 0..m {
        for v in 0..m {
            let uv = ctx.product().basis_product(u, v);
            let mut inner = la[u].column(v);
            inner.axpy(&ctx.field().one(), &ra[v].column(u));
            inner.axpy(&p.lambda, uv);
            let lhs = &alg.product(&a[u], &a[v]) - &alpha.apply(&inner);
            let mut rhs = alg.product(&b[u], &b[v]).scale(&p.kappa);
            rhs.axpy(&p.mu, &beta.apply(uv));
            res.check("ext-o", &[u, v], &lhs, &rhs);
            if res.done() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// The equation of an extended O-operator together with the three conditions
/// on its extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtReport {
    pub equation: Residual,
    pub balanced: Residual,
    pub invariant: Residual,
    pub equivalent: Residual,
}

impl ExtReport {
    /// True iff `α` is an extended O-operator with extension `β`.
    pub fn holds(&self) -> bool {
        self.equation.is_zero() && self.hypotheses_hold()
    }

    /// True iff `β` is balanced, invariant and equivalent at the given masses.
    pub fn hypotheses_hold(&self) -> bool {
        self.balanced.is_zero() && self.invariant.is_zero() && self.equivalent.is_zero()
    }

    /// All four reports merged into one.
    pub fn into_residual(self) -> Residual {
        let mut out = self.equation;
        out.merge(self.balanced);
        out.merge(self.invariant);
        out.merge(self.equivalent);
        out
    }
}

pub fn ext_o_residual(ctx: &BimodNov, alpha: &Matrix, beta: &Matrix, p: &MassParams) -> Result<ExtReport> {
    Ok(ExtReport {
        equation: ext_equation_residual(ctx, alpha, beta, p)?,
        balanced: balanced_residual(ctx.bimodule(), beta)?,
        invariant: invariant_residual(ctx.bimodule(), beta, &p.kappa)?,
        equivalent: equivalent_residual(ctx, beta, &p.mu)?,
    })
}

/// `α(u)∘α(v) = α(l(α(u))v + r(α(v))u + λu·v)`.
pub fn o_operator_residual(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> Result<Residual> {
    let zero = Matrix::zeros(ctx.field(), alpha.rows(), alpha.cols());
    ext_equation_residual(ctx, alpha, &zero, &MassParams::weight(lambda.clone()))
}

pub fn is_o_operator(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> Result<bool> {
    let zero = Matrix::zeros(ctx.field(), alpha.rows(), alpha.cols());
    let mut res = Residual::fail_fast();
    ext_equation_into(ctx, alpha, &zero, &MassParams::weight(lambda.clone()), &mut res)?;
    Ok(res.is_zero())
}

/// `T(x)∘T(y) = T(T(x)∘y + x∘T(y) + λx∘y)`.
pub fn rota_baxter_residual(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> Result<Residual> {
    check_endo(alg, t)?;
    o_operator_residual(&regular_unchecked(alg), t, lambda)
}

pub fn is_rota_baxter(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> Result<bool> {
    check_endo(alg, t)?;
    is_o_operator(&regular_unchecked(alg), t, lambda)
}

/// `T(x)∘T(y) − T(T(x)∘y + x∘T(y) + λx∘y) = κ̂ x∘y`, evaluated directly.
pub fn hkappa_residual(alg: &Algebra, t: &Matrix, lambda: &Scalar, kappa_hat: &Scalar) -> Result<Residual> {
    check_endo(alg, t)?;
    let n = alg.dim();
    let tc = columns(t);
    let mut res = Residual::new();
    for x in 0..n {
        let ex = alg.basis(x);
        for y in 0..n {
            let ey = alg.basis(y);
            let xy = alg.basis_product(x, y);
            let mut inner = alg.product(&tc[x], &ey);
            inner.axpy(&alg.field().one(), &alg.product(&ex, &tc[y]));
            inner.axpy(lambda, xy);
            let lhs = &alg.product(&tc[x], &tc[y]) - &t.apply(&inner);
            res.check("hkappa", &[x, y], &lhs, &xy.scale(kappa_hat));
        }
    }
    Ok(res)
}

/// `T(x)∘T(y) − T(T(x)∘y + x∘T(y)) = −x∘y`.
pub fn baxter_residual(alg: &Algebra, t: &Matrix) -> Result<Residual> {
    let f = alg.field();
    hkappa_residual(alg, t, &f.zero(), &f.int(-1))
}

/// The table of `u∗v = l(α(u))v + r(α(v))u + λu·v`.
pub fn star_grid(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> Result<Algebra> {
    check_map(ctx.bimodule(), alpha)?;
    let a = columns(alpha);
    let la: Vec<Matrix> = a.iter().map(|x| ctx.l(x)).collect();
    let ra: Vec<Matrix> = a.iter().map(|x| ctx.r(x)).collect();
    Ok(Algebra::from_fn(ctx.field(), ctx.mdim(), |u, v| {
        let mut out = la[u].column(v);
        out.axpy(&ctx.field().one(), &ra[v].column(u));
        out.axpy(lambda, ctx.product().basis_product(u, v));
        out
    }))
}

/// The product `∗` and the residual of the two conditions under which it is
/// Novikov.
#[derive(Clone, Debug)]
pub struct StarProduct {
    pub product: Algebra,
    pub conditions: Residual,
}

/// With `E(u,v) = α(u∗v) − α(u)∘α(v)`:
/// `l(E(u,v))w = l(E(u,w))v` and
/// `l(E(u,v))w − l(E(v,u))w = r(E(v,w))u − r(E(u,w))v`.
pub fn star_product(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> Result<StarProduct> {
    let product = star_grid(ctx, alpha, lambda)?;
    let alg = ctx.base();
    let m = ctx.mdim();
    let a = columns(alpha);
    let e: Vec<Vec<Vector>> = (0..m)
        .map(|u| (0..m).map(|v| &alpha.apply(product.basis_product(u, v)) - &alg.product(&a[u], &a[v])).collect())
        .collect();
    let le: Vec<Vec<Matrix>> = e.iter().map(|row| row.iter().map(|x| ctx.l(x)).collect()).collect();
    let re: Vec<Vec<Matrix>> = e.iter().map(|row| row.iter().map(|x| ctx.r(x)).collect()).collect();
    let mut conditions = Residual::new();
    for u in 0..m {
        for v in 0..m {
            for w in 0..m {
                conditions.check("star-con1", &[u, v, w], &le[u][v].column(w), &le[u][w].column(v));
                let lhs = &le[u][v].column(w) - &le[v][u].column(w);
                let rhs = &re[v][w].column(u) - &re[u][w].column(v);
                conditions.check("star-con2", &[u, v, w], &lhs, &rhs);
            }
        }
    }
    Ok(StarProduct { product, conditions })
}

/// `u⋄v = l(δ₊u)v + r(δ₋v)u + λu·v` with the symmetrizer `α = (δ₊+δ₋)/2`
/// and antisymmetrizer `β = (δ₊−δ₋)/2`.
#[derive(Clone, Debug)]
pub struct Diamond {
    pub product: Algebra,
    pub alpha: Matrix,
    pub beta: Matrix,
}

pub fn diamond_product(ctx: &BimodNov, dplus: &Matrix, dminus: &Matrix, lambda: &Scalar) -> Result<Diamond> {
    check_map(ctx.bimodule(), dplus)?;
    check_map(ctx.bimodule(), dminus)?;
    let half = ctx.field().half()?;
    let lp: Vec<Matrix> = columns(dplus).iter().map(|x| ctx.l(x)).collect();
    let rm: Vec<Matrix> = columns(dminus).iter().map(|x| ctx.r(x)).collect();
    let product = Algebra::from_fn(ctx.field(), ctx.mdim(), |u, v| {
        let mut out = lp[u].column(v);
        out.axpy(&ctx.field().one(), &rm[v].column(u));
        out.axpy(lambda, ctx.product().basis_product(u, v));
        out
    });
    Ok(Diamond { product, alpha: dplus.add(dminus).scale(&half), beta: dplus.sub(dminus).scale(&half) })
}

/// `u·±v = λu·v ∓ 2l(β(u))v`, returned as `(·₊, ·₋)`.
pub fn pm_products(ctx: &BimodNov, beta: &Matrix, lambda: &Scalar) -> Result<(Algebra, Algebra)> {
    check_map(ctx.bimodule(), beta)?;
    let f = ctx.field();
    f.half()?;
    let lb: Vec<Matrix> = columns(beta).iter().map(|x| ctx.l(x)).collect();
    let make = |sign: i64| {
        Algebra::from_fn(f, ctx.mdim(), |u, v| {
            let mut out = ctx.product().basis_product(u, v).scale(lambda);
            out.axpy(&f.int(-2 * sign), &lb[u].column(v));
            out
        })
    };
    Ok((make(1), make(-1)))
}

/// `(M±, ·±, l, r)` for `sign = ±1`.
pub fn pm_context(ctx: &BimodNov, beta: &Matrix, lambda: &Scalar, sign: i64) -> Result<BimodNov> {
    let (plus, minus) = pm_products(ctx, beta, lambda)?;
    BimodNov::new(ctx.bimodule().clone(), if sign >= 0 { plus } else { minus })
}

/// `x∘_T y = T(x)∘y + x∘T(y) + λx∘y`.
pub fn circ_t(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> Result<Algebra> {
    check_endo(alg, t)?;
    let tc = columns(t);
    Ok(Algebra::from_fn(alg.field(), alg.dim(), |x, y| {
        let mut out = alg.product(&tc[x], &alg.basis(y));
        out.axpy(&alg.field().one(), &alg.product(&alg.basis(x), &tc[y]));
        out.axpy(lambda, alg.basis_product(x, y));
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::regular;
    use crate::sample;

    const Q: Field = Field::Rational;

    fn a2_ctx() -> BimodNov {
        regular(&sample::a2(Q)).unwrap()
    }

    #[test]
    fn worked_example_is_extended() {
        let ctx = a2_ctx();
        let rep = ext_o_residual(&ctx, &sample::t2(Q), &sample::beta2(Q), &MassParams::ints(Q, 1, -2, 0)).unwrap();
        assert!(rep.holds(), "{rep:?}");
        // without the extension term the equation fails
        let zero = Matrix::zeros(Q, 2, 2);
        let raw = ext_equation_residual(&ctx, &sample::t2(Q), &zero, &MassParams::ints(Q, 1, 0, 0)).unwrap();
        assert!(!raw.is_zero());
    }

    #[test]
    fn balanced_and_invariant_examples() {
        let ctx = a2_ctx();
        let swap = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
        assert!(!balanced_residual(ctx.bimodule(), &swap).unwrap().is_zero());
        // e1 ↦ e2, e2 ↦ 0 is multiplication by e2, a bimodule map of A₂
        let shift = Matrix::from_ints(Q, &[&[0, 0], &[1, 0]]);
        assert!(invariant_residual(ctx.bimodule(), &shift, &Q.one()).unwrap().is_zero());
        // e2∘proj(e1) = e2 but proj(e2∘e1) = 0
        let proj = Matrix::from_ints(Q, &[&[1, 0], &[0, 0]]);
        let res = invariant_residual(ctx.bimodule(), &proj, &Q.one()).unwrap();
        assert!(res.failures.iter().any(|f| f.indices == [1, 0]));
        assert!(invariant_residual(ctx.bimodule(), &proj, &Q.zero()).unwrap().is_zero());
        let id = Matrix::identity(Q, 2);
        assert!(equivalent_residual(&ctx, &id, &Q.one()).unwrap().is_zero());
        assert!(homomorphism_residual(ctx.bimodule(), &sample::beta2(Q)).unwrap().is_zero());
    }

    #[test]
    fn identity_is_rota_baxter_of_weight_minus_one() {
        let a2 = sample::a2(Q);
        assert!(is_rota_baxter(&a2, &Matrix::identity(Q, 2), &Q.int(-1)).unwrap());
        assert!(!is_rota_baxter(&a2, &Matrix::identity(Q, 2), &Q.int(1)).unwrap());
    }

    #[test]
    fn circ_t_and_pm_products_match_example() {
        let a2 = sample::a2(Q);
        let ct = circ_t(&a2, &sample::t2(Q), &Q.one()).unwrap();
        assert_eq!(ct.basis_product(0, 0), &Vector::from_ints(Q, &[-3, 8]));
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            assert!(ct.basis_product(i, j).is_zero());
        }
        let (plus, minus) = pm_products(&a2_ctx(), &sample::beta2(Q), &Q.one()).unwrap();
        assert_eq!(plus.basis_product(0, 0), &Vector::from_ints(Q, &[-1, -6]));
        assert_eq!(minus.basis_product(0, 0), &Vector::from_ints(Q, &[3, 6]));
        assert_eq!(plus.basis_product(0, 1), &Vector::from_ints(Q, &[0, -1]));
        assert_eq!(minus.basis_product(1, 0), &Vector::from_ints(Q, &[0, 3]));
        assert!(plus.basis_product(1, 1).is_zero());
    }

    #[test]
    fn star_equals_circ_t_on_regular_context() {
        let ctx = a2_ctx();
        let sp = star_product(&ctx, &sample::t2(Q), &Q.one()).unwrap();
        assert_eq!(sp.product, circ_t(&sample::a2(Q), &sample::t2(Q), &Q.one()).unwrap());
        assert!(sp.conditions.is_zero());
        assert!(sp.product.is_novikov());
    }

    #[test]
    fn diamond_recovers_alpha_beta() {
        let ctx = a2_ctx();
        let (t, b) = (sample::t2(Q), sample::beta2(Q));
        let d = diamond_product(&ctx, &t.add(&b), &t.sub(&b), &Q.one()).unwrap();
        assert_eq!(d.alpha, t);
        assert_eq!(d.beta, b);
        assert_eq!(d.product, star_grid(&ctx, &t, &Q.one()).unwrap());
        let f2 = Field::prime(2).unwrap();
        let c2 = regular(&sample::a2(f2)).unwrap();
        let z = Matrix::zeros(f2, 2, 2);
        assert!(matches!(diamond_product(&c2, &z, &z, &f2.one()), Err(Error::NoHalf)));
    }

    #[test]
    fn hkappa_agrees_with_extension_by_identity() {
        let a2 = sample::a2(Q);
        let ctx = a2_ctx();
        let t = sample::t2(Q);
        let id = Matrix::identity(Q, 2);
        for (l, k) in [(0, -1), (1, 0), (1, -2), (2, 1)] {
            let direct = hkappa_residual(&a2, &t, &Q.int(l), &Q.int(k)).unwrap();
            let via = ext_equation_residual(&ctx, &t, &id, &MassParams::ints(Q, l, k, 0)).unwrap();
            assert_eq!(direct.is_zero(), via.is_zero());
        }
    }
}
