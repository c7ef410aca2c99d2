//! Post-Novikov algebras `(A, ∘, ◁, ▷)`, commutative trialgebras with a
//! derivation, and the post-Novikov structures induced by O-operators,
//! Rota-Baxter operators and NYBE solutions.

use crate::algebra::{coregular, novikov_into, regular_unchecked, Algebra, BimodNov, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::operators::{baxter_residual, check_map, is_o_operator, is_rota_baxter};
use crate::residual::Residual;
use crate::scalar::{Field, Scalar};
use crate::ybe::{dual_pm_products, nybe_residual, RTensor};

/// Three bilinear products on one space: `∘`, `◁` and `▷`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostNov {
    circ: Algebra,
    tri_l: Algebra,
    tri_r: Algebra,
}

impl PostNov {
    pub fn new(circ: Algebra, tri_l: Algebra, tri_r: Algebra) -> Result<PostNov> {
        if circ.dim() != tri_l.dim() || circ.dim() != tri_r.dim() {
            return Err(Error::DimMismatch("all three products must share a dimension".into()));
        }
        if circ.field() != tri_l.field() || circ.field() != tri_r.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(PostNov { circ, tri_l, tri_r })
    }

    pub fn zero(field: Field, dim: usize) -> PostNov {
        let z = Algebra::zero(field, dim);
        PostNov { circ: z.clone(), tri_l: z.clone(), tri_r: z }
    }

    pub fn field(&self) -> Field {
        self.circ.field()
    }

    pub fn dim(&self) -> usize {
        self.circ.dim()
    }

    pub fn circ(&self) -> &Algebra {
        &self.circ
    }

    /// `◁`.
    pub fn tri_l(&self) -> &Algebra {
        &self.tri_l
    }

    /// `▷`.
    pub fn tri_r(&self) -> &Algebra {
        &self.tri_r
    }

    pub fn is_zero(&self) -> bool {
        *self == PostNov::zero(self.field(), self.dim())
    }
}

/// Novikov identities of `∘` and the eight post-Novikov identities, with
/// `a⊛b = a▷b + a◁b + a∘b`:
///
/// 1. `(a▷c)◁b = (a⊛b)▷c`
/// 2. `a▷(c◁b) − (a▷c)◁b + (c◁a)◁b = c◁(a⊛b)`
/// 3. `(a⊛b)▷c − (b⊛a)▷c = a▷(b▷c) − b▷(a▷c)`
/// 4. `(a◁b)◁c = (a◁c)◁b`
/// 5. `(a▷b)∘c − a▷(b∘c) = (b◁a)∘c − b∘(a▷c)`
/// 6. `(b∘c)◁a − b∘(c◁a) = (c∘b)◁a − c∘(b◁a)`
/// 7. `(a▷b)∘c = (a▷c)∘b`
/// 8. `(a∘b)◁c = (a◁c)∘b`
pub fn post_residual(p: &PostNov) -> Residual {
    let mut res = Residual::new();
    post_into(p, &mut res);
    res
}

pub fn is_post_novikov(p: &PostNov) -> bool {
    let mut res = Residual::fail_fast();
    post_into(p, &mut res);
    res.is_zero()
}

fn post_into(p: &PostNov, res: &mut Residual) {
    let mut circ = if res.done() { Residual::fail_fast() } else { Residual::new() };
    novikov_into(&p.circ, &mut circ);
    res.merge(circ.prefixed("circ"));
    if res.done() {
        return;
    }
    let n = p.dim();
    let assoc = associated(p);
    let c = |x: &Vector, y: &Vector| p.circ.product(x, y);
    let l = |x: &Vector, y: &Vector| p.tri_l.product(x, y);
    let r = |x: &Vector, y: &Vector| p.tri_r.product(x, y);
    let e: Vec<Vector> = (0..n).map(|i| p.circ.basis(i)).collect();
    for a in 0..n {
        let (ea, ta) = (&e[a], &e);
        for b in 0..n {
            let eb = &ta[b];
            let ab = assoc.basis_product(a, b);
            let ba = assoc.basis_product(b, a);
            for cc in 0..n {
                let ec = &ta[cc];
                let idx = [a, b, cc];
                res.check("post-1", &idx, &l(&r(ea, ec), eb), &r(ab, ec));
                let lhs = &(&r(ea, &l(ec, eb)) - &l(&r(ea, ec), eb)) + &l(&l(ec, ea), eb);
                res.check("post-2", &idx, &lhs, &l(ec, ab));
                let lhs = &r(ab, ec) - &r(ba, ec);
                let rhs = &r(ea, &r(eb, ec)) - &r(eb, &r(ea, ec));
                res.check("post-3", &idx, &lhs, &rhs);
                res.check("post-4", &idx, &l(&l(ea, eb), ec), &l(&l(ea, ec), eb));
                let lhs = &c(&r(ea, eb), ec) - &r(ea, &c(eb, ec));
                let rhs = &c(&l(eb, ea), ec) - &c(eb, &r(ea, ec));
                res.check("post-5", &idx, &lhs, &rhs);
                let lhs = &l(&c(eb, ec), ea) - &c(eb, &l(ec, ea));
                let rhs = &l(&c(ec, eb), ea) - &c(ec, &l(eb, ea));
                res.check("post-6", &idx, &lhs, &rhs);
                res.check("post-7", &idx, &c(&r(ea, eb), ec), &c(&r(ea, ec), eb));
                res.check("post-8", &idx, &l(&c(ea, eb), ec), &c(&l(ea, ec), eb));
                if res.done() {
                    return;
                }
            }
        }
    }
}

/// `a⊛b = a▷b + a◁b + a∘b`.
pub fn associated(p: &PostNov) -> Algebra {
    p.circ.sum(&p.tri_l).sum(&p.tri_r)
}

/// `(A, ∘, L▷, R◁)` over `(A, ⊛)`.
pub fn lr_bimodule(p: &PostNov) -> Result<BimodNov> {
    if !is_post_novikov(p) {
        return Err(Error::NotPostNovikov);
    }
    let n = p.dim();
    let l = (0..n).map(|i| p.tri_r.left(&p.tri_r.basis(i))).collect();
    let r = (0..n).map(|i| p.tri_l.right(&p.tri_l.basis(i))).collect();
    BimodNov::new(Bimodule::new(associated(p), n, l, r)?, p.circ.clone())
}

/// A commutative associative product `·`, a second product `∘` and a linear
/// map `D` meant to be a derivation of both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommTrialgebra {
    pub dot: Algebra,
    pub circ: Algebra,
    pub d: Matrix,
}

impl CommTrialgebra {
    pub fn new(dot: Algebra, circ: Algebra, d: Matrix) -> Result<CommTrialgebra> {
        let n = dot.dim();
        if circ.dim() != n || d.rows() != n || d.cols() != n {
            return Err(Error::DimMismatch("products and derivation must share a dimension".into()));
        }
        if circ.field() != dot.field() || d.field() != dot.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(CommTrialgebra { dot, circ, d })
    }
}

/// `·` commutative and associative, and
/// `(a∘b)∘c = a∘(b∘c + c∘b + b·c)`, `(a∘b)∘c = (a∘c)∘b`,
/// `(a∘b)·c = a·(c∘b)`, `(a·b)∘c = (a∘c)·b`.
pub fn trialgebra_residual(t: &CommTrialgebra) -> Residual {
    let (dot, circ) = (&t.dot, &t.circ);
    let n = dot.dim();
    let mut res = Residual::new();
    for a in 0..n {
        let ea = dot.basis(a);
        for b in 0..n {
            let eb = dot.basis(b);
            res.check("dot-commutative", &[a, b], dot.basis_product(a, b), dot.basis_product(b, a));
            let ab_circ = circ.basis_product(a, b);
            let ab_dot = dot.basis_product(a, b);
            for c in 0..n {
                let ec = dot.basis(c);
                let idx = [a, b, c];
                res.check("dot-associative", &idx, &dot.product(ab_dot, &ec), &dot.product(&ea, dot.basis_product(b, c)));
                let lhs = circ.product(ab_circ, &ec);
                let mut inner = circ.basis_product(b, c) + circ.basis_product(c, b);
                inner = &inner + dot.basis_product(b, c);
                res.check("tri-left", &idx, &lhs, &circ.product(&ea, &inner));
                res.check("tri-right-commutative", &idx, &lhs, &circ.product(circ.basis_product(a, c), &eb));
                res.check("tri-mixed-dot", &idx, &dot.product(ab_circ, &ec), &dot.product(&ea, circ.basis_product(c, b)));
                res.check("tri-mixed-circ", &idx, &circ.product(ab_dot, &ec), &dot.product(circ.basis_product(a, c), &eb));
            }
        }
    }
    res
}

/// `D(a·b) = D(a)·b + a·D(b)` and the same for `∘`.
pub fn derivation_residual(t: &CommTrialgebra) -> Residual {
    let mut res = Residual::new();
    for (name, alg) in [("derivation-dot", &t.dot), ("derivation-circ", &t.circ)] {
        let n = alg.dim();
        for a in 0..n {
            for b in 0..n {
                let lhs = t.d.apply(alg.basis_product(a, b));
                let rhs = &alg.product(&t.d.column(a), &alg.basis(b)) + &alg.product(&alg.basis(a), &t.d.column(b));
                res.check(name, &[a, b], &lhs, &rhs);
            }
        }
    }
    res
}

/// `a∗b = a·D(b)` as the Novikov product, `a◁b = a∘D(b)`, `a▷b = D(b)∘a`.
pub fn post_from_trialgebra(t: &CommTrialgebra) -> Result<PostNov> {
    if !trialgebra_residual(t).is_zero() {
        return Err(Error::NotTrialgebra);
    }
    if !derivation_residual(t).is_zero() {
        return Err(Error::NotDerivation);
    }
    let f = t.dot.field();
    let n = t.dot.dim();
    let star = Algebra::from_fn(f, n, |a, b| t.dot.product(&t.dot.basis(a), &t.d.column(b)));
    let tri_l = Algebra::from_fn(f, n, |a, b| t.circ.product(&t.circ.basis(a), &t.d.column(b)));
    let tri_r = Algebra::from_fn(f, n, |a, b| t.circ.product(&t.d.column(b), &t.circ.basis(a)));
    PostNov::new(star, tri_l, tri_r)
}

fn columns(m: &Matrix) -> Vec<Vector> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// The structure on `M` from an O-operator `α` of weight `λ`:
/// `x⊙y = λx·y`, `x▷y = l(α(x))y`, `x◁y = r(α(y))x`.
pub fn post_from_o(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> Result<PostNov> {
    check_map(ctx.bimodule(), alpha)?;
    if !is_o_operator(ctx, alpha, lambda)? {
        return Err(Error::NotOOperator);
    }
    Ok(post_from_o_unchecked(ctx, alpha, lambda))
}

fn post_from_o_unchecked(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> PostNov {
    let f = ctx.field();
    let m = ctx.mdim();
    let la: Vec<Matrix> = columns(alpha).iter().map(|x| ctx.l(x)).collect();
    let ra: Vec<Matrix> = columns(alpha).iter().map(|x| ctx.r(x)).collect();
    PostNov {
        circ: ctx.product().scaled(lambda),
        tri_l: Algebra::from_fn(f, m, |x, y| ra[y].column(x)),
        tri_r: Algebra::from_fn(f, m, |x, y| la[x].column(y)),
    }
}

/// `α(x⊛y) − α(x)∘α(y)` on basis pairs of `M`, for `p` living on `M`.
pub fn hom_residual(p: &PostNov, alg: &Algebra, alpha: &Matrix) -> Result<Residual> {
    if alpha.rows() != alg.dim() || alpha.cols() != p.dim() {
        return Err(Error::DimMismatch("map must go from the post-Novikov space to the algebra".into()));
    }
    let assoc = associated(p);
    let a = columns(alpha);
    let mut res = Residual::new();
    for x in 0..p.dim() {
        for y in 0..p.dim() {
            res.check("hom", &[x, y], &alpha.apply(assoc.basis_product(x, y)), &alg.product(&a[x], &a[y]));
        }
    }
    Ok(res)
}

/// The structure induced on `α(M)`, in the basis `image` (columns in `A`).
#[derive(Clone, Debug)]
pub struct ImagePost {
    pub post: PostNov,
    /// Basis of `α(M)` as columns of `A`-coordinates.
    pub image: Matrix,
    /// Indices of the module basis vectors whose images form `image`.
    pub pivots: Vec<usize>,
}

/// `α(x)∘α(y) = λα(x·y)`, `α(x)▷α(y) = α(l(α(x))y)`, `α(x)◁α(y) = α(r(α(y))x)`
/// on `α(M)`. Needs `Ker α` to be an ideal of `(M, ·)`; the image basis is
/// the leftmost pivot columns of `α`.
pub fn post_on_image(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar) -> Result<ImagePost> {
    check_map(ctx.bimodule(), alpha)?;
    if !is_o_operator(ctx, alpha, lambda)? {
        return Err(Error::NotOOperator);
    }
    let kernel = alpha.kernel_basis();
    let m = ctx.mdim();
    for k in &kernel {
        for i in 0..m {
            let u = ctx.module_basis(i);
            if !alpha.apply(&ctx.dot(k, &u)).is_zero() || !alpha.apply(&ctx.dot(&u, k)).is_zero() {
                return Err(Error::KernelNotIdeal);
            }
        }
    }
    let (pivots, cols) = alpha.column_space_basis();
    let image = Matrix::from_columns(ctx.field(), ctx.base().dim(), &cols)?;
    let pre: Vec<Vector> = pivots.iter().map(|&j| ctx.module_basis(j)).collect();
    let post = image_structure(ctx, alpha, lambda, &image, &pre)?;
    for k in &kernel {
        let shifted: Vec<Vector> = pre.iter().map(|u| u + k).collect();
        if image_structure(ctx, alpha, lambda, &image, &shifted)? != post {
            return Err(Error::Inconsistent("image products depend on the preimage".into()));
        }
    }
    let res = image_hom_residual(ctx, alpha, lambda, &image, &post)?;
    if !res.is_zero() {
        return Err(Error::Inconsistent("α is not a post-Novikov homomorphism onto its image".into()));
    }
    Ok(ImagePost { post, image, pivots })
}

/// The image products on the basis `image`, whose columns are `α(pre[i])`.
fn image_structure(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar, image: &Matrix, pre: &[Vector]) -> Result<PostNov> {
    let f = ctx.field();
    let k = pre.len();
    let coords = |v: &Vector| {
        image.solve(v).ok_or_else(|| Error::Inconsistent("product leaves the image of α".into()))
    };
    let imgs: Vec<Vector> = (0..k).map(|i| image.column(i)).collect();
    let mut circ = vec![vec![Vector::zeros(f, k); k]; k];
    let mut tri_l = circ.clone();
    let mut tri_r = circ.clone();
    for i in 0..k {
        let li = ctx.l(&imgs[i]);
        for j in 0..k {
            circ[i][j] = coords(&alpha.apply(&ctx.dot(&pre[i], &pre[j])).scale(lambda))?;
            tri_r[i][j] = coords(&alpha.apply(&li.apply(&pre[j])))?;
            tri_l[i][j] = coords(&alpha.apply(&ctx.r(&imgs[j]).apply(&pre[i])))?;
        }
    }
    PostNov::new(Algebra::new(f, k, circ)?, Algebra::new(f, k, tri_l)?, Algebra::new(f, k, tri_r)?)
}

/// `α` carries each product of `post_from_o` to the image products.
fn image_hom_residual(
    ctx: &BimodNov,
    alpha: &Matrix,
    lambda: &Scalar,
    image: &Matrix,
    post: &PostNov,
) -> Result<Residual> {
    let src = post_from_o_unchecked(ctx, alpha, lambda);
    let m = ctx.mdim();
    let to_image = |v: &Vector| {
        image.solve(&alpha.apply(v)).ok_or_else(|| Error::Inconsistent("vector outside the image".into()))
    };
    let mut res = Residual::new();
    for x in 0..m {
        let ax = to_image(&ctx.module_basis(x))?;
        for y in 0..m {
            let ay = to_image(&ctx.module_basis(y))?;
            let pairs = [("hom-circ", &src.circ, &post.circ), ("hom-tri-l", &src.tri_l, &post.tri_l), ("hom-tri-r", &src.tri_r, &post.tri_r)];
            for (name, s, t) in pairs {
                res.check(name, &[x, y], &to_image(s.basis_product(x, y))?, &t.product(&ax, &ay));
            }
        }
    }
    Ok(res)
}

/// `x⊙y = λx∘y`, `x▷y = T(x)∘y`, `x◁y = x∘T(y)` for a Rota-Baxter operator
/// `T` of weight `λ`.
pub fn post_from_rb(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> Result<PostNov> {
    if !is_rota_baxter(alg, t, lambda)? {
        return Err(Error::NotRotaBaxter);
    }
    Ok(post_from_o_unchecked(&regular_unchecked(alg), t, lambda))
}

/// For invertible `T`: `X∘_T Y = λT(T⁻¹X∘T⁻¹Y)`, `X▷_T Y = T(X∘T⁻¹Y)`,
/// `X◁_T Y = T(T⁻¹X∘Y)`, whose associated product is `∘`.
pub fn compatible_from_rb(alg: &Algebra, t: &Matrix, lambda: &Scalar) -> Result<PostNov> {
    if !is_rota_baxter(alg, t, lambda)? {
        return Err(Error::NotRotaBaxter);
    }
    compatible(&regular_unchecked(alg), t, lambda, alg)
}

/// The structure pushed forward along an invertible O-operator onto `A`, in
/// the standard basis of `A`; checks that its associated product is `target`.
fn compatible(ctx: &BimodNov, alpha: &Matrix, lambda: &Scalar, target: &Algebra) -> Result<PostNov> {
    let inv = alpha.inverse().ok_or(Error::Singular)?;
    let id = Matrix::identity(ctx.field(), alpha.rows());
    let post = image_structure(ctx, alpha, lambda, &id, &columns(&inv))?;
    if associated(&post) != *target {
        return Err(Error::Inconsistent("compatible structure does not recover the algebra".into()));
    }
    Ok(post)
}

/// For `T` with `T(x)∘T(y) − T(T(x)∘y + x∘T(y)) = −x∘y`: `P = −(T + id)/2` is
/// Rota-Baxter of weight 1, giving `x⊙y = x∘y`, `x▷y = P(x)∘y`, `x◁y = x∘P(y)`.
pub fn baxter_post(alg: &Algebra, t: &Matrix) -> Result<PostNov> {
    if !baxter_residual(alg, t)?.is_zero() {
        return Err(Error::NotRotaBaxter);
    }
    let f = alg.field();
    let p = t.add(&Matrix::identity(f, alg.dim())).scale(&-f.half()?);
    post_from_rb(alg, &p, &f.one())
}

/// The context `(A*, ∘₊, L⋆*, −R*)` for a tensor whose symmetric part is
/// invariant.
pub fn nybe_context(alg: &Algebra, r: &RTensor) -> Result<BimodNov> {
    let (plus, _) = dual_pm_products(alg, r)?;
    BimodNov::new(coregular(alg).bimodule().clone(), plus)
}

/// `a*⊙b* = −2L⋆*(β(a*))b*`, `a*▷b* = L⋆*(r̂(a*))b*`, `a*◁b* = −R*(r̂(b*))a*`
/// on `A*`, for an NYBE solution `r` with invariant symmetric part.
pub fn post_from_nybe(alg: &Algebra, r: &RTensor) -> Result<PostNov> {
    if !nybe_residual(alg, r.tensor())?.is_zero() {
        return Err(Error::NotNYBESolution);
    }
    let ctx = nybe_context(alg, r)?;
    post_from_o(&ctx, r.hat(), &alg.field().one())
}

/// For invertible `r̂`: the structure on `A` pushed forward along `r̂`, whose
/// associated product is `∘`.
pub fn compatible_from_nybe(alg: &Algebra, r: &RTensor) -> Result<PostNov> {
    if !nybe_residual(alg, r.tensor())?.is_zero() {
        return Err(Error::NotNYBESolution);
    }
    let ctx = nybe_context(alg, r)?;
    if !is_o_operator(&ctx, r.hat(), &alg.field().one())? {
        return Err(Error::NotOOperator);
    }
    compatible(&ctx, r.hat(), &alg.field().one(), alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::regular;
    use crate::sample;
    use crate::tensor::Tensor2;

    const Q: Field = Field::Rational;

    #[test]
    fn zero_and_a2_examples() {
        assert!(post_residual(&PostNov::zero(Q, 2)).is_zero());
        assert_eq!(associated(&PostNov::zero(Q, 2)), Algebra::zero(Q, 2));
        let a2 = sample::a2(Q);
        let all = PostNov::new(a2.clone(), a2.clone(), a2.clone()).unwrap();
        let res = post_residual(&all);
        assert!(res.failures.iter().any(|f| f.identity == "post-1" && f.indices == [0, 0, 0]));
        assert!(matches!(lr_bimodule(&all), Err(Error::NotPostNovikov)));
    }

    #[test]
    fn rota_baxter_structures_on_a2() {
        let a2 = sample::a2(Q);
        let zero = post_from_rb(&a2, &Matrix::zeros(Q, 2, 2), &Q.one()).unwrap();
        assert!(post_residual(&zero).is_zero());
        assert_eq!(zero.circ(), &a2);
        let id = Matrix::identity(Q, 2);
        let p = post_from_rb(&a2, &id, &Q.int(-1)).unwrap();
        assert_eq!(p.tri_l(), &a2);
        assert_eq!(p.tri_r(), &a2);
        assert_eq!(p.circ(), &a2.scaled(&Q.int(-1)));
        assert!(post_residual(&p).is_zero());
        assert_eq!(associated(&p), a2);
        let b = lr_bimodule(&p).unwrap();
        assert!(crate::algebra::abnova_residual(&b).unwrap().is_zero());
        let c = compatible_from_rb(&a2, &id, &Q.int(-1)).unwrap();
        assert_eq!(associated(&c), a2);
        assert!(matches!(post_from_rb(&a2, &id, &Q.one()), Err(Error::NotRotaBaxter)));
    }

    fn trunc3(f: Field, sign: i64) -> Algebra {
        Algebra::from_fn(f, 3, |i, j| {
            let mut v = Vector::zeros(f, 3);
            if i + j < 3 {
                v.set(i + j, f.int(sign));
            }
            v
        })
    }

    #[test]
    fn trialgebra_on_truncated_polynomials() {
        let dot = trunc3(Q, 1);
        let euler = Matrix::from_ints(Q, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let t = CommTrialgebra::new(dot.clone(), trunc3(Q, -1), euler).unwrap();
        assert!(trialgebra_residual(&t).is_zero());
        assert!(derivation_residual(&t).is_zero());
        let p = post_from_trialgebra(&t).unwrap();
        assert!(post_residual(&p).is_zero());
        let ddx = Matrix::from_ints(Q, &[&[0, 1, 0], &[0, 0, 2], &[0, 0, 0]]);
        let lit = CommTrialgebra::new(dot.clone(), dot.clone(), ddx.clone()).unwrap();
        assert!(matches!(post_from_trialgebra(&lit), Err(Error::NotTrialgebra)));
        let t = CommTrialgebra::new(dot.clone(), trunc3(Q, -1), ddx).unwrap();
        assert!(matches!(post_from_trialgebra(&t), Err(Error::NotDerivation)));
        let t = CommTrialgebra::new(dot, trunc3(Q, -1), Matrix::zeros(Q, 3, 3)).unwrap();
        assert!(post_from_trialgebra(&t).unwrap().is_zero());
    }

    #[test]
    fn one_dimensional_trialgebra() {
        let dot = Algebra::from_ints(Q, &[&[&[1]]]);
        let circ = Algebra::from_ints(Q, &[&[&[-1]]]);
        let t = CommTrialgebra::new(dot, circ, Matrix::zeros(Q, 1, 1)).unwrap();
        assert!(post_residual(&post_from_trialgebra(&t).unwrap()).is_zero());
    }

    #[test]
    fn o_operator_structures() {
        let ctx = regular(&sample::a2(Q)).unwrap();
        let z = Matrix::zeros(Q, 2, 2);
        assert!(post_from_o(&ctx, &z, &Q.zero()).unwrap().is_zero());
        let img = post_on_image(&ctx, &z, &Q.zero()).unwrap();
        assert_eq!(img.post.dim(), 0);
        let id = Matrix::identity(Q, 2);
        let p = post_from_o(&ctx, &id, &Q.int(-1)).unwrap();
        assert!(hom_residual(&p, ctx.base(), &id).unwrap().is_zero());
        let img = post_on_image(&ctx, &id, &Q.int(-1)).unwrap();
        assert_eq!(img.post, p);
    }

    #[test]
    fn nybe_structures() {
        let a2 = sample::a2(Q);
        assert!(post_from_nybe(&a2, &RTensor::new(Tensor2::zeros(Q, 2)).unwrap()).unwrap().is_zero());
        let e22 = RTensor::new(Tensor2::simple(Q, 2, 1, 1)).unwrap();
        assert!(matches!(post_from_nybe(&a2, &e22), Err(Error::SymPartNotInvariant)));
        let skew = RTensor::new(Tensor2::from_ints(Q, &[&[0, 1], &[-1, 0]])).unwrap();
        assert!(matches!(post_from_nybe(&a2, &skew), Err(Error::NotNYBESolution)));
    }
}
