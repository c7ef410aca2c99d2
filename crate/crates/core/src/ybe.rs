//! Tensors in `A⊗A` read as maps `A* → A`: hats, symmetric and skew parts,
//! invariance, the NYBE and ENYBE residuals, their operator forms, and
//! quadratic Novikov algebras.
//!
//! `r̂(a*) = Σ ⟨a*, xᵢ⟩ yᵢ` for `r = Σ xᵢ⊗yᵢ`, so the matrix of `r̂` is the
//! transposed coefficient grid and `r̂ᵗ` is the grid itself. Dual maps carry
//! the matrix `−φᵀ`.

use crate::algebra::{coregular, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::operators::{self, balanced_residual, homomorphism_residual, pm_products};
use crate::residual::Residual;
use crate::scalar::{Field, Scalar};
use crate::tensor::{tensor3_combine, Contraction, Tensor2, Tensor3};

/// `(r̂, r̂ᵗ)`.
pub fn hat(r: &Tensor2) -> (Matrix, Matrix) {
    let grid = r.as_matrix();
    (grid.transpose(), grid)
}

/// The tensor whose hat is `m`.
pub fn check(m: &Matrix) -> Tensor2 {
    Tensor2::from_matrix(&m.transpose())
}

/// `r` with its derived maps: `r̂`, `r̂ᵗ`, the skew part `α = r̂₋` and the
/// symmetric part `β = r̂₊`. Needs a field with `1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTensor {
    r: Tensor2,
    hat: Matrix,
    hat_t: Matrix,
    alpha: Matrix,
    beta: Matrix,
}

impl RTensor {
    pub fn new(r: Tensor2) -> Result<RTensor> {
        let half = r.field().half()?;
        let (hat, hat_t) = hat(&r);
        let alpha = hat.sub(&hat_t).scale(&half);
        let beta = hat.add(&hat_t).scale(&half);
        Ok(RTensor { r, hat, hat_t, alpha, beta })
    }

    pub fn tensor(&self) -> &Tensor2 {
        &self.r
    }

    pub fn hat(&self) -> &Matrix {
        &self.hat
    }

    pub fn hat_t(&self) -> &Matrix {
        &self.hat_t
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// `r₊ = (r + τr)/2`.
    pub fn sym_part(&self) -> Tensor2 {
        check(&self.beta)
    }

    /// `r₋ = (r − τr)/2`.
    pub fn skew_part(&self) -> Tensor2 {
        check(&self.alpha)
    }
}

/// `L⋆*(x)`, the matrix `−(L(x)+R(x))ᵀ`.
pub fn star_dual(alg: &Algebra, x: &Vector) -> Matrix {
    alg.star_left(x).transpose().neg()
}

/// `R*(x)`, the matrix `−R(x)ᵀ`.
pub fn right_dual(alg: &Algebra, x: &Vector) -> Matrix {
    alg.right(x).transpose().neg()
}

/// Invariance of a symmetric tensor and its two operator forms.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// False when `s` is not symmetric; the verdicts then do not apply.
    pub symmetric: bool,
    /// `(L(x)⊗id + id⊗L⋆(x))s` for each basis `x`.
    pub tensor: Residual,
    /// `ŝ` balanced over `(A*, L⋆*, −R*)`.
    pub balanced: Residual,
    /// `ŝ` a bimodule homomorphism `(A*, L⋆*, −R*) → (A, L, R)`.
    pub homomorphism: Residual,
}

impl InvarianceReport {
    pub fn invariant(&self) -> bool {
        self.symmetric && self.tensor.is_zero()
    }

    /// True iff the three characterizations agree.
    pub fn consistent(&self) -> bool {
        !self.symmetric
            || (self.tensor.is_zero() == self.balanced.is_zero() && self.tensor.is_zero() == self.homomorphism.is_zero())
    }
}

pub fn invariance_residual(alg: &Algebra, s: &Tensor2) -> Result<InvarianceReport> {
    let tensor = invariance_tensor_residual(alg, s)?;
    let ctx = coregular(alg);
    let (s_hat, _) = hat(s);
    Ok(InvarianceReport {
        symmetric: s.is_symmetric(),
        tensor,
        balanced: balanced_residual(ctx.bimodule(), &s_hat)?,
        homomorphism: homomorphism_residual(ctx.bimodule(), &s_hat)?,
    })
}

/// `(L(x)⊗id + id⊗L⋆(x))s` on each basis `x`, whatever the symmetry of `s`.
pub fn invariance_tensor_residual(alg: &Algebra, s: &Tensor2) -> Result<Residual> {
    check_tensor(alg, s)?;
    let mut res = Residual::new();
    for x in 0..alg.dim() {
        let ex = alg.basis(x);
        let t = &s.apply_first(&alg.left(&ex)) + &s.apply_second(&alg.star_left(&ex));
        res.record("invariance", &[x], t.as_vector());
    }
    Ok(res)
}

pub fn is_invariant(alg: &Algebra, s: &Tensor2) -> Result<bool> {
    Ok(s.is_symmetric() && invariance_tensor_residual(alg, s)?.is_zero())
}

fn check_tensor(alg: &Algebra, r: &Tensor2) -> Result<()> {
    if r.dim() != alg.dim() {
        return Err(Error::DimMismatch("tensor and algebra must share a dimension".into()));
    }
    if r.field() != alg.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `r13∘r23 + r12⋆r23 + r13∘r12`.
pub fn nybe_residual(alg: &Algebra, r: &Tensor2) -> Result<Tensor3> {
    let a = tensor3_combine(alg, r, r, Contraction::R13R23)?;
    let b = tensor3_combine(alg, r, r, Contraction::R12StarR23)?;
    let c = tensor3_combine(alg, r, r, Contraction::R13R12)?;
    Ok(&(&a + &b) + &c)
}

/// NYBE left side minus `ε(r + τr)13∘(r + τr)23`.
pub fn enybe_residual(alg: &Algebra, r: &Tensor2, eps: &Scalar) -> Result<Tensor3> {
    let lhs = nybe_residual(alg, r)?;
    if eps.is_zero() {
        return Ok(lhs);
    }
    let s = r + &r.flip();
    let rhs = tensor3_combine(alg, &s, &s, Contraction::R13R23)?;
    Ok(&lhs - &rhs.scale(eps))
}

/// `r̂(a*)∘r̂(b*) − r̂(L⋆*(r̂a*)b* + R*(r̂ᵗb*)a*)` on dual basis pairs.
pub fn o_nybe_residual(alg: &Algebra, r: &Tensor2) -> Result<Residual> {
    check_tensor(alg, r)?;
    let (h, ht) = hat(r);
    let n = alg.dim();
    let f = alg.field();
    let hc: Vec<Vector> = (0..n).map(|j| h.column(j)).collect();
    let mut res = Residual::new();
    for a in 0..n {
        let la = star_dual(alg, &hc[a]);
        for b in 0..n {
            let mut inner = la.column(b);
            inner.axpy(&f.one(), &right_dual(alg, &ht.column(b)).column(a));
            let lhs = alg.product(&hc[a], &hc[b]);
            res.check("o-nybe", &[a, b], &lhs, &h.apply(&inner));
        }
    }
    Ok(res)
}

/// `a* ∘± b* = ∓2 L⋆*(β(a*))b*`, returned as `(∘₊, ∘₋)`. The symmetric part of
/// `r` must be invariant.
pub fn dual_pm_products(alg: &Algebra, r: &RTensor) -> Result<(Algebra, Algebra)> {
    if !is_invariant(alg, &r.sym_part())? {
        return Err(Error::SymPartNotInvariant);
    }
    pm_products(&coregular(alg), r.beta(), &alg.field().zero())
}

/// A symmetric bilinear form with grid `B(eᵢ, eⱼ)`; `φ(a) = B(a, ·)` has the
/// same matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    grid: Matrix,
}

impl BilForm {
    pub fn new(grid: Matrix) -> Result<BilForm> {
        if !grid.is_square() {
            return Err(Error::DimMismatch("form grid must be square".into()));
        }
        if grid.transpose() != grid {
            return Err(Error::AsymmetricForm);
        }
        Ok(BilForm { grid })
    }

    pub fn grid(&self) -> &Matrix {
        &self.grid
    }

    pub fn field(&self) -> Field {
        self.grid.field()
    }

    pub fn dim(&self) -> usize {
        self.grid.rows()
    }

    pub fn phi(&self) -> &Matrix {
        &self.grid
    }

    pub fn eval(&self, a: &Vector, b: &Vector) -> Scalar {
        let gb = self.grid.apply(b);
        let mut s = self.field().zero();
        for i in 0..a.len() {
            s = &s + &(&a[i] * &gb[i]);
        }
        s
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.grid.rank() == self.dim()
    }
}

/// `B(a∘b, c) + B(b, a⋆c)` on basis triples.
pub fn bilform_invariance(alg: &Algebra, b: &BilForm) -> Result<Residual> {
    if b.dim() != alg.dim() {
        return Err(Error::DimMismatch("form and algebra must share a dimension".into()));
    }
    let n = alg.dim();
    let f = alg.field();
    let mut res = Residual::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let ez = alg.basis(z);
                let ey = alg.basis(y);
                let s = &b.eval(alg.basis_product(x, y), &ez) + &b.eval(&ey, &alg.star_product(&alg.basis(x), &ez));
                res.record("form-invariance", &[x, y, z], Vector::new(f, vec![s])?);
            }
        }
    }
    Ok(res)
}

/// Symmetric, nondegenerate and invariant.
pub fn is_quadratic(alg: &Algebra, b: &BilForm) -> Result<bool> {
    Ok(b.is_nondegenerate() && bilform_invariance(alg, b)?.is_zero())
}

/// `B(T(a), b) = sign·B(a, T(b))`, i.e. `TᵀB = sign·BT`.
pub fn adjoint_residual(b: &BilForm, t: &Matrix, sign: i64) -> Result<Residual> {
    if t.rows() != b.dim() || t.cols() != b.dim() {
        return Err(Error::DimMismatch("map and form must share a dimension".into()));
    }
    let lhs = t.transpose().mul(b.grid());
    let rhs = b.grid().mul(t).scale(&b.field().int(sign));
    let mut res = Residual::new();
    for i in 0..b.dim() {
        res.check("adjoint", &[i], &lhs.row(i), &rhs.row(i));
    }
    Ok(res)
}

/// `P_T = Tφ⁻¹`, `P_β = βφ⁻¹` and the tensors `δ̌± = P̌_T ± P̌_β`.
#[derive(Clone, Debug)]
pub struct QuadTransport {
    pub p_t: Matrix,
    pub p_beta: Matrix,
    pub delta_plus: Tensor2,
    pub delta_minus: Tensor2,
}

pub fn quad_transport(alg: &Algebra, b: &BilForm, t: &Matrix, beta: &Matrix) -> Result<QuadTransport> {
    let phi_inv = b.phi().inverse().ok_or(Error::DegenerateForm)?;
    if !bilform_invariance(alg, b)?.is_zero() {
        return Err(Error::Inconsistent("bilinear form is not invariant".into()));
    }
    if !adjoint_residual(b, beta, 1)?.is_zero() {
        return Err(Error::BetaNotSelfAdjoint);
    }
    let p_t = t.mul(&phi_inv);
    let p_beta = beta.mul(&phi_inv);
    let (ct, cb) = (check(&p_t), check(&p_beta));
    Ok(QuadTransport { delta_plus: &ct + &cb, delta_minus: &ct - &cb, p_t, p_beta })
}

/// `(ᾱ, β̄) = (αφ, βφ)` for the parts of `r`.
pub fn bar_maps(b: &BilForm, r: &RTensor) -> (Matrix, Matrix) {
    (r.alpha().mul(b.phi()), r.beta().mul(b.phi()))
}

/// The context `(A*, L⋆*, −R*)` as a bare bimodule.
pub fn coregular_bimodule(alg: &Algebra) -> Bimodule {
    coregular(alg).bimodule().clone()
}

/// `α(a*)∘α(b*) − α(L⋆*(αa*)b* − R*(αb*)a*) − κβ(a*)∘β(b*)` over the
/// coregular context.
pub fn dual_ext_residual(alg: &Algebra, r: &RTensor, kappa: &Scalar) -> Result<operators::ExtReport> {
    let p = operators::MassParams::new(alg.field().zero(), kappa.clone(), alg.field().zero());
    operators::ext_o_residual(&coregular(alg), r.alpha(), r.beta(), &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    const Q: Field = Field::Rational;

    #[test]
    fn hat_of_simple_tensor() {
        let r = Tensor2::simple(Q, 2, 0, 1);
        let (h, ht) = hat(&r);
        assert_eq!(h.column(0), Vector::from_ints(Q, &[0, 1]));
        assert!(h.column(1).is_zero());
        assert_eq!(ht.column(1), Vector::from_ints(Q, &[1, 0]));
        assert!(ht.column(0).is_zero());
        assert_eq!(hat(&r.flip()).0, ht);
        assert_eq!(check(&h), r);
    }

    #[test]
    fn nybe_examples_on_a2() {
        let a2 = sample::a2(Q);
        let e22 = Tensor2::simple(Q, 2, 1, 1);
        assert!(nybe_residual(&a2, &e22).unwrap().is_zero());
        assert!(o_nybe_residual(&a2, &e22).unwrap().is_zero());
        let skew = Tensor2::from_ints(Q, &[&[0, 1], &[-1, 0]]);
        let res = nybe_residual(&a2, &skew).unwrap();
        // hand expansion: 2e1⊗e2⊗e2 − 4e2⊗e1⊗e2 + 2e2⊗e2⊗e1
        let mut expect = Tensor3::simple(Q, 2, 0, 1, 1).scale(&Q.int(2));
        expect = &expect - &Tensor3::simple(Q, 2, 1, 0, 1).scale(&Q.int(4));
        expect = &expect + &Tensor3::simple(Q, 2, 1, 1, 0).scale(&Q.int(2));
        assert_eq!(res, expect);
        assert!(!o_nybe_residual(&a2, &skew).unwrap().is_zero());
    }

    #[test]
    fn enybe_examples() {
        let a2 = sample::a2(Q);
        let e11 = Tensor2::simple(Q, 2, 0, 0);
        assert!(enybe_residual(&a2, &e11, &Q.one()).unwrap().is_zero());
        assert!(!nybe_residual(&a2, &e11).unwrap().is_zero());
        let skew = Tensor2::from_ints(Q, &[&[0, 1], &[-1, 0]]);
        assert_eq!(enybe_residual(&a2, &skew, &Q.int(5)).unwrap(), nybe_residual(&a2, &skew).unwrap());
    }

    #[test]
    fn invariance_of_e2e2_on_a2() {
        let a2 = sample::a2(Q);
        let s = Tensor2::simple(Q, 2, 1, 1);
        let rep = invariance_residual(&a2, &s).unwrap();
        assert!(rep.consistent());
        // (L(e1)⊗id + id⊗L⋆(e1))(e2⊗e2) = 3e2⊗e2
        assert!(!rep.invariant());
        assert!(matches!(dual_pm_products(&a2, &RTensor::new(s).unwrap()), Err(Error::SymPartNotInvariant)));
    }

    #[test]
    fn forms() {
        let a2 = sample::a2(Q);
        let id = BilForm::new(Matrix::identity(Q, 2)).unwrap();
        assert!(!bilform_invariance(&a2, &id).unwrap().is_zero());
        let triv = Algebra::zero(Q, 2);
        assert!(is_quadratic(&triv, &id).unwrap());
        let zero = BilForm::new(Matrix::zeros(Q, 2, 2)).unwrap();
        assert!(bilform_invariance(&a2, &zero).unwrap().is_zero());
        assert!(!is_quadratic(&a2, &zero).unwrap());
        assert!(BilForm::new(Matrix::from_ints(Q, &[&[0, 1], &[0, 0]])).is_err());
        let t = Matrix::identity(Q, 2);
        assert!(adjoint_residual(&id, &t, 1).unwrap().is_zero());
        assert!(!adjoint_residual(&id, &t, -1).unwrap().is_zero());
        let d = BilForm::new(Matrix::from_ints(Q, &[&[2, 0], &[0, 3]])).unwrap();
        assert!(adjoint_residual(&d, &Matrix::from_ints(Q, &[&[5, 0], &[0, 7]]), 1).unwrap().is_zero());
    }

    #[test]
    fn transport_on_trivial_algebra() {
        let triv = Algebra::zero(Q, 2);
        let id = BilForm::new(Matrix::identity(Q, 2)).unwrap();
        let skew = Matrix::from_ints(Q, &[&[0, 1], &[-1, 0]]);
        let qt = quad_transport(&triv, &id, &skew, &Matrix::zeros(Q, 2, 2)).unwrap();
        assert!(qt.delta_plus.is_skew());
        assert!(nybe_residual(&triv, &qt.delta_plus).unwrap().is_zero());
        let deg = BilForm::new(Matrix::zeros(Q, 2, 2)).unwrap();
        assert!(matches!(quad_transport(&triv, &deg, &skew, &skew), Err(Error::DegenerateForm)));
    }
}
