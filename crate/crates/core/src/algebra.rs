//! Novikov algebras, bimodules and bimodule Novikov algebras given by
//! structure constants.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::residual::Residual;
use crate::scalar::Field;

/// A bilinear product on a based space. `mul[i][j]` holds the coordinates of
/// `e_i ∘ e_j`, the row index being the left factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mul: Vec<Vector>,
}

impl Algebra {
    pub fn new(field: Field, dim: usize, table: Vec<Vec<Vector>>) -> Result<Algebra> {
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::DimMismatch(format!("product table must be {dim}x{dim}")));
        }
        let mul: Vec<Vector> = table.into_iter().flatten().collect();
        for v in &mul {
            if v.len() != dim {
                return Err(Error::DimMismatch(format!("product entries must have length {dim}")));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Algebra { field, dim, mul })
    }

    /// Builds the table from a function of the basis indices.
    pub fn from_fn(field: Field, dim: usize, f: impl Fn(usize, usize) -> Vector) -> Algebra {
        let mut mul = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "product entry of wrong length");
                mul.push(v);
            }
        }
        Algebra { field, dim, mul }
    }

    /// `table[i][j]` is the integer coordinate list of `e_i ∘ e_j`.
    pub fn from_ints(field: Field, table: &[&[&[i64]]]) -> Algebra {
        let dim = table.len();
        Algebra::from_fn(field, dim, |i, j| Vector::from_ints(field, table[i][j]))
    }

    pub fn zero(field: Field, dim: usize) -> Algebra {
        Algebra::from_fn(field, dim, |_, _| Vector::zeros(field, dim))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.field, self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.mul[i * self.dim + j]
    }

    pub fn table(&self) -> Vec<Vec<Vector>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.basis_product(i, j).clone()).collect()).collect()
    }

    pub fn product(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                out.axpy(&(&a[i] * &b[j]), self.basis_product(i, j));
            }
        }
        out
    }

    /// `a ⋆ b = a∘b + b∘a`.
    pub fn star_product(&self, a: &Vector, b: &Vector) -> Vector {
        &self.product(a, b) + &self.product(b, a)
    }

    /// Matrix of `L(a): b ↦ a∘b`.
    pub fn left(&self, a: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.product(a, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Matrix of `R(a): b ↦ b∘a`.
    pub fn right(&self, a: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.product(&self.basis(j), a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Matrix of `L⋆(a) = L(a) + R(a)`.
    pub fn star_left(&self, a: &Vector) -> Matrix {
        self.left(a).add(&self.right(a))
    }

    /// Same product with every structure constant multiplied by `s`.
    pub fn scaled(&self, s: &crate::scalar::Scalar) -> Algebra {
        Algebra { mul: self.mul.iter().map(|v| v.scale(s)).collect(), ..self.clone() }
    }

    /// Entry-wise sum of two products on the same space.
    pub fn sum(&self, other: &Algebra) -> Algebra {
        assert_eq!(self.dim, other.dim);
        Algebra { mul: self.mul.iter().zip(&other.mul).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn is_novikov(&self) -> bool {
        let mut res = Residual::fail_fast();
        novikov_into(self, &mut res);
        res.is_zero()
    }
}

/// The result of `lr_matrices`.
pub struct LrMatrices {
    pub left: Matrix,
    pub right: Matrix,
    pub star_left: Matrix,
}

pub fn lr_matrices(alg: &Algebra, a: &Vector) -> LrMatrices {
    let left = alg.left(a);
    let right = alg.right(a);
    let star_left = left.add(&right);
    LrMatrices { left, right, star_left }
}

/// The symmetrized product `a ⋆ b`.
pub fn star(alg: &Algebra) -> Algebra {
    Algebra::from_fn(alg.field, alg.dim, |i, j| alg.basis_product(i, j) + alg.basis_product(j, i))
}

/// Left-symmetry and right-commutativity on all basis triples.
pub fn novikov_residual(alg: &Algebra) -> Residual {
    let mut res = Residual::new();
    novikov_into(alg, &mut res);
    res
}

pub(crate) fn novikov_into(alg: &Algebra, res: &mut Residual) {
    let n = alg.dim;
    let e = |i| alg.basis(i);
    for a in 0..n {
        for b in 0..n {
            let ab = alg.basis_product(a, b);
            let ba = alg.basis_product(b, a);
            for c in 0..n {
                let ab_c = alg.product(ab, &e(c));
                let ac_b = alg.product(alg.basis_product(a, c), &e(b));
                res.check("right-commutativity", &[a, b, c], &ab_c, &ac_b);
                let lhs = &ab_c - &alg.product(&e(a), alg.basis_product(b, c));
                let rhs = &alg.product(ba, &e(c)) - &alg.product(&e(b), alg.basis_product(a, c));
                res.check("left-symmetry", &[a, b, c], &lhs, &rhs);
                if res.done() {
                    return;
                }
            }
        }
    }
}

/// A pair of actions `l, r: A → End(V)` stored on the basis of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    base: Algebra,
    mdim: usize,
    l: Vec<Matrix>,
    r: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(base: Algebra, mdim: usize, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Bimodule> {
        if l.len() != base.dim || r.len() != base.dim {
            return Err(Error::DimMismatch("one action matrix per basis element of A".into()));
        }
        for m in l.iter().chain(&r) {
            if m.rows() != mdim || m.cols() != mdim {
                return Err(Error::DimMismatch(format!("action matrices must be {mdim}x{mdim}")));
            }
            if m.field() != base.field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Bimodule { base, mdim, l, r })
    }

    /// `(A, L, R)`.
    pub fn regular(alg: &Algebra) -> Bimodule {
        let l = (0..alg.dim).map(|i| alg.left(&alg.basis(i))).collect();
        let r = (0..alg.dim).map(|i| alg.right(&alg.basis(i))).collect();
        Bimodule { base: alg.clone(), mdim: alg.dim, l, r }
    }

    /// Zero actions on a space of dimension `mdim`.
    pub fn trivial(alg: &Algebra, mdim: usize) -> Bimodule {
        let z = Matrix::zeros(alg.field, mdim, mdim);
        Bimodule { base: alg.clone(), mdim, l: vec![z.clone(); alg.dim], r: vec![z; alg.dim] }
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field
    }

    pub fn mdim(&self) -> usize {
        self.mdim
    }

    pub fn l_basis(&self) -> &[Matrix] {
        &self.l
    }

    pub fn r_basis(&self) -> &[Matrix] {
        &self.r
    }

    fn extend(&self, ms: &[Matrix], a: &Vector) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.mdim, self.mdim);
        for (i, m) in ms.iter().enumerate() {
            if !a[i].is_zero() {
                out = out.add(&m.scale(&a[i]));
            }
        }
        out
    }

    /// `l(a)`, extended linearly from the basis.
    pub fn l(&self, a: &Vector) -> Matrix {
        self.extend(&self.l, a)
    }

    pub fn r(&self, a: &Vector) -> Matrix {
        self.extend(&self.r, a)
    }

    pub fn module_basis(&self, k: usize) -> Vector {
        Vector::basis(self.field(), self.mdim, k)
    }
}

/// A bimodule together with a product on the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodNov {
    bimodule: Bimodule,
    product: Algebra,
}

impl BimodNov {
    pub fn new(bimodule: Bimodule, product: Algebra) -> Result<BimodNov> {
        if product.dim != bimodule.mdim {
            return Err(Error::DimMismatch("module product must live on the module".into()));
        }
        if product.field != bimodule.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(BimodNov { bimodule, product })
    }

    /// The bimodule with the zero product on the module.
    pub fn with_trivial_product(bimodule: Bimodule) -> BimodNov {
        let product = Algebra::zero(bimodule.field(), bimodule.mdim);
        BimodNov { bimodule, product }
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn product(&self) -> &Algebra {
        &self.product
    }

    pub fn base(&self) -> &Algebra {
        &self.bimodule.base
    }

    pub fn field(&self) -> Field {
        self.bimodule.field()
    }

    pub fn mdim(&self) -> usize {
        self.bimodule.mdim
    }

    pub fn l(&self, a: &Vector) -> Matrix {
        self.bimodule.l(a)
    }

    pub fn r(&self, a: &Vector) -> Matrix {
        self.bimodule.r(a)
    }

    pub fn dot(&self, u: &Vector, v: &Vector) -> Vector {
        self.product.product(u, v)
    }

    pub fn module_basis(&self, k: usize) -> Vector {
        self.bimodule.module_basis(k)
    }
}

/// `(A, ∘, L, R)`.
pub fn regular(alg: &Algebra) -> Result<BimodNov> {
    if !alg.is_novikov() {
        return Err(Error::NotNovikov);
    }
    Ok(regular_unchecked(alg))
}

pub(crate) fn regular_unchecked(alg: &Algebra) -> BimodNov {
    BimodNov { bimodule: Bimodule::regular(alg), product: alg.clone() }
}

/// The four bimodule identities on basis pairs `(a, b)` and module basis `v`.
pub fn bimodule_residual(b: &Bimodule) -> Residual {
    let mut res = Residual::new();
    bimodule_into(b, &mut res);
    res
}

fn bimodule_into(bm: &Bimodule, res: &mut Residual) {
    let alg = &bm.base;
    let n = alg.dim;
    for a in 0..n {
        for b in 0..n {
            let ab = alg.basis_product(a, b);
            let ba = alg.basis_product(b, a);
            let (la, lb, ra, rb) = (&bm.l[a], &bm.l[b], &bm.r[a], &bm.r[b]);
            let l_comm = bm.l(&(ab - ba));
            let l_ab = bm.l(ab);
            let r_ab = bm.r(ab);
            for k in 0..bm.mdim {
                let v = bm.module_basis(k);
                let lhs = l_comm.apply(&v);
                let rhs = &la.apply(&lb.apply(&v)) - &lb.apply(&la.apply(&v));
                res.check("l-commutator", &[a, b, k], &lhs, &rhs);
                let lhs = &la.apply(&rb.apply(&v)) - &rb.apply(&la.apply(&v));
                let rhs = &r_ab.apply(&v) - &rb.apply(&ra.apply(&v));
                res.check("lr-mixed", &[a, b, k], &lhs, &rhs);
                res.check("l-product", &[a, b, k], &l_ab.apply(&v), &rb.apply(&la.apply(&v)));
                res.check("r-commute", &[a, b, k], &ra.apply(&rb.apply(&v)), &rb.apply(&ra.apply(&v)));
                if res.done() {
                    return;
                }
            }
        }
    }
}

/// The four compatibility identities between the actions and the module
/// product, after checking that the actions form a bimodule and that the
/// module product is Novikov.
pub fn abnova_residual(b: &BimodNov) -> Result<Residual> {
    if !bimodule_residual(&b.bimodule).is_zero() {
        return Err(Error::NotABimodule);
    }
    if !b.product.is_novikov() {
        return Err(Error::ModuleNotNovikov);
    }
    let mut res = Residual::new();
    compat_into(b, &mut res);
    Ok(res)
}

/// Everything a bimodule Novikov algebra must satisfy, with no preconditions:
/// bimodule identities, Novikov identities of the module product, and the four
/// compatibility identities.
pub fn bimodnov_full_residual(b: &BimodNov) -> Residual {
    let mut res = Residual::new();
    bimodule_into(&b.bimodule, &mut res);
    let mut m = Residual::new();
    novikov_into(&b.product, &mut m);
    res.merge(m.prefixed("module"));
    compat_into(b, &mut res);
    res
}

/// Fail-fast form of [`bimodnov_full_residual`].
pub fn bimodnov_holds(b: &BimodNov) -> bool {
    let mut res = Residual::fail_fast();
    bimodule_into(&b.bimodule, &mut res);
    novikov_into(&b.product, &mut res);
    compat_into(b, &mut res);
    res.is_zero()
}

fn compat_into(bm: &BimodNov, res: &mut Residual) {
    let n = bm.base().dim;
    let m = bm.mdim();
    for a in 0..n {
        let (la, ra) = (&bm.bimodule.l[a], &bm.bimodule.r[a]);
        for p in 0..m {
            let v = bm.module_basis(p);
            for q in 0..m {
                let w = bm.module_basis(q);
                let vw = bm.dot(&v, &w);
                let wv = bm.dot(&w, &v);
                let lhs = &bm.dot(&la.apply(&v), &w) - &la.apply(&vw);
                let rhs = &bm.dot(&ra.apply(&v), &w) - &bm.dot(&v, &la.apply(&w));
                res.check("left-compat", &[a, p, q], &lhs, &rhs);
                let lhs = &ra.apply(&vw) - &bm.dot(&v, &ra.apply(&w));
                let rhs = &ra.apply(&wv) - &bm.dot(&w, &ra.apply(&v));
                res.check("right-compat", &[a, p, q], &lhs, &rhs);
                res.check("l-symmetric", &[a, p, q], &bm.dot(&la.apply(&v), &w), &bm.dot(&la.apply(&w), &v));
                res.check("r-product", &[a, p, q], &ra.apply(&vw), &bm.dot(&ra.apply(&v), &w));
                if res.done() {
                    return;
                }
            }
        }
    }
}

/// `(V*, l* + r*, -r*)`: `l'(a) = -l(a)ᵀ - r(a)ᵀ`, `r'(a) = r(a)ᵀ`.
pub fn dual_bimodule(b: &Bimodule) -> Result<Bimodule> {
    if !bimodule_residual(b).is_zero() {
        return Err(Error::NotABimodule);
    }
    Ok(dual_bimodule_unchecked(b))
}

pub(crate) fn dual_bimodule_unchecked(b: &Bimodule) -> Bimodule {
    let l = b.l.iter().zip(&b.r).map(|(l, r)| l.add(r).transpose().neg()).collect();
    let r = b.r.iter().map(Matrix::transpose).collect();
    Bimodule { base: b.base.clone(), mdim: b.mdim, l, r }
}

/// `(A*, L⋆*, -R*)` with the trivial product.
pub fn coregular(alg: &Algebra) -> BimodNov {
    BimodNov::with_trivial_product(dual_bimodule_unchecked(&Bimodule::regular(alg)))
}

/// Product `(a+u)•(b+v) = a∘b + l(a)v + r(b)u + u·v` on `A ⊕ M`, basis of `A` first.
pub fn semidirect(b: &BimodNov) -> Algebra {
    let alg = b.base();
    let (n, m) = (alg.dim, b.mdim());
    let f = alg.field;
    let z_a = Vector::zeros(f, n);
    let z_m = Vector::zeros(f, m);
    Algebra::from_fn(f, n + m, |i, j| match (i < n, j < n) {
        (true, true) => alg.basis_product(i, j).concat(&z_m),
        (true, false) => z_a.concat(&b.bimodule.l[i].column(j - n)),
        (false, true) => z_a.concat(&b.bimodule.r[j].column(i - n)),
        (false, false) => z_a.concat(b.product.basis_product(i - n, j - n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    const Q: Field = Field::Rational;

    #[test]
    fn a2_is_novikov_and_regular_is_valid() {
        let a2 = sample::a2(Q);
        assert!(novikov_residual(&a2).is_zero());
        let reg = regular(&a2).unwrap();
        assert!(bimodule_residual(reg.bimodule()).is_zero());
        assert!(abnova_residual(&reg).unwrap().is_zero());
    }

    #[test]
    fn non_novikov_table_has_residual() {
        let alg = Algebra::from_ints(Q, &[&[&[0, 1], &[1, 0]], &[&[0, 0], &[0, 0]]]);
        let direct = {
            // oracle: evaluate right-commutativity on (e1, e1, e2) by hand:
            // (e1∘e1)∘e2 = e2∘e2 = 0, (e1∘e2)∘e1 = e1∘e1 = e2
            let e1 = alg.basis(0);
            let e2 = alg.basis(1);
            &alg.product(&alg.product(&e1, &e1), &e2) - &alg.product(&alg.product(&e1, &e2), &e1)
        };
        assert!(!direct.is_zero());
        assert!(!novikov_residual(&alg).is_zero());
    }

    #[test]
    fn star_and_lr_on_a2() {
        let a2 = sample::a2(Q);
        let s = star(&a2);
        assert_eq!(s.basis_product(0, 0), &Vector::from_ints(Q, &[2, 0]));
        assert_eq!(s.basis_product(0, 1), &Vector::from_ints(Q, &[0, 2]));
        let lr = lr_matrices(&a2, &a2.basis(1));
        assert_eq!(lr.left, Matrix::from_ints(Q, &[&[0, 0], &[1, 0]]));
        assert_eq!(lr_matrices(&a2, &a2.basis(0)).left, Matrix::identity(Q, 2));
    }

    #[test]
    fn regular_l_with_zero_r_is_not_a_bimodule() {
        let a2 = sample::a2(Q);
        let reg = Bimodule::regular(&a2);
        let b = Bimodule::new(a2.clone(), 2, reg.l_basis().to_vec(), vec![Matrix::zeros(Q, 2, 2); 2]).unwrap();
        let res = bimodule_residual(&b);
        assert!(res.failures.iter().any(|f| f.identity == "l-product"));
    }

    #[test]
    fn opposite_module_product() {
        // A₂ is commutative, so its opposite product changes nothing.
        let a2 = sample::a2(Q);
        let opp = Algebra::from_fn(Q, 2, |i, j| a2.basis_product(j, i).clone());
        assert_eq!(opp, a2);
        // x^i∘x^j = j x^(i+j) on k[x]/(x^3) is not commutative; its opposite
        // product fails the compatibility identities.
        let euler = Algebra::from_fn(Q, 3, |i, j| {
            let mut v = Vector::zeros(Q, 3);
            if i + j < 3 {
                v.set(i + j, Q.int(j as i64));
            }
            v
        });
        assert!(euler.is_novikov());
        let opp = Algebra::from_fn(Q, 3, |i, j| euler.basis_product(j, i).clone());
        let b = BimodNov::new(Bimodule::regular(&euler), opp).unwrap();
        assert!(!bimodnov_full_residual(&b).is_zero());
    }

    #[test]
    fn dual_of_regular_a2() {
        let a2 = sample::a2(Q);
        let d = dual_bimodule(&Bimodule::regular(&a2)).unwrap();
        assert_eq!(d.l_basis()[0], Matrix::identity(Q, 2).scale(&Q.int(-2)));
        assert!(bimodule_residual(&d).is_zero());
    }

    #[test]
    fn semidirect_of_regular_is_novikov() {
        let a2 = sample::a2(Q);
        let s = semidirect(&regular(&a2).unwrap());
        assert_eq!(s.dim(), 4);
        assert_eq!(s.basis_product(0, 0), &Vector::from_ints(Q, &[1, 0, 0, 0]));
        assert!(novikov_residual(&s).is_zero());
        let t = semidirect(&BimodNov::with_trivial_product(Bimodule::trivial(&a2, 1)));
        assert_eq!(t.basis_product(0, 1), &Vector::from_ints(Q, &[0, 1, 0]));
        assert!(t.basis_product(2, 2).is_zero());
    }
}
