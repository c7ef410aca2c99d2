//! Dense elements of `A⊗A` and `A⊗A⊗A` and the contractions between them.

use std::fmt;
use std::str::FromStr;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// `Σ a_ij e_i⊗e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor2 {
    field: Field,
    dim: usize,
    data: Vec<Scalar>,
}

impl Tensor2 {
    pub fn zeros(field: Field, dim: usize) -> Tensor2 {
        Tensor2 { field, dim, data: vec![field.zero(); dim * dim] }
    }

    pub fn from_grid(field: Field, grid: Vec<Vec<Scalar>>) -> Result<Tensor2> {
        let m = Matrix::from_rows_sized(field, grid.len(), grid.len(), grid)?;
        Ok(Tensor2::from_matrix(&m))
    }

    pub fn from_ints(field: Field, grid: &[&[i64]]) -> Tensor2 {
        Tensor2::from_matrix(&Matrix::from_ints(field, grid))
    }

    /// The coefficient grid read as a square matrix.
    pub fn from_matrix(m: &Matrix) -> Tensor2 {
        assert!(m.is_square(), "tensor grid must be square");
        Tensor2 { field: m.field(), dim: m.rows(), data: m.entries().to_vec() }
    }

    /// `e_i⊗e_j`.
    pub fn simple(field: Field, dim: usize, i: usize, j: usize) -> Tensor2 {
        let mut t = Tensor2::zeros(field, dim);
        t.data[i * dim + j] = field.one();
        t
    }

    /// `x⊗y` for vectors.
    pub fn outer(x: &Vector, y: &Vector) -> Tensor2 {
        let dim = x.len();
        let mut t = Tensor2::zeros(x.field(), dim);
        for i in 0..dim {
            for j in 0..dim {
                t.data[i * dim + j] = &x[i] * &y[j];
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.dim + j] = s;
    }

    pub fn as_matrix(&self) -> Matrix {
        let rows = (0..self.dim).map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec()).collect();
        Matrix::from_rows_sized(self.field, self.dim, self.dim, rows).expect("square grid")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.flip()
    }

    pub fn is_skew(&self) -> bool {
        (self + &self.flip()).is_zero()
    }

    /// `τ(r)`.
    pub fn flip(&self) -> Tensor2 {
        flip(self)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor2 {
        Tensor2 { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    /// `(M⊗id)r`.
    pub fn apply_first(&self, m: &Matrix) -> Tensor2 {
        Tensor2::from_matrix(&m.mul(&self.as_matrix()))
    }

    /// `(id⊗M)r`.
    pub fn apply_second(&self, m: &Matrix) -> Tensor2 {
        Tensor2::from_matrix(&self.as_matrix().mul(&m.transpose()))
    }

    /// Flattened coefficients, row-major.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.data
    }

    pub fn as_vector(&self) -> Vector {
        Vector::new(self.field, self.data.clone()).expect("uniform field")
    }
}

impl std::ops::Add for &Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.dim, rhs.dim);
        Tensor2 { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl std::ops::Sub for &Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.dim, rhs.dim);
        Tensor2 { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

/// `(flip r)_ij = r_ji`.
pub fn flip(r: &Tensor2) -> Tensor2 {
    let n = r.dim;
    let mut out = Tensor2::zeros(r.field, n);
    for i in 0..n {
        for j in 0..n {
            out.data[i * n + j] = r.get(j, i).clone();
        }
    }
    out
}

/// `Σ a_ijk e_i⊗e_j⊗e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    field: Field,
    dim: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: Field, dim: usize) -> Tensor3 {
        Tensor3 { field, dim, data: vec![field.zero(); dim * dim * dim] }
    }

    /// `e_i⊗e_j⊗e_k`.
    pub fn simple(field: Field, dim: usize, i: usize, j: usize, k: usize) -> Tensor3 {
        let mut t = Tensor3::zeros(field, dim);
        t.data[(i * dim + j) * dim + k] = field.one();
        t
    }

    /// `x⊗y⊗z` for vectors.
    pub fn outer(x: &Vector, y: &Vector, z: &Vector) -> Tensor3 {
        let dim = x.len();
        let mut t = Tensor3::zeros(x.field(), dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.data[(i * dim + j) * dim + k] = &(&x[i] * &y[j]) * &z[k];
                }
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    fn add_at(&mut self, i: usize, j: usize, k: usize, s: &Scalar) {
        let idx = (i * self.dim + j) * self.dim + k;
        self.data[idx] = &self.data[idx] + s;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor3 {
        Tensor3 { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.data
    }

    pub fn as_vector(&self) -> Vector {
        Vector::new(self.field, self.data.clone()).expect("uniform field")
    }

    /// Nonzero coefficients with their index triples.
    pub fn nonzero_entries(&self) -> Vec<([usize; 3], Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.push(([i, j, k], c.clone()));
                    }
                }
            }
        }
        out
    }

    /// Applies `m` to one tensor slot (0, 1 or 2).
    pub fn apply_slot(&self, slot: usize, m: &Matrix) -> Tensor3 {
        let n = self.dim;
        let mut out = Tensor3::zeros(self.field, n);
        for (idx, c) in self.nonzero_entries() {
            for t in 0..n {
                let mt = m.get(t, idx[slot]);
                if mt.is_zero() {
                    continue;
                }
                let mut target = idx;
                target[slot] = t;
                out.add_at(target[0], target[1], target[2], &(mt * &c));
            }
        }
        out
    }

    /// `τ⊗id`.
    pub fn swap12(&self) -> Tensor3 {
        self.permute(|[i, j, k]| [j, i, k])
    }

    /// `id⊗τ`.
    pub fn swap23(&self) -> Tensor3 {
        self.permute(|[i, j, k]| [i, k, j])
    }

    fn permute(&self, f: impl Fn([usize; 3]) -> [usize; 3]) -> Tensor3 {
        let mut out = Tensor3::zeros(self.field, self.dim);
        for (idx, c) in self.nonzero_entries() {
            let [a, b, d] = f(idx);
            out.add_at(a, b, d, &c);
        }
        out
    }
}

impl std::ops::Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, rhs.dim);
        Tensor3 { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl std::ops::Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, rhs.dim);
        Tensor3 { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

/// The seven contractions of two tensors `r = Σ xᵢ⊗yᵢ`, `r' = Σ x'ⱼ⊗y'ⱼ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contraction {
    /// `Σ xᵢ∘x'ⱼ ⊗ yᵢ ⊗ y'ⱼ`
    R12R13,
    /// `Σ xᵢ ⊗ yᵢ∘x'ⱼ ⊗ y'ⱼ`
    R12R23,
    /// `Σ xᵢ ⊗ x'ⱼ ⊗ yᵢ∘y'ⱼ`
    R13R23,
    /// `Σ xᵢ∘x'ⱼ ⊗ y'ⱼ ⊗ yᵢ`
    R13R12,
    /// `Σ x'ⱼ ⊗ xᵢ ⊗ yᵢ∘y'ⱼ`
    R23R13,
    /// `Σ xᵢ ⊗ yᵢ⋆x'ⱼ ⊗ y'ⱼ`
    R12StarR23,
    /// `Σ xᵢ ⊗ x'ⱼ ⊗ yᵢ⋆y'ⱼ`
    R13StarR23,
}

impl Contraction {
    pub const ALL: [Contraction; 7] = [
        Contraction::R12R13,
        Contraction::R12R23,
        Contraction::R13R23,
        Contraction::R13R12,
        Contraction::R23R13,
        Contraction::R12StarR23,
        Contraction::R13StarR23,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Contraction::R12R13 => "r12∘r13",
            Contraction::R12R23 => "r12∘r23",
            Contraction::R13R23 => "r13∘r23",
            Contraction::R13R12 => "r13∘r12",
            Contraction::R23R13 => "r23∘r13",
            Contraction::R12StarR23 => "r12⋆r23",
            Contraction::R13StarR23 => "r13⋆r23",
        }
    }
}

impl fmt::Display for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Contraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Contraction> {
        let norm: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let norm = norm.replace("star", "⋆").replace('*', "⋆").replace("circ", "∘").replace('o', "∘");
        Contraction::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::BadContraction(s.to_string()))
    }
}

/// The requested contraction of `r` and `s` through the product of `alg`.
pub fn tensor3_combine(alg: &Algebra, r: &Tensor2, s: &Tensor2, kind: Contraction) -> Result<Tensor3> {
    let n = alg.dim();
    if r.dim != n || s.dim != n {
        return Err(Error::DimMismatch("tensors and algebra must share a dimension".into()));
    }
    if r.field != alg.field() || s.field != alg.field() {
        return Err(Error::FieldMismatch);
    }
    let mut out = Tensor3::zeros(alg.field(), n);
    let star = |a: usize, b: usize| alg.basis_product(a, b) + alg.basis_product(b, a);
    for i in 0..n {
        for j in 0..n {
            let a = r.get(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let b = s.get(k, l);
                    if b.is_zero() {
                        continue;
                    }
                    let c = a * b;
                    let (prod, place): (Vector, &dyn Fn(usize) -> [usize; 3]) = match kind {
                        Contraction::R12R13 => (alg.basis_product(i, k).clone(), &|t| [t, j, l]),
                        Contraction::R12R23 => (alg.basis_product(j, k).clone(), &|t| [i, t, l]),
                        Contraction::R13R23 => (alg.basis_product(j, l).clone(), &|t| [i, k, t]),
                        Contraction::R13R12 => (alg.basis_product(i, k).clone(), &|t| [t, l, j]),
                        Contraction::R23R13 => (alg.basis_product(j, l).clone(), &|t| [k, i, t]),
                        Contraction::R12StarR23 => (star(j, k), &|t| [i, t, l]),
                        Contraction::R13StarR23 => (star(j, l), &|t| [i, k, t]),
                    };
                    for t in 0..n {
                        if !prod[t].is_zero() {
                            let [x, y, z] = place(t);
                            out.add_at(x, y, z, &(&c * &prod[t]));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    const Q: Field = Field::Rational;

    #[test]
    fn flip_simple_and_symmetric() {
        let t = Tensor2::simple(Q, 2, 0, 1);
        assert_eq!(flip(&t), Tensor2::simple(Q, 2, 1, 0));
        let s = Tensor2::from_ints(Q, &[&[1, 2], &[2, 5]]);
        assert_eq!(flip(&s), s);
    }

    #[test]
    fn combine_on_a2_examples() {
        let a2 = sample::a2(Q);
        let e22 = Tensor2::simple(Q, 2, 1, 1);
        assert!(tensor3_combine(&a2, &e22, &e22, Contraction::R13R23).unwrap().is_zero());
        let e11 = Tensor2::simple(Q, 2, 0, 0);
        assert_eq!(
            tensor3_combine(&a2, &e11, &e11, Contraction::R13R23).unwrap(),
            Tensor3::simple(Q, 2, 0, 0, 0)
        );
        assert_eq!(
            tensor3_combine(&a2, &e11, &e11, Contraction::R12StarR23).unwrap(),
            Tensor3::simple(Q, 2, 0, 0, 0).scale(&Q.int(2))
        );
    }

    #[test]
    fn slot_maps_and_swaps() {
        let t = Tensor3::simple(Q, 2, 0, 1, 1);
        assert_eq!(t.swap12(), Tensor3::simple(Q, 2, 1, 0, 1));
        assert_eq!(t.swap23(), t);
        let m = Matrix::from_ints(Q, &[&[0, 0], &[1, 0]]);
        assert_eq!(t.apply_slot(0, &m), Tensor3::simple(Q, 2, 1, 1, 1));
        let r = Tensor2::simple(Q, 2, 0, 0);
        assert_eq!(r.apply_second(&m), Tensor2::simple(Q, 2, 0, 1));
        assert_eq!(r.apply_first(&m), Tensor2::simple(Q, 2, 1, 0));
    }

    #[test]
    fn contraction_names_parse() {
        for k in Contraction::ALL {
            assert_eq!(k.name().parse::<Contraction>().unwrap(), k);
        }
        assert_eq!("r12*r23".parse::<Contraction>().unwrap(), Contraction::R12StarR23);
        assert!("r11∘r22".parse::<Contraction>().is_err());
    }
}
