//! Dense vectors and matrices with exact Gaussian elimination.

use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Coordinates of a vector in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Vector> {
        if coords.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Vector { field, coords })
    }

    pub fn from_ints(field: Field, xs: &[i64]) -> Vector {
        Vector { field, coords: xs.iter().map(|&x| field.int(x)).collect() }
    }

    pub fn zeros(field: Field, n: usize) -> Vector {
        Vector { field, coords: vec![field.zero(); n] }
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn basis(field: Field, n: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(field, n);
        v.coords[i] = field.one();
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        assert_eq!(s.field(), self.field);
        self.coords[i] = s;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector { field: self.field, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    /// Concatenation, used for direct sums.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Vector { field: self.field, coords }
    }

    pub fn slice(&self, start: usize, end: usize) -> Vector {
        Vector { field: self.field, coords: self.coords[start..end].to_vec() }
    }

    /// Sum of `c_i * vs[i]`.
    pub fn combination(field: Field, n: usize, coeffs: &[Scalar], vs: &[Vector]) -> Vector {
        let mut out = Vector::zeros(field, n);
        for (c, v) in coeffs.iter().zip(vs) {
            out.axpy(c, v);
        }
        out
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        Vector { field: self.field, coords }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        Vector { field: self.field, coords }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { field: self.field, coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

/// Row-major matrix; column `j` is the image of the `j`-th domain basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_sized(field, r, c, rows)
    }

    /// Like `from_rows` but with explicit shape, so empty shapes are representable.
    pub fn from_rows_sized(field: Field, r: usize, c: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch(format!("expected a {r}x{c} matrix")));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix literal");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = field.int(x);
            }
        }
        m
    }

    /// Matrix whose columns are the given images.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            if v.len() != rows {
                return Err(Error::DimMismatch(format!("column {j} has length {}", v.len())));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            for i in 0..rows {
                m.data[i * cols.len() + j] = v[i].clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert_eq!(s.field(), self.field);
        self.data[i * self.cols + j] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector { field: self.field, coords: self.data[i * self.cols..(i + 1) * self.cols].to_vec() }
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector { field: self.field, coords: (0..self.rows).map(|i| self.get(i, j).clone()).collect() }
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).into_coords()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = Vector::zeros(self.field, self.rows);
        for j in 0..self.cols {
            if v[j].is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let m = self.get(i, j);
                if !m.is_zero() {
                    out.coords[i] = &out.coords[i] + &(m * &v[j]);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.field.one())
    }

    /// Reduced row echelon form with leftmost pivots normalized to 1.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.field, self.cols);
                v.coords[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v.coords[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// The pivot columns of `self`, a basis of the column space.
    pub fn column_space_basis(&self) -> (Vec<usize>, Vec<Vector>) {
        let pivots = self.rref().1;
        let cols = pivots.iter().map(|&j| self.column(j)).collect();
        (pivots, cols)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = Vector::zeros(self.field, self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x.coords[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }
}

/// Basis of the solution space of a homogeneous linear condition on `dim`
/// unknowns. `f` must be linear; it is sampled on the standard basis.
pub fn linear_solution_space(field: Field, dim: usize, f: impl Fn(&Vector) -> Vector) -> Vec<Vector> {
    let cols: Vec<Vector> = (0..dim).map(|i| f(&Vector::basis(field, dim, i))).collect();
    let rows = cols.first().map_or(0, Vector::len);
    if rows == 0 {
        return (0..dim).map(|i| Vector::basis(field, dim, i)).collect();
    }
    Matrix::from_columns(field, rows, &cols).expect("uniform columns").kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::identity(Field::Rational, 2).kernel_basis().is_empty());
    }

    #[test]
    fn rank_one_over_f2() {
        let f = Field::Prime(2);
        let m = Matrix::from_ints(f, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![Vector::from_ints(f, &[1, 1])]);
    }

    #[test]
    fn inverse_round_trip() {
        let q = Field::Rational;
        let m = Matrix::from_ints(q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
        assert!(Matrix::from_ints(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let q = Field::Rational;
        let m = Matrix::from_ints(q, &[&[1, 2], &[2, 4]]);
        let x = m.solve(&Vector::from_ints(q, &[3, 6])).unwrap();
        assert_eq!(m.apply(&x), Vector::from_ints(q, &[3, 6]));
        assert!(m.solve(&Vector::from_ints(q, &[3, 7])).is_none());
    }

    #[test]
    fn column_space_uses_leftmost_pivots() {
        let q = Field::Rational;
        let m = Matrix::from_ints(q, &[&[0, 1, 2], &[0, 2, 4]]);
        let (pivots, cols) = m.column_space_basis();
        assert_eq!(pivots, vec![1]);
        assert_eq!(cols, vec![Vector::from_ints(q, &[1, 2])]);
    }
}
