//! The two-dimensional worked instance: `A₂` with the operators `T₂` and `β₂`.

use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::scalar::Field;

/// `e1∘e1 = e1`, `e1∘e2 = e2∘e1 = e2`, `e2∘e2 = 0`.
pub fn a2(field: Field) -> Algebra {
    Algebra::from_ints(field, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]])
}

/// `T₂(e1) = -2e1 + 4e2`, `T₂(e2) = e2`.
pub fn t2(field: Field) -> Matrix {
    Matrix::from_ints(field, &[&[-2, 0], &[4, 1]])
}

/// `β₂(e1) = e1 + 3e2`, `β₂(e2) = e2`.
pub fn beta2(field: Field) -> Matrix {
    Matrix::from_ints(field, &[&[1, 0], &[3, 1]])
}
