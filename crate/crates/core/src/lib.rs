//! Exact finite-dimensional Novikov algebras, their bimodules, extended
//! O-operators, Yang-Baxter type residuals and the constructions relating them.
//!
//! Every identity is evaluated exactly on basis tuples over Q or F_p and
//! reported as a [`Residual`]: the list of nonzero "left minus right" values.

pub mod algebra;
pub mod error;
pub mod lift;
pub mod linalg;
pub mod operators;
pub mod postnov;
pub mod residual;
pub mod sample;
pub mod scalar;
pub mod solver;
pub mod tensor;
pub mod ybe;

pub use algebra::{Algebra, BimodNov, Bimodule};
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use residual::{Failure, Residual};
pub use scalar::{Field, Scalar};
pub use tensor::{Contraction, Tensor2, Tensor3};
