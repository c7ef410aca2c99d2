use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the field has characteristic 2, so 1/2 does not exist")]
    NoHalf,
    #[error("unknown contraction `{0}`")]
    BadContraction(String),
    #[error("the algebra is not Novikov")]
    NotNovikov,
    #[error("the actions do not form a bimodule")]
    NotABimodule,
    #[error("the module product is not Novikov")]
    ModuleNotNovikov,
    #[error("the structure is not a post-Novikov algebra")]
    NotPostNovikov,
    #[error("the structure is not a commutative dendriform trialgebra")]
    NotTrialgebra,
    #[error("the map is not a derivation of both products")]
    NotDerivation,
    #[error("the map is not an O-operator of the given weight")]
    NotOOperator,
    #[error("the map is not a Rota-Baxter operator of the given weight")]
    NotRotaBaxter,
    #[error("the map is singular")]
    Singular,
    #[error("the kernel is not an ideal of the module product")]
    KernelNotIdeal,
    #[error("the tensor does not solve the NYBE")]
    NotNYBESolution,
    #[error("the symmetric part is not invariant")]
    SymPartNotInvariant,
    #[error("the bilinear form is degenerate")]
    DegenerateForm,
    #[error("the bilinear form is not symmetric")]
    AsymmetricForm,
    #[error("beta is not self-adjoint with respect to the form")]
    BetaNotSelfAdjoint,
    #[error("search space of {0} candidates exceeds 2^32")]
    SpaceTooLarge(u128),
    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}
