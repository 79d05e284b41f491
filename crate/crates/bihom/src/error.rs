use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is singular")]
    Singular,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("twist maps do not commute: {0}")]
    NonCommutingMaps(String),
    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("map is not an algebra morphism: {0}")]
    NotAMorphism(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("operator is not a weight-zero Rota-Baxter operator: {0}")]
    NotRotaBaxter(String),
    #[error("algebra is not regular: {0}")]
    NotRegular(String),
    #[error("precondition failed: {0}")]
    PrereqFailed(String),
    #[error("argument kinds do not match the associator pattern")]
    PatternMismatch,
    #[error("psi is not invertible")]
    PsiNotInvertible,
    #[error("phi and psi must both be invertible")]
    PhiPsiNotInvertible,
    #[error("intertwining condition failed: {0}")]
    IntertwiningFailed(String),
    #[error("structure maps are not module morphisms: {0}")]
    InvalidBimodule(String),
    #[error("parameter value excluded: {0}")]
    ParameterExcluded(String),
    #[error("unknown automorphism tag `{0}`")]
    UnknownTag(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("{0}")]
    Dsl(#[from] crate::dsl::DslError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
