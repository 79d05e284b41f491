//! Exact structure-constant computations for BiHom-algebras and their bimodules.

pub mod algebra;
pub mod bimodule;
pub mod bimodule_constructions;
pub mod catalog;
pub mod checks;
pub mod constructions;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod parallel;
pub mod report;
pub mod scalar;

pub mod dsl;

pub use algebra::{AlgebraMorphism, BiHomAlgebra, Element};
pub use bimodule::{BiHomBimodule, BimoduleMorphism};
pub use error::{Error, Result};
pub use linalg::{LinearMap, Subspace};
pub use report::{CheckMode, CheckReport, Verdict, Witness};
pub use scalar::{ParameterContext, Polynomial, Scalar, ScalarError};
