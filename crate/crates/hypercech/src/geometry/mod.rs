//! Integration of Lie algebra 2-cocycles to differentiable hypercocycles on the nerve of a
//! Lie group.
//!
//! Chains are built once, generically over a [`construct::ChainAlgebra`]: the geometric
//! regime evaluates smooth simplices in a chart and compares π₂-valued quantities only
//! through `∫·ω^l`; the synthetic regime over a finite group carries exact classes in `ℤᵏ`.

pub mod chain;
pub mod choice;
pub mod construct;
pub mod geometric;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod synthetic;

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("unknown model {0}")]
    UnknownModel(String),
    #[error("outside the chart domain: {0}")]
    Domain(String),
    #[error("invalid Lie algebra cocycle: {0}")]
    Cocycle(String),
    #[error("sample outside the cover: {0}")]
    Membership(String),
    #[error("could not draw enough admissible samples: {0}")]
    Sampling(String),
    #[error("invalid synthetic data: {0}")]
    Synthetic(String),
}

pub use construct::ChainAlgebra;
pub use geometric::GeoAlgebra;
pub use model::{LieAlgebraCocycle, LieModel};
pub use quadrature::QuadratureScheme;
