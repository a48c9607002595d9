//! Finite matrix models of reduced groupoid C*-algebras.
//!
//! A finite groupoid `G` acts on `ℓ²(G) = ⊕ₓ ℓ²(Gₓ)`, and a function `f` on
//! `G` becomes the matrix with entry `(αγ, γ) = f(α)` whenever `d(α) = r(γ)`.
//! Indicator functions of bisections give 0/1 matrices, so relations among
//! them are checked in integer arithmetic. Subalgebras and their ideals are
//! computed in floating point.

use thiserror::Error;

use crate::groupoid::GroupoidError;

pub mod algebra;
pub mod exact;
pub mod relations;
pub mod rep;

pub use algebra::{detects_ideals, minimal_ideal_blocks, star_closure, AlgebraOptions, Block, Detection, SubalgebraBasis};
pub use exact::{vee_join, ExactMatrix};
pub use relations::{verify_relations, RelationCheck, RelationReport};
pub use rep::{conditional_expectation, j_map, rep_function, rep_indicator, t_op, OperatorMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CstarError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("join precondition fails: {0}")]
    JoinPrecondition(String),
    #[error("subalgebra dimension exceeds the cap of {0}")]
    DimensionCap(usize),
    #[error("center computation is degenerate at tolerance {0:e}; try another tolerance")]
    Degenerate(f64),
    #[error("B is not contained in A (residual {0:e})")]
    NotContained(f64),
    #[error("matrix is not in the image of the regular representation (residual {0:e})")]
    NotInModel(f64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}
