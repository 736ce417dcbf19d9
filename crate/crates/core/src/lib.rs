//! Exact classification of sections of Weyl groups into torus normalizers.
//!
//! For an almost-simple root datum the library builds the braid constraints
//! on a section `s_i ↦ t_i σ_i`, solves them over the exponent lattice, and
//! analyses the resulting family: order profiles, torus-conjugacy invariants
//! and lifts of distinguished subgroups of `W`.

pub mod analysis;
pub mod extweyl;
pub mod kottwitz;
pub mod lattice;
pub mod linalg;
pub mod rootsys;
pub mod solver;
pub mod torus;

pub use analysis::AnalysisError;
pub use extweyl::{ExtWeylError, ExtendedElement, Normalizer, Section};
pub use kottwitz::{KottwitzError, LiftCheckReport};
pub use lattice::{Isogeny, IsogenyLattice, LatticeError};
pub use linalg::{IntMatrix, LinalgError};
pub use rootsys::{RootSystem, RootSystemError, TypeTag, WeylElement, WeylWord};
pub use solver::{SectionFamily, SolverError};
pub use torus::{Monomial, MonomialGroup, TorusElement, TorusError};

use thiserror::Error;

/// Crate-level error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    ExtWeyl(#[from] ExtWeylError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Kottwitz(#[from] KottwitzError),
}
