//! Exact-arithmetic workbench for Leibniz and Lie algebra cohomology.
//!
//! The crate builds finite-dimensional algebras from structure constants over
//! the rationals, constructs the Loday, Chevalley-Eilenberg and several
//! relative cochain complexes as sparse matrices, and computes cohomology
//! dimensions by exact (or optionally modular) rank computations. On top of
//! that sit the deformation-theoretic reports: Massey squares, one-parameter
//! contractions, subalgebra stability evidence and the rigidity report for the
//! hemisemidirect-product family built from `sl2` and its irreducibles.

pub mod algebra;
pub mod bimodule;
pub mod cohomology;
pub mod complexes;
pub mod constructors;
pub mod deformation;
pub mod error;
pub mod io;
pub mod rat;
pub mod sparse;
pub mod subspace;

pub use algebra::AlgebraLaw;
pub use bimodule::Bimodule;
pub use error::{Error, Result};
pub use rat::Rat;
pub use sparse::{RankMethod, RankResult, RankStrategy, SparseMat};
pub use subspace::Subspace;
