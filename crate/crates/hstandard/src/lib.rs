//! Exact computational homological algebra for Leibniz and Courant-Dorfman
//! algebras given by structure constants.
//!
//! The crate builds the H-standard cochain complex of a finite-dimensional
//! Leibniz algebra (relative to an isotropic ideal `H` and an `H`-trivial
//! representation) or of a finite-dimensional Courant-Dorfman algebra, and
//! computes its cohomology with exact rational arithmetic. On top of the
//! complex it provides a cocycle decomposition `ω = η + dλ` into the naive
//! subcomplex, central extensions from 2-cocycles, degree-truncated crossed
//! products `S(Z) ⊗ L` with the induced ideal and representation, and an
//! independent Chevalley-Eilenberg oracle for the quotient used to
//! cross-check the isomorphism theorems.
//!
//! All linear algebra is dense and exact; every basis and report is
//! deterministic bit-for-bit.

pub mod cdalgebra;
pub mod ce;
pub mod cochain;
pub mod context;
pub mod decompose;
pub mod fixtures;
pub mod hcomplex;
pub mod leibniz;
pub mod matrix;
pub mod report;
pub mod scalar;

pub use cdalgebra::{CdHData, CommutativeAlgebra, CourantDorfmanAlgebra};
pub use cochain::{Cochain, ComplexBasis, Layout};
pub use context::HContext;
pub use leibniz::{LeftRepresentation, LeibnizAlgebra, LieAlgebra};
pub use matrix::{Matrix, Subspace};
pub use report::{ValidationReport, Violation};
pub use scalar::Scalar;
