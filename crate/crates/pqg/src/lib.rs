//! Exact computer algebra for partial compact quantum groups.
//!
//! The crate constructs partial compact quantum groups from concrete data —
//! finite fiber/fusion data, finite groupoids, reciprocal random walks — and
//! mechanically verifies the defining axioms, orthogonality relations and
//! presentation identities in exact arithmetic. There is no floating-point
//! mode; coefficients live in a computable *-field of rationals, formal
//! square roots and shift-function symbols.
//!
//! Module map:
//! * [`scalar`] — the exact coefficient field;
//! * [`linalg`] — dense exact linear algebra (rank, solve, LDLᵀ positivity);
//! * [`grading`] — object sets, squares, bigraded spaces, block maps;
//! * [`partial_hopf`] — partial (Hopf) *-algebra data and the axiom verifiers;
//! * [`corep`] — corepresentations: tensor, duals, averaging, decomposition,
//!   Schur orthogonality, Woronowicz characters;
//! * [`tannaka`] — fiber data and reconstruction, with built-in generators;
//! * [`walks`] — reciprocal random walks and the conjugate-equation solution;
//! * [`presentations`] — generator/relation presentations with degree-bounded
//!   ideal membership and the dynamical SU(2) derivation;
//! * [`cli`] — the batch front end behind the `pqg` binary.

pub mod cli;
pub mod corep;
pub mod error;
pub mod grading;
pub mod linalg;
pub mod partial_hopf;
pub mod presentations;
pub mod report;
pub mod scalar;
pub mod tannaka;
pub mod walks;

pub use error::{Error, Result};
