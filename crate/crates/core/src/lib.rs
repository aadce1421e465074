//! Exact operator representations of Lie algebras, Lie superalgebras and
//! quantum algebras on Fock spaces, with machine verification of their
//! commutation tables, Casimir values and invariant subspaces.

pub mod catalogue;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod qheis;
pub mod realize;
pub mod scalar;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use fock::{FockKey, FockVector, MatrixRep, OperatorExpr};
pub use scalar::{Rational, Scalar};
pub use weyl::{Letter, ModeSystem, Parity, WeylElement, WeylMonomial};
