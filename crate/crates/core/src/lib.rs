//! Exact computations for principal subspaces of rank-one lattice vertex
//! algebras: symmetric functions and Jack polynomials, Fock space vertex
//! operators, the quadratic algebras `A_(m)`, characters, and fusion ideals.
//!
//! Everything is exact. The generic pieces are written against
//! [`scalar::Field`]; the aliases below fix the rational instantiation used
//! throughout.

pub mod characters;
pub mod combinat;
pub mod error;
pub mod fock;
pub mod fusion;
pub mod jack;
pub mod linalg;
pub mod mvpoly;
pub mod partition;
pub mod poly;
pub mod presentation;
pub mod qseries;
pub mod scalar;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::Partition;
pub use qseries::QSeries;
pub use scalar::{Field, Rational};

pub type SymFunc = symfunc::SymFunc<Rational>;
pub type SparseVec = linalg::SparseVec<Rational>;
pub type Echelon = linalg::Echelon<Rational>;
pub type EpsPoly = poly::Poly<Rational>;
