//! Exact-arithmetic verification and construction engine for
//! finite-dimensional BiHom-Poisson algebras.
//!
//! Everything is computed symbolically over the field of rational
//! functions in the declared parameters: identity checks decide PASS or
//! FAIL exactly, constructions produce new structure-constant algebras,
//! and an independent rational-arithmetic oracle confirms every symbolic
//! failure at random parameter points.

pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod constructions;
pub mod document;
pub mod error;
pub mod expr;
pub mod numeric;
pub mod poly;
pub mod report;
pub mod representations;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod search;

pub use algebra::{BiHomAlgebra, BilinearMap, Kind, LinearMap, Vector};
pub use error::{Error, Result};
pub use poly::{Params, Polynomial, Rational};
pub use report::{Check, OracleConfirmation, Report, Verdict};
pub use scalar::Scalar;

/// Default seed for every randomized routine, overridable by CLI flag
/// or the BIHOM_SEED environment variable.
pub const DEFAULT_SEED: u64 = 0x00b1_40b1;
