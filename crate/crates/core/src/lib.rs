//! Exact hypercircle computation for rational curves over number fields.
//!
//! Given a proper parametrization with coefficients in `ℚ(α)`, the crate
//! decides whether the curve is defined over `ℚ`, computes the standard
//! parametrization of the associated hypercircle, and otherwise finds the
//! minimum field of definition between `ℚ` and `ℚ(α)`.

pub mod error;
pub mod factor;
pub mod field;
pub mod generate;
pub mod hypercircle;
pub mod instance;
pub mod linalg;
pub mod minfield;
pub mod modular;
pub mod numfield;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod witness;

pub use error::{ArithError, Error, Result};
pub use field::{Field, Rationals};
pub use numfield::{AlgElem, AlgField, ConjugacyClass, NFElement, NumberField, RelElem, RelField};
pub use poly::UniPoly;
pub use rational::Rational;
