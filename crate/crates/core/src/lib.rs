//! Exact construction and verification of BGG and parabolic BGG
//! complexes for Kac-Moody algebras and their quantum analogues.
//!
//! Every module is graded by the negative root lattice and every
//! computation happens one weight slice at a time over an exact field.

pub mod cartan;
pub mod characters;
pub mod complex;
pub mod enveloping;
pub mod error;
pub mod field;
pub mod linalg;
pub mod nilpotent;
pub mod pipeline;
pub mod quantum;
pub mod ratfunc;
pub mod verma;
pub mod weyl;

pub use cartan::{CartanMatrix, Degree, Symmetrizer, Weight};
pub use complex::{BggComplex, BgglComplex, Mutation};
pub use enveloping::{Classical, Coefficients, NegativePart};
pub use error::{Error, Result};
pub use field::{Field, Rational};
pub use pipeline::{RunConfig, Status};
pub use ratfunc::RatFunc;
pub use weyl::{Arrow, WeylGroup};
