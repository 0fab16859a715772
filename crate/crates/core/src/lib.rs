//! Permutation automorphisms of binary linear codes and the logical gates
//! they induce on CSS and `GF(4)` stabilizer codes.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf2`], [`poly`] and [`field`] provide linear algebra over `GF(2)`,
//!   binary polynomials and small generic finite fields.
//! * [`codes`] builds classical and CSS codes; [`perm`] and [`aut`] hold
//!   permutation groups and the automorphism search.
//! * [`logical`] turns automorphisms into logical matrices; [`matgroup`]
//!   and [`analysis`] study the groups they generate.
//! * [`stabilizer`] treats additive codes over `GF(4)`.
//! * [`synthesis`] compiles two-block logical matrices into schedules of
//!   permutations and transversal CNOTs.
//! * [`reference`] and [`claims`] carry the worked examples and their
//!   expected values.

pub mod analysis;
pub mod aut;
pub mod claims;
pub mod codes;
pub mod error;
pub mod field;
pub mod gf2;
pub mod logical;
pub mod matgroup;
pub mod perm;
pub mod poly;
pub mod reference;
pub mod stabilizer;
pub mod synthesis;

pub use codes::{CssCode, LinearCode};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use logical::LogicalMatrix;
pub use matgroup::{GroupOrder, MatrixGroup};
pub use perm::{PermGroup, Permutation};
pub use stabilizer::StabilizerCode;

/// Dense matrix over `GF(2)` in the generic representation.
pub type Gf2Matrix = field::Matrix<field::Gf2>;
/// Dense matrix over `GF(3)`.
pub type Gf3Matrix = field::Matrix<field::Gf3>;
/// Dense matrix over `GF(4)`.
pub type Gf4Matrix = field::Matrix<field::Gf4>;
