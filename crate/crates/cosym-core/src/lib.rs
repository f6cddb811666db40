//! Exact-arithmetic computational algebra for odd-dimensional symplectic-type
//! geometry: Chevalley-Eilenberg cohomology of Lie algebras given by structure
//! constants, co-symplectic structures and their existence, mapping-torus
//! cohomology with formality verdicts, and triple/quadruple Massey products in
//! finite commutative differential graded algebras.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere. Verdicts (existence, non-formality,
//! non-vanishing) are discrete and sign-sensitive, so approximate arithmetic
//! would be unsound.

pub mod catalog;
pub mod cdga;
pub mod liealg;
pub mod linalg;
pub mod mapping_torus;
pub mod massey;
pub mod multipoly;
pub mod polynomial;
pub mod rational;

pub use rational::Rational;
