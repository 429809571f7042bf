//! Exact arithmetic for multivariate polynomial rings `ℚ[x₁..x_d]` and Weyl
//! algebras `ℚ[x₁..x_d]⟨∂₁..∂_d⟩`, with parsing and deterministic printing.
//!
//! Elements are kept in normal order: every monomial is a word `x^a ∂^b`
//! with the multiplication-operator part in front of the derivations.

mod matrix;
mod parse;
mod poly;
mod ring;

pub use matrix::OperatorMatrix;
pub use parse::{parse_operator, ParseError};
pub use poly::OrePoly;
pub use ring::{GenImage, Monomial, RingKind, RingSpec};
