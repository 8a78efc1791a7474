//! Exact real-root counting and the algebra of real Chow forms and divisors.
//!
//! All certificate paths are exact over ℚ. Floats appear only in the
//! magic-fan demonstration, after every root count has been fixed exactly.

pub mod chow;
pub mod critical;
pub mod divisors;
pub mod magic_fan;
mod packed;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod shd;
pub mod sturm;
pub mod univariate;

pub use parse::parse_poly;
pub use poly::SparsePoly;
pub use rational::Rational;
pub use univariate::UniPoly;
