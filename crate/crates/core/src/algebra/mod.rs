//! Exact scalars (rationals and cyclotomic field elements) and dense
//! univariate polynomials over them.

pub mod cyclo;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use cyclo::{cyclotomic_polynomial, CycloElement, CycloField};
pub use poly::{expand_shifted_power, Poly};
pub use rational::{binomial, falling_factorial, parse_rational, rat, ratio, Rational};
pub use scalar::{Field, Scalar};
