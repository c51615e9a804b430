//! Polynomial arithmetic, ideals, Gröbner bases, syzygies and elimination over ℚ.

mod algebra;
mod groebner;
mod ideal;
pub mod linalg;
mod module;
mod monomial;
mod order;
mod parse;
mod poly;
mod rational;

pub use algebra::{GradedRing, PresentedAlgebra, Simplified, Variable};
pub use ideal::{eliminate, groebner_basis, is_unit_ideal, normal_form, saturate, GroebnerBasis, Ideal};
pub use module::{lift, syzygy_kernel, FreeModuleMap, Submodule};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, parse_rational, ParseError};
pub use poly::{PolyDisplay, Polynomial};
pub use rational::{binomial, factorial, int, rat, to_i64, Rational};


#[cfg(test)]
mod tests;
