//! Exact computations for graded unipotent actions on affine algebras.
//!
//! Everything here is pure and works over ℚ: polynomial rings with a λ-grading,
//! Gröbner bases and syzygies ([`ring`]), graded nilpotent Lie algebras acting by
//! derivations ([`lie`]), Fitting-ideal stabiliser conditions ([`infinitesimal`]),
//! staged invariant quotients ([`quotient`]) and the blow-up construction that
//! repairs a failing stabiliser condition ([`blowup`]).
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blowup;
pub mod fixtures;
pub mod infinitesimal;
pub mod lie;
pub mod quotient;
pub mod ring;

pub use ring::{
    GradedRing, Ideal, Monomial, MonomialOrder, Polynomial, PresentedAlgebra, Rational, Variable,
};
