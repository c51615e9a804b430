//! Graded nilpotent Lie algebras, their actions by derivations, the enveloping
//! algebra in PBW form, complete brackets and the coaction.

mod action;
mod algebra;
mod coaction;
mod free;
mod uea;

pub use action::{ActionError, Derivation, DerivationAction, Violation};
pub use algebra::{GradedLieAlgebra, LieElement, LieError, LieViolation};
pub use coaction::{check_comult_lemmas, coaction_expand, comult_coefficients, multi_indices, CoefficientTable};
pub use free::{
    exponent_vectors, free_complete_bracket, verify_commutator_identity, verify_weighted_bracket_identity, FreePoly,
    FreeWord, IdentityFailure,
};
pub use uea::{
    complete_bracket, complete_bracket_uea, complete_bracket_word, pbw_monomials, pbw_monomials_of_weight, PbwMonomial,
    PbwOrderer, UeaElement,
};

#[cfg(test)]
mod tests;
