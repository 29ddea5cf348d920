//! Numerical semigroup rings and determinantal defining ideals.
//!
//! The pipeline is: [`NumericalSemigroup`] invariants and the arithmetic-PF
//! hypothesis, the defining ideal `I_H` via elimination in a binomial
//! Gröbner engine, and a certificate that `I_H` equals the ideal of 2×2
//! minors of a monomial matrix.

pub mod defining_ideal;
pub mod determinantal;
pub mod groebner;
pub mod semigroup;
pub mod survey;

pub use defining_ideal::{toric_kernel, DefiningIdeal};
pub use determinantal::{
    certify, construct_candidate_matrix, minors_2x2, search_matrix, DeterminantalCertificate, MonomialMatrix,
};

pub use groebner::{Binomial, BinomialIdeal, ExponentVector, GbConfig, MonomialOrder};
pub use semigroup::{GeneratorSet, HypothesisReport, NumericalSemigroup, SemigroupError};
pub use survey::{run_survey, SurveyConfig, SurveyRecord, SurveySummary};
