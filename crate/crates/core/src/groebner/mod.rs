//! Gröbner bases for ideals generated by pure-difference binomials.
//!
//! Since every S-polynomial and every reduction step of two binomials
//! `x^a - x^b` is again such a binomial (or zero), no coefficients are stored.

mod binomial;
mod buchberger;
mod ideal;
mod monomial;
mod order;

pub use binomial::{parse_monomial, Binomial};
pub use buchberger::{buchberger, reduce, s_binomial, Buchberger, GbConfig};
pub use ideal::{ideal_equal, BinomialIdeal};
pub use monomial::ExponentVector;
pub use order::{MonomialOrder, OrderKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("exponent vectors of different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("basis element of weighted degree {degree} exceeds the cap {cap}")]
    DegreeBoundExceeded { degree: u64, cap: u64 },
    #[error("basis grew beyond {cap} elements")]
    BasisSizeExceeded { cap: usize },
    #[error("{0}")]
    Parse(String),
}

impl GroebnerError {
    /// True for the safety-valve errors (degree or basis-size cap).
    pub fn is_budget(&self) -> bool {
        matches!(self, GroebnerError::DegreeBoundExceeded { .. } | GroebnerError::BasisSizeExceeded { .. })
    }
}
