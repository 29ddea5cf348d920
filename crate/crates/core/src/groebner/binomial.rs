use std::cmp::Ordering;
use std::fmt;

use super::{ExponentVector, GroebnerError, MonomialOrder};

/// Pure-difference binomial `x^plus - x^minus`.
///
/// Coefficients are implicit (+1/−1). Inside the engine `plus` is always the
/// larger term under the active order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    plus: ExponentVector,
    minus: ExponentVector,
}

impl Binomial {
    /// `None` when the two terms coincide (the zero polynomial).
    pub fn new(plus: ExponentVector, minus: ExponentVector) -> Option<Self> {
        assert_eq!(plus.len(), minus.len(), "binomial terms live in different rings");
        (plus != minus).then_some(Binomial { plus, minus })
    }

    /// Builds `a - b` or `b - a`, whichever has the larger leading term.
    pub fn oriented(a: ExponentVector, b: ExponentVector, order: &MonomialOrder) -> Option<Self> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Binomial { plus: a, minus: b }),
            Ordering::Less => Some(Binomial { plus: b, minus: a }),
            Ordering::Equal => None,
        }
    }

    pub fn plus(&self) -> &ExponentVector {
        &self.plus
    }

    pub fn minus(&self) -> &ExponentVector {
        &self.minus
    }

    pub fn nvars(&self) -> usize {
        self.plus.len()
    }

    pub fn into_terms(self) -> (ExponentVector, ExponentVector) {
        (self.plus, self.minus)
    }

    /// Same polynomial up to sign, leading term first under `order`.
    pub fn normalized(&self, order: &MonomialOrder) -> Self {
        if order.cmp(&self.plus, &self.minus) == Ordering::Less {
            Binomial { plus: self.minus.clone(), minus: self.plus.clone() }
        } else {
            self.clone()
        }
    }

    pub fn is_normalized(&self, order: &MonomialOrder) -> bool {
        order.cmp(&self.plus, &self.minus) == Ordering::Greater
    }

    pub fn is_homogeneous(&self, weights: &[u64]) -> bool {
        self.plus.weighted_degree(weights) == self.minus.weighted_degree(weights)
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self, weights: &[u64]) -> u64 {
        self.plus.weighted_degree(weights)
    }

    /// Multiply both terms by `x^m`.
    pub fn shifted(&self, m: &ExponentVector) -> Self {
        Binomial { plus: self.plus.mul(m), minus: self.minus.mul(m) }
    }

    /// `x^plus - x^minus` divided by the gcd of its terms.
    pub fn primitive(&self) -> Self {
        let g = self.plus.gcd(&self.minus);
        Binomial { plus: self.plus.div(&g), minus: self.minus.div(&g) }
    }

    pub fn is_primitive(&self) -> bool {
        self.plus.is_coprime(&self.minus)
    }

    /// Parses `"x1^3 - x2*x3"` with 1-based variable indices.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, GroebnerError> {
        let (a, b) = s.split_once('-').ok_or_else(|| GroebnerError::Parse(format!("expected `a - b` in {s:?}")))?;
        let plus = parse_monomial(a, nvars)?;
        let minus = parse_monomial(b, nvars)?;
        Binomial::new(plus, minus).ok_or_else(|| GroebnerError::Parse(format!("{s:?} is zero")))
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// Parses `"x1^2*x3"` or `"1"`; at most `nvars` variables.
pub fn parse_monomial(s: &str, nvars: usize) -> Result<ExponentVector, GroebnerError> {
    let s = s.trim();
    let mut v = ExponentVector::zero(nvars);
    if s == "1" {
        return Ok(v);
    }
    let bad = || GroebnerError::Parse(format!("bad monomial {s:?}"));
    for factor in s.split('*') {
        let factor = factor.trim();
        let rest = factor.strip_prefix('x').ok_or_else(bad)?;
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 || idx > nvars {
            return Err(GroebnerError::Parse(format!("variable x{idx} out of range 1..={nvars} in {s:?}")));
        }
        let slot = &mut v.exps_mut()[idx - 1];
        *slot = slot.checked_add(exp).ok_or_else(bad)?;
    }
    Ok(v)
}
