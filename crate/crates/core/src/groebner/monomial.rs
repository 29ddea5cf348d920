use std::fmt;
use std::ops::Index;

use smallvec::SmallVec;

use super::GroebnerError;

pub(crate) type Exps = SmallVec<[u32; 12]>;

/// Exponent vector of a monomial `x1^e1 * ... * xn^en`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Exps);

impl ExponentVector {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        ExponentVector(exponents.into_iter().collect())
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, nvars))
    }

    /// The monomial `x_i` (0-based index).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars);
        v.0[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn check_len(&self, other: &Self) -> Result<(), GroebnerError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(GroebnerError::LengthMismatch { left: self.len(), right: other.len() })
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / divisor`; caller guarantees divisibility.
    pub fn div(&self, divisor: &Self) -> Self {
        debug_assert!(divisor.divides(self));
        ExponentVector(self.0.iter().zip(&divisor.0).map(|(&a, &b)| a - b).collect())
    }

    /// `self / divisor * factor` in one pass.
    pub(crate) fn replace(&self, divisor: &Self, factor: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&divisor.0).zip(&factor.0).map(|((&a, &b), &c)| a - b + c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        ExponentVector(self.0.iter().map(|&a| a * k).collect())
    }

    /// Bit `i` set iff `x_i` occurs; only the first 64 variables are tracked.
    pub(crate) fn support_mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|&(i, &e)| e > 0 && i < 64).fold(0, |m, (i, _)| m | (1 << i))
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Exps {
        &mut self.0
    }
}

impl Index<usize> for ExponentVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v.into())
    }
}

impl From<&[u32]> for ExponentVector {
    fn from(v: &[u32]) -> Self {
        ExponentVector(v.into())
    }
}

/// `x1^3*x2` style, `1` for the empty product.
impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
