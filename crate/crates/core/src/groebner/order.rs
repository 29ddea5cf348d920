use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use super::{ExponentVector, GroebnerError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// `x1 > x2 > ... > xn`.
    Lex,
    /// Graded reverse lexicographic.
    Grevlex,
    /// Block order: the listed (0-based) variables are compared first by
    /// grevlex among themselves, ties broken by grevlex on the rest.
    Elimination { block: Vec<usize> },
}

/// A monomial order, optionally graded by a positive weight vector.
///
/// With weights, every kind compares weighted degree before anything else
/// (per block for elimination orders).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    weights: Option<Vec<u64>>,
}

pub(crate) type SortKey = SmallVec<[i64; 16]>;

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, weights: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, weights: None }
    }

    pub fn elimination(block: Vec<usize>) -> Self {
        MonomialOrder { kind: OrderKind::Elimination { block }, weights: None }
    }

    pub fn with_weights(mut self, weights: Vec<u64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        self.weights = Some(weights);
        self
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    /// Weighted degree (total degree without weights).
    pub fn degree(&self, u: &ExponentVector) -> u64 {
        match &self.weights {
            Some(w) => u.weighted_degree(w),
            None => u.total_degree(),
        }
    }

    pub fn compare(&self, u: &ExponentVector, v: &ExponentVector) -> Result<Ordering, GroebnerError> {
        u.check_len(v)?;
        if let Some(w) = &self.weights {
            if w.len() != u.len() {
                return Err(GroebnerError::LengthMismatch { left: u.len(), right: w.len() });
            }
        }
        Ok(self.cmp(u, v))
    }

    /// Comparison without length checks; lengths must agree.
    pub fn cmp(&self, u: &ExponentVector, v: &ExponentVector) -> Ordering {
        let (a, b) = (u.as_slice(), v.as_slice());
        let w = self.weights.as_deref();
        match &self.kind {
            OrderKind::Lex => {
                if w.is_some() {
                    let o = self.degree(u).cmp(&self.degree(v));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                a.cmp(b)
            }
            OrderKind::Grevlex => grevlex_on(0..a.len(), a, b, w),
            OrderKind::Elimination { block } => {
                let o = grevlex_on(block.iter().copied(), a, b, w);
                if o != Ordering::Equal {
                    return o;
                }
                grevlex_on((0..a.len()).filter(|i| !block.contains(i)), a, b, w)
            }
        }
    }

    /// Key whose lexicographic order on `i64` sequences is this order.
    pub(crate) fn sort_key(&self, u: &ExponentVector) -> SortKey {
        let a = u.as_slice();
        let w = self.weights.as_deref();
        let mut key = SortKey::new();
        match &self.kind {
            OrderKind::Lex => {
                if w.is_some() {
                    key.push(self.degree(u) as i64);
                }
                key.extend(a.iter().map(|&e| e as i64));
            }
            OrderKind::Grevlex => grevlex_key(0..a.len(), a, w, &mut key),
            OrderKind::Elimination { block } => {
                grevlex_key(block.iter().copied(), a, w, &mut key);
                grevlex_key((0..a.len()).filter(|i| !block.contains(i)), a, w, &mut key);
            }
        }
        key
    }
}

fn grevlex_on<I>(idx: I, a: &[u32], b: &[u32], w: Option<&[u64]>) -> Ordering
where
    I: Iterator<Item = usize> + Clone,
{
    let deg = |x: &[u32]| -> u64 { idx.clone().map(|i| x[i] as u64 * w.map_or(1, |w| w[i])).sum() };
    let o = deg(a).cmp(&deg(b));
    if o != Ordering::Equal {
        return o;
    }
    let mut last = Ordering::Equal;
    for i in idx {
        if a[i] != b[i] {
            // Smaller exponent in the last differing variable is larger.
            last = b[i].cmp(&a[i]);
        }
    }
    last
}

fn grevlex_key<I>(idx: I, a: &[u32], w: Option<&[u64]>, key: &mut SortKey)
where
    I: DoubleEndedIterator<Item = usize> + Clone,
{
    let deg: u64 = idx.clone().map(|i| a[i] as u64 * w.map_or(1, |w| w[i])).sum();
    key.push(deg as i64);
    key.extend(idx.rev().map(|i| -(a[i] as i64)));
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OrderKind::Lex => f.write_str("lex"),
            OrderKind::Grevlex => f.write_str("grevlex"),
            OrderKind::Elimination { block } => write!(f, "elim{block:?}"),
        }
    }
}

/// Parses the CLI names `lex` and `grevlex`.
impl FromStr for MonomialOrder {
    type Err = GroebnerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::lex()),
            "grevlex" => Ok(MonomialOrder::grevlex()),
            _ => Err(GroebnerError::Parse(format!("unknown monomial order {s:?}"))),
        }
    }
}
