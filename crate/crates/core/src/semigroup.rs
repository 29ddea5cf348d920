//! Numerical semigroups: minimal generators, Apéry sets, gaps, Frobenius and
//! pseudo-Frobenius numbers, and the arithmetic-PF hypothesis.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generators have gcd {0}, not a numerical semigroup")]
    GcdNotOne(u64),
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("{0} is not an element of the semigroup")]
    NotMember(u64),
    #[error("cannot parse generator list {0:?}")]
    Parse(String),
    #[error("integer overflow while computing invariants")]
    Overflow,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least element of the monoid generated by `gens` in every residue class
/// modulo `modulus`, or `None` for unreachable classes.
///
/// Dijkstra over residues: edge `r -> r + g (mod modulus)` with weight `g`.
fn residue_minima(gens: &[u64], modulus: u64) -> Result<Vec<Option<u64>>, SemigroupError> {
    let m = modulus as usize;
    let mut best: Vec<Option<u64>> = vec![None; m];
    best[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((dist, r))) = heap.pop() {
        if best[r] != Some(dist) {
            continue;
        }
        for &g in gens {
            let next = dist.checked_add(g).ok_or(SemigroupError::Overflow)?;
            let s = (next % modulus) as usize;
            if best[s].is_none_or(|b| next < b) {
                best[s] = Some(next);
                heap.push(Reverse((next, s)));
            }
        }
    }
    Ok(best)
}

/// Strictly increasing minimal system of generators of a numerical semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorSet(Vec<u64>);

impl GeneratorSet {
    /// Reduce an arbitrary generating list to the unique minimal generating system.
    pub fn minimalize(raw: &[u64]) -> Result<Self, SemigroupError> {
        if raw.is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        if raw.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = raw.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let base = sorted[0];
        let mut kept = vec![base];
        let mut minima = residue_minima(&kept, base)?;
        for &e in &sorted[1..] {
            let redundant = minima[(e % base) as usize].is_some_and(|w| w <= e);
            if !redundant {
                kept.push(e);
                minima = residue_minima(&kept, base)?;
            }
        }
        Ok(GeneratorSet(kept))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Canonical key, e.g. `<3,4,5>`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Accepts `3,4,5` as well as the canonical `<3,4,5>`.
impl FromStr for GeneratorSet {
    type Err = SemigroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed.strip_prefix('<').and_then(|t| t.strip_suffix('>')).unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        let raw = inner
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| SemigroupError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorSet::minimalize(&raw)
    }
}

/// A numerical semigroup with all invariants precomputed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gens: GeneratorSet,
    apery: Vec<u64>,
    gaps: Vec<u64>,
    frobenius: i64,
    pf: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn new(raw: &[u64]) -> Result<Self, SemigroupError> {
        Self::from_generators(GeneratorSet::minimalize(raw)?)
    }

    pub fn from_generators(gens: GeneratorSet) -> Result<Self, SemigroupError> {
        let a0 = gens.0[0];
        let apery = residue_minima(&gens.0, a0)?
            .into_iter()
            .map(|w| w.expect("gcd 1 reaches every residue"))
            .collect::<Vec<_>>();
        let max_w = *apery.iter().max().expect("nonempty");
        let frobenius = max_w as i64 - a0 as i64;

        let mut gaps = Vec::new();
        for z in 1..=frobenius.max(0) as u64 {
            if z < apery[(z % a0) as usize] {
                gaps.push(z);
            }
        }

        // w is maximal in Ap iff no w' - w with w' in Ap is a nonzero element.
        let member = |m: u64| m >= apery[(m % a0) as usize];
        let mut pf: Vec<u64> = apery
            .iter()
            .filter(|&&w| apery.iter().all(|&v| v <= w || !member(v - w)))
            .filter(|&&w| w >= a0)
            .map(|&w| w - a0)
            .collect();
        pf.sort_unstable();

        Ok(NumericalSemigroup { gens, apery, gaps, frobenius, pf })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn multiplicity(&self) -> u64 {
        self.gens.0[0]
    }

    pub fn embedding_dim(&self) -> usize {
        self.gens.len()
    }

    /// Largest gap; −1 for the whole monoid.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Apéry set with respect to the multiplicity, indexed by residue.
    pub fn apery(&self) -> &[u64] {
        &self.apery
    }

    /// Pseudo-Frobenius numbers in ascending order.
    pub fn pseudo_frobenius(&self) -> &[u64] {
        &self.pf
    }

    pub fn type_(&self) -> usize {
        self.pf.len()
    }

    pub fn is_proper(&self) -> bool {
        self.frobenius >= 0
    }

    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        let m = m as u64;
        m >= self.apery[(m % self.multiplicity()) as usize]
    }

    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>, SemigroupError> {
        if m == 0 || !self.contains(m as i64) {
            return Err(SemigroupError::NotMember(m));
        }
        if m == self.multiplicity() {
            return Ok(self.apery.clone());
        }
        Ok(residue_minima(&self.gens.0, m)?.into_iter().map(|w| w.expect("gcd 1 reaches every residue")).collect())
    }

    pub fn check_hypothesis(&self) -> HypothesisReport {
        let n = self.embedding_dim() as u64;
        let a0 = self.multiplicity();
        let half_mult_cond = 2 * n >= a0 + 2;
        let diffs: Vec<u64> = self.pf.windows(2).map(|w| w[1] - w[0]).collect();
        let pf_common_difference = diffs.first().copied();
        let pf_arith = !self.pf.is_empty() && diffs.iter().all(|&d| Some(d) == pf_common_difference);
        let pf_length_cond = self.pf.len() as u64 + 1 == n;
        HypothesisReport {
            holds: half_mult_cond && pf_arith && pf_length_cond,
            half_mult_cond,
            pf_arith,
            pf_common_difference,
            pf_length_cond,
        }
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gens.fmt(f)
    }
}

/// Outcome of testing `a0/2 + 1 <= n` together with "PF(H) is an arithmetic
/// sequence of length n − 1".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub holds: bool,
    pub half_mult_cond: bool,
    pub pf_arith: bool,
    pub pf_common_difference: Option<u64>,
    pub pf_length_cond: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    /// Subset-sum membership over the raw list, no Apéry machinery.
    fn representable(m: u64, gens: &[u64]) -> bool {
        let mut reach = vec![false; m as usize + 1];
        reach[0] = true;
        for v in 1..=m as usize {
            reach[v] = gens.iter().any(|&g| g as usize <= v && reach[v - g as usize]);
        }
        reach[m as usize]
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(GeneratorSet::minimalize(&[2, 3]).unwrap().as_slice(), &[2, 3]);
        assert_eq!(GeneratorSet::minimalize(&[3, 6, 8]).unwrap().as_slice(), &[3, 8]);
        assert_eq!(GeneratorSet::minimalize(&[4, 5, 6, 7, 9]).unwrap().as_slice(), &[4, 5, 6, 7]);
        for raw in [&[3u64, 6, 8][..], &[4, 5, 6, 7, 9]] {
            let min = GeneratorSet::minimalize(raw).unwrap();
            for &r in raw {
                assert!(representable(r, min.as_slice()));
            }
            for (i, &g) in min.as_slice().iter().enumerate() {
                let others: Vec<u64> =
                    min.as_slice().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                assert!(!representable(g, &others));
            }
        }
    }

    #[test]
    fn minimalize_errors() {
        assert_eq!(GeneratorSet::minimalize(&[]), Err(SemigroupError::EmptyInput));
        assert_eq!(GeneratorSet::minimalize(&[4, 6]), Err(SemigroupError::GcdNotOne(2)));
        assert_eq!(GeneratorSet::minimalize(&[0, 1]), Err(SemigroupError::ZeroGenerator));
        assert_eq!(GeneratorSet::minimalize(&[1, 5, 7]).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn membership_examples() {
        let h = sg(&[3, 5]);
        assert!(h.contains(0));
        assert!(!h.contains(7));
        assert!(h.contains(8));
        assert!(!h.contains(-3));
        for m in 0..40 {
            assert_eq!(h.contains(m), representable(m as u64, &[3, 5]));
        }
    }

    #[test]
    fn apery_examples() {
        assert_eq!(sg(&[3, 5]).apery_set(3).unwrap(), vec![0, 10, 5]);
        assert_eq!(sg(&[2, 3]).apery_set(2).unwrap(), vec![0, 3]);
        assert_eq!(sg(&[4, 5, 6, 7]).apery_set(4).unwrap(), vec![0, 5, 6, 7]);
        assert_eq!(sg(&[3, 5]).apery_set(5).unwrap(), vec![0, 6, 12, 3, 9]);
        assert_eq!(sg(&[3, 5]).apery_set(7), Err(SemigroupError::NotMember(7)));
        assert_eq!(sg(&[3, 5]).apery_set(0), Err(SemigroupError::NotMember(0)));
    }

    #[test]
    fn frobenius_and_pf_examples() {
        assert_eq!(sg(&[3, 5]).frobenius(), 7);
        assert_eq!(sg(&[2, 3]).frobenius(), 1);
        assert_eq!(sg(&[4, 5, 6, 7]).frobenius(), 3);
        assert_eq!(sg(&[1]).frobenius(), -1);
        assert!(sg(&[1]).gaps().is_empty());
        assert!(sg(&[1]).pseudo_frobenius().is_empty());

        assert_eq!(sg(&[3, 4, 5]).pseudo_frobenius(), &[1, 2]);
        assert_eq!(sg(&[3, 5]).pseudo_frobenius(), &[7]);
        assert_eq!(sg(&[4, 5, 6, 7]).pseudo_frobenius(), &[1, 2, 3]);
        assert_eq!(sg(&[4, 5, 6, 7]).type_(), 3);
        assert_eq!(sg(&[3, 5]).gaps(), &[1, 2, 4, 7]);
        assert_eq!(sg(&[3, 5]).genus(), 4);
    }

    #[test]
    fn hypothesis_examples() {
        let r = sg(&[4, 5, 6, 7]).check_hypothesis();
        assert!(r.holds && r.pf_arith && r.half_mult_cond && r.pf_length_cond);
        assert_eq!(r.pf_common_difference, Some(1));

        let r = sg(&[3, 5]).check_hypothesis();
        assert!(!r.holds);
        assert!(!r.half_mult_cond);
        assert!(r.pf_arith);
        assert_eq!(r.pf_common_difference, None);

        let r = sg(&[3, 4, 5]).check_hypothesis();
        assert!(r.holds);
        assert_eq!(r.pf_common_difference, Some(1));

        // <2,b>: PF = {b-2}, vacuously arithmetic, n - 1 = 1.
        assert!(sg(&[2, 7]).check_hypothesis().holds);
        // <4,5,6>: symmetric, type 1 != n - 1.
        assert!(!sg(&[4, 5, 6]).check_hypothesis().pf_length_cond);
    }

    #[test]
    fn canonical_text() {
        let g: GeneratorSet = "6, 4,5,7".parse().unwrap();
        assert_eq!(g.canonical(), "<4,5,6,7>");
        assert_eq!("<4,5,6,7>".parse::<GeneratorSet>().unwrap(), g);
        assert!(matches!("3,x".parse::<GeneratorSet>(), Err(SemigroupError::Parse(_))));
        assert_eq!("".parse::<GeneratorSet>(), Err(SemigroupError::EmptyInput));
    }
}
