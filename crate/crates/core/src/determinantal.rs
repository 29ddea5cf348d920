//! Determinantal certificates: a monomial matrix `M` with `I_H = I_2(M)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;
use thiserror::Error;

use crate::defining_ideal::{monomials_of_degree, DefiningIdeal};
use crate::groebner::{
    ideal_equal, parse_monomial, Binomial, BinomialIdeal, Buchberger, ExponentVector, GbConfig, GroebnerError,
};
use crate::semigroup::{HypothesisReport, NumericalSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminantalError {
    #[error("construction inapplicable: {0}")]
    ConstructionInapplicable(String),
    #[error("search exceeded {0} nodes in one branch")]
    SearchBudgetExceeded(u64),
    #[error("matrix has {found} variables, ideal has {expected}")]
    VariableMismatch { expected: usize, found: usize },
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error("only 2-row matrices are supported, got {0}")]
    UnsupportedShape(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A `rows × cols` matrix of monomials, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExponentVector>,
}

/// Degree labels with `deg M[i][j] = row_degrees[i] + col_degrees[j]`,
/// normalized so that `row_degrees[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
}

impl MonomialMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExponentVector>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        assert!(entries.windows(2).all(|w| w[0].len() == w[1].len()), "entries live in different rings");
        MonomialMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<ExponentVector>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        MonomialMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.entries.first().map_or(0, ExponentVector::len)
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExponentVector {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut ExponentVector {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        MonomialMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Self {
        let mut m = self.clone();
        for j in 0..self.cols {
            m.entries.swap(a * self.cols + j, b * self.cols + j);
        }
        m
    }

    pub fn swap_cols(&self, a: usize, b: usize) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            m.entries.swap(i * self.cols + a, i * self.cols + b);
        }
        m
    }

    /// Row/column degree labels under `weights`, if the matrix is homogeneous.
    pub fn grading(&self, weights: &[u64]) -> Option<Grading> {
        if self.rows == 0 || self.cols == 0 {
            return None;
        }
        let deg = |i, j| self.entry(i, j).weighted_degree(weights) as i64;
        let col_degrees: Vec<i64> = (0..self.cols).map(|j| deg(0, j)).collect();
        let row_degrees: Vec<i64> = (0..self.rows).map(|i| deg(i, 0) - col_degrees[0]).collect();
        let ok = (0..self.rows).all(|i| (0..self.cols).all(|j| deg(i, j) == row_degrees[i] + col_degrees[j]));
        ok.then_some(Grading { row_degrees, col_degrees })
    }

    /// Parses `"x1,x2,x3;x2,x3,x1^2"` (rows by `;`, entries by `,`).
    pub fn parse(s: &str, nvars: usize) -> Result<Self, DeterminantalError> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| parse_monomial(e, nvars).map_err(|err| DeterminantalError::Parse(err.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(DeterminantalError::Parse(format!("ragged matrix {s:?}")));
        }
        Ok(MonomialMatrix::from_rows(rows))
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

fn minor(m: &MonomialMatrix, i: usize, k: usize, j: usize, l: usize) -> Option<Binomial> {
    let a = m.entry(i, j).mul(m.entry(k, l));
    let b = m.entry(i, l).mul(m.entry(k, j));
    Binomial::new(a, b)
}

/// All nonzero 2×2 minors as binomials, deduplicated up to sign, in the
/// order (row pair, column pair).
pub fn minors_2x2(m: &MonomialMatrix) -> BinomialIdeal {
    let mut out: Vec<Binomial> = Vec::new();
    for i in 0..m.rows {
        for k in i + 1..m.rows {
            for j in 0..m.cols {
                for l in j + 1..m.cols {
                    if let Some(b) = minor(m, i, k, j, l) {
                        let flipped = Binomial::new(b.minus().clone(), b.plus().clone()).expect("nonzero");
                        if !out.contains(&b) && !out.contains(&flipped) {
                            out.push(b);
                        }
                    }
                }
            }
        }
    }
    BinomialIdeal::new(m.nvars(), out).expect("entries share one ring")
}

/// Evidence for (or against) `I_H = I_2(M)`.
#[derive(Debug, Clone)]
pub struct DeterminantalCertificate {
    pub matrix: MonomialMatrix,
    pub minors: BinomialIdeal,
    pub equal: bool,
    /// Generators of either ideal not contained in the other.
    pub witness_failures: Vec<Binomial>,
}

/// Checks `I_H = I_2(M)` by comparing reduced Gröbner bases, collecting
/// non-members on failure.
pub fn certify(
    d: &DefiningIdeal,
    m: &MonomialMatrix,
    cfg: &GbConfig,
) -> Result<DeterminantalCertificate, DeterminantalError> {
    if m.nvars() != d.nvars() {
        return Err(DeterminantalError::VariableMismatch { expected: d.nvars(), found: m.nvars() });
    }
    let order = d.order();
    let minors = minors_2x2(m);
    let normalize = |b: &Binomial| b.normalized(order);

    let inhomogeneous: Vec<Binomial> =
        minors.generators().iter().filter(|b| !b.is_homogeneous(d.weights())).map(normalize).collect();
    if !inhomogeneous.is_empty() || m.grading(d.weights()).is_none() {
        let witness_failures =
            if inhomogeneous.is_empty() { minors.generators().iter().map(normalize).collect() } else { inhomogeneous };
        return Ok(DeterminantalCertificate { matrix: m.clone(), minors, equal: false, witness_failures });
    }

    let equal = ideal_equal(d.ideal(), &minors, order, cfg)?;
    let mut witness_failures = Vec::new();
    if !equal {
        for g in d.generators() {
            if minors.normal_form(g, order, cfg)?.is_some() {
                witness_failures.push(normalize(g));
            }
        }
        for g in minors.generators() {
            if d.ideal().normal_form(g, order, cfg)?.is_some() {
                witness_failures.push(normalize(g));
            }
        }
        if witness_failures.is_empty() {
            // same ideal generated differently cannot happen with distinct reduced bases
            unreachable!("distinct reduced Gröbner bases without a witness");
        }
    }
    Ok(DeterminantalCertificate { matrix: m.clone(), minors, equal, witness_failures })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node cap per first-column branch.
    pub node_budget: u64,
    pub gb: GbConfig,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: 200_000, gb: GbConfig::default(), parallel: true }
    }
}

fn binom2(c: usize) -> usize {
    c * c.saturating_sub(1) / 2
}

/// All nondecreasing `s` of length `c` whose pairwise sums are exactly `sums`.
fn pairwise_sum_preimages(sums: &[i64], c: usize) -> Vec<Vec<i64>> {
    let mut sums = sums.to_vec();
    sums.sort_unstable();
    if sums.len() != binom2(c) || c < 3 {
        return Vec::new();
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut tried = Vec::new();
    for &s23 in &sums[2..] {
        if tried.contains(&s23) {
            continue;
        }
        tried.push(s23);
        let twice = sums[0] + sums[1] - s23;
        if twice % 2 != 0 {
            continue;
        }
        let s1 = twice / 2;
        let mut pool: BTreeMap<i64, usize> = BTreeMap::new();
        for &v in &sums {
            *pool.entry(v).or_default() += 1;
        }
        let take = |pool: &mut BTreeMap<i64, usize>, v: i64| -> bool {
            match pool.get_mut(&v) {
                Some(k) => {
                    *k -= 1;
                    if *k == 0 {
                        pool.remove(&v);
                    }
                    true
                }
                None => false,
            }
        };
        let mut s = vec![s1, sums[0] - s1, sums[1] - s1];
        if s[1] > s[2] || s[0] > s[1] {
            continue;
        }
        let mut ok = take(&mut pool, sums[0]) && take(&mut pool, sums[1]) && take(&mut pool, s23);
        while ok && s.len() < c {
            let next = *pool.keys().next().expect("sums remain") - s1;
            for &v in &s {
                ok &= take(&mut pool, v + next);
            }
            s.push(next);
        }
        if ok && pool.is_empty() && s.windows(2).all(|w| w[0] <= w[1]) && !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Column degree vectors and row-degree offset `delta >= 0` such that the
/// minor degrees `c_j + c_k + delta` reproduce `gen_degrees`.
fn degree_layouts(
    gen_degrees: &[u64],
    c: usize,
    preferred_delta: Option<u64>,
    degree_bound: i64,
) -> Vec<(i64, Vec<i64>)> {
    let mut layouts = Vec::new();
    if c == 2 {
        if let [d] = gen_degrees {
            let d = *d as i64;
            for delta in 0..d {
                for c1 in 1..=(d - delta) / 2 {
                    let c2 = d - delta - c1;
                    if c2 + delta <= degree_bound {
                        layouts.push((delta, vec![c1, c2]));
                    }
                }
            }
        }
    } else {
        let doubled: Vec<i64> = gen_degrees.iter().map(|&g| 2 * g as i64).collect();
        for s in pairwise_sum_preimages(&doubled, c) {
            let lo = s[0];
            for delta in 0..=lo - 2 {
                if s.iter().any(|&v| (v - delta) % 2 != 0) {
                    continue;
                }
                let cols: Vec<i64> = s.iter().map(|&v| (v - delta) / 2).collect();
                if cols.iter().all(|&x| x >= 1) && cols.iter().all(|&x| x + delta <= degree_bound) {
                    layouts.push((delta, cols));
                }
            }
        }
    }
    let pref = preferred_delta.map(|d| d as i64);
    layouts.sort_by_key(|(delta, cols)| (Some(*delta) != pref, *delta, cols.clone()));
    layouts.dedup();
    layouts
}

struct SearchCtx<'a> {
    d: &'a DefiningIdeal,
    /// Gröbner engines for the ideal generated by minimal generators of
    /// degree strictly below each key.
    below: BTreeMap<u64, Buchberger<'a>>,
    nvars: usize,
    budget: u64,
}

impl SearchCtx<'_> {
    fn is_new_minimal(&self, b: &Binomial) -> bool {
        let deg = b.degree(self.d.weights());
        match self.below.get(&deg) {
            Some(engine) => engine.reduce(&b.normalized(self.d.order())).is_some(),
            None => false,
        }
    }
}

type Column = (ExponentVector, ExponentVector);

/// Candidate `(top, bottom)` columns of the given degrees whose supports avoid
/// the variables already used in each row, leaving room for `remaining`
/// further columns.
fn column_candidates(
    ctx: &SearchCtx<'_>,
    top_degree: i64,
    delta: i64,
    used: (u64, u64),
    remaining: usize,
) -> Vec<Column> {
    let w = ctx.d.weights();
    let room = |used: u64, m: u64| -> bool {
        let free = ctx.nvars as u32 - used.count_ones();
        m & used == 0 && m.count_ones() + remaining as u32 <= free
    };
    let tops = monomials_of_degree(w, top_degree as u64);
    let bottoms = monomials_of_degree(w, (top_degree + delta) as u64);
    let mut out = Vec::new();
    for f in &tops {
        let mf = f.support_mask();
        if !room(used.0, mf) {
            continue;
        }
        for g in &bottoms {
            let mg = g.support_mask();
            if mf & mg == 0 && room(used.1, mg) {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    out
}

enum Outcome {
    Found(MonomialMatrix),
    Exhausted,
    Budget,
}

fn extend(
    ctx: &SearchCtx<'_>,
    cols: &[i64],
    delta: i64,
    chosen: &mut Vec<Column>,
    minors: &mut Vec<Binomial>,
    nodes: &AtomicU64,
    cfg: &SearchConfig,
) -> Result<Outcome, DeterminantalError> {
    if nodes.fetch_add(1, AtomicOrdering::Relaxed) >= ctx.budget {
        return Ok(Outcome::Budget);
    }
    let k = chosen.len();
    if k == cols.len() {
        let m = MonomialMatrix::from_rows(vec![
            chosen.iter().map(|c| c.0.clone()).collect(),
            chosen.iter().map(|c| c.1.clone()).collect(),
        ]);
        let cert = certify(ctx.d, &m, &cfg.gb)?;
        return Ok(if cert.equal { Outcome::Found(m) } else { Outcome::Exhausted });
    }
    let used = chosen.iter().fold((0, 0), |(a, b), c| (a | c.0.support_mask(), b | c.1.support_mask()));
    let mut cands = column_candidates(ctx, cols[k], delta, used, cols.len() - k - 1);
    // equal-degree columns commute; keep them in candidate order
    if k > 0 && cols[k] == cols[k - 1] {
        let prev = &chosen[k - 1];
        cands.retain(|c| c > prev);
    }
    let mut budget_hit = false;
    for cand in cands {
        let before = minors.len();
        let mut ok = true;
        for prev in chosen.iter() {
            let Some(b) = Binomial::new(prev.0.mul(&cand.1), cand.0.mul(&prev.1)) else {
                ok = false;
                break;
            };
            let n = b.normalized(ctx.d.order());
            if !b.is_primitive() || minors.contains(&n) || !ctx.is_new_minimal(&b) {
                ok = false;
                break;
            }
            minors.push(n);
        }
        if ok {
            chosen.push(cand);
            let r = extend(ctx, cols, delta, chosen, minors, nodes, cfg)?;
            chosen.pop();
            match r {
                Outcome::Found(m) => return Ok(Outcome::Found(m)),
                Outcome::Budget => budget_hit = true,
                Outcome::Exhausted => {}
            }
        }
        minors.truncate(before);
        if budget_hit {
            return Ok(Outcome::Budget);
        }
    }
    Ok(Outcome::Exhausted)
}

/// Exhaustive search for a homogeneous `2 × c` monomial matrix with
/// `I_2(M) = I_H`, entries of weighted degree at most `degree_bound`.
///
/// Only matrices whose `C(c,2)` minors are pairwise distinct minimal
/// generators are considered, so `mu(I_H) = C(c,2)` is required. Such minors
/// are primitive because `I_H` is prime; hence the entries of each row, and of
/// each column, are pairwise coprime, which drives the pruning. Columns are
/// sorted by degree and the first certified matrix in enumeration order wins.
pub fn search_matrix(
    d: &DefiningIdeal,
    shape: (usize, usize),
    degree_bound: u64,
    preferred_delta: Option<u64>,
    cfg: &SearchConfig,
) -> Result<Option<MonomialMatrix>, DeterminantalError> {
    let (rows, c) = shape;
    if rows != 2 {
        return Err(DeterminantalError::UnsupportedShape(rows));
    }
    if c < 2 || d.mu() != binom2(c) || c > d.nvars() {
        return Ok(None);
    }
    let gen_degrees: Vec<u64> = d.generators().iter().map(|g| g.degree(d.weights())).collect();

    let mut below = BTreeMap::new();
    {
        let mut degrees = gen_degrees.clone();
        degrees.sort_unstable();
        degrees.dedup();
        let max_deg = *degrees.last().expect("mu >= 1");
        let mut engine = Buchberger::new(d.order(), 64 * max_deg, cfg.gb.max_basis);
        let mut gens: Vec<&Binomial> = d.generators().iter().collect();
        gens.sort_by_key(|g| g.degree(d.weights()));
        let mut it = gens.into_iter().peekable();
        for deg in degrees {
            while let Some(g) = it.next_if(|g| g.degree(d.weights()) < deg) {
                engine.add(g)?;
            }
            engine.complete()?;
            below.insert(deg, engine.clone());
        }
    }
    let ctx = SearchCtx { d, below, nvars: d.nvars(), budget: cfg.node_budget };

    for (delta, cols) in degree_layouts(&gen_degrees, c, preferred_delta, degree_bound as i64) {
        let firsts = column_candidates(&ctx, cols[0], delta, (0, 0), c - 1);
        let run = |first: &Column| -> Result<Outcome, DeterminantalError> {
            let nodes = AtomicU64::new(0);
            let mut chosen = vec![first.clone()];
            let mut minors = Vec::new();
            extend(&ctx, &cols, delta, &mut chosen, &mut minors, &nodes, cfg)
        };
        let outcomes: Vec<Result<Outcome, DeterminantalError>> = if cfg.parallel {
            firsts.par_iter().map(run).collect()
        } else {
            let mut v = Vec::new();
            for f in &firsts {
                let r = run(f);
                let stop = !matches!(r, Ok(Outcome::Exhausted));
                v.push(r);
                if stop {
                    break;
                }
            }
            v
        };
        for r in outcomes {
            match r? {
                Outcome::Found(m) => return Ok(Some(m)),
                Outcome::Budget => return Err(DeterminantalError::SearchBudgetExceeded(cfg.node_budget)),
                Outcome::Exhausted => {}
            }
        }
    }
    Ok(None)
}

/// Row-degree offset of the candidate matrix: the common difference of
/// `PF(H)`, or 1 when `PF(H)` is a single number (then `n = 2`).
pub fn shift_degree(hyp: &HypothesisReport) -> u64 {
    hyp.pf_common_difference.unwrap_or(1)
}

/// Builds the `2 × n` candidate matrix for a semigroup satisfying the
/// hypothesis.
///
/// Column `j` is `(x_j^{p_j}, x_k^{q_k})` where `p_j >= 1` is least such that
/// `p_j a_j + d` is a multiple `q_k a_k` of another generator, `d` being the
/// common difference of `PF(H)`; among several such `k` the largest `a_k`
/// wins. Every column then has the same row-degree offset `d`, and the bottom
/// row must be a permutation of the variables.
pub fn construct_candidate_matrix(
    h: &NumericalSemigroup,
    hyp: &HypothesisReport,
) -> Result<MonomialMatrix, DeterminantalError> {
    let inapplicable = |why: String| Err(DeterminantalError::ConstructionInapplicable(why));
    if !hyp.holds {
        return inapplicable(format!("{h} does not satisfy the hypothesis"));
    }
    let a = h.generators().as_slice();
    let n = a.len();
    if n < 2 {
        return inapplicable(format!("{h} has embedding dimension {n}"));
    }
    let d = shift_degree(hyp);
    let max_a = *a.last().expect("n >= 2");

    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for (j, &aj) in a.iter().enumerate() {
        let found = (1..=max_a).find_map(|p| {
            let target = p * aj + d;
            (0..n).rev().find(|&k| k != j && target.is_multiple_of(a[k])).map(|k| (p, k, target / a[k]))
        });
        let Some((p, k, q)) = found else {
            return inapplicable(format!("no shift partner for generator {aj} of {h}"));
        };
        if hit[k] {
            return inapplicable(format!("bottom row of {h} repeats x{}", k + 1));
        }
        hit[k] = true;
        let mut f = ExponentVector::zero(n);
        f.exps_mut()[j] = p as u32;
        let mut g = ExponentVector::zero(n);
        g.exps_mut()[k] = q as u32;
        top.push(f);
        bottom.push(g);
    }
    Ok(MonomialMatrix::from_rows(vec![top, bottom]))
}
