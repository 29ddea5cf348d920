//! The defining ideal `I_H`: kernel of `k[x1..xn] -> k[t]`, `x_i -> t^{a_i}`.

use thiserror::Error;

use crate::groebner::{
    Binomial, BinomialIdeal, Buchberger, ExponentVector, GbConfig, GroebnerError, MonomialOrder, OrderKind,
};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("semigroup {0} has embedding dimension below 2")]
    TooFewGenerators(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `I_H` with a minimal homogeneous generating set.
#[derive(Debug, Clone)]
pub struct DefiningIdeal {
    semigroup: NumericalSemigroup,
    ideal: BinomialIdeal,
    weights: Vec<u64>,
    order: MonomialOrder,
    mu: usize,
}

impl DefiningIdeal {
    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn ideal(&self) -> &BinomialIdeal {
        &self.ideal
    }

    /// Minimal generators sorted by (weighted degree, exponents).
    pub fn generators(&self) -> &[Binomial] {
        self.ideal.generators()
    }

    /// The grading `deg x_i = a_i`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Weighted order on `k[x1..xn]` used for membership tests.
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn contains(&self, f: &Binomial, cfg: &GbConfig) -> Result<bool, GroebnerError> {
        self.ideal.contains(f, &self.order, cfg)
    }
}

/// Weighted version of `base` (lex or grevlex) for the grading of `weights`.
pub fn graded_order(base: &MonomialOrder, weights: &[u64]) -> MonomialOrder {
    match base.kind() {
        OrderKind::Lex => MonomialOrder::lex().with_weights(weights.to_vec()),
        _ => MonomialOrder::grevlex().with_weights(weights.to_vec()),
    }
}

/// Computes `I_H` as `<x_i - t^{a_i}> ∩ k[x]` under the block order
/// `t >> x` (weighted grevlex on the x-block), then minimalizes.
///
/// `base` selects the order on `k[x]` used for the minimal presentation and
/// later normal forms (`lex` or `grevlex`, graded by the generators).
pub fn toric_kernel(h: &NumericalSemigroup, base: &MonomialOrder, cfg: &GbConfig) -> Result<DefiningIdeal, IdealError> {
    let gens = h.generators().as_slice();
    let n = gens.len();
    if n < 2 {
        return Err(IdealError::TooFewGenerators(h.to_string()));
    }
    let t = n;
    let mut elim_weights = gens.to_vec();
    elim_weights.push(1);
    let elim = MonomialOrder::elimination(vec![t]).with_weights(elim_weights);

    let param: Vec<Binomial> = gens
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let x = ExponentVector::variable(n + 1, i);
            let mut tp = ExponentVector::zero(n + 1);
            tp.exps_mut()[t] = u32::try_from(a).expect("generator fits in u32");
            Binomial::oriented(x, tp, &elim).expect("x_i != t^a")
        })
        .collect();
    let cfg_elim = GbConfig { max_degree: cfg.max_degree.or(Some(64 * gens[n - 1])), ..*cfg };
    let gb = crate::groebner::buchberger(&param, &elim, &cfg_elim)?;

    let weights = gens.to_vec();
    let order = graded_order(base, &weights);
    let t_free: Vec<Binomial> = gb
        .iter()
        .filter(|g| g.plus()[t] == 0 && g.minus()[t] == 0)
        .map(|g| {
            let drop = |v: &ExponentVector| ExponentVector::from(&v.as_slice()[..n]);
            Binomial::oriented(drop(g.plus()), drop(g.minus()), &order).expect("distinct terms")
        })
        .collect();

    let minimal = minimal_generators(&t_free, &weights, &order, cfg)?;
    let mu = minimal.len();
    Ok(DefiningIdeal { semigroup: h.clone(), ideal: BinomialIdeal::new(n, minimal)?, weights, order, mu })
}

/// Sort key for presenting homogeneous binomials.
pub(crate) fn presentation_key(b: &Binomial, weights: &[u64]) -> (u64, ExponentVector, ExponentVector) {
    (b.degree(weights), b.plus().clone(), b.minus().clone())
}

/// Greedy graded minimalization: scan generators by ascending weighted
/// degree and keep each one not already in the ideal of those kept.
///
/// Generators must be homogeneous under `weights`; the count of the result
/// does not depend on tie-breaking.
pub fn minimal_generators(
    gens: &[Binomial],
    weights: &[u64],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<Vec<Binomial>, GroebnerError> {
    let mut sorted: Vec<Binomial> = gens.iter().map(|g| g.normalized(order)).collect();
    sorted.sort_by_key(|g| presentation_key(g, weights));
    sorted.dedup();

    let cap = cfg.max_degree.unwrap_or_else(|| 64 * sorted.iter().map(|g| g.degree(weights)).max().unwrap_or(1));
    let mut engine = Buchberger::new(order, cap, cfg.max_basis);
    let mut kept = Vec::new();
    for g in sorted {
        engine.complete()?;
        if engine.reduce(&g).is_some() {
            engine.add(&g)?;
            kept.push(g);
        }
    }
    Ok(kept)
}

/// Size of a minimal homogeneous generating set of the ideal of `gens`.
pub fn minimal_mu(
    gens: &[Binomial],
    weights: &[u64],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<usize, GroebnerError> {
    Ok(minimal_generators(gens, weights, order, cfg)?.len())
}

/// Every generator vanishes on `t -> (t^{a_1}, ..., t^{a_n})`.
pub fn substitution_check(d: &DefiningIdeal) -> bool {
    d.generators().iter().all(|g| g.is_homogeneous(d.weights()))
}

/// All exponent vectors of weighted degree exactly `degree`, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(weights: &[u64], degree: u64) -> Vec<ExponentVector> {
    fn go(weights: &[u64], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if i == weights.len() {
            if left == 0 {
                out.push(ExponentVector::from(cur.as_slice()));
            }
            return;
        }
        let w = weights[i];
        let mut e = left / w;
        loop {
            cur.push(e as u32);
            go(weights, i + 1, left - e * w, cur, out);
            cur.pop();
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, degree, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}
