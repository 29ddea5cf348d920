use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::order::SortKey;
use super::{Binomial, ExponentVector, GroebnerError, MonomialOrder};

/// Safety valves for a Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbConfig {
    /// Largest admissible weighted degree of a new basis element; `None`
    /// means 64 times the largest generator degree.
    pub max_degree: Option<u64>,
    pub max_basis: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_degree: None, max_basis: 10_000 }
    }
}

impl GbConfig {
    fn degree_cap(&self, gens: &[Binomial], order: &MonomialOrder) -> u64 {
        self.max_degree.unwrap_or_else(|| {
            64 * gens.iter().map(|g| order.degree(g.plus()).max(order.degree(g.minus()))).max().unwrap_or(1).max(1)
        })
    }
}

/// Buchberger S-binomial of two sign-normalized binomials; `None` if zero.
pub fn s_binomial(f: &Binomial, g: &Binomial, order: &MonomialOrder) -> Option<Binomial> {
    let l = f.plus().lcm(g.plus());
    let a = l.replace(f.plus(), f.minus());
    let b = l.replace(g.plus(), g.minus());
    Binomial::oriented(a, b, order)
}

/// Full normal form of `f` modulo `basis` (both terms reduced).
pub fn reduce(f: &Binomial, basis: &[Binomial], order: &MonomialOrder) -> Option<Binomial> {
    let masks: Vec<u64> = basis.iter().map(|b| b.plus().support_mask()).collect();
    let find = |m: &ExponentVector| -> Option<&Binomial> {
        let mm = m.support_mask();
        basis.iter().zip(&masks).find(|(b, &bm)| bm & !mm == 0 && b.plus().divides(m)).map(|(b, _)| b)
    };
    reduce_with(f.plus().clone(), f.minus().clone(), order, find)
}

fn reduce_with<'a, F>(mut a: ExponentVector, mut b: ExponentVector, order: &MonomialOrder, find: F) -> Option<Binomial>
where
    F: Fn(&ExponentVector) -> Option<&'a Binomial>,
{
    loop {
        match order.cmp(&a, &b) {
            Ordering::Equal => return None,
            Ordering::Less => std::mem::swap(&mut a, &mut b),
            Ordering::Greater => {}
        }
        if let Some(g) = find(&a) {
            a = a.replace(g.plus(), g.minus());
            continue;
        }
        if let Some(g) = find(&b) {
            b = b.replace(g.plus(), g.minus());
            continue;
        }
        let out = Binomial::new(a, b).expect("terms differ");
        debug_assert!(out.is_normalized(order));
        return Some(out);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    key: SortKey,
    lcm: ExponentVector,
    i: usize,
    j: usize,
}

#[derive(Debug, Clone)]
struct Element {
    poly: Binomial,
    mask: u64,
}

/// Incremental Buchberger engine with the Gebauer–Möller pair criteria.
///
/// Generators may be added at any time; [`Buchberger::complete`] brings the
/// internal basis back to a Gröbner basis of everything added so far.
#[derive(Debug, Clone)]
pub struct Buchberger<'o> {
    order: &'o MonomialOrder,
    elems: Vec<Element>,
    active: Vec<usize>,
    pairs: BTreeSet<Pair>,
    degree_cap: u64,
    max_basis: usize,
}

impl<'o> Buchberger<'o> {
    pub fn new(order: &'o MonomialOrder, degree_cap: u64, max_basis: usize) -> Self {
        Buchberger { order, elems: Vec::new(), active: Vec::new(), pairs: BTreeSet::new(), degree_cap, max_basis }
    }

    /// Engine seeded with `gens` and the caps derived from `cfg`, not yet completed.
    pub fn with_generators(order: &'o MonomialOrder, gens: &[Binomial], cfg: &GbConfig) -> Result<Self, GroebnerError> {
        let mut engine = Buchberger::new(order, cfg.degree_cap(gens, order), cfg.max_basis);
        for g in gens {
            engine.add(g)?;
        }
        Ok(engine)
    }

    fn find_divisor(&self, m: &ExponentVector) -> Option<&Binomial> {
        let mm = m.support_mask();
        self.active
            .iter()
            .map(|&k| &self.elems[k])
            .find(|e| e.mask & !mm == 0 && e.poly.plus().divides(m))
            .map(|e| &e.poly)
    }

    /// Normal form modulo the current basis.
    pub fn reduce(&self, f: &Binomial) -> Option<Binomial> {
        reduce_with(f.plus().clone(), f.minus().clone(), self.order, |m| self.find_divisor(m))
    }

    fn reduce_terms(&self, a: ExponentVector, b: ExponentVector) -> Option<Binomial> {
        reduce_with(a, b, self.order, |m| self.find_divisor(m))
    }

    /// Adds a generator; pairs are queued but not processed.
    pub fn add(&mut self, f: &Binomial) -> Result<(), GroebnerError> {
        if let Some(h) = self.reduce_terms(f.plus().clone(), f.minus().clone()) {
            self.insert(h)?;
        }
        Ok(())
    }

    pub fn complete(&mut self) -> Result<(), GroebnerError> {
        while let Some(p) = self.pairs.pop_first() {
            let (f, g) = (&self.elems[p.i].poly, &self.elems[p.j].poly);
            let a = p.lcm.replace(f.plus(), f.minus());
            let b = p.lcm.replace(g.plus(), g.minus());
            if let Some(h) = self.reduce_terms(a, b) {
                self.insert(h)?;
            }
        }
        Ok(())
    }

    fn insert(&mut self, h: Binomial) -> Result<(), GroebnerError> {
        let degree = self.order.degree(h.plus());
        if degree > self.degree_cap {
            return Err(GroebnerError::DegreeBoundExceeded { degree, cap: self.degree_cap });
        }
        if self.active.len() >= self.max_basis {
            return Err(GroebnerError::BasisSizeExceeded { cap: self.max_basis });
        }
        let k = self.elems.len();
        let lm_h = h.plus().clone();
        self.elems.push(Element { mask: lm_h.support_mask(), poly: h });

        // Gebauer–Möller: candidate pairs (i, h) survive unless their lcm is
        // a proper multiple of another candidate lcm; coprime pairs are dropped
        // at the end (first criterion).
        let cands: Vec<(usize, ExponentVector, bool)> = self
            .active
            .iter()
            .map(|&i| {
                let lm_i = self.elems[i].poly.plus();
                (i, lm_i.lcm(&lm_h), lm_i.is_coprime(&lm_h))
            })
            .collect();
        let mut kept: Vec<&(usize, ExponentVector, bool)> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            let dominated = |q: &(usize, ExponentVector, bool)| q.1.divides(&c.1);
            if c.2 || !(cands[idx + 1..].iter().any(dominated) || kept.iter().any(|q| dominated(q))) {
                kept.push(c);
            }
        }

        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && elems[p.i].poly.plus().lcm(&lm_h) != p.lcm
                && elems[p.j].poly.plus().lcm(&lm_h) != p.lcm)
        });
        for (i, lcm, coprime) in kept {
            if !coprime {
                self.pairs.insert(Pair { key: self.order.sort_key(lcm), lcm: lcm.clone(), i: *i, j: k });
            }
        }

        let elems = &self.elems;
        self.active.retain(|&i| !lm_h.divides(elems[i].poly.plus()));
        self.active.push(k);
        Ok(())
    }

    /// Reduced Gröbner basis of the current (completed) state, sorted by
    /// leading monomial ascending.
    pub fn reduced_basis(&self) -> Vec<Binomial> {
        let mut out: Vec<Binomial> = self
            .active
            .iter()
            .map(|&k| {
                let g = &self.elems[k].poly;
                let mut tail = g.minus().clone();
                while let Some(d) = self.find_divisor(&tail) {
                    tail = tail.replace(d.plus(), d.minus());
                }
                Binomial::new(g.plus().clone(), tail).expect("tail is below the leading term")
            })
            .collect();
        out.sort_by(|a, b| self.order.cmp(a.plus(), b.plus()));
        out
    }

    pub fn basis_len(&self) -> usize {
        self.active.len()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Binomial], order: &MonomialOrder, cfg: &GbConfig) -> Result<Vec<Binomial>, GroebnerError> {
    let mut engine = Buchberger::with_generators(order, gens, cfg)?;
    engine.complete()?;
    Ok(engine.reduced_basis())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use proptest::prelude::*;

    use super::*;

    /// Dense polynomial with integer coefficients, as an independent oracle.
    type Poly = BTreeMap<Vec<u32>, i64>;

    fn poly(b: &Binomial) -> Poly {
        let mut p = Poly::new();
        *p.entry(b.plus().as_slice().to_vec()).or_default() += 1;
        *p.entry(b.minus().as_slice().to_vec()).or_default() -= 1;
        p.retain(|_, c| *c != 0);
        p
    }

    fn times(p: &Poly, m: &ExponentVector, c: i64) -> Poly {
        p.iter().map(|(e, k)| (e.iter().zip(m.as_slice()).map(|(a, b)| a + b).collect(), k * c)).collect()
    }

    fn add(mut p: Poly, q: &Poly) -> Poly {
        for (e, c) in q {
            *p.entry(e.clone()).or_default() += c;
        }
        p.retain(|_, c| *c != 0);
        p
    }

    fn oracle_s(f: &Binomial, g: &Binomial) -> Poly {
        let l = f.plus().lcm(g.plus());
        add(times(&poly(f), &l.div(f.plus()), 1), &times(&poly(g), &l.div(g.plus()), -1))
    }

    fn neg(p: &Poly) -> Poly {
        p.iter().map(|(e, c)| (e.clone(), -c)).collect()
    }

    fn b(s: &str, n: usize) -> Binomial {
        Binomial::parse(s, n).unwrap()
    }

    fn strings(v: &[Binomial]) -> Vec<String> {
        v.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn s_binomial_matches_dense_oracle() {
        let o = MonomialOrder::grevlex();
        let f = b("x1^2*x2 - x3^3", 3);
        let g = b("x1*x2^2 - x1*x3", 3);
        let s = s_binomial(&f, &g, &o).unwrap();
        let want = oracle_s(&f, &g);
        assert!(poly(&s) == want || poly(&s) == neg(&want));
        assert_eq!(s.to_string(), "x2*x3^3 - x1^2*x3");
        // identical leading terms and tails give zero
        assert_eq!(s_binomial(&f, &f, &o), None);
    }

    #[test]
    fn reduce_examples() {
        let o = MonomialOrder::lex();
        let basis = vec![b("x1 - x2^2", 3), b("x2^3 - x3", 3)];
        assert_eq!(reduce(&b("x1^2 - x3", 3), &basis, &o).unwrap().to_string(), "x2*x3 - x3");
        assert_eq!(reduce(&b("x1*x2 - x3", 3), &basis, &o), None);
        assert_eq!(reduce(&b("x3^2 - x3", 3), &basis, &o).unwrap().to_string(), "x3^2 - x3");
    }

    #[test]
    fn elimination_of_a_parametrization() {
        // x1 - t^2, x2 - t^3 with t the last variable
        let o = MonomialOrder::elimination(vec![2]);
        let gens = vec![b("x1 - x3^2", 3), b("x2 - x3^3", 3)];
        let gb = buchberger(&gens, &o, &GbConfig::default()).unwrap();
        let free: Vec<&Binomial> = gb.iter().filter(|g| g.plus()[2] == 0 && g.minus()[2] == 0).collect();
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].normalized(&MonomialOrder::lex()).to_string(), "x1^3 - x2^2");
    }

    #[test]
    fn twisted_cubic_lex_basis() {
        let o = MonomialOrder::lex();
        let gens = vec![b("x1*x3 - x2^2", 3), b("x2*x3 - x1^3", 3)];
        let gb = buchberger(&gens, &o, &GbConfig::default()).unwrap();
        assert!(gb.iter().all(|g| g.is_normalized(&o)));
        assert!(
            strings(&gb).contains(&"x1*x3 - x2^2".to_string()) || strings(&gb).contains(&"x2^2 - x1*x3".to_string())
        );
        for g in &gens {
            assert_eq!(reduce(g, &gb, &o), None);
        }
    }

    #[test]
    fn degree_cap_is_enforced() {
        let o = MonomialOrder::grevlex();
        let gens = vec![b("x1^5 - x2", 2), b("x2^3 - x1", 2)];
        let cfg = GbConfig { max_degree: Some(3), ..GbConfig::default() };
        assert!(matches!(buchberger(&gens, &o, &cfg), Err(GroebnerError::DegreeBoundExceeded { .. })));
        let cfg = GbConfig { max_basis: 1, ..GbConfig::default() };
        assert!(matches!(
            buchberger(&[b("x1^2 - x2", 3), b("x2^2 - x3", 3), b("x1*x3 - x2*x3", 3)], &o, &cfg),
            Err(GroebnerError::BasisSizeExceeded { cap: 1 })
        ));
    }

    fn monomial(n: usize) -> impl Strategy<Value = ExponentVector> {
        proptest::collection::vec(0u32..4, n).prop_map(ExponentVector::from)
    }

    fn binomials(n: usize) -> impl Strategy<Value = Vec<Binomial>> {
        proptest::collection::vec((monomial(n), monomial(n)), 1..5)
            .prop_map(|v| v.into_iter().filter_map(|(a, b)| Binomial::new(a, b)).collect())
    }

    fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::lex()),
            Just(MonomialOrder::grevlex()),
            Just(MonomialOrder::grevlex().with_weights(vec![3, 4, 5])),
            Just(MonomialOrder::elimination(vec![2])),
        ]
    }

    fn is_reduced(gb: &[Binomial], o: &MonomialOrder) -> bool {
        gb.iter().enumerate().all(|(i, g)| {
            g.is_normalized(o)
                && gb
                    .iter()
                    .enumerate()
                    .all(|(j, h)| i == j || !(h.plus().divides(g.plus()) || h.plus().divides(g.minus())))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn buchberger_criterion_holds(gens in binomials(3), o in order_strategy()) {
            let gb = buchberger(&gens, &o, &GbConfig::default()).unwrap();
            prop_assert!(is_reduced(&gb, &o));
            for g in &gens {
                prop_assert_eq!(reduce(g, &gb, &o), None);
            }
            for i in 0..gb.len() {
                for j in i + 1..gb.len() {
                    if let Some(s) = s_binomial(&gb[i], &gb[j], &o) {
                        let want = oracle_s(&gb[i], &gb[j]);
                        prop_assert!(poly(&s) == want || poly(&s) == neg(&want));
                        prop_assert_eq!(reduce(&s, &gb, &o), None);
                    }
                }
            }
        }

        #[test]
        fn reduced_basis_is_input_order_invariant(gens in binomials(3), o in order_strategy(), seed in any::<u64>()) {
            let mut shuffled = gens.clone();
            let k = shuffled.len();
            shuffled.rotate_left((seed as usize) % k.max(1));
            if seed % 2 == 0 {
                shuffled.reverse();
            }
            let a = buchberger(&gens, &o, &GbConfig::default()).unwrap();
            let b = buchberger(&shuffled, &o, &GbConfig::default()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn homogeneous_input_gives_homogeneous_basis(ms in proptest::collection::vec((monomial(3), 1usize..3), 1..5)) {
            // a monomial and a rotation of it have the same total degree
            let o = MonomialOrder::grevlex();
            let gens: Vec<Binomial> = ms
                .into_iter()
                .filter_map(|(a, r)| {
                    let mut v = a.as_slice().to_vec();
                    v.rotate_left(r);
                    Binomial::new(a, ExponentVector::from(v))
                })
                .collect();
            let gb = buchberger(&gens, &o, &GbConfig::default()).unwrap();
            prop_assert!(gb.iter().all(|g| g.is_homogeneous(&[1, 1, 1])));
        }
    }
}
