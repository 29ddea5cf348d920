use std::sync::{Arc, Mutex};

use super::{buchberger, reduce, Binomial, GbConfig, GroebnerError, MonomialOrder};

/// Ideal given by binomial generators, with a write-once Gröbner basis
/// cache per monomial order.
#[derive(Debug)]
pub struct BinomialIdeal {
    nvars: usize,
    generators: Vec<Binomial>,
    cache: Mutex<Vec<(MonomialOrder, Arc<[Binomial]>)>>,
}

impl Clone for BinomialIdeal {
    fn clone(&self) -> Self {
        BinomialIdeal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache poisoned").clone()),
        }
    }
}

impl PartialEq for BinomialIdeal {
    /// Compares generator lists, not ideals; see [`ideal_equal`].
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.generators == other.generators
    }
}

impl BinomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Binomial>) -> Result<Self, GroebnerError> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(GroebnerError::LengthMismatch { left: nvars, right: g.nvars() });
        }
        Ok(BinomialIdeal { nvars, generators, cache: Mutex::new(Vec::new()) })
    }

    pub fn zero(nvars: usize) -> Self {
        BinomialIdeal { nvars, generators: Vec::new(), cache: Mutex::new(Vec::new()) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Binomial] {
        &self.generators
    }

    fn check_order(&self, order: &MonomialOrder) -> Result<(), GroebnerError> {
        match order.weights() {
            Some(w) if w.len() != self.nvars => Err(GroebnerError::LengthMismatch { left: self.nvars, right: w.len() }),
            _ => Ok(()),
        }
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner_basis(&self, order: &MonomialOrder, cfg: &GbConfig) -> Result<Arc<[Binomial]>, GroebnerError> {
        self.check_order(order)?;
        if let Some((_, gb)) = self.cache.lock().expect("cache poisoned").iter().find(|(o, _)| o == order) {
            return Ok(Arc::clone(gb));
        }
        let gb: Arc<[Binomial]> = buchberger(&self.generators, order, cfg)?.into();
        let mut cache = self.cache.lock().expect("cache poisoned");
        if let Some((_, existing)) = cache.iter().find(|(o, _)| o == order) {
            return Ok(Arc::clone(existing));
        }
        cache.push((order.clone(), Arc::clone(&gb)));
        Ok(gb)
    }

    /// `None` iff `f` lies in the ideal.
    pub fn normal_form(
        &self,
        f: &Binomial,
        order: &MonomialOrder,
        cfg: &GbConfig,
    ) -> Result<Option<Binomial>, GroebnerError> {
        if f.nvars() != self.nvars {
            return Err(GroebnerError::LengthMismatch { left: self.nvars, right: f.nvars() });
        }
        let gb = self.groebner_basis(order, cfg)?;
        Ok(reduce(f, &gb, order))
    }

    pub fn contains(&self, f: &Binomial, order: &MonomialOrder, cfg: &GbConfig) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f, order, cfg)?.is_none())
    }
}

/// Ideal equality by comparing reduced Gröbner bases.
pub fn ideal_equal(
    i: &BinomialIdeal,
    j: &BinomialIdeal,
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<bool, GroebnerError> {
    if i.nvars() != j.nvars() {
        return Err(GroebnerError::LengthMismatch { left: i.nvars(), right: j.nvars() });
    }
    Ok(i.groebner_basis(order, cfg)? == j.groebner_basis(order, cfg)?)
}
