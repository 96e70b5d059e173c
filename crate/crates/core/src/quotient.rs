//! Finite-dimensional quotients `k[x]/G` in standard-monomial coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::linalg::SparseVec;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial, Term};

/// The quotient by a zero-dimensional Gröbner basis, with its standard
/// monomials indexed in decreasing order.
#[derive(Debug)]
pub struct QuotientSpace<F: Field> {
    gb: Arc<GroebnerBasis<F>>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    monomial_basis: bool,
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(gb: Arc<GroebnerBasis<F>>) -> Result<Self> {
        if !gb.is_zero_dimensional() {
            return Err(Error::InfiniteQuotient);
        }
        let monomials = gb.standard_monomials()?;
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let monomial_basis = gb.is_monomial();
        Ok(QuotientSpace {
            gb,
            monomials,
            index,
            monomial_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn basis(&self) -> &Arc<GroebnerBasis<F>> {
        &self.gb
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.gb.ring()
    }

    pub fn field(&self) -> &F {
        self.gb.ring().field()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of the class of `f`.
    pub fn coordinates(&self, f: &Polynomial<F>) -> Result<SparseVec<F>> {
        if !f.ring().same_as(self.ring()) {
            return Err(Error::MixedRings);
        }
        Ok(self.term_coordinates(f.terms()))
    }

    pub(crate) fn term_coordinates(&self, terms: &[Term<F>]) -> SparseVec<F> {
        let direct = self.monomial_basis || terms.iter().all(|t| self.index.contains_key(&t.mono));
        let mut v: SparseVec<F> = if direct {
            terms
                .iter()
                .filter_map(|t| self.index.get(&t.mono).map(|&i| (i, t.coeff.clone())))
                .collect()
        } else {
            self.gb
                .reduce_terms(terms)
                .into_iter()
                .map(|t| (self.index[&t.mono], t.coeff))
                .collect()
        };
        if !v.windows(2).all(|w| w[0].0 < w[1].0) {
            v.sort_by_key(|e| e.0);
        }
        v
    }

    /// Coordinates of `m · f` for a monomial `m`.
    pub fn product_coordinates(&self, m: &Monomial, f: &Polynomial<F>) -> SparseVec<F> {
        let terms: Vec<Term<F>> = f
            .terms()
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.mul(m),
            })
            .collect();
        self.term_coordinates(&terms)
    }

    /// The polynomial in standard-monomial form with the given coordinates.
    pub fn polynomial_from(&self, v: &[(usize, F::Elem)]) -> Polynomial<F> {
        let terms = v
            .iter()
            .map(|(i, c)| Term {
                coeff: c.clone(),
                mono: self.monomials[*i].clone(),
            })
            .collect();
        Polynomial::from_terms(self.ring(), terms)
    }
}
