//! Ambient rings: a polynomial ring, optionally modulo quotient relations.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{groebner_basis, GroebnerBasis, DEFAULT_PAIR_BUDGET};
use crate::parse::parse_polynomial_list;
use crate::poly::{PolyRing, Polynomial};

/// `k[x_1..x_n] / Q`. Ideals over a presentation store lifted generators and
/// adjoin `Q` before every basis computation.
#[derive(Clone, Debug)]
pub struct RingPresentation<F: Field> {
    base: Arc<PolyRing<F>>,
    quotient: Vec<Polynomial<F>>,
    quotient_basis: OnceLock<Result<Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> RingPresentation<F> {
    pub fn polynomial(base: Arc<PolyRing<F>>) -> Arc<Self> {
        Arc::new(RingPresentation {
            base,
            quotient: Vec::new(),
            quotient_basis: OnceLock::new(),
        })
    }

    pub fn quotient(base: Arc<PolyRing<F>>, relations: Vec<Polynomial<F>>) -> Result<Arc<Self>> {
        for r in &relations {
            if !r.ring().same_as(&base) {
                return Err(Error::MixedRings);
            }
        }
        let quotient = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Arc::new(RingPresentation {
            base,
            quotient,
            quotient_basis: OnceLock::new(),
        }))
    }

    /// Convenience constructor parsing relations written in the base ring.
    pub fn parse_quotient(base: Arc<PolyRing<F>>, relations: &str) -> Result<Arc<Self>> {
        let rels = parse_polynomial_list(relations, &base)?;
        Self::quotient(base, rels)
    }

    pub fn base(&self) -> &Arc<PolyRing<F>> {
        &self.base
    }

    pub fn quotient_generators(&self) -> &[Polynomial<F>] {
        &self.quotient
    }

    /// Reduced Gröbner basis of the quotient relations, computed once.
    pub fn quotient_basis(&self) -> Result<&Arc<GroebnerBasis<F>>> {
        self.quotient_basis
            .get_or_init(|| groebner_basis(&self.base, &self.quotient, DEFAULT_PAIR_BUDGET).map(Arc::new))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn has_quotient(&self) -> bool {
        !self.quotient.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn field(&self) -> &F {
        self.base.field()
    }

    pub fn field_spec(&self) -> FieldSpec {
        FieldSpec::new(self.base.field().characteristic()).expect("validated field")
    }

    /// The same ring with one more relation.
    pub fn with_extra_quotient(&self, extra: Polynomial<F>) -> Arc<Self> {
        let mut quotient = self.quotient.clone();
        if !extra.is_zero() {
            quotient.push(extra);
        }
        Arc::new(RingPresentation {
            base: self.base.clone(),
            quotient,
            quotient_basis: OnceLock::new(),
        })
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.base.same_as(&other.base) && self.quotient == other.quotient)
    }
}
