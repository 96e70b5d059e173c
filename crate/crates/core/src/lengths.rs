//! Lengths of quotients by `J·I^k`, `I^n + J` and `I^n ∩ J` in the local ring
//! at the origin, computed inside the Artinian ring `A = R/I^N`.
//!
//! With `r = r_J(I)` and `N >= max(k + 1, r + 1)` one has `I^N ⊆ J I^k`
//! locally, and every quotient of `A` is supported at the origin, so these
//! lengths are plain dimensions of subspaces of `A`.

use std::sync::Arc;

use crate::error::Result;
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::Polynomial;
use crate::quotient::QuotientSpace;

/// Subspaces `U_k = I^k / I^N` and `T_k = (J I^(k-1) + I^N) / I^N` of `A`.
#[derive(Debug)]
pub struct TruncatedLengths<F: Field> {
    top: usize,
    space: Arc<QuotientSpace<F>>,
    powers: Vec<Echelon<F>>,
    spans: Vec<Echelon<F>>,
}

impl<F: Field> TruncatedLengths<F> {
    /// Builds `U_0..=U_top` and `T_1..=T_top` for `J = (elements)`.
    pub fn new(ideal: &Ideal<F>, elements: &[Polynomial<F>], top: usize) -> Result<Self> {
        let top = top.max(1);
        let space = ideal.power(top)?.quotient_space()?.clone();
        let field = space.field().clone();
        let powers = (0..=top)
            .map(|k| power_subspace(ideal, &space, k))
            .collect::<Result<Vec<_>>>()?;
        let mut spans: Vec<Echelon<F>> = (0..=top).map(|_| Echelon::new(&field)).collect();
        for x in elements {
            // x·U_(k-1) ⊆ T_k + x·C with C a complement of T_(k-1) in
            // U_(k-1); `T_0` is read as `T_1` (both are `J` times `A`).
            for k in (1..=top).rev() {
                let base = if k == 1 { 1 } else { k - 1 };
                let free: Vec<SparseVec<F>> = powers[k - 1]
                    .rows()
                    .iter()
                    .filter(|row| !spans[base].is_pivot(row[0].0))
                    .cloned()
                    .collect();
                for u in free {
                    let row = multiply(&space, x, &u)?;
                    spans[k].insert(row);
                }
            }
        }
        Ok(TruncatedLengths {
            top,
            space,
            powers,
            spans,
        })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `λ(R/I^N)`.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `λ(R / (J I^k + I^N))`; equals `λ(R/J I^k)` when `N >= max(k + 1, r + 1)`.
    pub fn colength_of_product(&self, k: usize) -> usize {
        self.dim() - self.spans[k + 1].rank()
    }

    /// `λ(R / (I^n + J))` for `n <= N`.
    pub fn colength_of_sum(&self, n: usize) -> usize {
        let mut ech = self.powers[n].clone();
        for row in self.spans[1].rows() {
            ech.insert(row.clone());
        }
        self.dim() - ech.rank()
    }

    /// `λ(R / I^n)` for `n <= N`.
    pub fn colength_of_power(&self, n: usize) -> usize {
        self.dim() - self.powers[n].rank()
    }
}

fn multiply<F: Field>(space: &QuotientSpace<F>, x: &Polynomial<F>, u: &SparseVec<F>) -> Result<SparseVec<F>> {
    if u.len() == 1 && space.field().is_one(&u[0].1) {
        Ok(space.product_coordinates(&space.monomials()[u[0].0], x))
    } else {
        let p = space.polynomial_from(u);
        space.coordinates(&x.checked_mul(&p)?)
    }
}

/// Echelon basis of `I^k / I^N`: `m - NF_{I^k}(m)` for the monomials standard
/// for `I^N` but not for `I^k`, each led by `m`.
fn power_subspace<F: Field>(ideal: &Ideal<F>, space: &QuotientSpace<F>, k: usize) -> Result<Echelon<F>> {
    let field = space.field().clone();
    let mut ech = Echelon::new(&field);
    if k == 0 {
        for i in 0..space.dim() {
            ech.insert(vec![(i, field.one())]);
        }
        return Ok(ech);
    }
    let power = ideal.power(k)?;
    let sub = power.quotient_space()?;
    let monomial = sub.basis().is_monomial();
    let ring = ideal.base();
    for (i, m) in space.monomials().iter().enumerate() {
        if sub.index_of(m).is_some() {
            continue;
        }
        let row = if monomial {
            vec![(i, field.one())]
        } else {
            let mono = Polynomial::monomial(ring, field.one(), m.clone());
            let nf = sub.basis().normal_form(&mono)?;
            space.coordinates(&mono.checked_sub(&nf)?)?
        };
        ech.insert(row);
    }
    Ok(ech)
}

/// Lengths attached to a reduction `J` of `I` with reduction number `r`.
#[derive(Debug)]
pub struct ReductionLengths<F: Field> {
    pub r: usize,
    table: TruncatedLengths<F>,
}

impl<F: Field> ReductionLengths<F> {
    pub fn new(ideal: &Ideal<F>, elements: &[Polynomial<F>], r: usize) -> Result<Self> {
        Ok(ReductionLengths {
            r,
            table: TruncatedLengths::new(ideal, elements, r + 1)?,
        })
    }

    /// `λ(R/J)`.
    pub fn colength_j(&self) -> usize {
        self.table.colength_of_product(0)
    }

    /// `λ(I^n / J I^(n-1))` for `n >= 1`; zero past `r`.
    pub fn excess(&self, n: usize) -> usize {
        if n == 0 || n > self.r {
            return 0;
        }
        self.table.colength_of_product(n - 1) - self.table.colength_of_power(n)
    }

    /// `λ(I^n / (I^n ∩ J)) = λ(R/J) - λ(R/(I^n + J))`, for `n <= r + 1`.
    pub fn outside_j(&self, n: usize) -> usize {
        self.colength_j() - self.table.colength_of_sum(n)
    }

    /// Whether `I^n ∩ J = J I^(n-1)`, compared through lengths, for
    /// `1 <= n <= r`.
    pub fn valabrega_valla_holds(&self, n: usize) -> bool {
        if n == 0 || n > self.r {
            return true;
        }
        // λ(R/(I^n ∩ J)) = λ(R/I^n) + λ(R/J) - λ(R/(I^n + J))
        let meet = self.table.colength_of_power(n) + self.colength_j() - self.table.colength_of_sum(n);
        meet == self.table.colength_of_product(n - 1)
    }

    /// `Σ_{n>=1} λ(I^n / J I^(n-1))`.
    pub fn excess_sum(&self) -> usize {
        (1..=self.r).map(|n| self.excess(n)).sum()
    }

    /// `Σ_{n>=2} (n-1) λ(I^n / J I^(n-1))`.
    pub fn weighted_excess_sum(&self) -> usize {
        (2..=self.r).map(|n| (n - 1) * self.excess(n)).sum()
    }
}
