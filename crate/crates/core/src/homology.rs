//! The complexes `C.(x_1, ..., x_d, n)` with `(R/I^(n-i))^C(d,i)` in
//! position `i` (counted from the right) and Koszul differentials, their
//! homology lengths, and the resulting formulas for `e_1` and `e_2`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::{delta_p_minus_h, fit_hilbert_polynomial, hilbert_table, HilbertFit, HilbertPolicy, HilbertTable};
use crate::ideal::Ideal;
use crate::lengths::ReductionLengths;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::Polynomial;
use crate::quotient::QuotientSpace;
use crate::reduction::reduction_number_with_certificate;

pub const DEFAULT_HOMOLOGY_CAP: usize = 40;
/// Largest total dimension `Σ dim C_i` of a slice the context will build.
pub const DEFAULT_SLICE_LIMIT: usize = 5_000_000;
/// Consecutive exact slices required before the sums stop.
pub const ZERO_WINDOW: usize = 3;

/// One complex `C.(n)` with its differentials as sparse rows.
#[derive(Clone, Debug)]
pub struct ComplexSlice<F: Field> {
    pub n: usize,
    pub d: usize,
    /// `dim C_i` for `i = 0..=d`.
    pub term_dims: Vec<usize>,
    /// `differentials[i - 1]` holds `∂_i: C_i → C_(i-1)`, one row per basis
    /// element of `C_i`.
    pub differentials: Vec<Vec<SparseVec<F>>>,
    /// `rank ∂_i` for `i = 1..=d` (index `i - 1`).
    pub ranks: Vec<usize>,
    /// `λ(H_i)` for `i = 0..=d`.
    pub homology: Vec<usize>,
}

impl<F: Field> ComplexSlice<F> {
    /// `Σ (-1)^i dim C_i`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.term_dims)
    }

    /// `Σ (-1)^i λ(H_i)`.
    pub fn homology_characteristic(&self) -> i64 {
        alternating(&self.homology)
    }

    /// `H_i = 0` for every `i >= 1`.
    pub fn is_exact_above_zero(&self) -> bool {
        self.homology[1..].iter().all(|&h| h == 0)
    }

    /// Checks `∂_(i-1) ∘ ∂_i = 0` by composing the sparse rows.
    pub fn composes_to_zero(&self, field: &F) -> bool {
        for i in 2..=self.d {
            let outer = &self.differentials[i - 2];
            for row in &self.differentials[i - 1] {
                let mut acc: HashMap<usize, F::Elem> = HashMap::new();
                for (k, c) in row {
                    for (col, e) in &outer[*k] {
                        let v = acc.entry(*col).or_insert_with(|| field.zero());
                        *v = field.add(v, &field.mul(c, e));
                    }
                }
                if acc.values().any(|v| !field.is_zero(v)) {
                    return false;
                }
            }
        }
        true
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Subsets of `0..d` of size `i` as bit masks, in increasing order.
fn subsets(d: usize, i: usize) -> Vec<u32> {
    (0u32..1 << d).filter(|s| s.count_ones() as usize == i).collect()
}

/// `R/I^k`, with `I^k = R` for `k <= 0`.
fn quotient_by_power<F: Field>(ideal: &Ideal<F>, k: i64) -> Result<Option<std::sync::Arc<QuotientSpace<F>>>> {
    if k <= 0 {
        Ok(None)
    } else {
        Ok(Some(ideal.power(k as usize)?.quotient_space()?.clone()))
    }
}

/// Ranks of `∂_d, ..., ∂_1`, returned as `rank ∂_i` at index `i - 1`.
///
/// Basis vectors of `C_i` off the pivot columns of an echelon basis of
/// `im ∂_(i+1)` span a complement of that image, so only their rows of `∂_i`
/// are reduced; the dependent ones then number `λ(H_i)`.
fn ranks_top_down<F: Field>(field: &F, differentials: &[Vec<SparseVec<F>>], term_dims: &[usize]) -> Vec<usize> {
    let d = differentials.len();
    let mut ranks = vec![0; d];
    let mut skip = vec![false; term_dims[d]];
    for i in (1..=d).rev() {
        let mut ech = Echelon::new(field);
        for (row, &skipped) in differentials[i - 1].iter().zip(&skip).rev() {
            if !skipped {
                ech.insert(row.clone());
            }
        }
        ranks[i - 1] = ech.rank();
        skip = (0..term_dims[i - 1]).map(|c| ech.is_pivot(c)).collect();
    }
    ranks
}

fn check_sequence<F: Field>(ideal: &Ideal<F>, sequence: &[Polynomial<F>], d: usize) -> Result<()> {
    if sequence.len() != d {
        return Err(Error::SequenceLength {
            expected: d,
            found: sequence.len(),
        });
    }
    for (index, x) in sequence.iter().enumerate() {
        if !ideal.contains(x)? {
            return Err(Error::ElementOutsideIdeal { index });
        }
    }
    Ok(())
}

/// Builds `C.(x_1, ..., x_d, n)`; `d` is the length of the sequence.
pub fn build_complex_slice<F: Field>(ideal: &Ideal<F>, sequence: &[Polynomial<F>], n: i64) -> Result<ComplexSlice<F>> {
    let d = sequence.len();
    check_sequence(ideal, sequence, d)?;
    let field = ideal.base().field().clone();
    let spaces = (0..=d)
        .map(|i| quotient_by_power(ideal, n - i as i64))
        .collect::<Result<Vec<_>>>()?;
    let module_dim = |i: usize| spaces[i].as_ref().map_or(0, |s| s.dim());
    let masks: Vec<Vec<u32>> = (0..=d).map(|i| subsets(d, i)).collect();
    let term_dims: Vec<usize> = (0..=d).map(|i| masks[i].len() * module_dim(i)).collect();
    let mut differentials = Vec::with_capacity(d);
    for i in 1..=d {
        let mut rows = Vec::with_capacity(term_dims[i]);
        if let (Some(src), Some(dst)) = (&spaces[i], &spaces[i - 1]) {
            let width = dst.dim();
            let position: HashMap<u32, usize> = masks[i - 1].iter().enumerate().map(|(k, &s)| (s, k)).collect();
            for &s in &masks[i] {
                let members: Vec<usize> = (0..d).filter(|j| s >> j & 1 == 1).collect();
                for m in src.monomials() {
                    let mut row: SparseVec<F> = Vec::new();
                    for (t, &j) in members.iter().enumerate() {
                        let offset = position[&(s & !(1 << j))] * width;
                        let sign_negative = t % 2 == 1;
                        for (col, c) in dst.product_coordinates(m, &sequence[j]) {
                            let c = if sign_negative { field.neg(&c) } else { c };
                            row.push((offset + col, c));
                        }
                    }
                    row.sort_by_key(|e| e.0);
                    rows.push(row);
                }
            }
        } else {
            rows.resize(term_dims[i], Vec::new());
        }
        differentials.push(rows);
    }
    let ranks = ranks_top_down(&field, &differentials, &term_dims);
    let rank_of = |i: usize| if i == 0 || i > d { 0 } else { ranks[i - 1] };
    let homology = (0..=d).map(|i| term_dims[i] - rank_of(i) - rank_of(i + 1)).collect();
    Ok(ComplexSlice {
        n: n.max(0) as usize,
        d,
        term_dims,
        differentials,
        ranks,
        homology,
    })
}

/// `h_i = Σ_n λ(H_i(C.(n)))` and `k_i = Σ_n (n-1) λ(H_i(C.(n)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmTotals {
    /// `h_1..h_d`.
    pub h: Vec<u64>,
    /// `k_2..k_d`.
    pub k: Vec<u64>,
    /// Last `n` with nonzero `H_i`, `i >= 1`; zero when there is none.
    pub support_max: usize,
    /// Last `n` examined.
    pub stop: usize,
    pub cap_used: usize,
    /// `λ(H_i(C.(n)))` for `n = 1..=stop`, `i = 0..=d`.
    pub slices: Vec<Vec<usize>>,
}

/// Shared data for the homology computations on one reduction.
#[derive(Debug)]
pub struct HmContext<F: Field> {
    pub ideal: Ideal<F>,
    pub sequence: Vec<Polynomial<F>>,
    pub r: usize,
    pub table: HilbertTable,
    pub fit: HilbertFit,
    pub lengths: ReductionLengths<F>,
    pub slice_limit: usize,
}

impl<F: Field> HmContext<F> {
    /// Verifies that the sequence generates a reduction and gathers the
    /// Hilbert data.
    pub fn new(ideal: &Ideal<F>, sequence: &[Polynomial<F>]) -> Result<Self> {
        let table = hilbert_table(ideal, HilbertPolicy::default())?;
        check_sequence(ideal, sequence, table.d())?;
        let fit = fit_hilbert_polynomial(&table)?;
        let (r, _) = reduction_number_with_certificate(ideal, sequence, crate::reduction::DEFAULT_REDUCTION_CAP)?;
        let lengths = ReductionLengths::new(ideal, sequence, r)?;
        Ok(HmContext {
            ideal: ideal.clone(),
            sequence: sequence.to_vec(),
            r,
            table,
            fit,
            lengths,
            slice_limit: DEFAULT_SLICE_LIMIT,
        })
    }

    pub fn d(&self) -> usize {
        self.table.d()
    }

    /// `λ(R/I^k)`, read from the table or the fitted polynomial.
    fn colength_of_power(&self, k: i64) -> usize {
        let v = if k > self.table.n_max() as i64 {
            self.fit.polynomial.eval(k)
        } else {
            self.table.value(k)
        };
        usize::try_from(v).unwrap_or(usize::MAX)
    }

    /// `Σ dim C_i` for `C.(n)`, without building it.
    pub fn slice_size(&self, n: usize) -> usize {
        let d = self.d();
        let mut binom = 1usize;
        let mut total = 0usize;
        for i in 0..=d {
            total = total.saturating_add(binom.saturating_mul(self.colength_of_power(n as i64 - i as i64)));
            binom = binom * (d - i) / (i + 1);
        }
        total
    }

    pub fn slice(&self, n: usize) -> Result<ComplexSlice<F>> {
        if self.slice_size(n) > self.slice_limit {
            return Err(Error::Resource {
                what: format!("complex slice C.({n})"),
                limit: self.slice_limit,
            });
        }
        build_complex_slice(&self.ideal, &self.sequence, n as i64)
    }

    /// Sums homology until `ZERO_WINDOW` exact slices follow
    /// `max(r, postulation) + d`.
    pub fn totals(&self, cap: usize) -> Result<HmTotals> {
        let d = self.d();
        let threshold = (self.r as i64).max(self.fit.postulation).max(0) as usize + d;
        let mut h = vec![0u64; d];
        let mut k = vec![0u64; d.saturating_sub(1)];
        let mut slices = Vec::new();
        let mut support_max = 0;
        let mut run = 0;
        for n in 1..=cap {
            let slice = self.slice(n)?;
            for i in 1..=d {
                let len = slice.homology[i] as u64;
                h[i - 1] += len;
                if i >= 2 {
                    k[i - 2] += (n as u64 - 1) * len;
                }
            }
            if slice.is_exact_above_zero() {
                if n > threshold {
                    run += 1;
                }
            } else {
                support_max = n;
                run = 0;
            }
            slices.push(slice.homology);
            if run == ZERO_WINDOW {
                return Ok(HmTotals {
                    h,
                    k,
                    support_max,
                    stop: n,
                    cap_used: cap,
                    slices,
                });
            }
        }
        Err(Error::Resource {
            what: "homology summation".into(),
            limit: cap,
        })
    }

    /// `(lhs, rhs, rhs')` with `lhs = Δ^d[P - H](n)`,
    /// `rhs = λ(I^n/(I^n ∩ J)) - Σ_{i>=1} (-1)^i λ(H_i)` and
    /// `rhs' = λ(I^n/J I^(n-1)) - Σ_{i>=2} (-1)^i λ(H_i)`.
    pub fn delta_identity(&self, n: usize) -> Result<(BigInt, BigInt, BigInt)> {
        let lhs = delta_p_minus_h(&self.table, &self.fit, n as i64);
        let slice = self.slice(n)?;
        // λ(I^n/(I^n ∩ J)) = λ(R/J) - λ(R/(I^n + J)) and H_0 = R/(I^n + J)
        let outside = self.lengths.colength_j() as i64 - slice.homology[0] as i64;
        let correction = |from: usize| -> i64 {
            (from..=self.d())
                .map(|i| {
                    let v = slice.homology[i] as i64;
                    if i % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .sum()
        };
        let rhs = outside - correction(1);
        let rhs2 = self.lengths.excess(n) as i64 - correction(2);
        Ok((lhs, BigInt::from(rhs), BigInt::from(rhs2)))
    }

    /// `e_1 = Σ λ(I^n/J I^(n-1)) - Σ_{i>=2} (-1)^i h_i` and
    /// `e_2 = Σ (n-1) λ(I^n/J I^(n-1)) - Σ_{i>=2} (-1)^i k_i`.
    pub fn e1_e2(&self, totals: &HmTotals) -> (BigInt, BigInt) {
        let signed = |v: &[u64], first: usize| -> BigInt {
            v.iter()
                .enumerate()
                .map(|(t, &x)| {
                    let b = BigInt::from(x);
                    if (t + first).is_multiple_of(2) {
                        b
                    } else {
                        -b
                    }
                })
                .sum()
        };
        let e1 = BigInt::from(self.lengths.excess_sum()) - signed(&totals.h[1..], 2);
        let e2 = BigInt::from(self.lengths.weighted_excess_sum()) - signed(&totals.k, 2);
        (e1, e2)
    }
}

pub fn homology_totals<F: Field>(ideal: &Ideal<F>, sequence: &[Polynomial<F>], cap: usize) -> Result<HmTotals> {
    HmContext::new(ideal, sequence)?.totals(cap)
}

pub fn delta_identity_check<F: Field>(
    ideal: &Ideal<F>,
    sequence: &[Polynomial<F>],
    n: usize,
) -> Result<(BigInt, BigInt, BigInt)> {
    HmContext::new(ideal, sequence)?.delta_identity(n)
}

pub fn e1_e2_via_hm<F: Field>(ideal: &Ideal<F>, sequence: &[Polynomial<F>]) -> Result<(BigInt, BigInt)> {
    let ctx = HmContext::new(ideal, sequence)?;
    let totals = ctx.totals(DEFAULT_HOMOLOGY_CAP)?;
    Ok(ctx.e1_e2(&totals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::ring::RingPresentation;

    fn setup(vars: &[&str], gens: &str, seq: &str) -> (Ideal<PrimeField>, Vec<Polynomial<PrimeField>>) {
        let base = PolyRing::new(vars, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
        let ring = RingPresentation::polynomial(base);
        let i = Ideal::parse(&ring, gens).unwrap();
        let s = Ideal::parse(&ring, seq).unwrap().generators().to_vec();
        (i, s)
    }

    #[test]
    fn maximal_ideal_slices() {
        let (i, s) = setup(&["x", "y"], "x, y", "x, y");
        let one = build_complex_slice(&i, &s, 1).unwrap();
        assert_eq!(one.term_dims, vec![1, 0, 0]);
        assert_eq!(one.homology, vec![1, 0, 0]);
        let two = build_complex_slice(&i, &s, 2).unwrap();
        assert_eq!(two.term_dims, vec![3, 2, 0]);
        assert_eq!(two.ranks, vec![2, 0]);
        assert_eq!(two.homology, vec![1, 0, 0]);
        let zero = build_complex_slice(&i, &s, 0).unwrap();
        assert!(zero.term_dims.iter().all(|&t| t == 0));
        for n in 0..6 {
            let c = build_complex_slice(&i, &s, n).unwrap();
            assert!(c.composes_to_zero(&PrimeField::new(32003).unwrap()));
            assert_eq!(c.euler_characteristic(), c.homology_characteristic());
        }
    }

    #[test]
    fn square_of_maximal_ideal() {
        let (i, s) = setup(&["x", "y"], "x^2, x*y, y^2", "x^2, y^2");
        let ctx = HmContext::new(&i, &s).unwrap();
        let totals = ctx.totals(DEFAULT_HOMOLOGY_CAP).unwrap();
        assert_eq!(totals.h[1], 0);
        let (lhs, rhs, rhs2) = ctx.delta_identity(1).unwrap();
        assert_eq!((lhs.clone(), rhs), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(lhs, rhs2);
        assert_eq!(ctx.e1_e2(&totals), (BigInt::from(1), BigInt::from(0)));
    }

    #[test]
    fn sequence_checks() {
        let (i, s) = setup(&["x", "y"], "x^2, y^2", "x");
        assert!(matches!(
            build_complex_slice(&i, &s, 2),
            Err(Error::ElementOutsideIdeal { index: 0 })
        ));
        assert!(matches!(HmContext::new(&i, &s), Err(Error::SequenceLength { .. })));
    }
}
