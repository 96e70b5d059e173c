//! Generic elements, minimal reductions and reduction numbers.
//!
//! Equalities `I^(r+1) = J I^r` are decided in the local ring at the origin:
//! by Nakayama they are equivalent to `G_(r+1) = J*·G_r` in the associated
//! graded ring, which is a rank computation.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{sequence_spans, GradedRing};
use crate::hilbert::{hilbert_table, ring_dimension, HilbertPolicy};
use crate::ideal::Ideal;
use crate::linalg::Echelon;
use crate::poly::Polynomial;

pub const DEFAULT_REDUCTION_CAP: usize = 30;
pub const SUPERFICIAL_RETRIES: usize = 5;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Σ c_i g_i` over the generators with generic nonzero scalars.
pub fn generic_combination<F: Field>(ideal: &Ideal<F>, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let ring = ideal.base();
    let field = ring.field();
    let mut acc = Polynomial::zero(ring);
    for g in ideal.generators() {
        acc = &acc + &g.scale(&field.random_generic(rng));
    }
    acc
}

/// One rank check `dim J*·G_r` against `dim G_(r+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub r: usize,
    pub span: usize,
    pub target: usize,
}

impl ReductionStep {
    pub fn holds(&self) -> bool {
        self.span == self.target
    }
}

#[derive(Clone, Debug)]
pub struct ReductionData<F: Field> {
    pub j: Ideal<F>,
    pub elements: Vec<Polynomial<F>>,
    pub r: usize,
    pub seed: u64,
    /// The successful check at `r` and the failed one at `r - 1`.
    pub certificate: Vec<ReductionStep>,
}

/// Rank check for `I^(r+1) = J I^r` modulo `I^(r+2)`.
pub fn reduction_step<F: Field>(g: &mut GradedRing<F>, elements: &[Polynomial<F>], r: usize) -> Result<ReductionStep> {
    let field = g.field();
    let target = g.dim(r + 1)?;
    let mut ech = Echelon::new(&field);
    for x in elements {
        for row in g.multiplication_rows(r, 1, x)? {
            ech.insert(row);
            if ech.rank() == target {
                break;
            }
        }
        if ech.rank() == target {
            break;
        }
    }
    Ok(ReductionStep {
        r,
        span: ech.rank(),
        target,
    })
}

fn check_contained<F: Field>(ideal: &Ideal<F>, elements: &[Polynomial<F>]) -> Result<()> {
    for (index, x) in elements.iter().enumerate() {
        if !ideal.contains(x)? {
            return Err(Error::NotContained { index });
        }
    }
    Ok(())
}

/// Least `r <= cap` with `I^(r+1) = J I^r`, with the checks at `r` and
/// `r - 1`. The graded spans are computed through a bound that doubles
/// until the answer or the cap is reached.
pub fn reduction_number_with_certificate<F: Field>(
    ideal: &Ideal<F>,
    elements: &[Polynomial<F>],
    cap: usize,
) -> Result<(usize, Vec<ReductionStep>)> {
    check_contained(ideal, elements)?;
    let mut g = GradedRing::new(ideal);
    let mut bound = 2;
    loop {
        let bound_now = bound.min(cap + 1);
        let spans = sequence_spans(&mut g, elements, bound_now, false)?;
        if let Some(r) = (0..bound_now).find(|&r| spans.spans(r + 1)) {
            let step = |r: usize| ReductionStep {
                r,
                span: spans.ranks.last().map_or(0, |v| v[r + 1]),
                target: spans.dims[r + 1],
            };
            let mut cert = Vec::new();
            if r > 0 {
                cert.push(step(r - 1));
            }
            cert.push(step(r));
            return Ok((r, cert));
        }
        if bound_now == cap + 1 {
            return Err(Error::CapExceeded { cap });
        }
        bound *= 2;
    }
}

/// `r_J(I)` for `J` given by generators.
pub fn reduction_number<F: Field>(ideal: &Ideal<F>, j: &Ideal<F>, cap: usize) -> Result<usize> {
    Ok(reduction_number_with_certificate(ideal, j.generators(), cap)?.0)
}

/// `d` generic combinations of the generators and their reduction number.
pub fn minimal_reduction<F: Field>(ideal: &Ideal<F>, seed: u64, cap: usize) -> Result<ReductionData<F>> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let d = ring_dimension(ideal.ring())?;
    let mut rng = rng_for(seed);
    let elements: Vec<Polynomial<F>> = (0..d).map(|_| generic_combination(ideal, &mut rng)).collect();
    let (r, certificate) = reduction_number_with_certificate(ideal, &elements, cap)?;
    let j = Ideal::new(ideal.ring(), elements.clone())?;
    Ok(ReductionData {
        j,
        elements,
        r,
        seed,
        certificate,
    })
}

/// Histogram of `r_J(I)` over `samples` draws with seeds `seed + i`.
pub fn independence_sample<F: Field>(ideal: &Ideal<F>, samples: usize, seed: u64) -> Result<BTreeMap<usize, usize>> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let rs: Vec<usize> = (0..samples as u64)
        .into_par_iter()
        .map(|i| minimal_reduction(ideal, seed + i, DEFAULT_REDUCTION_CAP).map(|d| d.r))
        .collect::<Result<_>>()?;
    let mut hist = BTreeMap::new();
    for r in rs {
        *hist.entry(r).or_insert(0) += 1;
    }
    Ok(hist)
}

/// A generic element with `(I^(n+1) : x) ∩ I^c = I^n` checked for
/// `c <= n <= bound`.
#[derive(Clone, Debug)]
pub struct SuperficialCertificate<F: Field> {
    pub element: Polynomial<F>,
    pub c: usize,
    pub bound: usize,
    pub seed: u64,
    /// `dim ker(x*: G_n → G_(n+1))` for `n = 0..=bound`.
    pub kernel_dims: Vec<usize>,
}

/// `2·s + d`, with `s` the stabilization index of the Hilbert table.
pub fn default_superficial_bound<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let table = hilbert_table(ideal, HilbertPolicy::default())?;
    let s = table
        .stabilization_index()
        .ok_or(Error::NotStabilized { cap: table.n_max() })?;
    Ok(2 * s + table.d())
}

/// Kernel dimensions of `x*` on `G_0..=G_bound`. The identity
/// `(I^(n+1) : x) ∩ I^c = I^n` for all `n >= c` is equivalent to
/// injectivity of `x*` on `G_n` for all `n >= c`.
pub fn initial_form_kernels<F: Field>(ideal: &Ideal<F>, x: &Polynomial<F>, bound: usize) -> Result<Vec<usize>> {
    let mut g = GradedRing::new(ideal);
    let field = g.field();
    (0..=bound)
        .map(|n| {
            let rows = g.multiplication_rows(n, 1, x)?;
            let dim = rows.len();
            Ok(dim - Echelon::rank_of(&field, rows))
        })
        .collect()
}

/// Draws generic elements (seeds `seed`, `seed + 1`, ...) until one is
/// superficial on a window covering the upper half of `0..=bound`.
pub fn random_superficial_element<F: Field>(
    ideal: &Ideal<F>,
    seed: u64,
    bound: usize,
) -> Result<SuperficialCertificate<F>> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let d = ring_dimension(ideal.ring())?;
    if d == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let mut failed_at = 0;
    for attempt in 0..SUPERFICIAL_RETRIES as u64 {
        let draw_seed = seed + attempt;
        let x = generic_combination(ideal, &mut rng_for(draw_seed));
        let kernel_dims = initial_form_kernels(ideal, &x, bound)?;
        let c = kernel_dims.iter().rposition(|&k| k > 0).map_or(0, |n| n + 1);
        if c <= bound / 2 {
            return Ok(SuperficialCertificate {
                element: x,
                c,
                bound,
                seed: draw_seed,
                kernel_dims,
            });
        }
        failed_at = c - 1;
    }
    Err(Error::SuperficialSearchFailed {
        attempts: SUPERFICIAL_RETRIES,
        failed_at,
    })
}

/// `k` elements, each superficial for the image of `I` modulo the previous
/// ones; the quotient is formed by adjoining the element to the relations.
pub fn superficial_sequence<F: Field>(ideal: &Ideal<F>, k: usize, seed: u64) -> Result<Vec<SuperficialCertificate<F>>> {
    let d = ring_dimension(ideal.ring())?;
    if k > d {
        return Err(Error::SequenceLength { expected: d, found: k });
    }
    let mut current = ideal.clone();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let bound = default_superficial_bound(&current)?;
        let cert = random_superficial_element(&current, seed + (i as u64) * SUPERFICIAL_RETRIES as u64, bound)?;
        let ring = current.ring().with_extra_quotient(cert.element.clone());
        current = Ideal::new(&ring, ideal.generators().to_vec())?;
        out.push(cert);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::ring::RingPresentation;

    fn ideal(vars: &[&str], gens: &str) -> Ideal<PrimeField> {
        let base = PolyRing::new(vars, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
        Ideal::parse(&RingPresentation::polynomial(base), gens).unwrap()
    }

    #[test]
    fn reduction_numbers() {
        let m2 = ideal(&["x", "y"], "x^2, x*y, y^2");
        let j = Ideal::parse(m2.ring(), "x^2, y^2").unwrap();
        assert_eq!(reduction_number(&m2, &j, 30).unwrap(), 1);
        let m = ideal(&["x", "y"], "x, y");
        assert_eq!(reduction_number(&m, &m, 30).unwrap(), 0);
        let q = ideal(&["x", "y"], "x^2, y^2");
        let p = Ideal::parse(q.ring(), "x^2").unwrap();
        assert_eq!(reduction_number(&q, &p, 30), Err(Error::CapExceeded { cap: 30 }));
        let outside = Ideal::parse(q.ring(), "x").unwrap();
        assert_eq!(
            reduction_number(&q, &outside, 30),
            Err(Error::NotContained { index: 0 })
        );
    }

    #[test]
    fn minimal_reductions() {
        let m2 = ideal(&["x", "y"], "x^2, x*y, y^2");
        let data = minimal_reduction(&m2, 0, 30).unwrap();
        assert_eq!(data.r, 1);
        assert_eq!(data.elements.len(), 2);
        assert!(!data.certificate[0].holds() && data.certificate[1].holds());
        let again = minimal_reduction(&m2, 0, 30).unwrap();
        assert_eq!(again.elements, data.elements);
    }

    #[test]
    fn samples() {
        let m = ideal(&["x", "y"], "x, y");
        assert_eq!(independence_sample(&m, 10, 0).unwrap(), BTreeMap::from([(0, 10)]));
        assert!(independence_sample(&m, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn superficial_elements() {
        let m = ideal(&["x", "y"], "x, y");
        let cert = random_superficial_element(&m, 0, 6).unwrap();
        assert_eq!(cert.c, 0);
        let m2 = ideal(&["x", "y"], "x^2, x*y, y^2");
        assert_eq!(random_superficial_element(&m2, 3, 6).unwrap().c, 0);
        let line = ideal(&["x", "y"], "x");
        assert_eq!(random_superficial_element(&line, 0, 4).unwrap_err(), Error::NotMPrimary);
        let seq = superficial_sequence(&ideal(&["x", "y", "z"], "x, y, z"), 3, 0).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(superficial_sequence(&m, 0, 0).unwrap().is_empty());
    }
}
