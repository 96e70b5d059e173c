//! Bounds on `depth G(I)`.
//!
//! The descent runs inside `G`: for a generic minimal reduction
//! `(x_1, ..., x_d)`, level `k` asks whether `x_(k+1)*` is regular on
//! `G/(x_1*, ..., x_k*)G`, which is the associated graded ring of the
//! superficial quotient whenever the earlier initial forms are regular. A
//! nonzero class killed by every generator of `I` proves that the level
//! has depth zero. The Huckaba and Valabrega–Valla tests then sharpen the
//! bracket from the reduction side.

use crate::closure::{ratliff_rush_of_power, DEFAULT_RR_WINDOW};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{sequence_spans, GradedRing, RegularityCheck};
use crate::hilbert::{fit_hilbert_polynomial, hilbert_table, ring_dimension, HilbertPolicy};
use crate::ideal::Ideal;
use crate::lengths::ReductionLengths;
use crate::poly::Polynomial;
use crate::reduction::{
    default_superficial_bound, minimal_reduction, reduction_number_with_certificate, DEFAULT_REDUCTION_CAP,
};

pub const DEPTH_RETRIES: usize = 3;
/// Added to `r_J(I)` to get the default power bound.
pub const POWER_BOUND_MARGIN: usize = 5;

/// An element of `Ĩⁿ \ Iⁿ`: `element ∉ Iⁿ` while `element·I^k ⊆ I^(n+k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthZeroWitness<F: Field> {
    pub n: usize,
    pub k: usize,
    pub element: Polynomial<F>,
}

impl<F: Field> DepthZeroWitness<F> {
    pub fn verify(&self, ideal: &Ideal<F>) -> Result<bool> {
        if ideal.power(self.n)?.contains(&self.element)? {
            return Ok(false);
        }
        let target = ideal.power(self.n + self.k)?;
        for g in ideal.power(self.k)?.generators() {
            if !target.contains(&self.element.checked_mul(g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Least `n <= bound` whose power is not Ratliff–Rush closed.
pub fn depth_zero_witness<F: Field>(ideal: &Ideal<F>, bound: usize) -> Result<Option<DepthZeroWitness<F>>> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    for n in 1..=bound {
        let rr = ratliff_rush_of_power(ideal, n, DEFAULT_RR_WINDOW)?;
        if rr.is_closed {
            continue;
        }
        let power = ideal.power(n)?;
        for g in rr.closure.generators() {
            if !power.contains(g)? {
                return Ok(Some(DepthZeroWitness {
                    n,
                    k: rr.stabilized_at,
                    element: g.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// `Iⁿ ∩ J = J·Iⁿ⁻¹` for `1 <= n <= r`, compared through local lengths.
/// `r` must be the reduction number of `J = (elements)`.
pub fn vv_cm_test<F: Field>(ideal: &Ideal<F>, elements: &[Polynomial<F>], r: usize) -> Result<bool> {
    Ok(valabrega_valla(ideal, elements, r)?.is_none())
}

/// First `n` where the Valabrega–Valla equality fails.
fn valabrega_valla<F: Field>(ideal: &Ideal<F>, elements: &[Polynomial<F>], r: usize) -> Result<Option<usize>> {
    let (actual, _) = reduction_number_with_certificate(ideal, elements, r.max(DEFAULT_REDUCTION_CAP))?;
    if actual != r {
        return Err(Error::Inconsistent(format!(
            "stated reduction number {r}, computed {actual}"
        )));
    }
    let lengths = ReductionLengths::new(ideal, elements, r)?;
    Ok((1..=r).find(|&n| !lengths.valabrega_valla_holds(n)))
}

/// `e_1` against `Σ λ(Iⁿ/J·Iⁿ⁻¹)`; equality holds iff `depth G(I) >= d - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuckabaTest {
    pub sum: usize,
    pub e1: i64,
    pub holds: bool,
}

pub fn huckaba_test<F: Field>(ideal: &Ideal<F>, elements: &[Polynomial<F>], fitted_e1: i64) -> Result<HuckabaTest> {
    let (r, _) = reduction_number_with_certificate(ideal, elements, DEFAULT_REDUCTION_CAP)?;
    let sum = ReductionLengths::new(ideal, elements, r)?.excess_sum();
    Ok(HuckabaTest {
        sum,
        e1: fitted_e1,
        holds: fitted_e1 == sum as i64,
    })
}

pub fn depth_ge_dminus1_test<F: Field>(ideal: &Ideal<F>, elements: &[Polynomial<F>], fitted_e1: i64) -> Result<bool> {
    Ok(huckaba_test(ideal, elements, fitted_e1)?.holds)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DepthBounds {
    /// Degree bound for the regularity and power checks; `r_J + 5` if unset.
    pub power_bound: Option<usize>,
    /// Window for superficiality; `2·stab + d` if unset.
    pub superficial_bound: Option<usize>,
    pub retries: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsUsed {
    pub power_bound: usize,
    pub superficial_bound: usize,
    pub retries: usize,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DepthCertificate<F: Field> {
    /// `x_1*, ..., x_level*` regular on `G` through `bound`.
    RegularThrough {
        level: usize,
        bound: usize,
    },
    /// A nonzero socle of `G/(x_1*, ..., x_level*)G` in `degree`.
    Socle {
        level: usize,
        degree: usize,
        dim: usize,
    },
    /// A kernel without a socle class; inconclusive.
    Kernel {
        level: usize,
        degree: usize,
        dim: usize,
        seed: u64,
    },
    RatliffRush(DepthZeroWitness<F>),
    Huckaba(HuckabaTest),
    ValabregaValla {
        first_failure: Option<usize>,
    },
}

/// `lower <= depth G(I) <= upper`. Bounds resting on regularity are only
/// certified through `bounds.power_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthBracket<F: Field> {
    pub lower: usize,
    pub upper: usize,
    pub d: usize,
    /// The lower bound holds unconditionally, not just through the bound.
    pub lower_proved: bool,
    pub sequence: Vec<Polynomial<F>>,
    pub r: usize,
    pub certificates: Vec<DepthCertificate<F>>,
    pub bounds: BoundsUsed,
}

impl<F: Field> DepthBracket<F> {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Recomputes every certificate.
    pub fn verify(&self, ideal: &Ideal<F>) -> Result<bool> {
        for cert in &self.certificates {
            let ok = match cert {
                DepthCertificate::RegularThrough { level, bound } => {
                    let mut g = GradedRing::new(ideal);
                    sequence_spans(&mut g, &self.sequence[..*level], *bound, false)?
                        .regularity
                        .failure
                        .is_none()
                }
                DepthCertificate::Socle { level, degree, dim } => {
                    let mut g = GradedRing::new(ideal);
                    let check = sequence_spans(&mut g, &self.sequence, self.bounds.power_bound, true)?.regularity;
                    check.failure.is_some_and(|f| {
                        f.level == *level && f.socle.is_some_and(|s| s.degree == *degree && s.dim == *dim)
                    })
                }
                DepthCertificate::Kernel { .. } => true,
                DepthCertificate::RatliffRush(w) => w.verify(ideal)?,
                DepthCertificate::Huckaba(h) => huckaba_test(ideal, &self.sequence, h.e1)? == *h,
                DepthCertificate::ValabregaValla { first_failure } => {
                    valabrega_valla(ideal, &self.sequence, self.r)? == *first_failure
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Descent through `G` along a generic minimal reduction, retrying with fresh
/// seeds when a level fails without a socle witness.
pub fn sally_descent_bracket<F: Field>(ideal: &Ideal<F>, bounds: &DepthBounds, seed: u64) -> Result<DepthBracket<F>> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let d = ring_dimension(ideal.ring())?;
    let retries = bounds.retries.unwrap_or(DEPTH_RETRIES);
    let superficial_bound = match bounds.superficial_bound {
        Some(b) => b,
        None => default_superficial_bound(ideal)?,
    };
    let mut seeds = Vec::new();
    let mut certificates = Vec::new();
    let mut chosen = None;
    for attempt in 0..=retries as u64 {
        let draw = seed + attempt;
        seeds.push(draw);
        let red = minimal_reduction(ideal, draw, DEFAULT_REDUCTION_CAP)?;
        let bound = bounds.power_bound.unwrap_or(red.r + POWER_BOUND_MARGIN);
        let mut g = GradedRing::new(ideal);
        let check = sequence_spans(&mut g, &red.elements, bound, true)?.regularity;
        let conclusive = check.failure.as_ref().is_none_or(|f| f.socle.is_some());
        if let Some(f) = check.failure.as_ref().filter(|_| !conclusive) {
            certificates.push(DepthCertificate::Kernel {
                level: f.level,
                degree: f.degree,
                dim: f.kernel_dim,
                seed: draw,
            });
        }
        let last = attempt as usize == retries;
        if conclusive || last {
            chosen = Some((red, bound, check));
            break;
        }
    }
    let (red, bound, check) = chosen.expect("at least one attempt");
    bracket_from(
        ideal,
        d,
        red.elements,
        red.r,
        bound,
        check,
        certificates,
        BoundsUsed {
            power_bound: bound,
            superficial_bound,
            retries,
            seeds,
        },
    )
}

#[allow(clippy::too_many_arguments)]
fn bracket_from<F: Field>(
    ideal: &Ideal<F>,
    d: usize,
    sequence: Vec<Polynomial<F>>,
    r: usize,
    bound: usize,
    check: RegularityCheck,
    mut certificates: Vec<DepthCertificate<F>>,
    bounds: BoundsUsed,
) -> Result<DepthBracket<F>> {
    let mut lower = check.regular_prefix;
    let mut upper = d;
    let mut lower_proved = lower == 0;
    if lower > 0 {
        certificates.push(DepthCertificate::RegularThrough { level: lower, bound });
    }
    if let Some(f) = &check.failure {
        if let Some(s) = &f.socle {
            upper = f.level;
            certificates.push(DepthCertificate::Socle {
                level: f.level,
                degree: s.degree,
                dim: s.dim,
            });
            if f.level == 0 {
                // a socle class in G_s lies in Ĩ^(s+1) \ I^(s+1)
                if let Some(w) = depth_zero_witness(ideal, s.degree + 1)? {
                    certificates.push(DepthCertificate::RatliffRush(w));
                }
            }
        }
    }
    if d > 0 {
        let table = hilbert_table(ideal, HilbertPolicy::default())?;
        let fit = fit_hilbert_polynomial(&table)?;
        let e1 = i64::try_from(fit.coefficients.get(1)).map_err(|_| Error::Inconsistent("e_1 out of range".into()))?;
        let huckaba = huckaba_test(ideal, &sequence, e1)?;
        if huckaba.holds {
            if d - 1 > lower {
                lower = d - 1;
                lower_proved = true;
            }
        } else {
            upper = upper.min(d.saturating_sub(2));
        }
        certificates.push(DepthCertificate::Huckaba(huckaba));
        let first_failure = valabrega_valla(ideal, &sequence, r)?;
        if first_failure.is_none() {
            lower = d;
            lower_proved = true;
        } else {
            upper = upper.min(d - 1);
        }
        certificates.push(DepthCertificate::ValabregaValla { first_failure });
    } else {
        lower_proved = true;
    }
    if lower > upper {
        return Err(Error::Inconsistent(format!(
            "depth bracket [{lower}, {upper}] is empty; the sequence is likely not generic"
        )));
    }
    Ok(DepthBracket {
        lower,
        upper,
        d,
        lower_proved,
        sequence,
        r,
        certificates,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::ring::RingPresentation;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<RingPresentation<PrimeField>> {
        let base = PolyRing::new(vars, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
        RingPresentation::polynomial(base)
    }

    #[test]
    fn witnesses() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "x^4, x^3*y, x*y^3, y^4").unwrap();
        let w = depth_zero_witness(&i, 3).unwrap().unwrap();
        assert_eq!(w.n, 1);
        assert!(w.verify(&i).unwrap());
        let m = Ideal::parse(&r, "x, y").unwrap();
        assert!(depth_zero_witness(&m, 4).unwrap().is_none());
    }

    #[test]
    fn valabrega_valla_and_huckaba() {
        let r = ring(&["x", "y"]);
        let j = Ideal::parse(&r, "x^2, y^2").unwrap();
        assert!(vv_cm_test(&j, j.generators(), 0).unwrap());
        let m2 = Ideal::parse(&r, "x^2, x*y, y^2").unwrap();
        assert!(vv_cm_test(&m2, j.generators(), 1).unwrap());
        assert!(depth_ge_dminus1_test(&m2, j.generators(), 1).unwrap());
        assert!(matches!(
            vv_cm_test(&m2, j.generators(), 2),
            Err(Error::Inconsistent(_))
        ));
        let r3 = ring(&["x", "y", "z"]);
        let m = Ideal::parse(&r3, "x, y, z").unwrap();
        assert!(depth_ge_dminus1_test(&m, m.generators(), 0).unwrap());
    }

    #[test]
    fn brackets() {
        let r = ring(&["x", "y"]);
        let m = Ideal::parse(&r, "x, y").unwrap();
        let b = sally_descent_bracket(&m, &DepthBounds::default(), 0).unwrap();
        assert_eq!((b.lower, b.upper), (2, 2));
        assert!(b.lower_proved);
        assert!(b.verify(&m).unwrap());
        let i = Ideal::parse(&r, "x^4, x^3*y, x*y^3, y^4").unwrap();
        let b = sally_descent_bracket(&i, &DepthBounds::default(), 0).unwrap();
        assert_eq!((b.lower, b.upper), (0, 0));
        assert!(b
            .certificates
            .iter()
            .any(|c| matches!(c, DepthCertificate::RatliffRush(w) if w.n == 1)));
        assert!(b.verify(&i).unwrap());
        assert_eq!(b, sally_descent_bracket(&i, &DepthBounds::default(), 0).unwrap());
    }
}
