//! Ratliff–Rush closures through colon chains, and integral closures of
//! monomial ideals through their Newton polyhedra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

pub const DEFAULT_RR_WINDOW: usize = 3;
pub const RR_CAP: usize = 30;

/// A stabilized colon chain `C_1 ⊆ C_2 ⊆ ...`.
#[derive(Clone, Debug)]
pub struct RatliffRushResult<F: Field> {
    pub closure: Ideal<F>,
    /// First index `k` with `C_k = C_(k+1)`.
    pub stabilized_at: usize,
    /// Equalities confirmed after `C_k`.
    pub extra_window: usize,
    pub is_closed: bool,
    /// `λ(R/C_k)` along the chain.
    pub chain_colengths: Vec<u64>,
}

fn require_m_primary<F: Field>(ideal: &Ideal<F>) -> Result<()> {
    if ideal.is_m_primary()? {
        Ok(())
    } else {
        Err(Error::NotMPrimary)
    }
}

/// Runs an ascending chain until `window` consecutive equalities; since the
/// terms are nested, equality is equality of colengths.
fn stabilize<F: Field>(
    base: &Ideal<F>,
    window: usize,
    mut term: impl FnMut(usize, &Ideal<F>) -> Result<Ideal<F>>,
) -> Result<RatliffRushResult<F>> {
    let window = window.max(1);
    let mut current = term(1, base)?;
    let mut colengths = vec![current.colength()?];
    let mut run = 0;
    for k in 2..=RR_CAP + window {
        let next = term(k, &current)?;
        let c = next.colength()?;
        colengths.push(c);
        if c == colengths[colengths.len() - 2] {
            run += 1;
            if run == window {
                let stabilized_at = k - window;
                if stabilized_at > RR_CAP {
                    break;
                }
                let is_closed = current.colength()? == base.colength()?;
                return Ok(RatliffRushResult {
                    closure: current,
                    stabilized_at,
                    extra_window: window,
                    is_closed,
                    chain_colengths: colengths,
                });
            }
        } else {
            run = 0;
        }
        current = next;
    }
    Err(Error::NotStabilized { cap: RR_CAP })
}

/// `Ĩ = ∪ (I^(n+1) : I^n)`.
pub fn ratliff_rush_closure<F: Field>(ideal: &Ideal<F>, window: usize) -> Result<RatliffRushResult<F>> {
    require_m_primary(ideal)?;
    stabilize(ideal, window, |n, known| {
        ideal.power(n + 1)?.colon_known(&ideal.power(n)?, known)
    })
}

/// Ratliff–Rush closure of `I^n`, through the chain `(I^(n+k) : I^k)`,
/// which has the same union as the chain built from powers of `I^n`.
pub fn ratliff_rush_of_power<F: Field>(ideal: &Ideal<F>, n: usize, window: usize) -> Result<RatliffRushResult<F>> {
    require_m_primary(ideal)?;
    let power = ideal.power(n)?;
    stabilize(&power, window, |k, known| {
        ideal.power(n + k)?.colon_known(&ideal.power(k)?, known)
    })
}

/// `(n, Ĩⁿ = Iⁿ)` for `n = 1..=bound`.
pub fn rr_closed_powers<F: Field>(ideal: &Ideal<F>, bound: usize) -> Result<Vec<(usize, bool)>> {
    (1..=bound)
        .map(|n| Ok((n, ratliff_rush_of_power(ideal, n, DEFAULT_RR_WINDOW)?.is_closed)))
        .collect()
}

/// Exponent vectors of the minimal monomial generators.
fn monomial_exponents<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Vec<u16>>> {
    if ideal.ring().has_quotient() {
        return Err(Error::QuotientPresent);
    }
    for (index, g) in ideal.generators().iter().enumerate() {
        if !g.is_zero() && !g.is_monomial() {
            return Err(Error::NonMonomial { index });
        }
    }
    Ok(ideal
        .basis()?
        .elements()
        .iter()
        .filter_map(|g| g.leading_monomial().map(|m| m.exponents().to_vec()))
        .collect())
}

/// Whether `v` lies in `conv(points) + R^n_(>=0)`.
pub fn in_newton_polyhedron(points: &[Vec<u16>], v: &[u16]) -> bool {
    let Some((last, rest)) = points.split_last() else {
        return false;
    };
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let vars = rest.len();
    // weights λ_1..λ_(m-1), with λ_m = 1 - Σ λ_i; rows read a·λ <= b
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for i in 0..vars {
        let mut a = vec![BigRational::zero(); vars];
        a[i] = -BigRational::one();
        rows.push((a, BigRational::zero()));
    }
    rows.push((vec![BigRational::one(); vars], BigRational::one()));
    for (j, &vj) in v.iter().enumerate() {
        let a = rest.iter().map(|p| q(p[j] as i64 - last[j] as i64)).collect();
        rows.push((a, q(vj as i64 - last[j] as i64)));
    }
    fourier_motzkin_feasible(rows, vars)
}

/// Feasibility of `{λ : a·λ <= b}` by eliminating one variable at a time.
fn fourier_motzkin_feasible(mut rows: Vec<(Vec<BigRational>, BigRational)>, vars: usize) -> bool {
    let mut live: Vec<usize> = (0..vars).collect();
    while !live.is_empty() {
        // eliminate the variable producing the fewest new rows
        let (pick, _) = live
            .iter()
            .enumerate()
            .map(|(p, &x)| {
                let pos = rows.iter().filter(|r| r.0[x].is_positive()).count();
                let neg = rows.iter().filter(|r| r.0[x].is_negative()).count();
                (p, pos * neg)
            })
            .min_by_key(|&(_, cost)| cost)
            .expect("live variables");
        let x = live.swap_remove(pick);
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[x].is_positive() {
                pos.push(r);
            } else if r.0[x].is_negative() {
                neg.push(r);
            } else {
                keep.push(r);
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = ap[x].clone();
                let sn = -an[x].clone();
                let a: Vec<BigRational> = ap.iter().zip(an).map(|(p, n)| p / &sp + n / &sn).collect();
                let b = bp / &sp + bn / &sn;
                keep.push(normalize(a, b));
            }
        }
        keep.sort();
        keep.dedup();
        if keep.iter().any(|(a, b)| a.iter().all(Zero::is_zero) && b.is_negative()) {
            return false;
        }
        keep.retain(|(a, _)| !a.iter().all(Zero::is_zero));
        rows = keep;
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// Scales a row so its first nonzero coefficient has absolute value one.
fn normalize(a: Vec<BigRational>, b: BigRational) -> (Vec<BigRational>, BigRational) {
    match a.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
        Some(s) => (a.iter().map(|c| c / &s).collect(), b / s),
        None => (a, b),
    }
}

/// Integral closure of a monomial ideal: the monomials of the generator
/// exponent box lying in the Newton polyhedron, minimalized.
pub fn monomial_integral_closure<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let points = monomial_exponents(ideal)?;
    let ring = ideal.base();
    let nvars = ring.nvars();
    if points.is_empty() {
        return Ok(ideal.clone());
    }
    let bounds: Vec<u16> = (0..nvars)
        .map(|j| points.iter().map(|p| p[j]).max().unwrap_or(0))
        .collect();
    let gens: Vec<Monomial> = points
        .iter()
        .map(|p| Monomial::from_exponents(p.iter().copied()))
        .collect();
    let mut members: Vec<Monomial> = Vec::new();
    let mut v = vec![0u16; nvars];
    loop {
        let m = Monomial::from_exponents(v.iter().copied());
        let covered = members.iter().chain(&gens).any(|g| g.divides(&m));
        if !covered && in_newton_polyhedron(&points, &v) {
            members.push(m);
        }
        // odometer order visits every divisor of m before m
        let mut j = 0;
        loop {
            if j == nvars {
                return finish(ideal, gens, members);
            }
            if v[j] < bounds[j] {
                v[j] += 1;
                break;
            }
            v[j] = 0;
            j += 1;
        }
    }
}

fn finish<F: Field>(ideal: &Ideal<F>, gens: Vec<Monomial>, extra: Vec<Monomial>) -> Result<Ideal<F>> {
    let all: Vec<Monomial> = gens.into_iter().chain(extra).collect();
    let minimal: Vec<&Monomial> = all
        .iter()
        .filter(|m| !all.iter().any(|g| g != *m && g.divides(m)))
        .collect();
    let ring = ideal.base();
    let one = ring.field().one();
    let polys = minimal
        .into_iter()
        .map(|m| Polynomial::monomial(ring, one.clone(), m.clone()))
        .collect();
    Ideal::new(ideal.ring(), polys)
}

pub fn is_integrally_closed_monomial<F: Field>(ideal: &Ideal<F>) -> Result<bool> {
    ideal.equals(&monomial_integral_closure(ideal)?)
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
    fn ratliff_rush_examples() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "x^4, x^3*y, x*y^3, y^4").unwrap();
        let rr = ratliff_rush_closure(&i, DEFAULT_RR_WINDOW).unwrap();
        assert!(!rr.is_closed);
        let expected = Ideal::parse(&r, "x^4, x^3*y, x^2*y^2, x*y^3, y^4").unwrap();
        assert!(rr.closure.equals(&expected).unwrap());
        assert_eq!(rr_closed_powers(&i, 1).unwrap(), vec![(1, false)]);
        let m = Ideal::parse(&r, "x, y").unwrap();
        assert!(ratliff_rush_closure(&m, 3).unwrap().is_closed);
        assert!(rr_closed_powers(&m, 4).unwrap().iter().all(|p| p.1));
        assert!(rr_closed_powers(&m, 0).unwrap().is_empty());
        let p = Ideal::parse(&r, "x^2, y^2").unwrap();
        let rr = ratliff_rush_closure(&p, 3).unwrap();
        assert!(rr.is_closed);
        assert_eq!(rr.stabilized_at, 1);
    }

    #[test]
    fn not_m_primary_rejected() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "x^2").unwrap();
        assert!(matches!(ratliff_rush_closure(&i, 3), Err(Error::NotMPrimary)));
    }

    #[test]
    fn integral_closures() {
        let r = ring(&["x", "y"]);
        let cases = [
            ("x^3, y^3", "x^3, x^2*y, x*y^2, y^3"),
            ("x^2, y^2", "x^2, x*y, y^2"),
            ("x, y", "x, y"),
        ];
        for (input, output) in cases {
            let i = Ideal::parse(&r, input).unwrap();
            let c = monomial_integral_closure(&i).unwrap();
            assert!(c.equals(&Ideal::parse(&r, output).unwrap()).unwrap(), "{input}");
        }
        assert!(is_integrally_closed_monomial(&Ideal::parse(&r, "x^2, x*y, y^2").unwrap()).unwrap());
        assert!(!is_integrally_closed_monomial(&Ideal::parse(&r, "x^2, y^2").unwrap()).unwrap());
        assert!(matches!(
            monomial_integral_closure(&Ideal::parse(&r, "x + y, y^2").unwrap()),
            Err(Error::NonMonomial { index: 0 })
        ));
    }

    #[test]
    fn newton_membership() {
        let pts = vec![vec![4, 0], vec![0, 4]];
        assert!(in_newton_polyhedron(&pts, &[2, 2]));
        assert!(!in_newton_polyhedron(&pts, &[2, 1]));
        assert!(in_newton_polyhedron(&pts, &[3, 1]));
        assert!(!in_newton_polyhedron(&[], &[1, 1]));
    }
}
