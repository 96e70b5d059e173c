//! Hilbert–Samuel functions, their polynomials, series numerators and the
//! Hilbert coefficients.
//!
//! Differences are backward, `Δf(n) = f(n) - f(n-1)`, and `H(n) = 0` for
//! `n <= 0`. The polynomial is written
//! `P(x) = Σ (-1)^i e_i C(x + d - 1 - i, d - i)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ring::RingPresentation;

/// Generalized binomial coefficient `C(n, k)` for any integer `n`.
pub fn binomial(n: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Krull dimension of the ambient ring `k[x]/Q`.
pub fn ring_dimension<F: Field>(ring: &Arc<RingPresentation<F>>) -> Result<usize> {
    Ideal::zero(ring).krull_dimension()?.ok_or(Error::UnitIdeal)
}

/// Adaptive tabulation limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertPolicy {
    /// Consecutive indices over which `Δ^d H` must be constant.
    pub window: usize,
    /// Largest power computed.
    pub cap: usize,
}

impl Default for HilbertPolicy {
    fn default() -> Self {
        HilbertPolicy { window: 3, cap: 30 }
    }
}

/// Values `λ(R/I^n)` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertTable {
    values: Vec<BigInt>,
    d: usize,
    window: usize,
    stabilization_index: Option<usize>,
}

impl HilbertTable {
    /// Builds a table from known values (index 0 must be zero).
    pub fn from_values(values: Vec<BigInt>, d: usize, window: usize) -> Self {
        let mut t = HilbertTable {
            values,
            d,
            window,
            stabilization_index: None,
        };
        t.stabilization_index = t.find_stabilization();
        t
    }

    fn find_stabilization(&self) -> Option<usize> {
        let n_max = self.n_max();
        let last = self.delta_d(n_max as i64);
        let mut n0 = n_max;
        while n0 > 1 && self.delta_d(n0 as i64 - 1) == last {
            n0 -= 1;
        }
        if n_max + 1 >= n0 + self.window.max(1) && n_max >= 1 {
            Some(n0)
        } else {
            None
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Least `n` from which `Δ^d H` is constant through the table, provided
    /// that run covers the confirmation window.
    pub fn stabilization_index(&self) -> Option<usize> {
        self.stabilization_index
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilization_index.is_some()
    }

    /// `H(n)`, zero for `n <= 0`. Panics past the table.
    pub fn value(&self, n: i64) -> BigInt {
        if n <= 0 {
            BigInt::zero()
        } else {
            self.values[n as usize].clone()
        }
    }

    /// `λ(I^n / I^(n+1))` for `n = 0..n_max`.
    pub fn first_differences(&self) -> Vec<BigInt> {
        self.values.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// `Δ^d H(n)` by backward differences.
    pub fn delta_d(&self, n: i64) -> BigInt {
        backward_difference(|k| self.value(k), self.d, n)
    }
}

/// `Δ^k f(n) = Σ_j (-1)^j C(k, j) f(n - j)`.
pub fn backward_difference(f: impl Fn(i64) -> BigInt, k: usize, n: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k as i64, j) * f(n - j as i64);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `λ(R/I^n)`; in a quotient ring `λ(R/(Q + I^n))`.
pub fn hilbert_samuel_value<F: Field>(ideal: &Ideal<F>, n: usize) -> Result<BigInt> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    Ok(BigInt::from(ideal.power(n)?.colength()?))
}

/// Tabulates `H` until `Δ^d H` is constant over the policy window. Reaching
/// the cap first yields an unstabilized table.
pub fn hilbert_table<F: Field>(ideal: &Ideal<F>, policy: HilbertPolicy) -> Result<HilbertTable> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let d = ring_dimension(ideal.ring())?;
    let mut values = vec![BigInt::zero()];
    loop {
        let n = values.len();
        values.push(BigInt::from(ideal.power(n)?.colength()?));
        let table = HilbertTable::from_values(values.clone(), d, policy.window);
        if table.is_stabilized() && n > d || n >= policy.cap {
            return Ok(table);
        }
    }
}

/// Integer-valued polynomial stored by its backward differences at an
/// anchor point.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertPolynomial {
    anchor: i64,
    diffs: Vec<BigInt>,
}

impl HilbertPolynomial {
    /// The degree-`d` polynomial through `(n, f(n))` for
    /// `n = anchor - d ..= anchor`.
    pub fn interpolate(f: impl Fn(i64) -> BigInt, d: usize, anchor: i64) -> Self {
        let diffs = (0..=d).map(|j| backward_difference(&f, j, anchor)).collect();
        HilbertPolynomial { anchor, diffs }
    }

    pub fn degree_bound(&self) -> usize {
        self.diffs.len() - 1
    }

    /// Newton's backward formula, valid at every integer.
    pub fn eval(&self, n: i64) -> BigInt {
        let t = n - self.anchor;
        self.diffs
            .iter()
            .enumerate()
            .map(|(j, dj)| binomial(t + j as i64 - 1, j) * dj)
            .sum()
    }

    /// `(e_0, ..., e_d)` with `e_i = (-1)^i Δ^(d-i) P(0)`.
    pub fn coefficients(&self) -> CoefficientVector {
        let d = self.degree_bound();
        let e = (0..=d)
            .map(|i| {
                let v = backward_difference(|k| self.eval(k), d - i, 0);
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        CoefficientVector { e }
    }
}

/// Hilbert coefficients `(e_0, ..., e_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub e: Vec<BigInt>,
}

impl CoefficientVector {
    pub fn from_i64(e: &[i64]) -> Self {
        CoefficientVector {
            e: e.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.e.get(i).cloned().unwrap_or_default()
    }

    /// The polynomial `Σ (-1)^i e_i C(x + d - 1 - i, d - i)` at `x`.
    pub fn evaluate(&self, x: i64) -> BigInt {
        let d = self.e.len() as i64 - 1;
        self.e
            .iter()
            .enumerate()
            .map(|(i, ei)| {
                let b = binomial(x + d - 1 - i as i64, (d - i as i64) as usize) * ei;
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.e)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[BigInt]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Result of fitting the Hilbert polynomial to a stabilized table.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertFit {
    pub polynomial: HilbertPolynomial,
    pub coefficients: CoefficientVector,
    /// Largest `n >= 0` with `P(n) != H(n)`, or -1.
    pub postulation: i64,
}

pub fn fit_hilbert_polynomial(table: &HilbertTable) -> Result<HilbertFit> {
    let n0 = table
        .stabilization_index()
        .ok_or(Error::NotStabilized { cap: table.n_max() })?;
    let d = table.d();
    let anchor = table.n_max() as i64;
    let polynomial = HilbertPolynomial::interpolate(|k| table.value(k), d, anchor);
    let low = n0 as i64 - d as i64;
    for n in low.max(0)..=anchor {
        if polynomial.eval(n) != table.value(n) {
            return Err(Error::Inconsistent(format!(
                "fitted polynomial disagrees with H({n}) inside the stable range"
            )));
        }
    }
    let mut postulation = -1;
    for n in (0..low.max(0)).rev() {
        if polynomial.eval(n) != table.value(n) {
            postulation = n;
            break;
        }
    }
    let coefficients = polynomial.coefficients();
    Ok(HilbertFit {
        polynomial,
        coefficients,
        postulation,
    })
}

/// Numerator `f(t)` of `Σ λ(I^n/I^(n+1)) t^n = f(t) / (1 - t)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesNumerator {
    pub a: Vec<BigInt>,
}

impl SeriesNumerator {
    pub fn from_i64(a: &[i64]) -> Self {
        SeriesNumerator {
            a: a.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Coefficients of `f(t) / (1 - t)^d` up to `t^(len-1)`.
    pub fn expand(&self, d: usize, len: usize) -> Vec<BigInt> {
        (0..len)
            .map(|i| {
                self.a
                    .iter()
                    .enumerate()
                    .take(i + 1)
                    .map(|(k, ak)| series_weight(d, i - k) * ak)
                    .sum()
            })
            .collect()
    }

    pub fn sum(&self) -> BigInt {
        self.a.iter().sum()
    }
}

impl fmt::Display for SeriesNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.a)
    }
}

/// Coefficient of `t^n` in `(1 - t)^(-d)`.
fn series_weight(d: usize, n: usize) -> BigInt {
    if d == 0 {
        if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    } else {
        binomial((n + d - 1) as i64, d - 1)
    }
}

/// `a_i = h_i - Σ_{n<i} C(d+n, d-1) a_(i-1-n)` over the tabulated first
/// differences; the tail must vanish through the stable range.
pub fn series_numerator(table: &HilbertTable) -> Result<SeriesNumerator> {
    let n0 = table
        .stabilization_index()
        .ok_or(Error::NotStabilized { cap: table.n_max() })?;
    let d = table.d();
    let h = table.first_differences();
    let mut a: Vec<BigInt> = Vec::with_capacity(h.len());
    for i in 0..h.len() {
        let mut v = h[i].clone();
        for n in 0..i {
            v -= series_weight(d, n + 1) * &a[i - 1 - n];
        }
        a.push(v);
    }
    // beyond the stable range the numerator must have ended
    for (i, ai) in a.iter().enumerate().skip(n0.max(1)) {
        if !ai.is_zero() {
            return Err(Error::Inconsistent(format!(
                "series numerator coefficient a_{i} = {ai} inside the stable range"
            )));
        }
    }
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    Ok(SeriesNumerator { a })
}

/// `e_i = f^(i)(1) / i! = Σ_k C(k, i) a_k` for `i = 0..=d`.
pub fn coefficients_from_numerator(numerator: &SeriesNumerator, d: usize) -> CoefficientVector {
    let e = (0..=d)
        .map(|i| {
            numerator
                .a
                .iter()
                .enumerate()
                .map(|(k, ak)| binomial(k as i64, i) * ak)
                .sum()
        })
        .collect();
    CoefficientVector { e }
}

/// `Δ^d [P - H](n)` with `P` evaluated as a polynomial everywhere.
pub fn delta_p_minus_h(table: &HilbertTable, fit: &HilbertFit, n: i64) -> BigInt {
    backward_difference(|k| fit.polynomial.eval(k) - table.value(k), table.d(), n)
}

/// `e_i = Σ_{n>=i} C(n-1, i-1) Δ^d [P - H](n)` for `i = 1..=d`; the summand
/// vanishes past `postulation + d`.
pub fn ei_via_delta_formula(table: &HilbertTable, fit: &HilbertFit) -> Vec<BigInt> {
    let d = table.d();
    let top = fit.postulation + d as i64;
    let deltas: Vec<(i64, BigInt)> = (1..=top.max(0)).map(|n| (n, delta_p_minus_h(table, fit, n))).collect();
    (1..=d)
        .map(|i| {
            deltas
                .iter()
                .filter(|(n, _)| *n >= i as i64)
                .map(|(n, v)| binomial(n - 1, i - 1) * v)
                .sum()
        })
        .collect()
}

/// The coefficients obtained by the three independent routes.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPaths {
    pub fitted: CoefficientVector,
    pub from_numerator: CoefficientVector,
    /// `e_1..e_d` from the difference formula (`e_0` is not produced).
    pub from_delta: Vec<BigInt>,
}

impl CoefficientPaths {
    pub fn compute(table: &HilbertTable) -> Result<(Self, HilbertFit, SeriesNumerator)> {
        let fit = fit_hilbert_polynomial(table)?;
        let numerator = series_numerator(table)?;
        let from_numerator = coefficients_from_numerator(&numerator, table.d());
        let from_delta = ei_via_delta_formula(table, &fit);
        Ok((
            CoefficientPaths {
                fitted: fit.coefficients.clone(),
                from_numerator,
                from_delta,
            },
            fit,
            numerator,
        ))
    }

    pub fn agree(&self) -> bool {
        self.fitted == self.from_numerator && self.fitted.e[1..] == self.from_delta[..]
    }
}

/// Whether `Δ^d H` has reached `e_0` at the end of the table.
pub fn delta_reaches_multiplicity(table: &HilbertTable, fit: &HilbertFit) -> bool {
    table.delta_d(table.n_max() as i64) == fit.coefficients.get(0)
}

/// `e_1 >= e_0 - λ(R/I)`.
pub fn northcott_holds(e: &CoefficientVector, colength: &BigInt) -> bool {
    e.get(1) >= e.get(0) - colength
}

/// Sign-aware rendering of the polynomial in the binomial basis, e.g.
/// `27*C(n+2,3) - 18*C(n+1,2) + 1*C(n,1) + 15`.
pub fn render_binomial_form(e: &CoefficientVector) -> String {
    let d = e.e.len() - 1;
    let mut out = String::new();
    for (i, ei) in e.e.iter().enumerate() {
        let signed = if i % 2 == 0 { ei.clone() } else { -ei.clone() };
        let k = d - i;
        let body = if k == 0 {
            signed.abs().to_string()
        } else {
            let arg = match d as i64 - 1 - i as i64 {
                0 => "n".to_string(),
                s if s > 0 => format!("n+{s}"),
                s => format!("n-{}", -s),
            };
            format!("{}*C({arg},{k})", signed.abs())
        };
        if i == 0 {
            if signed.is_negative() {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if signed.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(vals: &[i64], d: usize) -> HilbertTable {
        HilbertTable::from_values(vals.iter().map(|&v| BigInt::from(v)).collect(), d, 3)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 0), BigInt::from(1));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    #[test]
    fn maximal_ideal_in_two_variables() {
        // H(n) = n(n+1)/2
        let t = table(&[0, 1, 3, 6, 10, 15], 2);
        let fit = fit_hilbert_polynomial(&t).unwrap();
        assert_eq!(fit.coefficients, CoefficientVector::from_i64(&[1, 0, 0]));
        assert_eq!(fit.postulation, -1);
        assert_eq!(series_numerator(&t).unwrap(), SeriesNumerator::from_i64(&[1]));
        assert_eq!(ei_via_delta_formula(&t, &fit), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn square_of_maximal_ideal() {
        // λ(R/m^(2n)) = 2n^2 + n
        let vals: Vec<i64> = (0..8).map(|n| 2 * n * n + n).collect();
        let t = table(&vals, 2);
        let fit = fit_hilbert_polynomial(&t).unwrap();
        assert_eq!(fit.coefficients, CoefficientVector::from_i64(&[4, 1, 0]));
        assert_eq!(fit.polynomial.eval(-1), BigInt::from(1));
        assert_eq!(delta_p_minus_h(&t, &fit, 1), BigInt::from(1));
        assert_eq!(ei_via_delta_formula(&t, &fit), vec![BigInt::from(1), BigInt::zero()]);
    }

    #[test]
    fn numerator_derivatives() {
        let cases: [(&[i64], usize, &[i64]); 3] = [
            (&[16, 5, 5, -5, 6, 10, -13, 2, 1], 3, &[27, 18, 1, -15]),
            (&[33, 19, 21, 7, 5, -3, -1], 4, &[81, 81, 27, -23, -25]),
            (&[31, 9, 7, 1], 3, &[48, 26, 10, 1]),
        ];
        for (a, d, e) in cases {
            let got = coefficients_from_numerator(&SeriesNumerator::from_i64(a), d);
            assert_eq!(got, CoefficientVector::from_i64(e));
        }
    }

    #[test]
    fn binomial_rendering() {
        let e = CoefficientVector::from_i64(&[27, 18, 1, -15]);
        assert_eq!(render_binomial_form(&e), "27*C(n+2,3) - 18*C(n+1,2) + 1*C(n,1) + 15");
    }

    #[test]
    fn evaluate_matches_interpolation() {
        let e = CoefficientVector::from_i64(&[27, 18, 1, -15]);
        let p = HilbertPolynomial::interpolate(|n| e.evaluate(n), 3, 10);
        assert_eq!(p.coefficients(), e);
        assert_eq!(e.evaluate(5), BigInt::from(695));
    }
}
