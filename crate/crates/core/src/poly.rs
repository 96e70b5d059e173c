//! Polynomial rings and sparse polynomials in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// A coefficient together with its monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
}

/// k[x_1, ..., x_n] with a fixed monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F, order: MonomialOrder) -> Result<Arc<Self>> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref().trim();
            if !is_identifier(v) {
                return Err(Error::InvalidVariableName(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        if let MonomialOrder::Elimination { split } = order {
            if split > names.len() {
                return Err(Error::UnknownVariable(split));
            }
        }
        Ok(Arc::new(PolyRing {
            vars: names,
            field,
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field: self.field.clone(),
            order,
        })
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial whose terms are nonzero, distinct and strictly decreasing in
/// the ring's order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for t in &self.terms {
            t.coeff.hash(state);
            t.mono.hash(state);
        }
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![Term {
                coeff: c,
                mono: Monomial::one(ring.nvars()),
            }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        Self::monomial(ring, ring.field.one(), Monomial::var(ring.nvars(), i))
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, coeff: F::Elem, mono: Monomial) -> Self {
        assert_eq!(mono.nvars(), ring.nvars());
        let terms = if ring.field.is_zero(&coeff) {
            Vec::new()
        } else {
            vec![Term { coeff, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (coefficient, monomial) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F>>) -> Self {
        let terms = normalize(&ring.field, ring.order, terms);
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already in canonical form.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(is_canonical(&ring.field, ring.order, &terms));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    /// A single term with coefficient one, or a nonzero scalar multiple of one.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].mono.is_one())
    }

    /// Highest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: add_terms(&self.ring.field, self.ring.order, &self.terms, &other.terms),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = &self.ring.field;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: sub_mul_terms(
                f,
                self.ring.order,
                &self.terms,
                &f.one(),
                &Monomial::one(self.ring.nvars()),
                &other.terms,
            ),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: mul_terms(&self.ring.field, self.ring.order, &self.terms, &other.terms),
        })
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.neg(&t.coeff),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => {
                let inv = self.ring.field.inv(&t.coeff);
                self.scale(&inv)
            }
        }
    }

    /// The same polynomial re-sorted under another ring with identical
    /// variables (only the order may differ).
    pub fn reinterpret(&self, ring: &Arc<PolyRing<F>>) -> Self {
        assert_eq!(ring.variables(), self.ring.variables());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Maps variables into another ring by an index map, `map[i]` being the
    /// target index of variable `i`.
    pub fn map_variables(&self, ring: &Arc<PolyRing<F>>, map: &[usize]) -> Self {
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = vec![0u16; n];
                for (i, &x) in t.mono.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                Term {
                    coeff: t.coeff.clone(),
                    mono: Monomial::from_exponents(e),
                }
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Exact division by a single term; `None` when some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                m.quotient_of(&t.mono).map(|q| Term {
                    coeff: t.coeff.clone(),
                    mono: q,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_sorted(&self.ring, terms))
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    /// Panics on mixed rings; use `checked_add` for a fallible version.
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (k, t) in self.terms.iter().enumerate() {
            let c = field.render(&t.coeff);
            let (neg, body) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, c),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = render_monomial(&self.ring.vars, &t.mono);
            match (body == "1", mono.is_empty()) {
                (_, true) => write!(f, "{body}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{body}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub fn render_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

// ---- term-vector kernels shared with the Gröbner engine ----

pub(crate) fn is_canonical<F: Field>(field: &F, order: MonomialOrder, terms: &[Term<F>]) -> bool {
    terms.iter().all(|t| !field.is_zero(&t.coeff))
        && terms
            .windows(2)
            .all(|w| order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
}

pub(crate) fn normalize<F: Field>(field: &F, order: MonomialOrder, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.mono == t.mono => {
                last.coeff = field.add(&last.coeff, &t.coeff);
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !field.is_zero(&t.coeff));
    out
}

pub(crate) fn add_terms<F: Field>(field: &F, order: MonomialOrder, a: &[Term<F>], b: &[Term<F>]) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = field.add(&a[i].coeff, &b[j].coeff);
                if !field.is_zero(&c) {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a - c * m * b`.
pub(crate) fn sub_mul_terms<F: Field>(
    field: &F,
    order: MonomialOrder,
    a: &[Term<F>],
    c: &F::Elem,
    m: &Monomial,
    b: &[Term<F>],
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for t in b {
        let mono = t.mono.mul(m);
        let coeff = field.neg(&field.mul(c, &t.coeff));
        loop {
            if i < a.len() {
                match order.cmp(&a[i].mono, &mono) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let s = field.add(&a[i].coeff, &coeff);
                        if !field.is_zero(&s) {
                            out.push(Term { coeff: s, mono });
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Less => {}
                }
            }
            out.push(Term { coeff, mono });
            break;
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

pub(crate) fn mul_terms<F: Field>(field: &F, order: MonomialOrder, a: &[Term<F>], b: &[Term<F>]) -> Vec<Term<F>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc: Vec<Term<F>> = Vec::new();
    for t in short {
        // each row is sorted; merge it into the accumulator
        let row: Vec<Term<F>> = long
            .iter()
            .map(|s| Term {
                coeff: field.mul(&t.coeff, &s.coeff),
                mono: t.mono.mul(&s.mono),
            })
            .collect();
        acc = add_terms(field, order, &acc, &row);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring() -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(&["x", "y"], PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn square_and_frobenius() {
        let r = ring();
        let s = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        assert_eq!(s.pow(2).to_string(), "x^2 + 2*x*y + y^2");
        let r2 = PolyRing::new(&["x", "y"], PrimeField::new(2).unwrap(), MonomialOrder::GrevLex).unwrap();
        let s2 = &Polynomial::var(&r2, 0) + &Polynomial::var(&r2, 1);
        assert_eq!(s2.pow(2).to_string(), "x^2 + y^2");
    }

    #[test]
    fn mixed_rings_rejected() {
        let r1 = ring();
        let r2 = PolyRing::new(&["x", "z"], PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
        let a = Polynomial::var(&r1, 0);
        let b = Polynomial::var(&r2, 0);
        assert_eq!(a.checked_add(&b), Err(Error::MixedRings));
    }

    #[test]
    fn ring_validation() {
        let f = PrimeField::new(5).unwrap();
        assert!(matches!(
            PolyRing::new(&["x", "x"], f, MonomialOrder::GrevLex),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(matches!(
            PolyRing::new(&["", "y"], f, MonomialOrder::GrevLex),
            Err(Error::InvalidVariableName(_))
        ));
    }
}
