//! Ideals over a ring presentation, with a cached reduced Gröbner basis and
//! the ideal-level operations built on it.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, GroebnerBasis, DEFAULT_PAIR_BUDGET};
use crate::linalg::Echelon;
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_polynomial_list;
use crate::poly::{PolyRing, Polynomial, Term};
use crate::quotient::QuotientSpace;
use crate::ring::RingPresentation;

/// Standard monomials of a zero-dimensional quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientBasis {
    pub standard_monomials: Vec<Monomial>,
    pub length: u64,
}

struct Inner<F: Field> {
    ring: Arc<RingPresentation<F>>,
    gens: Vec<Polynomial<F>>,
    pair_budget: usize,
    basis: OnceLock<Result<Arc<GroebnerBasis<F>>>>,
    space: OnceLock<Result<Arc<QuotientSpace<F>>>>,
    /// `powers[k]` is `I^(k+1)`
    powers: Mutex<Vec<Ideal<F>>>,
}

/// An ideal of `k[x]/Q`, stored by lifted generators. Cloning is cheap and
/// clones share the cached basis.
#[derive(Clone)]
pub struct Ideal<F: Field>(Arc<Inner<F>>);

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ideal").field(&self.0.gens).finish()
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.0.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<RingPresentation<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if !g.ring().same_as(ring.base()) {
                return Err(Error::MixedRings);
            }
        }
        Ok(Self::build(ring, gens, DEFAULT_PAIR_BUDGET))
    }

    fn build(ring: &Arc<RingPresentation<F>>, gens: Vec<Polynomial<F>>, pair_budget: usize) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal(Arc::new(Inner {
            ring: ring.clone(),
            gens,
            pair_budget,
            basis: OnceLock::new(),
            space: OnceLock::new(),
            powers: Mutex::new(Vec::new()),
        }))
    }

    /// Same ideal with a different S-pair budget (fresh caches).
    pub fn with_pair_budget(&self, pair_budget: usize) -> Self {
        Self::build(&self.0.ring, self.0.gens.clone(), pair_budget)
    }

    pub fn parse(ring: &Arc<RingPresentation<F>>, text: &str) -> Result<Self> {
        let gens = parse_polynomial_list(text, ring.base())?;
        Self::new(ring, gens)
    }

    pub fn unit(ring: &Arc<RingPresentation<F>>) -> Self {
        Self::build(ring, vec![Polynomial::one(ring.base())], DEFAULT_PAIR_BUDGET)
    }

    pub fn zero(ring: &Arc<RingPresentation<F>>) -> Self {
        Self::build(ring, Vec::new(), DEFAULT_PAIR_BUDGET)
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Arc<RingPresentation<F>>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring.base(), i)).collect();
        Self::build(ring, gens, DEFAULT_PAIR_BUDGET)
    }

    pub fn ring(&self) -> &Arc<RingPresentation<F>> {
        &self.0.ring
    }

    pub fn base(&self) -> &Arc<PolyRing<F>> {
        self.0.ring.base()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.0.gens
    }

    pub fn pair_budget(&self) -> usize {
        self.0.pair_budget
    }

    fn derived(&self, gens: Vec<Polynomial<F>>) -> Self {
        Self::build(&self.0.ring, gens, self.0.pair_budget)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.0.ring.same_as(&other.0.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// Reduced Gröbner basis of the generators together with the quotient
    /// relations. Computed once.
    pub fn basis(&self) -> Result<&Arc<GroebnerBasis<F>>> {
        self.0
            .basis
            .get_or_init(|| {
                let mut all = self.0.gens.clone();
                all.extend(self.0.ring.quotient_generators().iter().cloned());
                groebner_basis(self.base(), &all, self.0.pair_budget).map(Arc::new)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Standard-monomial coordinates of the (finite) quotient. Computed once.
    pub fn quotient_space(&self) -> Result<&Arc<QuotientSpace<F>>> {
        self.0
            .space
            .get_or_init(|| {
                let gb = self.basis()?.clone();
                QuotientSpace::new(gb).map(Arc::new)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.basis()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.basis()?.contains(f)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.is_unit())
    }

    /// Whether every generator vanishes in the quotient ring.
    pub fn is_zero(&self) -> Result<bool> {
        let q = self.0.ring.quotient_basis()?;
        for g in &self.0.gens {
            if !q.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals via their reduced bases.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        Ok(**self.basis()? == **other.basis()?)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut gens = self.0.gens.clone();
        gens.extend(other.0.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    /// Ideal with additional generators.
    pub fn extend(&self, more: &[Polynomial<F>]) -> Result<Self> {
        let other = Ideal::new(&self.0.ring, more.to_vec())?;
        self.sum(&other)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let a = self.reduced_generators()?;
        let b = other.reduced_generators()?;
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for f in &a {
            for g in &b {
                gens.push(f * g);
            }
        }
        let prod = self.derived(gens);
        prod.interreduced()
    }

    /// Generators with the quotient relations and redundancies removed: the
    /// basis elements that are not already in the quotient ideal.
    pub(crate) fn reduced_generators(&self) -> Result<Vec<Polynomial<F>>> {
        if !self.0.ring.has_quotient() {
            return Ok(self.basis()?.elements().to_vec());
        }
        let qb = self.0.ring.quotient_basis()?;
        let mut out = Vec::new();
        for g in self.basis()?.elements() {
            let r = qb.normal_form(g)?;
            if !r.is_zero() {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// The ideal generated by its reduced basis (shares nothing but content).
    fn interreduced(&self) -> Result<Self> {
        let gb = self.basis()?.clone();
        let gens = gb.elements().to_vec();
        let out = self.derived(gens);
        let _ = out.0.basis.set(Ok(gb));
        Ok(out)
    }

    /// `I^n`, with `I^0` the unit ideal. Cached on the ideal.
    pub fn power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(Ideal::unit(&self.0.ring).with_pair_budget(self.0.pair_budget));
        }
        let mut cache = self.0.powers.lock().expect("power cache poisoned");
        if cache.is_empty() {
            cache.push(self.interreduced()?);
        }
        let gens = self.reduced_generators()?;
        while cache.len() < n {
            let prev = cache.last().unwrap().clone();
            let prev_gens = prev.reduced_generators()?;
            let mut prods = Vec::with_capacity(prev_gens.len() * gens.len());
            for f in &prev_gens {
                for g in &gens {
                    prods.push(f * g);
                }
            }
            let next = self.derived(prods).interreduced()?;
            cache.push(next);
        }
        Ok(cache[n - 1].clone())
    }

    /// Quotient basis; errors when the quotient is infinite-dimensional.
    pub fn standard_monomials(&self) -> Result<QuotientBasis> {
        let gb = self.basis()?;
        let standard_monomials = gb.standard_monomials()?;
        let length = standard_monomials.len() as u64;
        Ok(QuotientBasis {
            standard_monomials,
            length,
        })
    }

    /// `dim_k(R/I)`, counted without listing the monomials.
    pub fn colength(&self) -> Result<u64> {
        self.basis()?.quotient_dimension()
    }

    /// Krull dimension of `R/I`; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<Option<usize>> {
        Ok(self.basis()?.krull_dimension())
    }

    /// Finite colength and every variable nilpotent modulo the ideal, so the
    /// quotient is supported at the origin only.
    pub fn is_m_primary(&self) -> Result<bool> {
        let gb = self.basis()?;
        if gb.is_unit() || !gb.is_zero_dimensional() {
            return Ok(false);
        }
        let len = gb.quotient_dimension()?;
        let ell = u32::try_from(len.max(1)).unwrap_or(u32::MAX);
        for i in 0..self.base().nvars() {
            let mut exps = vec![0u16; self.base().nvars()];
            exps[i] = u16::try_from(ell).map_err(|_| Error::resource("nilpotency exponent", u16::MAX as usize))?;
            let p = Polynomial::monomial(self.base(), self.base().field().one(), Monomial::from_exponents(exps));
            if !gb.contains(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Polynomial-ring intersection of `gens_a + Q` and `gens_b + Q` by
    /// eliminating an auxiliary variable.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let base = self.base();
        if self.is_zero_quick() || other.is_zero_quick() {
            return Ok(Ideal::zero(&self.0.ring));
        }
        let t_name = fresh_name(base.variables(), "t");
        let mut vars = vec![t_name];
        vars.extend(base.variables().iter().cloned());
        let ext = PolyRing::new(&vars, base.field().clone(), MonomialOrder::Elimination { split: 1 })?;
        let shift: Vec<usize> = (1..=base.nvars()).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let q: Vec<Polynomial<F>> = self
            .0
            .ring
            .quotient_generators()
            .iter()
            .map(|g| g.map_variables(&ext, &shift))
            .collect();
        let mut gens = Vec::new();
        for g in &self.0.gens {
            gens.push(&t * &g.map_variables(&ext, &shift));
        }
        for g in &q {
            gens.push(&t * g);
        }
        for g in &other.0.gens {
            gens.push(&one_minus_t * &g.map_variables(&ext, &shift));
        }
        for g in &q {
            gens.push(&one_minus_t * g);
        }
        let gb = groebner_basis(&ext, &gens, self.0.pair_budget)?;
        let mut back = vec![0usize; base.nvars() + 1];
        for i in 0..base.nvars() {
            back[i + 1] = i;
        }
        let result = gb
            .elements()
            .iter()
            .filter(|p| p.leading_monomial().unwrap().exponents()[0] == 0)
            .map(|p| p.map_variables(base, &back))
            .collect();
        self.derived(result).interreduced()
    }

    fn is_zero_quick(&self) -> bool {
        self.0.gens.is_empty() && !self.0.ring.has_quotient()
    }

    /// Generators of `I ∩ k[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Self> {
        let base = self.base();
        let n = base.nvars();
        for &d in drop {
            if d >= n {
                return Err(Error::UnknownVariable(d));
            }
        }
        if drop.is_empty() {
            return Ok(self.clone());
        }
        let mut order: Vec<usize> = drop.to_vec();
        order.sort_unstable();
        order.dedup();
        let split = order.len();
        order.extend((0..n).filter(|i| !drop.contains(i)));
        // perm[old] = new position
        let mut perm = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let vars: Vec<String> = order.iter().map(|&i| base.variables()[i].clone()).collect();
        let ext = PolyRing::new(&vars, base.field().clone(), MonomialOrder::Elimination { split })?;
        let mut gens: Vec<Polynomial<F>> = self.0.gens.iter().map(|g| g.map_variables(&ext, &perm)).collect();
        gens.extend(
            self.0
                .ring
                .quotient_generators()
                .iter()
                .map(|g| g.map_variables(&ext, &perm)),
        );
        let gb = groebner_basis(&ext, &gens, self.0.pair_budget)?;
        let result = gb
            .elements()
            .iter()
            .filter(|p| {
                p.leading_monomial().unwrap().exponents()[..split]
                    .iter()
                    .all(|&e| e == 0)
            })
            .map(|p| p.map_variables(base, &order))
            .collect();
        Ok(self.derived(result))
    }

    /// `(self : other) = { f : f·other ⊆ self }`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let divisors = other.reduced_generators()?;
        if divisors.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        if self.basis()?.is_zero_dimensional() {
            return self.colon_known(other, self);
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &divisors {
            let principal = self.derived(vec![g.clone()]);
            let meet = self.intersect(&principal)?;
            let mut quot = Vec::new();
            for h in meet.generators() {
                quot.push(
                    exact_division(h, g)
                        .ok_or_else(|| Error::Inconsistent("intersection generator not divisible".into()))?,
                );
            }
            let part = self.derived(quot);
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        acc.unwrap().interreduced()
    }

    /// `(self : other)` for zero-dimensional `c ⊆ (self : other)`, as `c` plus
    /// the kernel of `R/c → ⊕ R/self`, `f ↦ (f·g)_g`.
    pub fn colon_known(&self, other: &Self, c: &Self) -> Result<Self> {
        self.check_ring(other)?;
        self.check_ring(c)?;
        let divisors = other.reduced_generators()?;
        if divisors.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let domain = c.quotient_space()?;
        let target = self.quotient_space()?;
        let kernel = multiplication_kernel(domain, target, &divisors)?;
        let mut gens = c.generators().to_vec();
        gens.extend(kernel);
        self.derived(gens).interreduced()
    }
}

/// Kernel of `f ↦ (f·g_1, ..., f·g_k)` from `domain` to `target^k`, as
/// polynomials in standard-monomial form for `domain`.
pub(crate) fn multiplication_kernel<F: Field>(
    domain: &QuotientSpace<F>,
    target: &QuotientSpace<F>,
    multipliers: &[Polynomial<F>],
) -> Result<Vec<Polynomial<F>>> {
    let dim = domain.dim();
    let width = target.dim();
    let field = domain.field().clone();
    let mut rows = Vec::with_capacity(dim);
    for m in domain.monomials() {
        let mut row = Vec::new();
        for (k, g) in multipliers.iter().enumerate() {
            let prod = g.mul_monomial(m);
            for (col, c) in target.coordinates(&prod)? {
                row.push((k * width + col, c));
            }
        }
        rows.push(row);
    }
    let kernel = Echelon::left_kernel(&field, rows);
    Ok(kernel.into_iter().map(|v| domain.polynomial_from(&v)).collect())
}

/// `f / g` when `g` divides `f` exactly.
pub fn exact_division<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Option<Polynomial<F>> {
    let ring = f.ring();
    let field = ring.field();
    let lt = g.leading_term()?;
    let inv = field.inv(&lt.coeff);
    let mut rem = f.clone();
    let mut quot: Vec<Term<F>> = Vec::new();
    while let Some(t) = rem.leading_term() {
        let q = lt.mono.quotient_of(&t.mono)?;
        let c = field.mul(&t.coeff, &inv);
        let step = Polynomial::monomial(ring, c.clone(), q.clone());
        rem = &rem - &(&step * g);
        quot.push(Term { coeff: c, mono: q });
    }
    Some(Polynomial::from_terms(ring, quot))
}

fn fresh_name(existing: &[String], stem: &str) -> String {
    let mut k = 0usize;
    loop {
        let name = if k == 0 {
            format!("_{stem}")
        } else {
            format!("_{stem}{k}")
        };
        if !existing.contains(&name) {
            return name;
        }
        k += 1;
    }
}
