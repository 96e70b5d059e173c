//! Buchberger's algorithm with the Gebauer–Möller criteria, heap-based
//! division, and the queries answered by a finished basis.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, Term};

/// Default number of S-pairs Buchberger may process before giving up.
pub const DEFAULT_PAIR_BUDGET: usize = 2_000_000;

/// A reduced Gröbner basis: monic, inter-reduced, sorted by increasing
/// leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.polys == other.polys
    }
}

impl<F: Field> GroebnerBasis<F> {
    fn from_polys(ring: &Arc<PolyRing<F>>, mut polys: Vec<Polynomial<F>>) -> Self {
        let order = ring.order();
        polys.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let lms: Vec<Monomial> = polys.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
        let masks = lms.iter().map(Monomial::divmask).collect();
        GroebnerBasis {
            ring: ring.clone(),
            polys,
            lms,
            masks,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    /// True for the basis `{1}` of the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.lms.len() == 1 && self.lms[0].is_one()
    }

    /// True when every basis element is a single term.
    pub fn is_monomial(&self) -> bool {
        self.polys.iter().all(|p| p.len() == 1)
    }

    /// Index of some basis element whose leading monomial divides `m`.
    pub fn divisor_of(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        (0..self.lms.len()).find(|&i| self.masks[i] & !mask == 0 && self.lms[i].divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !f.ring().same_as(&self.ring) {
            return Err(Error::MixedRings);
        }
        Ok(Polynomial::from_sorted(&self.ring, self.reduce_terms(f.terms())))
    }

    pub(crate) fn reduce_terms(&self, terms: &[Term<F>]) -> Vec<Term<F>> {
        if terms.is_empty() {
            return Vec::new();
        }
        let field = self.ring.field();
        let divisors = Divisors {
            terms: self.polys.iter().map(|p| p.terms()).collect(),
            lms: &self.lms,
            masks: &self.masks,
            active: None,
        };
        let stream = Stream {
            coeff: field.one(),
            mult: Monomial::one(self.ring.nvars()),
            terms,
            pos: 0,
        };
        reduce(field, self.ring.order(), &divisors, vec![stream])
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// For each variable, the exponent of a pure power among the leading
    /// monomials, if any.
    fn pure_power_bounds(&self) -> Vec<Option<u16>> {
        let mut bounds = vec![None; self.ring.nvars()];
        for m in &self.lms {
            if m.is_one() {
                return vec![Some(0); self.ring.nvars()];
            }
            if let Some(i) = m.pure_power_var() {
                let e = m.exponents()[i];
                bounds[i] = Some(bounds[i].map_or(e, |b: u16| b.min(e)));
            }
        }
        bounds
    }

    /// Whether the quotient by this basis is finite-dimensional.
    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().iter().all(Option::is_some)
    }

    /// Number of standard monomials, without listing them.
    pub fn quotient_dimension(&self) -> Result<u64> {
        if !self.is_zero_dimensional() {
            return Err(Error::InfiniteQuotient);
        }
        if self.is_unit() {
            return Ok(0);
        }
        let lms: Vec<&[u16]> = self.lms.iter().map(|m| m.exponents()).collect();
        Ok(count_standard(&lms, 0, self.ring.nvars()))
    }

    /// All standard monomials, in decreasing order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return Err(Error::InfiniteQuotient);
        }
        let mut out = Vec::new();
        if self.is_unit() {
            return Ok(out);
        }
        let n = self.ring.nvars();
        let lms: Vec<&[u16]> = self.lms.iter().map(|m| m.exponents()).collect();
        let mut current = vec![0u16; n];
        enumerate_standard(&lms, 0, &mut current, &mut out);
        let order = self.ring.order();
        out.sort_by(|a, b| order.cmp(b, a));
        Ok(out)
    }

    /// Krull dimension of the quotient: the largest set of variables no
    /// leading monomial is supported in. `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .lms
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        assert!(n < 64, "too many variables for the dimension search");
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Some(best)
    }
}

/// Counts monomials in variables `var..` avoiding every exponent vector in
/// `lms` (restricted to those variables). Requires a pure power in each.
fn count_standard(lms: &[&[u16]], var: usize, n: usize) -> u64 {
    if lms.iter().any(|m| m[var..].iter().all(|&e| e == 0)) {
        return 0;
    }
    if var + 1 == n {
        return lms.iter().map(|m| m[var] as u64).min().expect("pure power present");
    }
    let mut sorted: Vec<&[u16]> = lms.to_vec();
    sorted.sort_by_key(|m| m[var]);
    let mut total = 0;
    let mut e = 0u16;
    loop {
        let k = sorted.partition_point(|m| m[var] <= e);
        let relevant = &sorted[..k];
        // a member vanishing on the remaining variables kills this slice
        if relevant.iter().any(|m| m[var + 1..].iter().all(|&x| x == 0)) {
            break;
        }
        total += count_standard(relevant, var + 1, n);
        e += 1;
    }
    total
}

fn enumerate_standard(lms: &[&[u16]], var: usize, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    let n = current.len();
    if var == n {
        if lms.is_empty() {
            out.push(Monomial::from_exponents(current.iter().copied()));
        }
        return;
    }
    let mut sorted: Vec<&[u16]> = lms.to_vec();
    sorted.sort_by_key(|m| m[var]);
    let mut e = 0u16;
    loop {
        let k = sorted.partition_point(|m| m[var] <= e);
        let relevant = &sorted[..k];
        if relevant.iter().any(|m| m[var + 1..].iter().all(|&x| x == 0)) {
            break;
        }
        current[var] = e;
        enumerate_standard(relevant, var + 1, current, out);
        e += 1;
    }
    current[var] = 0;
}

// ---- division ----

struct Stream<'a, F: Field> {
    coeff: F::Elem,
    mult: Monomial,
    terms: &'a [Term<F>],
    pos: usize,
}

struct Divisors<'a, F: Field> {
    terms: Vec<&'a [Term<F>]>,
    lms: &'a [Monomial],
    masks: &'a [u64],
    active: Option<&'a [usize]>,
}

impl<'a, F: Field> Divisors<'a, F> {
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        let hit = |i: usize| self.masks[i] & !mask == 0 && self.lms[i].divides(m);
        match self.active {
            Some(idx) => idx.iter().copied().find(|&i| hit(i)),
            None => (0..self.lms.len()).find(|&i| hit(i)),
        }
    }
}

/// Binary heap of (monomial, id) keyed by the monomial order; a max-heap
/// unless `min` is set.
struct MonoHeap {
    order: MonomialOrder,
    min: bool,
    data: Vec<(Monomial, usize)>,
}

impl MonoHeap {
    fn new(order: MonomialOrder, min: bool) -> Self {
        MonoHeap {
            order,
            min,
            data: Vec::new(),
        }
    }

    fn greater(&self, a: usize, b: usize) -> bool {
        let o = self.order.cmp(&self.data[a].0, &self.data[b].0);
        if self.min {
            o == std::cmp::Ordering::Less
        } else {
            o == std::cmp::Ordering::Greater
        }
    }

    fn push(&mut self, m: Monomial, s: usize) {
        self.data.push((m, s));
        let mut i = self.data.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.greater(i, parent) {
                self.data.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn pop(&mut self) -> Option<(Monomial, usize)> {
        let last = self.data.len().checked_sub(1)?;
        self.data.swap(0, last);
        let top = self.data.pop();
        let len = self.data.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut largest = i;
            if l < len && self.greater(l, largest) {
                largest = l;
            }
            if r < len && self.greater(r, largest) {
                largest = r;
            }
            if largest == i {
                break;
            }
            self.data.swap(i, largest);
            i = largest;
        }
        top
    }

    fn peek(&self) -> Option<&Monomial> {
        self.data.first().map(|e| &e.0)
    }
}

/// Full reduction of the sum of `streams` by monic divisors.
fn reduce<'a, F: Field>(
    field: &F,
    order: MonomialOrder,
    divisors: &Divisors<'a, F>,
    mut streams: Vec<Stream<'a, F>>,
) -> Vec<Term<F>> {
    let mut heap = MonoHeap::new(order, false);
    for (s, st) in streams.iter().enumerate() {
        if st.pos < st.terms.len() {
            heap.push(st.terms[st.pos].mono.mul(&st.mult), s);
        }
    }
    let mut out = Vec::new();
    while let Some((mono, s)) = heap.pop() {
        let mut c = take(field, &mut streams, &mut heap, s);
        while heap.peek() == Some(&mono) {
            let (_, s2) = heap.pop().unwrap();
            let t = take(field, &mut streams, &mut heap, s2);
            c = field.add(&c, &t);
        }
        if field.is_zero(&c) {
            continue;
        }
        match divisors.find(&mono) {
            Some(g) => {
                let terms = divisors.terms[g];
                if terms.len() > 1 {
                    let q = divisors.lms[g].quotient_of(&mono).unwrap();
                    let id = streams.len();
                    heap.push(terms[1].mono.mul(&q), id);
                    streams.push(Stream {
                        coeff: field.neg(&c),
                        mult: q,
                        terms,
                        pos: 1,
                    });
                }
            }
            None => out.push(Term { coeff: c, mono }),
        }
    }
    out
}

fn take<F: Field>(field: &F, streams: &mut [Stream<'_, F>], heap: &mut MonoHeap, s: usize) -> F::Elem {
    let st = &mut streams[s];
    let c = field.mul(&st.coeff, &st.terms[st.pos].coeff);
    st.pos += 1;
    if st.pos < st.terms.len() {
        heap.push(st.terms[st.pos].mono.mul(&st.mult), s);
    }
    c
}

// ---- Buchberger ----

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

struct Engine<F: Field> {
    field: F,
    order: MonomialOrder,
    polys: Vec<Vec<Term<F>>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    /// pairs by increasing lcm (normal selection strategy)
    queue: MonoHeap,
}

impl<F: Field> Engine<F> {
    fn reduce_streams(&self, streams: Vec<Stream<'_, F>>) -> Vec<Term<F>> {
        let terms: Vec<&[Term<F>]> = self.polys.iter().map(|p| p.as_slice()).collect();
        let divisors = Divisors {
            terms,
            lms: &self.lms,
            masks: &self.masks,
            active: Some(&self.active),
        };
        reduce(&self.field, self.order, &divisors, streams)
    }

    fn make_monic(&self, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
        let lc = terms[0].coeff.clone();
        if !self.field.is_one(&lc) {
            let inv = self.field.inv(&lc);
            for t in &mut terms {
                t.coeff = self.field.mul(&t.coeff, &inv);
            }
        }
        terms
    }

    /// Adds a new monic element and updates the pair set (Gebauer–Möller).
    fn insert(&mut self, h: Vec<Term<F>>) {
        let hlm = h[0].mono.clone();
        let t = self.polys.len();

        // candidate pairs (h, g) for active g
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let l = hlm.lcm(&self.lms[g]);
                (g, l, hlm.is_coprime(&self.lms[g]))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for (k, (_, l, coprime)) in cands.iter().enumerate() {
            let redundant = !coprime
                && (cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                    || kept.iter().any(|&p| cands[p].1.divides(l)));
            if !redundant {
                kept.push(k);
            }
        }

        // chain criterion on old pairs
        for p in self.pairs.iter_mut().filter(|p| p.alive) {
            if hlm.divides(&p.lcm) && hlm.lcm(&self.lms[p.i]) != p.lcm && hlm.lcm(&self.lms[p.j]) != p.lcm {
                p.alive = false;
            }
        }

        for k in kept {
            let (g, ref l, coprime) = cands[k];
            if coprime {
                continue;
            }
            let id = self.pairs.len();
            self.queue.push(l.clone(), id);
            self.pairs.push(Pair {
                i: g,
                j: t,
                lcm: l.clone(),
                alive: true,
            });
        }

        let lms = &self.lms;
        self.active.retain(|&g| !hlm.divides(&lms[g]));
        self.masks.push(hlm.divmask());
        self.lms.push(hlm);
        self.polys.push(h);
        self.active.push(t);
    }

    fn s_poly_nf(&self, p: &Pair) -> Vec<Term<F>> {
        let qi = self.lms[p.i].quotient_of(&p.lcm).unwrap();
        let qj = self.lms[p.j].quotient_of(&p.lcm).unwrap();
        let streams = vec![
            Stream {
                coeff: self.field.one(),
                mult: qi,
                terms: &self.polys[p.i],
                pos: 1,
            },
            Stream {
                coeff: self.field.neg(&self.field.one()),
                mult: qj,
                terms: &self.polys[p.j],
                pos: 1,
            },
        ];
        self.reduce_streams(streams)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    pair_budget: usize,
) -> Result<GroebnerBasis<F>> {
    for g in gens {
        if !g.ring().same_as(ring) {
            return Err(Error::MixedRings);
        }
    }
    let field = ring.field().clone();
    let order = ring.order();
    let mut input: Vec<Vec<Term<F>>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.terms().to_vec())
        .collect();
    if input.iter().any(|t| t[0].mono.is_one()) {
        return Ok(GroebnerBasis::from_polys(ring, vec![Polynomial::one(ring)]));
    }
    if input.iter().all(|t| t.len() == 1) {
        let monos: Vec<Monomial> = input.into_iter().map(|t| t[0].mono.clone()).collect();
        let polys = minimal_monomials(monos)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, field.one(), m))
            .collect();
        return Ok(GroebnerBasis::from_polys(ring, polys));
    }

    input = interreduce_linear(&field, order, input);
    input.sort_by(|a, b| order.cmp(&a[0].mono, &b[0].mono));

    let mut engine = Engine {
        field: field.clone(),
        order,
        polys: Vec::new(),
        lms: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        queue: MonoHeap::new(order, true),
    };

    for f in input {
        let stream = Stream {
            coeff: field.one(),
            mult: Monomial::one(ring.nvars()),
            terms: &f,
            pos: 0,
        };
        let r = engine.reduce_streams(vec![stream]);
        if !r.is_empty() {
            let r = engine.make_monic(r);
            if r[0].mono.is_one() {
                return Ok(GroebnerBasis::from_polys(ring, vec![Polynomial::one(ring)]));
            }
            engine.insert(r);
        }
    }

    let mut processed = 0usize;
    while let Some((_, id)) = engine.queue.pop() {
        if !engine.pairs[id].alive {
            continue;
        }
        engine.pairs[id].alive = false;
        processed += 1;
        if processed > pair_budget {
            return Err(Error::resource("Buchberger S-pairs", pair_budget));
        }
        let pair = &engine.pairs[id];
        let r = engine.s_poly_nf(pair);
        if !r.is_empty() {
            let r = engine.make_monic(r);
            if r[0].mono.is_one() {
                return Ok(GroebnerBasis::from_polys(ring, vec![Polynomial::one(ring)]));
            }
            engine.insert(r);
        }
    }

    // inter-reduce the tails of the minimal basis
    let mut reduced = Vec::with_capacity(engine.active.len());
    for &g in &engine.active {
        let poly = &engine.polys[g];
        let stream = Stream {
            coeff: field.one(),
            mult: Monomial::one(ring.nvars()),
            terms: poly,
            pos: 1,
        };
        let mut terms = vec![poly[0].clone()];
        terms.extend(engine.reduce_streams(vec![stream]));
        reduced.push(Polynomial::from_sorted(ring, terms));
    }
    Ok(GroebnerBasis::from_polys(ring, reduced))
}

/// Minimal generators of a monomial ideal, sorted and deduplicated.
pub fn minimal_monomials(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.exponents().cmp(b.exponents()))
    });
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(monos.len());
    let mut masks: Vec<u64> = Vec::with_capacity(monos.len());
    for m in monos {
        let mask = m.divmask();
        if out.iter().zip(&masks).any(|(d, &dm)| dm & !mask == 0 && d.divides(&m)) {
            continue;
        }
        out.push(m);
        masks.push(mask);
    }
    out
}

/// Gaussian elimination on leading terms so that the inputs have pairwise
/// distinct leading monomials.
fn interreduce_linear<F: Field>(field: &F, order: MonomialOrder, mut input: Vec<Vec<Term<F>>>) -> Vec<Vec<Term<F>>> {
    input.sort_by(|a, b| order.cmp(&b[0].mono, &a[0].mono).then(a.len().cmp(&b.len())));
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();
    let mut out: Vec<Vec<Term<F>>> = Vec::new();
    for mut f in input {
        while let Some(t) = f.first() {
            match pivots.get(&t.mono) {
                Some(&k) => {
                    let c = t.coeff.clone();
                    f = crate::poly::sub_mul_terms(field, order, &f, &c, &Monomial::one(t.mono.nvars()), &out[k]);
                }
                None => break,
            }
        }
        if f.is_empty() {
            continue;
        }
        let inv = field.inv(&f[0].coeff);
        for t in &mut f {
            t.coeff = field.mul(&t.coeff, &inv);
        }
        pivots.insert(f[0].mono.clone(), out.len());
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::{parse_polynomial, parse_polynomial_list};

    fn ring(vars: &[&str]) -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(vars, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap()
    }

    fn gb(r: &Arc<PolyRing<PrimeField>>, s: &str) -> GroebnerBasis<PrimeField> {
        groebner_basis(r, &parse_polynomial_list(s, r).unwrap(), DEFAULT_PAIR_BUDGET).unwrap()
    }

    fn show(g: &GroebnerBasis<PrimeField>) -> Vec<String> {
        g.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn already_reduced() {
        let r = ring(&["x", "y"]);
        assert_eq!(show(&gb(&r, "x, y")), ["y", "x"]);
    }

    #[test]
    fn s_pair_produces_cube() {
        let r = ring(&["x", "y"]);
        let g = gb(&r, "x^2 + y^2, x*y");
        assert_eq!(show(&g), ["x*y", "x^2 + y^2", "y^3"]);
        let nf = g.normal_form(&parse_polynomial("x^2", &r).unwrap()).unwrap();
        assert_eq!(nf.to_string(), "-y^2");
        let std = g.standard_monomials().unwrap();
        assert_eq!(std.len(), 4);
        assert_eq!(g.quotient_dimension().unwrap(), 4);
    }

    #[test]
    fn univariate() {
        let r = ring(&["x"]);
        assert_eq!(show(&gb(&r, "x^2 - 1")), ["x^2 - 1"]);
    }

    #[test]
    fn unit_and_dimension() {
        let r = ring(&["x", "y"]);
        assert!(gb(&r, "x + 1, x").is_unit());
        assert_eq!(gb(&r, "x*y").krull_dimension(), Some(1));
        assert_eq!(gb(&r, "x, y").krull_dimension(), Some(0));
    }

    #[test]
    fn example_quotient_length() {
        let r = ring(&["x", "y", "z"]);
        let g = gb(&r, "x^3, y^3, x^2*y + z^3, x*z^2, y^2*z + x^2*z");
        assert_eq!(g.quotient_dimension().unwrap(), 16);
        assert_eq!(g.standard_monomials().unwrap().len(), 16);
    }
}
