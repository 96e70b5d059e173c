#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use samuel_core::*;

pub const P: u64 = 32003;

/// Seeded so every run draws the same cases.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0),
        ..ProptestConfig::default()
    }
}

pub fn poly_ring(nvars: usize) -> Arc<PolyRing<PrimeField>> {
    let names = ["x", "y", "z", "u", "v"];
    PolyRing::new(&names[..nvars], PrimeField::new(P).unwrap(), MonomialOrder::GrevLex).unwrap()
}

pub fn ring(nvars: usize) -> Arc<RingPresentation<PrimeField>> {
    RingPresentation::polynomial(poly_ring(nvars))
}

/// Raw terms `(coefficient, exponents)`; built into a polynomial by [`poly`].
pub type RawPoly = Vec<(i64, Vec<u16>)>;

pub fn raw_poly(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((-50i64..=50, prop::collection::vec(0..=max_deg, nvars)), 0..=max_terms)
}

pub fn poly(r: &Arc<PolyRing<PrimeField>>, raw: &RawPoly) -> Polynomial<PrimeField> {
    let field = *r.field();
    raw.iter().fold(Polynomial::zero(r), |acc, (c, e)| {
        let t = Polynomial::monomial(r, field.from_i64(*c), Monomial::from_exponents(e.iter().copied()));
        &acc + &t
    })
}

pub fn monomial_poly(r: &Arc<PolyRing<PrimeField>>, e: &[u16]) -> Polynomial<PrimeField> {
    Polynomial::monomial(r, r.field().one(), Monomial::from_exponents(e.iter().copied()))
}

/// Exponent vectors of an m-primary monomial ideal: one pure power per
/// variable plus extra mixed monomials.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    pub nvars: usize,
    pub gens: Vec<Vec<u16>>,
}

impl MonomialIdeal {
    pub fn ideal(&self) -> Ideal<PrimeField> {
        let r = ring(self.nvars);
        let gens = self.gens.iter().map(|e| monomial_poly(r.base(), e)).collect();
        Ideal::new(&r, gens).unwrap()
    }
}

pub fn m_primary_monomial(max_vars: usize, max_exp: u16, extra: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars).prop_flat_map(move |n| {
        (
            prop::collection::vec(1..=max_exp, n),
            prop::collection::vec(prop::collection::vec(0..=max_exp, n), 0..=extra),
        )
            .prop_map(move |(pure, mixed)| {
                let mut gens: Vec<Vec<u16>> = pure
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (0..n).map(|j| if i == j { a } else { 0 }).collect())
                    .collect();
                gens.extend(mixed.into_iter().filter(|e| e.iter().any(|&x| x > 0)));
                MonomialIdeal { nvars: n, gens }
            })
    })
}

/// Whether monomial `a` lies in the monomial ideal with exponent vectors `gens`.
pub fn divisible(a: &[u16], gens: &[Vec<u16>]) -> bool {
    gens.iter().any(|g| g.iter().zip(a).all(|(x, y)| x <= y))
}

/// All exponent vectors with every entry `<= bound`.
pub fn exponent_box(nvars: usize, bound: u16) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=bound).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}
