//! Ideals shared by the benchmarks.

use std::sync::Arc;

use samuel_core::{Ideal, MonomialOrder, PolyRing, PrimeField, RingPresentation};

pub const ONE_SEVEN: &str = "x^3, y^3, x^2*y + z^3, x*z^2, y^2*z + x^2*z";
pub const TWO_SIX: &str = "x^4, y^4, z^4, x^3*y, y^3*z, x*y*z";

pub fn ring(vars: &[&str]) -> Arc<RingPresentation<PrimeField>> {
    let base = PolyRing::new(vars, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
    RingPresentation::polynomial(base)
}

pub fn ideal(vars: &[&str], gens: &str) -> Ideal<PrimeField> {
    Ideal::parse(&ring(vars), gens).unwrap()
}

/// The quotient ring example in six variables with the maximal ideal.
pub fn quotient_example() -> Ideal<PrimeField> {
    let base = PolyRing::new(
        &["x", "y", "z", "u", "v", "w"],
        PrimeField::new(32003).unwrap(),
        MonomialOrder::GrevLex,
    )
    .unwrap();
    let ring = RingPresentation::parse_quotient(base, "z^2, z*u, z*v, u*v, u^3 - y*z, v^3 - x*z").unwrap();
    Ideal::parse(&ring, "x, y, z, u, v, w").unwrap()
}
