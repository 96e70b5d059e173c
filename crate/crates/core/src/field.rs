//! Coefficient fields: prime fields GF(p) with p < 2^31 and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;

/// Characteristic used when the input does not specify one.
pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

/// Exact field arithmetic. Elements are plain values; the field object carries
/// whatever context (the modulus) the operations need.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Renders an element as a literal the polynomial grammar accepts when
    /// possible (prime-field elements use the symmetric residue).
    fn render(&self, a: &Self::Elem) -> String;
    /// Whether `render` of this element produces an integer literal.
    fn is_integral(&self, a: &Self::Elem) -> bool;
    /// A coefficient for a generic linear combination: uniform over the
    /// nonzero elements of GF(p), uniform over [-100, 100] \ {0} for Q.
    fn random_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// How [`Field::random_generic`] draws, for reports.
    fn generic_distribution(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        n.mod_floor(&BigInt::from(self.p)).to_u32().unwrap()
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn render(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn is_integral(&self, _a: &u32) -> bool {
        true
    }
    fn random_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }

    fn generic_distribution(&self) -> String {
        format!("uniform on the nonzero residues mod {}", self.p)
    }
}

/// The field of rational numbers, with always-reduced fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_integral(&self, a: &BigRational) -> bool {
        a.is_integer()
    }
    fn random_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let mut v = 0i64;
        while v == 0 {
            v = rng.gen_range(-100..=100);
        }
        self.from_i64(v)
    }

    fn generic_distribution(&self) -> String {
        "uniform on the nonzero integers in [-100, 100]".to_string()
    }
}

/// The characteristic of a coefficient field, validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, Error> {
        if characteristic != 0 && (characteristic >= (1 << 31) || !is_prime(characteristic)) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            characteristic: DEFAULT_CHARACTERISTIC,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 3, 17, 32002, 12345] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn symmetric_rendering() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.render(&6), "-1");
        assert_eq!(f.render(&3), "3");
        assert_eq!(f.render(&4), "-3");
    }
}
