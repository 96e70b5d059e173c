//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial as an exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = u16>>(exps: I) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| u16::try_from(a as u32 * k).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg * k,
        }
    }

    /// True when `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit signature used to reject divisibility quickly: `a | b` implies
    /// `mask(a) & !mask(b) == 0`.
    pub fn divmask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            let slot = (i % 16) as u64;
            if e >= 1 {
                mask |= 1 << slot;
            }
            if e >= 2 {
                mask |= 1 << (16 + slot);
            }
            if e >= 4 {
                mask |= 1 << (32 + slot);
            }
            if e >= 8 {
                mask |= 1 << (48 + slot);
            }
        }
        mask
    }

    /// Index of the only variable occurring, when the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Term orders supported by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with variables in declaration order.
    #[default]
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Graded reverse lexicographic on the first `split` variables, ties
    /// broken by graded reverse lexicographic on the remaining ones. Any
    /// monomial involving the first block is larger than every monomial free
    /// of it.
    Elimination { split: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a.deg, &a.exps, b.deg, &b.exps),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination { split } => {
                let (a1, a2) = a.exps.split_at(split);
                let (b1, b2) = b.exps.split_at(split);
                let da1: u32 = a1.iter().map(|&e| e as u32).sum();
                let db1: u32 = b1.iter().map(|&e| e as u32).sum();
                grevlex(da1, a1, db1, b1).then_with(|| grevlex(a.deg - da1, a2, b.deg - db1, b2))
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

#[inline]
fn grevlex(da: u32, a: &[u16], db: u32, b: &[u16]) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let elim = MonomialOrder::Elimination { split: 1 };
        assert_eq!(elim.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(elim.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_mask() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.divmask() & !b.divmask(), 0);
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
    }
}
