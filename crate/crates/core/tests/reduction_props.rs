mod common;

use common::*;
use proptest::prelude::*;
use samuel_core::reduction::reduction_number;
use samuel_core::*;

/// `(x_1^k, ..., x_n^k)`.
fn pure_powers(i: &Ideal<PrimeField>, k: usize) -> Ideal<PrimeField> {
    let n = i.base().nvars();
    let gens = (0..n)
        .map(|v| {
            let e: Vec<u16> = (0..n).map(|j| if j == v { k as u16 } else { 0 }).collect();
            monomial_poly(i.base(), &e)
        })
        .collect();
    Ideal::new(i.ring(), gens).unwrap()
}

/// `λ(R/(A + (x_i^k)))`, which is the local colength of `A` once `m^k ⊆ A_m`.
fn local_colength(a: &Ideal<PrimeField>, k: usize) -> u64 {
    a.sum(&pure_powers(a, k)).unwrap().colength().unwrap()
}

/// `A_m = B_m` for `A ⊇ B`, given `(x_i^k) ⊆ m·A`: by Nakayama this is `A = B + (x_i^k)`.
fn locally_equal(a: &Ideal<PrimeField>, b: &Ideal<PrimeField>, k: usize) -> bool {
    a.equals(&b.sum(&pure_powers(a, k)).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(config(30))]

    #[test]
    fn reduction_certificates_reverify(m in m_primary_monomial(3, 4, 3), seed in 0u64..1000) {
        let i = m.ideal();
        let red = minimal_reduction(&i, seed, 30).unwrap();
        let r = red.r;
        prop_assert_eq!(red.elements.len(), m.nvars);
        let e0 = fit_hilbert_polynomial(&hilbert_table(&i, HilbertPolicy::default()).unwrap()).unwrap().coefficients.get(0);
        let e0 = u64::try_from(e0).unwrap();
        // J is m-primary at the origin, and R_m/J_m has length e_0 since R is regular
        prop_assert_eq!(local_colength(&red.j, e0 as usize), e0);
        prop_assert_eq!(local_colength(&red.j, 2 * e0 as usize), e0);
        // I^(r+1) = J I^r at the origin, and not one step earlier
        let max_a = *m.gens.iter().flatten().max().unwrap() as usize;
        prop_assert!(locally_equal(&i.power(r + 1).unwrap(), &red.j.product(&i.power(r).unwrap()).unwrap(), (r + 1) * max_a + 1));
        if r >= 1 {
            let j_below = if r == 1 { red.j.clone() } else { red.j.product(&i.power(r - 1).unwrap()).unwrap() };
            prop_assert!(!locally_equal(&i.power(r).unwrap(), &j_below, r * max_a + 1));
        }
        // recomputing with a larger cap finds the same number
        prop_assert_eq!(reduction_number(&i, &red.j, r + 10).unwrap(), r);
        let again = minimal_reduction(&i, seed, 30).unwrap();
        prop_assert_eq!(again.elements, red.elements);
        prop_assert_eq!(again.r, r);
    }

    #[test]
    fn histograms_are_deterministic(m in m_primary_monomial(2, 4, 2), seed in 0u64..1000) {
        let i = m.ideal();
        let a = independence_sample(&i, 4, seed).unwrap();
        prop_assert_eq!(a.values().sum::<usize>(), 4);
        prop_assert_eq!(a, independence_sample(&i, 4, seed).unwrap());
    }
}
