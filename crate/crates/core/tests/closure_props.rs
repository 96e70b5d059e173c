mod common;

use common::*;
use proptest::prelude::*;
use samuel_core::closure::DEFAULT_RR_WINDOW;
use samuel_core::*;

/// Minimal exponent vectors of `I^k`, for `k = 1..=max`.
fn power_exponents(gens: &[Vec<u16>], max: usize) -> Vec<Vec<Vec<u16>>> {
    let mut out = vec![gens.to_vec()];
    for _ in 1..max {
        let last = out.last().unwrap();
        let mut next: Vec<Vec<u16>> = Vec::new();
        for a in last {
            for g in gens {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        next.sort();
        next.dedup();
        let minimal: Vec<Vec<u16>> = next
            .iter()
            .filter(|a| {
                !next
                    .iter()
                    .any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y))
            })
            .cloned()
            .collect();
        out.push(minimal);
    }
    out
}

/// `m ∈ Ī` by the definition restricted to `m^k ∈ I^k`, `k <= 8`.
fn in_closure_brute_force(m: &[u16], powers: &[Vec<Vec<u16>>]) -> bool {
    powers.iter().enumerate().any(|(idx, gens)| {
        let k = idx as u16 + 1;
        let mk: Vec<u16> = m.iter().map(|&x| x * k).collect();
        divisible(&mk, gens)
    })
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn newton_closure_matches_brute_force(m in m_primary_monomial(3, 6, 3)) {
        let i = m.ideal();
        let closure = monomial_integral_closure(&i).unwrap();
        let powers = power_exponents(&m.gens, 8);
        let bounds: Vec<u16> = (0..m.nvars).map(|v| m.gens.iter().map(|g| g[v]).max().unwrap()).collect();
        let r = i.base().clone();
        for e in exponent_box(m.nvars, *bounds.iter().max().unwrap()) {
            if e.iter().zip(&bounds).any(|(x, b)| x > b) {
                continue;
            }
            let expected = in_closure_brute_force(&e, &powers);
            prop_assert_eq!(closure.contains(&monomial_poly(&r, &e)).unwrap(), expected, "monomial {:?}", e);
        }
        prop_assert!(closure.equals(&monomial_integral_closure(&closure).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(config(15))]

    #[test]
    fn ratliff_rush_between_ideal_and_closure(m in m_primary_monomial(3, 4, 3)) {
        let i = m.ideal();
        let rr = ratliff_rush_closure(&i, DEFAULT_RR_WINDOW).unwrap();
        let bar = monomial_integral_closure(&i).unwrap();
        prop_assert!(rr.closure.contains_ideal(&i).unwrap());
        prop_assert!(bar.contains_ideal(&rr.closure).unwrap());
        prop_assert_eq!(rr.is_closed, rr.closure.equals(&i).unwrap());
        // the closure is fixed by a second application
        prop_assert!(ratliff_rush_closure(&rr.closure, DEFAULT_RR_WINDOW).unwrap().is_closed);
        // and shares every Hilbert coefficient with I
        let fit = |j: &Ideal<PrimeField>| {
            fit_hilbert_polynomial(&hilbert_table(j, HilbertPolicy::default()).unwrap()).unwrap().coefficients
        };
        prop_assert_eq!(fit(&i), fit(&rr.closure));
    }
}
