mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use samuel_core::hilbert::{coefficients_from_numerator, ei_via_delta_formula, northcott_holds, CoefficientPaths};
use samuel_core::*;

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn three_paths_agree(m in m_primary_monomial(3, 4, 4)) {
        let i = m.ideal();
        let table = hilbert_table(&i, HilbertPolicy::default()).unwrap();
        let fit = fit_hilbert_polynomial(&table).unwrap();
        let numerator = series_numerator(&table).unwrap();
        let from_numerator = coefficients_from_numerator(&numerator, table.d());
        let from_delta = ei_via_delta_formula(&table, &fit);
        prop_assert_eq!(&from_numerator, &fit.coefficients);
        prop_assert_eq!(&from_delta[..], &fit.coefficients.e[1..]);
        prop_assert!(CoefficientPaths::compute(&table).unwrap().0.agree());
    }

    #[test]
    fn numerator_reproduces_differences(m in m_primary_monomial(3, 4, 4)) {
        let i = m.ideal();
        let table = hilbert_table(&i, HilbertPolicy::default()).unwrap();
        let numerator = series_numerator(&table).unwrap();
        let d = table.d();
        let diffs = table.first_differences();
        // coefficient of t^n in a(t) / (1-t)^d is Σ_k a_k C(n-k+d-1, d-1)
        for (n, expected) in diffs.iter().enumerate() {
            let value: BigInt = numerator
                .a
                .iter()
                .enumerate()
                .filter(|(k, _)| *k <= n)
                .map(|(k, a)| a * binomial_u(n - k + d - 1, d - 1))
                .sum();
            prop_assert_eq!(&value, expected, "n = {}", n);
        }
        let fit = fit_hilbert_polynomial(&table).unwrap();
        prop_assert_eq!(numerator.sum(), fit.coefficients.get(0));
        // Δ^d H settles at e_0
        let top = table.n_max() as i64;
        prop_assert_eq!(table.delta_d(top), fit.coefficients.get(0));
        prop_assert!(northcott_holds(&fit.coefficients, &BigInt::from(i.colength().unwrap())));
    }
}

fn binomial_u(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| {
        acc * BigInt::from(n - j) / BigInt::from(j + 1)
    })
}
