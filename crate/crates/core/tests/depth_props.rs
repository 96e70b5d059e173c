mod common;

use common::*;
use proptest::prelude::*;
use samuel_core::closure::DEFAULT_RR_WINDOW;
use samuel_core::depth::vv_cm_test;
use samuel_core::hilbert::delta_p_minus_h;
use samuel_core::lengths::ReductionLengths;
use samuel_core::*;

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn brackets_are_sound(m in m_primary_monomial(3, 4, 3), seed in 0u64..100) {
        let i = m.ideal();
        let b = sally_descent_bracket(&i, &DepthBounds::default(), seed).unwrap();
        prop_assert!(b.lower <= b.upper);
        prop_assert!(b.upper <= b.d);
        prop_assert!(b.verify(&i).unwrap());
        for c in &b.certificates {
            if let DepthCertificate::RatliffRush(w) = c {
                prop_assert!(!ratliff_rush_of_power(&i, w.n, DEFAULT_RR_WINDOW).unwrap().is_closed);
                prop_assert_eq!(b.upper, 0);
            }
        }
        let again = sally_descent_bracket(&i, &DepthBounds::default(), seed).unwrap();
        prop_assert_eq!((again.lower, again.upper), (b.lower, b.upper));
        prop_assert_eq!(again.sequence, b.sequence);
    }

    #[test]
    fn valabrega_valla_kills_corrections(m in m_primary_monomial(3, 4, 3)) {
        let i = m.ideal();
        let red = minimal_reduction(&i, 0, 30).unwrap();
        if vv_cm_test(&i, &red.elements, red.r).unwrap() {
            let table = hilbert_table(&i, HilbertPolicy::default()).unwrap();
            let fit = fit_hilbert_polynomial(&table).unwrap();
            let lengths = ReductionLengths::new(&i, &red.elements, red.r).unwrap();
            for n in 1..=table.n_max() {
                prop_assert_eq!(delta_p_minus_h(&table, &fit, n as i64), lengths.excess(n).into(), "n = {}", n);
            }
            let b = sally_descent_bracket(&i, &DepthBounds::default(), 0).unwrap();
            prop_assert_eq!(b.lower, b.d);
        }
    }
}
