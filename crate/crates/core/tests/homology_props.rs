mod common;

use common::*;
use proptest::prelude::*;
use samuel_core::homology::{build_complex_slice, DEFAULT_HOMOLOGY_CAP};
use samuel_core::*;

proptest! {
    #![proptest_config(config(10))]

    #[test]
    fn homology_recovers_e1_e2(m in m_primary_monomial(3, 3, 3)) {
        let i = m.ideal();
        let red = minimal_reduction(&i, 0, 30).unwrap();
        let ctx = HmContext::new(&i, &red.elements).unwrap();
        let totals = ctx.totals(DEFAULT_HOMOLOGY_CAP).unwrap();
        let (e1, e2) = ctx.e1_e2(&totals);
        prop_assert_eq!(e1, ctx.fit.coefficients.get(1));
        prop_assert_eq!(e2, ctx.fit.coefficients.get(2));
        for n in 1..=totals.support_max {
            let (lhs, rhs, rhs2) = ctx.delta_identity(n).unwrap();
            prop_assert_eq!(&lhs, &rhs, "n = {}", n);
            prop_assert_eq!(&rhs, &rhs2, "n = {}", n);
        }
    }

    #[test]
    fn slices_are_complexes(m in m_primary_monomial(3, 3, 3), n in 1i64..6) {
        let i = m.ideal();
        let red = minimal_reduction(&i, 0, 30).unwrap();
        let slice = build_complex_slice(&i, &red.elements, n).unwrap();
        prop_assert!(slice.composes_to_zero(i.base().field()));
        prop_assert_eq!(slice.euler_characteristic(), slice.homology_characteristic());
        for (t, &dim) in slice.term_dims.iter().enumerate() {
            let rank_out = if t == 0 { 0 } else { slice.ranks[t - 1] };
            let rank_in = slice.ranks.get(t).copied().unwrap_or(0);
            prop_assert_eq!(slice.homology[t], dim - rank_out - rank_in);
        }
    }
}
