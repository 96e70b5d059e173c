mod common;

use common::*;
use proptest::prelude::*;
use samuel_core::audit::{ConclusionStatus, HypothesisStatus};
use samuel_core::*;

fn applicable(d: usize) -> Vec<TheoremId> {
    TheoremId::ALL
        .into_iter()
        .filter(|t| match t {
            TheoremId::L1_3 => d == 2,
            TheoremId::T1_4 | TheoremId::P1_6 | TheoremId::T1_8 => d == 3,
            TheoremId::T1_5 => d == 4,
            TheoremId::Northcott => true,
            _ => d >= 2,
        })
        .collect()
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn audits_never_fail_in_polynomial_rings(m in m_primary_monomial(3, 3, 3)) {
        let i = m.ideal();
        let table = hilbert_table(&i, HilbertPolicy::default()).unwrap();
        let fit = fit_hilbert_polynomial(&table).unwrap();
        for t in applicable(m.nvars) {
            let rep = audit(&i, t, &[], 0).unwrap();
            let admitted = rep
                .hypotheses
                .iter()
                .all(|h| matches!(h.status, HypothesisStatus::Verified | HypothesisStatus::DeclaredByUser));
            if admitted {
                prop_assert_ne!(rep.verdict, Verdict::Fail, "{} on {:?}: {:?}", t, m.gens, rep.conclusions);
            } else {
                prop_assert!(rep.conclusions.is_empty());
                prop_assert_eq!(rep.verdict, Verdict::NotApplicable);
            }
            prop_assert!(rep.conclusions.iter().all(|c| c.status != ConclusionStatus::Fail));
            prop_assert_eq!(&rep.evidence.e, &fit.coefficients.e);
            prop_assert_eq!(rep.evidence.colength, i.colength().unwrap());
            prop_assert_eq!(audit(&i, t, &[], 0).unwrap(), rep);
        }
    }
}
