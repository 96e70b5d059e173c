use num_bigint::BigInt;
use samuel_cli::corpus::{entry, CorpusEntry, CORPUS};
use samuel_core::depth::huckaba_test;
use samuel_core::hilbert::northcott_holds;
use samuel_core::homology::DEFAULT_HOMOLOGY_CAP;
use samuel_core::*;

fn reduction(e: &CorpusEntry) -> (Ideal<PrimeField>, ReductionData<PrimeField>) {
    let i = e.ideal();
    let red = minimal_reduction(&i, 0, 30).unwrap();
    (i, red)
}

/// Huckaba–Marley: `e_1`, `e_2` from homology lengths, and the identity
/// `Δ^d[P - H](n)` in both length forms, up to the last nonzero slice.
fn homology_matches_fit(id: &str) {
    let (i, red) = reduction(entry(id).unwrap());
    let ctx = HmContext::new(&i, &red.elements).unwrap();
    let totals = ctx.totals(DEFAULT_HOMOLOGY_CAP).unwrap();
    let (e1, e2) = ctx.e1_e2(&totals);
    assert_eq!(
        (e1, e2),
        (ctx.fit.coefficients.get(1), ctx.fit.coefficients.get(2)),
        "{id}"
    );
    for n in 1..=totals.support_max + 1 {
        let (lhs, a, b) = ctx.delta_identity(n).unwrap();
        assert_eq!(lhs, a, "{id}, n = {n}");
        assert_eq!(lhs, b, "{id}, n = {n}");
    }
}

#[test]
fn homology_1_7() {
    homology_matches_fit("1.7");
}

#[test]
fn homology_1_9() {
    homology_matches_fit("1.9");
}

#[test]
fn homology_2_1() {
    homology_matches_fit("2.1");
}

#[test]
fn homology_2_2() {
    homology_matches_fit("2.2");
}

#[test]
fn homology_2_3() {
    homology_matches_fit("2.3");
}

#[test]
fn homology_2_4() {
    homology_matches_fit("2.4");
}

/// Takes about twenty minutes in an optimized build.
#[test]
#[ignore]
fn homology_2_5() {
    homology_matches_fit("2.5");
}

#[test]
fn homology_2_6() {
    homology_matches_fit("2.6");
}

#[test]
fn homology_2_7() {
    homology_matches_fit("2.7");
}

#[test]
fn no_entry_has_depth_at_least_d_minus_one() {
    for e in &CORPUS {
        let (i, red) = reduction(e);
        let fit = fit_hilbert_polynomial(&hilbert_table(&i, HilbertPolicy::default()).unwrap()).unwrap();
        let e1 = i64::try_from(fit.coefficients.get(1)).unwrap();
        let test = huckaba_test(&i, &red.elements, e1).unwrap();
        assert!(!test.holds, "{}: sum {} against e1 {}", e.id, test.sum, test.e1);
        assert!(e.expected.depth + 1 < e.expected.dim, "{}", e.id);
    }
}

#[test]
fn northcott_on_every_entry() {
    for e in &CORPUS {
        let i = e.ideal();
        let fit = fit_hilbert_polynomial(&hilbert_table(&i, HilbertPolicy::default()).unwrap()).unwrap();
        let colength = BigInt::from(i.colength().unwrap());
        assert!(northcott_holds(&fit.coefficients, &colength), "{}", e.id);
        let rep = audit(&i, TheoremId::Northcott, &[], 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", e.id);
    }
}

#[test]
fn audits_with_verified_hypotheses_pass() {
    for (id, theorem) in [("1.7", TheoremId::P1_6), ("1.9", TheoremId::T1_8)] {
        let rep = audit(&entry(id).unwrap().ideal(), theorem, &[], 0).unwrap();
        assert!(
            rep.hypotheses
                .iter()
                .all(|h| h.status == audit::HypothesisStatus::Verified),
            "{id} {theorem}"
        );
        assert_eq!(rep.verdict, Verdict::Pass, "{id} {theorem}: {:?}", rep.conclusions);
    }
}
