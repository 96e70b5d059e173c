//! Hypothesis and conclusion checks for the numbered results on a concrete
//! ideal. Hypotheses the engine cannot decide must be declared by the
//! caller; conclusions are only evaluated once every hypothesis is verified
//! or declared.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::closure::{monomial_integral_closure, ratliff_rush_closure, DEFAULT_RR_WINDOW};
use crate::depth::{sally_descent_bracket, DepthBounds};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_table, CoefficientPaths, HilbertPolicy};
use crate::ideal::Ideal;
use crate::lengths::ReductionLengths;
use crate::reduction::{independence_sample, minimal_reduction, DEFAULT_REDUCTION_CAP};

/// Draws used for the evidence-only independence claims.
pub const INDEPENDENCE_SAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    P1_1,
    P1_2,
    L1_3,
    T1_4,
    T1_5,
    P1_6,
    T1_8,
    Northcott,
    Itoh12,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::P1_1,
        TheoremId::P1_2,
        TheoremId::L1_3,
        TheoremId::T1_4,
        TheoremId::T1_5,
        TheoremId::P1_6,
        TheoremId::T1_8,
        TheoremId::Northcott,
        TheoremId::Itoh12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::P1_1 => "P1.1",
            TheoremId::P1_2 => "P1.2",
            TheoremId::L1_3 => "L1.3",
            TheoremId::T1_4 => "T1.4",
            TheoremId::T1_5 => "T1.5",
            TheoremId::P1_6 => "P1.6",
            TheoremId::T1_8 => "T1.8",
            TheoremId::Northcott => "NORTHCOTT",
            TheoremId::Itoh12 => "ITOH12",
        }
    }

    /// Required `d`, or the least admissible `d` when `exact` is false.
    fn dimension(self) -> (usize, bool) {
        match self {
            TheoremId::L1_3 => (2, true),
            TheoremId::T1_4 | TheoremId::P1_6 | TheoremId::T1_8 => (3, true),
            TheoremId::T1_5 => (4, true),
            TheoremId::P1_1 | TheoremId::P1_2 | TheoremId::Itoh12 => (2, false),
            TheoremId::Northcott => (1, false),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Hypotheses a caller may assert without proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Declaration {
    IntegrallyClosed,
    AsymptoticallyNormal,
    CohenMacaulay,
}

impl Declaration {
    pub fn name(self) -> &'static str {
        match self {
            Declaration::IntegrallyClosed => "integrally-closed",
            Declaration::AsymptoticallyNormal => "asymptotically-normal",
            Declaration::CohenMacaulay => "cohen-macaulay",
        }
    }
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Declaration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Declaration::IntegrallyClosed,
            Declaration::AsymptoticallyNormal,
            Declaration::CohenMacaulay,
        ]
        .into_iter()
        .find(|d| d.name() == s)
        .ok_or_else(|| Error::Problem(format!("unknown declaration `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisStatus {
    Verified,
    Failed,
    DeclaredByUser,
    Unverifiable,
}

impl HypothesisStatus {
    fn admits(self) -> bool {
        matches!(self, HypothesisStatus::Verified | HypothesisStatus::DeclaredByUser)
    }

    pub fn name(self) -> &'static str {
        match self {
            HypothesisStatus::Verified => "verified",
            HypothesisStatus::Failed => "failed",
            HypothesisStatus::DeclaredByUser => "declared-by-user",
            HypothesisStatus::Unverifiable => "unverifiable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConclusionStatus {
    Pass,
    Fail,
    /// Holds according to a depth bracket whose bound is only certified
    /// through its degree bound.
    CertifiedToBound,
    /// Supported by sampling only.
    EvidenceOnly,
    /// The bracket is too wide to decide.
    Undetermined,
}

impl ConclusionStatus {
    pub fn name(self) -> &'static str {
        match self {
            ConclusionStatus::Pass => "pass",
            ConclusionStatus::Fail => "fail",
            ConclusionStatus::CertifiedToBound => "certified-to-bound",
            ConclusionStatus::EvidenceOnly => "evidence-only",
            ConclusionStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "NOT-APPLICABLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check<S> {
    pub name: String,
    pub status: S,
    pub detail: String,
}

fn check<S>(name: &str, status: S, detail: impl Into<String>) -> Check<S> {
    Check {
        name: name.to_string(),
        status,
        detail: detail.into(),
    }
}

/// Quantities computed for the audit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub e: Vec<BigInt>,
    pub paths_agree: bool,
    pub colength: u64,
    pub d: usize,
    pub r: usize,
    pub colength_j: usize,
    /// `λ(I²/JI)`.
    pub i2_over_ji: usize,
    pub p_equals_h_at_1_2: bool,
    pub integrally_closed: Option<bool>,
    pub rr_closed: Option<bool>,
    /// `(lower, upper, lower proved)`.
    pub depth: Option<(usize, usize, bool)>,
    pub reduction_numbers: Option<BTreeMap<usize, usize>>,
}

impl Evidence {
    pub fn e(&self, i: usize) -> BigInt {
        self.e.get(i).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub theorem: TheoremId,
    pub declarations: Vec<Declaration>,
    pub hypotheses: Vec<Check<HypothesisStatus>>,
    pub conclusions: Vec<Check<ConclusionStatus>>,
    pub evidence: Evidence,
    pub verdict: Verdict,
    pub seed: u64,
}

/// Lazily computed facts shared by the hypothesis and conclusion checks.
struct Facts<'a, F: Field> {
    ideal: &'a Ideal<F>,
    seed: u64,
    evidence: Evidence,
}

impl<F: Field> Facts<'_, F> {
    fn integrally_closed(&mut self) -> Result<Option<bool>> {
        if self.evidence.integrally_closed.is_none() {
            let maximal = Ideal::maximal(self.ideal.ring());
            self.evidence.integrally_closed = if self.ideal.equals(&maximal)? {
                Some(true)
            } else {
                match monomial_integral_closure(self.ideal) {
                    Ok(c) => Some(self.ideal.equals(&c)?),
                    Err(Error::NonMonomial { .. } | Error::QuotientPresent) => None,
                    Err(e) => return Err(e),
                }
            };
        }
        Ok(self.evidence.integrally_closed)
    }

    fn rr_closed(&mut self) -> Result<bool> {
        if self.evidence.rr_closed.is_none() {
            self.evidence.rr_closed = Some(ratliff_rush_closure(self.ideal, DEFAULT_RR_WINDOW)?.is_closed);
        }
        Ok(self.evidence.rr_closed.unwrap_or(false))
    }

    fn depth(&mut self) -> Result<(usize, usize, bool)> {
        if self.evidence.depth.is_none() {
            let b = sally_descent_bracket(self.ideal, &DepthBounds::default(), self.seed)?;
            self.evidence.depth = Some((b.lower, b.upper, b.lower_proved));
        }
        Ok(self.evidence.depth.unwrap())
    }

    fn independence(&mut self) -> Result<Check<ConclusionStatus>> {
        let hist = independence_sample(self.ideal, INDEPENDENCE_SAMPLES, self.seed)?;
        let status = if hist.len() == 1 {
            ConclusionStatus::EvidenceOnly
        } else {
            ConclusionStatus::Fail
        };
        let detail = format!("r_J over {INDEPENDENCE_SAMPLES} draws: {hist:?}");
        self.evidence.reduction_numbers = Some(hist);
        Ok(check("r(I) independent of J", status, detail))
    }

    /// `depth G(I) >= k` judged against the bracket.
    fn depth_at_least(&mut self, k: usize, name: &str) -> Result<Check<ConclusionStatus>> {
        let (lower, upper, proved) = self.depth()?;
        let status = if lower >= k {
            if proved {
                ConclusionStatus::Pass
            } else {
                ConclusionStatus::CertifiedToBound
            }
        } else if upper < k {
            ConclusionStatus::Fail
        } else {
            ConclusionStatus::Undetermined
        };
        Ok(check(name, status, format!("bracket [{lower}, {upper}]")))
    }
}

fn pass_if(name: &str, ok: bool, detail: impl Into<String>) -> Check<ConclusionStatus> {
    let status = if ok {
        ConclusionStatus::Pass
    } else {
        ConclusionStatus::Fail
    };
    check(name, status, detail)
}

fn computed(name: &str, ok: bool, detail: impl Into<String>) -> Check<HypothesisStatus> {
    let status = if ok {
        HypothesisStatus::Verified
    } else {
        HypothesisStatus::Failed
    };
    check(name, status, detail)
}

/// Computed when possible, otherwise taken from the declarations.
fn decidable(name: &str, value: Option<bool>, declared: bool) -> Check<HypothesisStatus> {
    match value {
        Some(v) => computed(name, v, "computed"),
        None if declared => check(name, HypothesisStatus::DeclaredByUser, "declared"),
        None => check(
            name,
            HypothesisStatus::Unverifiable,
            "not decidable here; declare it to proceed",
        ),
    }
}

pub fn audit<F: Field>(
    ideal: &Ideal<F>,
    theorem: TheoremId,
    declarations: &[Declaration],
    seed: u64,
) -> Result<AuditReport> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let table = hilbert_table(ideal, HilbertPolicy::default())?;
    let d = table.d();
    let (need, exact) = theorem.dimension();
    if (exact && d != need) || d < need {
        return Err(Error::DimensionMismatch {
            expected: need,
            found: d,
        });
    }
    let (paths, fit, _) = CoefficientPaths::compute(&table)?;
    let red = minimal_reduction(ideal, seed, DEFAULT_REDUCTION_CAP)?;
    let lengths = ReductionLengths::new(ideal, &red.elements, red.r)?;
    let colength = ideal.colength()?;
    let p_equals_h = (1..=2).all(|n| fit.polynomial.eval(n) == table.value(n));
    let evidence = Evidence {
        e: fit.coefficients.e.clone(),
        paths_agree: paths.agree(),
        colength,
        d,
        r: red.r,
        colength_j: lengths.colength_j(),
        i2_over_ji: lengths.excess(2),
        p_equals_h_at_1_2: p_equals_h,
        ..Evidence::default()
    };
    let mut facts = Facts { ideal, seed, evidence };
    let declared = |x: Declaration| declarations.contains(&x);

    let ev = facts.evidence.clone();
    let (e0, e1, e2, e3, e4) = (ev.e(0), ev.e(1), ev.e(2), ev.e(3), ev.e(4));
    let lambda = BigInt::from(colength);
    let itoh_gap = &e1 - &e0 + &lambda;

    let mut hypotheses = vec![computed("m-primary", true, "computed")];
    // for a minimal reduction J, λ(R/J) = e_0 exactly when R is Cohen–Macaulay
    let cm = BigInt::from(ev.colength_j) == e0;
    hypotheses.push(if cm || !declared(Declaration::CohenMacaulay) {
        computed(
            "R Cohen-Macaulay",
            cm,
            format!("λ(R/J) = {}, e_0 = {e0}", ev.colength_j),
        )
    } else {
        check(
            "R Cohen-Macaulay",
            HypothesisStatus::Failed,
            "λ(R/J) ≠ e_0 contradicts the declaration",
        )
    });
    let needs_closed = matches!(
        theorem,
        TheoremId::P1_1 | TheoremId::P1_2 | TheoremId::T1_8 | TheoremId::Itoh12
    );
    if needs_closed {
        let value = facts.integrally_closed()?;
        hypotheses.push(decidable(
            "I integrally closed",
            value,
            declared(Declaration::IntegrallyClosed),
        ));
    }
    match theorem {
        TheoremId::P1_1 => hypotheses.push(computed(
            "e_2 = λ(I²/JI) + 1",
            e2 == BigInt::from(ev.i2_over_ji + 1),
            format!("e_2 = {e2}, λ(I²/JI) = {}", ev.i2_over_ji),
        )),
        TheoremId::P1_2 => hypotheses.push(computed("e_2 = 3", e2 == BigInt::from(3), format!("e_2 = {e2}"))),
        TheoremId::L1_3 => {
            hypotheses.push(computed("r_J(I) <= 2", ev.r <= 2, format!("r_J = {}", ev.r)));
            let closed = facts.rr_closed()?;
            hypotheses.push(computed("Ĩ = I", closed, "colon chain"));
        }
        TheoremId::T1_4 => {
            hypotheses.push(decidable(
                "I asymptotically normal",
                None,
                declared(Declaration::AsymptoticallyNormal),
            ));
            let closed = facts.rr_closed()?;
            hypotheses.push(computed("Ĩ = I", closed, "colon chain"));
        }
        TheoremId::T1_5 => {
            hypotheses.push(decidable(
                "I asymptotically normal",
                None,
                declared(Declaration::AsymptoticallyNormal),
            ));
            hypotheses.push(computed("r_J(I) <= 3", ev.r <= 3, format!("r_J = {}", ev.r)));
        }
        TheoremId::P1_6 => hypotheses.push(computed("e_2 <= 1", e2 <= BigInt::from(1), format!("e_2 = {e2}"))),
        TheoremId::T1_8 => hypotheses.push(computed(
            "e_1 - e_0 + λ(R/I) = e_2",
            itoh_gap == e2,
            format!("{e1} - {e0} + {lambda} = {itoh_gap}, e_2 = {e2}"),
        )),
        TheoremId::Northcott | TheoremId::Itoh12 => {}
    }

    let admitted = hypotheses.iter().all(|h| h.status.admits());
    let mut conclusions = Vec::new();
    if admitted {
        match theorem {
            TheoremId::P1_1 => {
                conclusions.push(facts.depth_at_least(d, "G(I) Cohen-Macaulay")?);
                conclusions.push(pass_if(
                    "e_2 = e_1 - e_0 + λ(R/I)",
                    itoh_gap == e2,
                    format!("{itoh_gap} vs {e2}"),
                ));
                conclusions.push(pass_if("r_J(I) <= 3", ev.r <= 3, format!("r_J = {}", ev.r)));
                conclusions.push(facts.independence()?);
            }
            TheoremId::P1_2 => {
                conclusions.push(facts.depth_at_least(d - 2, "depth G(I) >= d - 2")?);
                conclusions.push(facts.independence()?);
            }
            TheoremId::L1_3 => conclusions.push(facts.depth_at_least(1, "depth G(I) >= 1")?),
            TheoremId::T1_4 => {
                let small = ev.r <= 2;
                let detail = format!("P = H at 1, 2: {p_equals_h}; r_J = {}", ev.r);
                conclusions.push(pass_if(
                    "P = H at 1, 2 implies r_J <= 2",
                    !p_equals_h || small,
                    detail.clone(),
                ));
                conclusions.push(pass_if("r_J <= 2 implies P = H at 1, 2", !small || p_equals_h, detail));
            }
            TheoremId::T1_5 => conclusions.push(pass_if("e_4 <= 0", e4 <= BigInt::from(0), format!("e_4 = {e4}"))),
            TheoremId::P1_6 | TheoremId::T1_8 => {
                conclusions.push(pass_if("e_3 <= 0", e3 <= BigInt::from(0), format!("e_3 = {e3}")))
            }
            TheoremId::Northcott => conclusions.push(pass_if(
                "e_1 >= e_0 - λ(R/I)",
                e1 >= &e0 - &lambda,
                format!("{e1} >= {e0} - {lambda}"),
            )),
            TheoremId::Itoh12 => conclusions.push(pass_if(
                "e_1 - e_0 + λ(R/I) <= e_2",
                itoh_gap <= e2,
                format!("{itoh_gap} <= {e2}"),
            )),
        }
    }
    let verdict = if !admitted {
        Verdict::NotApplicable
    } else if conclusions.iter().any(|c| c.status == ConclusionStatus::Fail) {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let mut declarations = declarations.to_vec();
    declarations.sort();
    declarations.dedup();
    Ok(AuditReport {
        theorem,
        declarations,
        hypotheses,
        conclusions,
        evidence: facts.evidence,
        verdict,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::ring::RingPresentation;

    fn ideal(vars: &[&str], gens: &str) -> Ideal<PrimeField> {
        let base = PolyRing::new(vars, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
        Ideal::parse(&RingPresentation::polynomial(base), gens).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
        assert!(matches!("T9.9".parse::<TheoremId>(), Err(Error::UnknownTheorem(_))));
        assert_eq!(
            "cohen-macaulay".parse::<Declaration>().unwrap(),
            Declaration::CohenMacaulay
        );
    }

    #[test]
    fn itoh_on_square_of_maximal_ideal() {
        let i = ideal(&["x", "y", "z"], "x^2, x*y, x*z, y^2, y*z, z^2");
        let rep = audit(&i, TheoremId::Itoh12, &[], 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.evidence.e, [8, 4, 0, 0].map(BigInt::from).to_vec());
        assert_eq!(rep.evidence.integrally_closed, Some(true));
        assert_eq!(audit(&i, TheoremId::Northcott, &[], 0).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn undeclared_hypotheses_block_conclusions() {
        let i = ideal(&["x", "y", "z"], "x, y, z");
        let rep = audit(&i, TheoremId::T1_4, &[], 0).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
        assert!(rep.conclusions.is_empty());
        let rep = audit(&i, TheoremId::T1_4, &[Declaration::AsymptoticallyNormal], 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(matches!(
            audit(&i, TheoremId::L1_3, &[], 0),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn two_dimensional_audit_on_parameter_ideal() {
        let i = ideal(&["x", "y"], "x^2, y^2");
        let rep = audit(&i, TheoremId::L1_3, &[], 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.conclusions[0].status, ConclusionStatus::Pass);
    }
}
