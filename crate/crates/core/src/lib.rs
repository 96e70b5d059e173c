//! Hilbert–Samuel functions, reductions, closures and depth bounds for
//! m-primary ideals in polynomial rings and their quotients.

pub mod audit;
pub mod closure;
pub mod depth;
pub mod error;
pub mod field;
pub mod graded;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod ideal;
pub mod lengths;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod reduction;
pub mod ring;

pub use audit::{audit, AuditReport, ConclusionStatus, Declaration, HypothesisStatus, TheoremId, Verdict};
pub use closure::{monomial_integral_closure, ratliff_rush_closure, ratliff_rush_of_power, rr_closed_powers};
pub use depth::{sally_descent_bracket, DepthBounds, DepthBracket, DepthCertificate};
pub use error::{Error, ErrorClass, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_CHARACTERISTIC};
pub use groebner::{groebner_basis, GroebnerBasis, DEFAULT_PAIR_BUDGET};
pub use hilbert::{
    fit_hilbert_polynomial, hilbert_samuel_value, hilbert_table, series_numerator, CoefficientVector, HilbertFit,
    HilbertPolicy, HilbertTable, SeriesNumerator,
};
pub use homology::{delta_identity_check, e1_e2_via_hm, homology_totals, HmContext, HmTotals};
pub use ideal::{Ideal, QuotientBasis};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use poly::{PolyRing, Polynomial, Term};
pub use quotient::QuotientSpace;
pub use reduction::{independence_sample, minimal_reduction, ReductionData};
pub use ring::RingPresentation;
