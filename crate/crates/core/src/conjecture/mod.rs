//! Canonical class representatives, tower decompositions, exhaustive
//! enumeration of cyclotomic Littlewood polynomials, and the verifiers built
//! on top of them.

mod canonical;
mod enumerate;
mod form11;
pub(crate) mod verify;

pub use canonical::{canonical_form, Symmetry};
pub use enumerate::{enumerate_lc, EnumerateOptions, Method, NAIVE_HARD_CEILING};
pub use form11::{check_form11, Form11Decomposition, Form11Step};
pub use verify::{
    analyze, check_defect_laws, classify_known_case, random_form11, verify_conjecture12, verify_conjecture43,
    verify_theorem39, CaseLabel, Check, PolyAnalysis, ReportEntry, ReverseCheck, Status, VerificationReport, Witness,
    WitnessCategory, WitnessRecord,
};
