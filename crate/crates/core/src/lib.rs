//! Exact arithmetic for cyclotomic Littlewood polynomials.
//!
//! A Littlewood polynomial has every coefficient equal to `+1` or `-1`. This
//! crate factors such polynomials into cyclotomic factors, computes the power
//! sums of their roots through Ramanujan sums and through Newton's identities,
//! drives the E-transformation that links every odd-coefficient cyclotomic
//! polynomial to `1 + x + ... + x^(N-1)`, and runs exhaustive verifiers for the
//! structure conjectures at small `N`.
//!
//! Module map:
//!
//! - [`intpoly`]: dense exact integer polynomials.
//! - [`cyclotomic`]: `Φ_d` construction, exponent maps, trial factorization.
//! - [`ramanujan`]: `C_d(k)`, `T_n(k)` and p-adic valuations.
//! - [`powersums`]: power sums `S_k` by two independent routes, defect sets.
//! - [`etransform`]: chains, moves, the normalization algorithm.
//! - [`conjecture`]: canonical forms, tower decomposition, enumeration, verifiers.
//! - [`norms`]: exact `L4` norms and the extremal-family bound.

pub mod conjecture;
pub mod cyclotomic;
pub mod error;
pub mod etransform;
pub mod intpoly;
pub mod norms;
pub mod powersums;
pub mod ramanujan;
mod sign;

pub use conjecture::{
    canonical_form, check_form11, classify_known_case, enumerate_lc, CaseLabel, EnumerateOptions, Form11Decomposition,
    Form11Step, Method, Symmetry, VerificationReport,
};
pub use cyclotomic::{cyclotomic_poly, divisors, euler_phi, expand, factor_cyclotomic, ExponentMap};
pub use error::{Error, Result};
pub use etransform::{Chain, ChainKind, EMove, EPath};
pub use intpoly::IntPoly;
pub use num_bigint::BigInt;
pub use powersums::PowerSumProfile;
pub use sign::Sign;
