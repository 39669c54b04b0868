//! Fixed inputs shared by the benchmarks.

use llab_core::etransform::enumerate_chain_weights;
use llab_core::{Chain, ChainKind, IntPoly};

/// `1 + x + ... + x^(n-1)`.
pub fn uniform(n: usize) -> IntPoly {
    IntPoly::from_sign_str(&"+".repeat(n)).expect("valid sign string")
}

/// A cyclotomic `±1` polynomial of length 24 with repeated factors
/// (`Φ1^2Φ2^3Φ4Φ3^2Φ6^2Φ12^2`).
pub fn n24_member() -> IntPoly {
    IntPoly::from_sign_str("++--++--++----++--++--++").expect("valid sign string")
}

/// Every regular chain for `t`.
pub fn regular_chains(t: u32) -> Vec<Chain> {
    enumerate_chain_weights(t, ChainKind::Regular)
        .into_iter()
        .map(|w| Chain::new(3, w).expect("enumerated weights are valid"))
        .collect()
}
