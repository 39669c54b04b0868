use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{divisors, expand, factor_cyclotomic, split_two_adic, ExponentMap};
use crate::error::{bad_input, Error, Result};
use crate::etransform::{enumerate_chain_weights, ChainKind};
use crate::intpoly::IntPoly;
use crate::sign::Sign;

use super::canonical::canonical_form;

/// Naive enumeration is refused above this `N` whatever the configuration.
pub const NAIVE_HARD_CEILING: u64 = 34;

const CHUNK_BITS: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Scan every sign vector with `a_0 = +1`.
    Naive,
    /// Expand every exponent map allowed by the chain sums.
    Structured,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Structured => "structured",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "structured" => Ok(Method::Structured),
            other => Err(bad_input(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub workers: usize,
    pub naive_cap: u64,
    /// Lets naive enumeration run above `naive_cap` (never above
    /// [`NAIVE_HARD_CEILING`]).
    pub allow_over_cap: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            naive_cap: 26,
            allow_over_cap: false,
        }
    }
}

impl EnumerateOptions {
    pub fn with_workers(workers: usize) -> Self {
        EnumerateOptions {
            workers,
            ..Default::default()
        }
    }

    /// Checks `N` against the naive caps without enumerating anything.
    pub fn admits(&self, n_value: u64, method: Method) -> Result<()> {
        if n_value < 2 {
            return Err(bad_input("N must be at least 2"));
        }
        if method == Method::Structured {
            return Ok(());
        }
        if n_value > NAIVE_HARD_CEILING {
            return Err(Error::CapExceeded {
                n: n_value,
                cap: NAIVE_HARD_CEILING,
            });
        }
        if n_value > self.naive_cap && !self.allow_over_cap {
            return Err(Error::CapExceeded {
                n: n_value,
                cap: self.naive_cap,
            });
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .map_err(|e| bad_input(format!("cannot start worker pool: {e}")))
    }
}

/// Canonical representatives of every cyclotomic `±1` polynomial of degree
/// `N - 1`, sorted by sign string (`'+' < '-'`).
///
/// The list always contains `1 + x + ... + x^(N-1)` first.
pub fn enumerate_lc(n_value: u64, method: Method, opts: &EnumerateOptions) -> Result<Vec<IntPoly>> {
    opts.admits(n_value, method)?;
    let pool = opts.pool()?;
    let mut found: Vec<String> = match method {
        Method::Naive => pool.install(|| naive_scan(n_value))?,
        Method::Structured => pool.install(|| structured_scan(n_value))?,
    };
    found.sort();
    found.dedup();
    found.iter().map(|s| IntPoly::from_sign_str(s)).collect()
}

/// Bit `j` of a mask is set when `a_j = -1`.
fn mask_to_poly(mask: u64, n: u32) -> IntPoly {
    IntPoly::from_i64s(
        &(0..n)
            .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
            .collect::<Vec<_>>(),
    )
}

/// `x^(N-1) P(1/x) = ±P(x)`, which every product of cyclotomic factors satisfies.
fn is_self_reciprocal(mask: u64, n: u32) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rev = mask.reverse_bits() >> (64 - n);
    rev == mask || rev == mask ^ full
}

fn naive_scan(n_value: u64) -> Result<Vec<String>> {
    let n = n_value as u32;
    // masks over a_1..a_{N-1}; a_0 = +1 is bit 0 clear
    let space = 1u64 << (n - 1);
    let chunk = 1u64 << CHUNK_BITS.min(n - 1);
    let chunks = space / chunk;
    let per_chunk: Vec<Result<Vec<String>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut hits = Vec::new();
            for rest in c * chunk..(c + 1) * chunk {
                let mask = rest << 1;
                if !is_self_reciprocal(mask, n) {
                    continue;
                }
                let p = mask_to_poly(mask, n);
                match factor_cyclotomic(&p, n_value) {
                    Ok(_) => hits.push(canonical_signs(&p)?),
                    Err(Error::NotCyclotomic) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(hits)
        })
        .collect();
    let mut out = Vec::new();
    for hits in per_chunk {
        out.extend(hits?);
    }
    Ok(out)
}

fn canonical_signs(p: &IntPoly) -> Result<String> {
    let (rep, _) = canonical_form(p)?;
    Ok(rep.sign_string().expect("canonical form keeps ±1 coefficients"))
}

fn structured_scan(n_value: u64) -> Result<Vec<String>> {
    let (t, odd) = split_two_adic(n_value);
    let chains: Vec<(u64, Vec<Vec<u32>>)> = divisors(odd)
        .into_iter()
        .map(|d| {
            let kind = if d == 1 { ChainKind::Unit } else { ChainKind::Regular };
            (d, enumerate_chain_weights(t, kind))
        })
        .collect();
    let total: u64 = chains.iter().map(|(_, w)| w.len() as u64).product();
    let per_index: Vec<Result<Option<String>>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut entries = BTreeMap::new();
            for (d, options) in &chains {
                let w = &options[(idx % options.len() as u64) as usize];
                idx /= options.len() as u64;
                for (n, &x) in w.iter().enumerate() {
                    if x > 0 {
                        entries.insert(d << n, x);
                    }
                }
            }
            let p = expand(&ExponentMap::new(n_value, entries, Sign::Plus)?);
            if p.is_littlewood() {
                canonical_signs(&p).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect();
    let mut out = Vec::new();
    for r in per_index {
        out.extend(r?);
    }
    Ok(out)
}
