//! Power sums `S_k` of the roots of a cyclotomic Littlewood polynomial.
//!
//! Two independent routes are provided: Newton's identities on the
//! coefficients ([`newton_power_sums`]) and the Ramanujan-sum expansion over
//! the cyclotomic exponents ([`power_sums_from_exponents`]). Both cover
//! `1 ≤ k ≤ N - 2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::ExponentMap;
use crate::error::{bad_input, Error, Result};
use crate::intpoly::IntPoly;
use crate::ramanujan::{ramanujan_sum, v2};
use crate::sign::Sign;

/// `S_1 … S_{N-2}` together with the indices where `S_k ≠ -1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumProfile {
    #[serde(rename = "N")]
    pub n_value: u64,
    #[serde(rename = "S")]
    pub sums: Vec<i64>,
    #[serde(rename = "defects")]
    pub defect_set: Vec<u64>,
    #[serde(rename = "i")]
    pub first_defect: Option<u64>,
}

impl PowerSumProfile {
    pub fn from_sums(n_value: u64, sums: Vec<i64>) -> Self {
        debug_assert_eq!(sums.len() as u64, n_value.saturating_sub(2));
        let defect_set: Vec<u64> = sums
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s != -1)
            .map(|(idx, _)| idx as u64 + 1)
            .collect();
        PowerSumProfile {
            n_value,
            first_defect: defect_set.first().copied(),
            sums,
            defect_set,
        }
    }

    /// `S_k` for `1 ≤ k ≤ N - 2`.
    pub fn get(&self, k: u64) -> Option<i64> {
        k.checked_sub(1).and_then(|idx| self.sums.get(idx as usize).copied())
    }

    /// `K(P)`: the least-type divisors of the defect set.
    pub fn k_set(&self) -> BTreeSet<u64> {
        least_type_divisors(&self.defect_set.iter().copied().collect())
    }
}

/// Runs `S_k + a_1 S_{k-1} + ... + a_{k-1} S_1 + k a_k = 0` for `k = 1..=N-2`.
///
/// The input must be a `±1` polynomial with `a_0 = 1` and degree at least 2.
/// The recursion is only meaningful when the polynomial is cyclotomic (its
/// reversal then has the same roots); that is the caller's responsibility.
pub fn newton_power_sums(p: &IntPoly) -> Result<PowerSumProfile> {
    let signs = p.signs().ok_or_else(|| bad_input("coefficients must all be ±1"))?;
    if signs.len() < 3 {
        return Err(bad_input("degree must be at least 2"));
    }
    if signs[0] != Sign::Plus {
        return Err(bad_input("a_0 must be +1"));
    }
    let a: Vec<i64> = signs.iter().map(|s| s.value()).collect();
    let n_value = a.len() as u64;
    let mut sums: Vec<i64> = Vec::with_capacity(a.len() - 2);
    for k in 1..=a.len() - 2 {
        let mut acc = (k as i64)
            .checked_mul(a[k])
            .ok_or(Error::Overflow("Newton recursion"))?;
        for j in 1..k {
            acc = a[j]
                .checked_mul(sums[k - j - 1])
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow("Newton recursion"))?;
        }
        sums.push(-acc);
    }
    Ok(PowerSumProfile::from_sums(n_value, sums))
}

/// `S_k = Σ_{d|2N} e(d) C_d(k)`; the outer sign plays no part.
pub fn power_sums_from_exponents(ev: &ExponentMap) -> PowerSumProfile {
    let n = ev.n_value();
    let sums = (1..n.saturating_sub(1))
        .map(|k| {
            ev.entries()
                .iter()
                .map(|(&d, &e)| i64::from(e) * ramanujan_sum(d, k))
                .sum()
        })
        .collect();
    PowerSumProfile::from_sums(n, sums)
}

/// Elements of `s` with no proper divisor in `s`.
pub fn least_type_divisors(s: &BTreeSet<u64>) -> BTreeSet<u64> {
    s.iter()
        .copied()
        .filter(|&a| !s.iter().any(|&c| c != a && c != 0 && a % c == 0))
        .collect()
}

/// `{ v_2(k) : S_k(a) ≠ S_k(b) }`, with `b` defaulting to the all-`-1` profile.
pub fn effective_t_set(a: &PowerSumProfile, b: Option<&PowerSumProfile>) -> Result<BTreeSet<u32>> {
    if let Some(b) = b {
        if b.n_value != a.n_value {
            return Err(bad_input(format!("profiles for N={} and N={}", a.n_value, b.n_value)));
        }
    }
    Ok((1..=a.sums.len() as u64)
        .filter(|&k| {
            let other = b.and_then(|b| b.get(k)).unwrap_or(-1);
            a.get(k) != Some(other)
        })
        .map(v2)
        .collect())
}

/// Outcome of checking the two coefficient/power-sum relations that hold
/// under block-constancy of the coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRelationReport {
    /// Instances `(m, j)` where the hypothesis held and relation (a) was evaluated.
    pub a_checked: usize,
    pub a_violations: Vec<(u64, u64)>,
    /// Relation (b), read with the index `(m+1)i+j` throughout.
    pub b_checked: usize,
    pub b_violations: Vec<(u64, u64)>,
}

/// For a canonical `P` with first sign change at `i`, evaluates for each
/// `1 ≤ j ≤ i-1` and `1 ≤ m ≤ (N-1)/i - 1` for which `a_{li+j} = a_{li}`
/// holds for all `0 ≤ l ≤ m-1`:
///
/// (a) `S_{mi+j} + 1 + (mi+j)(a_{mi+j} - a_{mi+j-1}) = 0`
///
/// (b) `(S_{(m+1)i+j} + 1) + 2((m+1)i+j)(a_{mi+j} - a_{mi+j-1})
///      + ((m+1)i+j)(a_{(m+1)i+j} - a_{(m+1)i+j-1}) = 0`
///
/// Relations whose `S` index falls outside `1..=N-2` are skipped.
pub fn check_block_relations(p: &IntPoly, profile: &PowerSumProfile, i: u64) -> Result<BlockRelationReport> {
    let a: Vec<i64> = p
        .signs()
        .ok_or_else(|| bad_input("coefficients must all be ±1"))?
        .into_iter()
        .map(Sign::value)
        .collect();
    let n = a.len() as u64;
    if i < 2 || i >= n {
        return Err(bad_input(format!("first defect {i} out of range for N={n}")));
    }
    let coef = |idx: u64| a[idx as usize];
    let s_plus_one = |k: u64| profile.get(k).map(|s| s + 1);
    let mut report = BlockRelationReport::default();
    for j in 1..i {
        for m in 1..((n - 1) / i).max(1) {
            let hypothesis = (0..m).all(|l| l * i + j < n && coef(l * i + j) == coef(l * i));
            if !hypothesis {
                continue;
            }
            let k = m * i + j;
            let step = coef(k) - coef(k - 1);
            if let Some(s1) = s_plus_one(k) {
                report.a_checked += 1;
                if s1 + k as i64 * step != 0 {
                    report.a_violations.push((m, j));
                }
            }
            let k2 = (m + 1) * i + j;
            if k2 < n {
                if let Some(s1) = s_plus_one(k2) {
                    report.b_checked += 1;
                    let step2 = coef(k2) - coef(k2 - 1);
                    if s1 + 2 * k2 as i64 * step + k2 as i64 * step2 != 0 {
                        report.b_violations.push((m, j));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `a_{li+j} = a_{li}` for every block `l` and offset `1 ≤ j ≤ i-1`.
pub fn has_exterior_periodicity(p: &IntPoly, i: u64) -> bool {
    let Some(signs) = p.signs() else {
        return false;
    };
    let i = i as usize;
    i >= 1 && signs.chunks(i).all(|block| block.iter().all(|&s| s == block[0]))
}
