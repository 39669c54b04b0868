//! Cyclotomic polynomials and the factorization `P = ±∏_{d|2N} Φ_d^{e(d)}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{bad_input, Error, Result};
use crate::intpoly::IntPoly;
use crate::sign::Sign;

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0 are undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization as `(p, multiplicity)` pairs, ascending in `p`.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `(t, M)` with `n = 2^t · M` and `M` odd.
pub fn split_two_adic(n: u64) -> (u32, u64) {
    assert!(n >= 1);
    let t = n.trailing_zeros();
    (t, n >> t)
}

fn memo() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// `Φ_d`, built as `(x^d - 1) / ∏_{e|d, e<d} Φ_e` and memoized process-wide.
pub fn cyclotomic_poly(d: u64) -> IntPoly {
    assert!(d >= 1, "Φ_0 is undefined");
    if let Some(p) = memo().read().expect("cyclotomic memo poisoned").get(&d) {
        return p.clone();
    }
    let mut acc = IntPoly::x_pow_minus_one(d as usize);
    for e in divisors(d).into_iter().filter(|&e| e < d) {
        acc = acc
            .exact_div(&cyclotomic_poly(e))
            .expect("Φ_e divides x^d - 1 for e | d");
    }
    memo()
        .write()
        .expect("cyclotomic memo poisoned")
        .entry(d)
        .or_insert(acc)
        .clone()
}

/// The exponents `e(d)` of `P = outer_sign · ∏_{d|2N} Φ_d^{e(d)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMap {
    n_value: u64,
    entries: BTreeMap<u64, u32>,
    outer_sign: Sign,
}

impl ExponentMap {
    /// Validates that every key divides `2N` and that the degrees add up to `N - 1`.
    pub fn new(n_value: u64, entries: BTreeMap<u64, u32>, outer_sign: Sign) -> Result<Self> {
        if n_value == 0 {
            return Err(bad_input("N must be positive"));
        }
        let entries: BTreeMap<u64, u32> = entries.into_iter().filter(|&(_, e)| e > 0).collect();
        if let Some(&d) = entries.keys().find(|&&d| d == 0 || !(2 * n_value).is_multiple_of(d)) {
            return Err(bad_input(format!("Φ_{d} does not divide x^(2N)-1 for N={n_value}")));
        }
        let map = ExponentMap {
            n_value,
            entries,
            outer_sign,
        };
        if map.degree() != n_value - 1 {
            return Err(bad_input(format!(
                "exponents give degree {} but N-1 = {}",
                map.degree(),
                n_value - 1
            )));
        }
        Ok(map)
    }

    /// Builds a map whose `N` is inferred from the degree `Σ e(d) φ(d) + 1`.
    pub fn from_entries(entries: BTreeMap<u64, u32>, outer_sign: Sign) -> Result<Self> {
        let degree: u64 = entries.iter().map(|(&d, &e)| euler_phi(d.max(1)) * u64::from(e)).sum();
        ExponentMap::new(degree + 1, entries, outer_sign)
    }

    /// The map of `1 + x + ... + x^(N-1)`: `e(d) = 1` for every `1 < d | N`.
    pub fn uniform(n_value: u64) -> Self {
        let entries = divisors(n_value)
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| (d, 1))
            .collect();
        ExponentMap {
            n_value,
            entries,
            outer_sign: Sign::Plus,
        }
    }

    pub fn n_value(&self) -> u64 {
        self.n_value
    }

    pub fn outer_sign(&self) -> Sign {
        self.outer_sign
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.outer_sign = sign;
        self
    }

    /// Nonzero entries, ascending in `d`.
    pub fn entries(&self) -> &BTreeMap<u64, u32> {
        &self.entries
    }

    pub fn exponent(&self, d: u64) -> u32 {
        self.entries.get(&d).copied().unwrap_or(0)
    }

    pub(crate) fn set_exponent(&mut self, d: u64, e: u32) {
        if e == 0 {
            self.entries.remove(&d);
        } else {
            self.entries.insert(d, e);
        }
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|(&d, &e)| euler_phi(d) * u64::from(e)).sum()
    }

    /// `t = v_2(N)`.
    pub fn two_adic_order(&self) -> u32 {
        split_two_adic(self.n_value).0
    }

    /// `M`, the odd part of `N`.
    pub fn odd_part(&self) -> u64 {
        split_two_adic(self.n_value).1
    }

    /// `(e(d), e(2d), ..., e(2^(t+1) d))` for an odd divisor `d` of `M`.
    pub fn chain_weights(&self, base_d: u64) -> Vec<u32> {
        let t = self.two_adic_order();
        (0..=t + 1).map(|n| self.exponent(base_d << n)).collect()
    }

    /// True when every entry is at most 1.
    pub fn is_square_free(&self) -> bool {
        self.entries.values().all(|&e| e <= 1)
    }

    /// Checks the chain sums that characterize odd-coefficient cyclotomic
    /// polynomials: `e(d) + Σ_{n=1}^{t+1} 2^(n-1) e(2^n d)` equals `2^t` for
    /// `1 < d | M` and `2^t - 1` for `d = 1`.
    pub fn satisfies_chain_sums(&self) -> bool {
        let t = self.two_adic_order();
        divisors(self.odd_part()).into_iter().all(|d| {
            let w = self.chain_weights(d);
            let sum = chain_weighted_sum(&w);
            let target = if d == 1 { (1u64 << t) - 1 } else { 1u64 << t };
            sum == target
        })
    }
}

/// Chain order: odd part ascending, then the power of two, e.g.
/// `-Φ1^2Φ2Φ3^3Φ6`.
impl std::fmt::Display for ExponentMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.outer_sign == Sign::Minus {
            f.write_str("-")?;
        }
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        let mut keys: Vec<u64> = self.entries.keys().copied().collect();
        keys.sort_by_key(|&d| (d >> d.trailing_zeros(), d));
        for d in keys {
            match self.entries[&d] {
                1 => write!(f, "Φ{d}")?,
                e => write!(f, "Φ{d}^{e}")?,
            }
        }
        Ok(())
    }
}

/// `w_0 + Σ_{n≥1} 2^(n-1) w_n`.
pub(crate) fn chain_weighted_sum(w: &[u32]) -> u64 {
    w.iter()
        .enumerate()
        .map(|(n, &x)| if n == 0 { u64::from(x) } else { u64::from(x) << (n - 1) })
        .sum()
}

#[derive(Serialize, Deserialize)]
struct ExponentMapJson {
    sign: Sign,
    factors: BTreeMap<u64, u32>,
}

/// `{"sign": ±1, "factors": {"d": e(d), ...}}`, keys ascending.
impl Serialize for ExponentMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExponentMapJson {
            sign: self.outer_sign,
            factors: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ExponentMapJson::deserialize(d)?;
        ExponentMap::from_entries(raw.factors, raw.sign).map_err(serde::de::Error::custom)
    }
}

/// Factors an odd-coefficient polynomial of degree `N - 1` into cyclotomic
/// factors `Φ_d`, `d | 2N`, by ascending trial division.
pub fn factor_cyclotomic(p: &IntPoly, n_value: u64) -> Result<ExponentMap> {
    if n_value == 0 || p.degree() != Some(n_value as usize - 1) {
        return Err(bad_input(format!(
            "expected a polynomial of degree N-1 = {}",
            n_value.saturating_sub(1)
        )));
    }
    if !p.all_odd() {
        return Err(bad_input("coefficients must all be odd"));
    }
    let mut rest = p.clone();
    let mut entries = BTreeMap::new();
    for d in divisors(2 * n_value) {
        let phi = cyclotomic_poly(d);
        let phi_deg = phi.degree().unwrap_or(0);
        let mut e = 0u32;
        while rest.degree().unwrap_or(0) >= phi_deg {
            match rest.exact_div(&phi) {
                Ok(q) => {
                    rest = q;
                    e += 1;
                }
                Err(Error::NotDivisible) => break,
                Err(other) => return Err(other),
            }
        }
        if e > 0 {
            entries.insert(d, e);
        }
    }
    let sign = match (rest.degree(), rest.coeffs().first()) {
        (Some(0), Some(c)) if c.abs().is_one() => {
            if c.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            }
        }
        _ => return Err(Error::NotCyclotomic),
    };
    ExponentMap::new(n_value, entries, sign)
}

/// `outer_sign · ∏ Φ_d^{e(d)}`.
pub fn expand(ev: &ExponentMap) -> IntPoly {
    ev.entries
        .iter()
        .fold(IntPoly::one(), |acc, (&d, &e)| acc.mul(&cyclotomic_poly(d).pow(e)))
        .scale(ev.outer_sign)
}
