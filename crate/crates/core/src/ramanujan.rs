//! Ramanujan sums `C_d(k)`, the telescoped sums `T_n(k)`, and p-adic valuations.
//!
//! `C_d(k)` is the sum of the k-th powers of the primitive d-th roots of
//! unity. It is evaluated here without any complex arithmetic: factor `d`
//! into prime powers, evaluate each prime-power factor from the valuation of
//! `k`, and multiply.

use crate::cyclotomic::prime_factors;
use crate::error::{bad_input, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Largest `e` with `p^e | z`.
pub fn padic_valuation(p: u64, z: u64) -> Result<u32> {
    if z == 0 {
        return Err(bad_input("valuation of 0 is infinite"));
    }
    if !is_prime(p) {
        return Err(bad_input(format!("{p} is not prime")));
    }
    Ok(valuation_unchecked(p, z))
}

fn valuation_unchecked(p: u64, mut z: u64) -> u32 {
    let mut e = 0;
    while z.is_multiple_of(p) {
        z /= p;
        e += 1;
    }
    e
}

/// `v_2(k)` for `k ≥ 1`.
pub fn v2(k: u64) -> u32 {
    assert!(k > 0, "v_2(0) is infinite");
    k.trailing_zeros()
}

/// `C_{p^n}(k)` for `n ≥ 1`.
fn prime_power_sum(p: u64, n: u32, k: u64) -> i64 {
    let pn1 = p.pow(n - 1) as i64;
    // k = 0 behaves as if every valuation were infinite
    let vk = if k == 0 { u32::MAX } else { valuation_unchecked(p, k) };
    if vk >= n {
        pn1 * p as i64 - pn1
    } else if vk == n - 1 {
        -pn1
    } else {
        0
    }
}

/// `C_d(k)` via multiplicativity over the prime-power factors of `d`.
pub fn ramanujan_sum(d: u64, k: u64) -> i64 {
    assert!(d >= 1, "C_0 is undefined");
    let mut acc = 1i64;
    for (p, n) in prime_factors(d) {
        let f = prime_power_sum(p, n, k);
        if f == 0 {
            return 0;
        }
        acc *= f;
    }
    acc
}

/// `T_n(k) = C_1(k) + C_2(k) + ... + C_{2^n}(k) - C_{2^(n+1)}(k)`, which is
/// `2^(n+1)` when `v_2(k) = n` and `0` otherwise.
pub fn t_sum(n: u32, k: u64) -> i64 {
    if v2(k) == n {
        1i64 << (n + 1)
    } else {
        0
    }
}
