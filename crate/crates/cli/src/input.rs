use std::collections::BTreeMap;

use llab_core::cyclotomic::{expand, factor_cyclotomic};
use llab_core::{Error, ExponentMap, IntPoly, Sign};

use crate::error::CliError;

/// An inclusive range of `N`, written `12` or `2..24`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: u64,
    pub hi: u64,
}

impl NRange {
    pub fn values(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

pub fn parse_n_range(s: &str) -> Result<NRange, String> {
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| format!("{x:?} is not a positive integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo < 2 {
        return Err("N must be at least 2".into());
    }
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(NRange { lo, hi })
}

/// `"2:1,4:1,24:1"`, optionally prefixed with `-` for a negative outer sign.
pub fn parse_factors(s: &str) -> Result<ExponentMap, CliError> {
    let (sign, body) = match s.trim().strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, s.trim()),
    };
    let mut entries = BTreeMap::new();
    for item in body.split(',').filter(|x| !x.trim().is_empty()) {
        let bad = || CliError::Invalid(format!("factor {item:?} is not of the form d:e"));
        let (d, e) = item.split_once(':').ok_or_else(bad)?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        *entries.entry(d).or_insert(0) += e;
    }
    Ok(ExponentMap::from_entries(entries, sign)?)
}

/// A polynomial given either way, with its factorization when it has one.
pub struct PolyInput {
    pub poly: IntPoly,
    pub factors: Option<ExponentMap>,
}

pub fn read_poly(poly: Option<&str>, factors: Option<&str>) -> Result<PolyInput, CliError> {
    match (poly, factors) {
        (Some(s), None) => {
            let p = IntPoly::from_sign_str(s.trim())?;
            if p.len() < 2 {
                return Err(CliError::Invalid("a sign string needs at least two symbols".into()));
            }
            let factors = match factor_cyclotomic(&p, p.len() as u64) {
                Ok(ev) => Some(ev),
                Err(Error::NotCyclotomic) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(PolyInput { poly: p, factors })
        }
        (None, Some(f)) => {
            let ev = parse_factors(f)?;
            Ok(PolyInput {
                poly: expand(&ev),
                factors: Some(ev),
            })
        }
        _ => Err(CliError::Invalid("give exactly one of --poly or --factors".into())),
    }
}
