//! Dense polynomials with unbounded integer coefficients.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{bad_input, Error, Result};
use crate::sign::Sign;

/// Dense integer polynomial, lowest exponent first.
///
/// The highest stored coefficient is always nonzero; the zero polynomial is
/// the empty vector and has no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        IntPoly::new(signs.iter().map(|s| BigInt::from(s.value())).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        IntPoly::new(coeffs)
    }

    /// Parses a sign string such as `"++--"` (lowest exponent first).
    pub fn from_sign_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(bad_input("empty sign string"));
        }
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(bad_input(format!("unexpected character {other:?} in sign string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::from_signs(&signs))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients, `degree + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient signs when every coefficient is `±1`.
    pub fn signs(&self) -> Option<Vec<Sign>> {
        if self.is_zero() {
            return None;
        }
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_one() {
                    Some(Sign::Plus)
                } else if *c == BigInt::from(-1) {
                    Some(Sign::Minus)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_littlewood(&self) -> bool {
        self.signs().is_some()
    }

    pub fn all_odd(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|c| c.bit(0))
    }

    /// `"+"`/`"-"` rendering of a `±1` polynomial.
    pub fn sign_string(&self) -> Option<String> {
        self.signs().map(|s| s.into_iter().map(Sign::symbol).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient `self / divisor`, or [`Error::NotDivisible`] when the
    /// remainder over the integers is nonzero.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let dd = divisor.degree().ok_or(Error::DivideByZero)?;
        let Some(nd) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if nd < dd {
            return Err(Error::NotDivisible);
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(Error::NotDivisible);
            }
            let q = top / lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * c;
            }
            quot[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(IntPoly::new(quot))
    }

    /// `p(x^m)`.
    pub fn compose_power(&self, m: usize) -> IntPoly {
        assert!(m >= 1, "compose_power needs m >= 1");
        let Some(deg) = self.degree() else {
            return IntPoly::zero();
        };
        let mut out = vec![BigInt::zero(); deg * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * m] = c.clone();
        }
        IntPoly::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn negate(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: Sign) -> IntPoly {
        match s {
            Sign::Plus => self.clone(),
            Sign::Minus => self.negate(),
        }
    }

    /// Aperiodic autocorrelations `c_k = Σ_j a_j a_{j+k}` for `k = 0..=deg`.
    pub fn autocorrelation(&self) -> Vec<BigInt> {
        let n = self.coeffs.len();
        (0..n)
            .map(|k| {
                self.coeffs[..n - k]
                    .iter()
                    .zip(&self.coeffs[k..])
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.negate()
    }
}

/// Monomial-sum form, e.g. `1+x-x^2+3x^5`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
