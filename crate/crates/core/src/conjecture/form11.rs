//! Tower products `±Φ_p1(±x) Φ_p2(±x^p1) Φ_p3(±x^(p1 p2)) ...` with
//! `p1 p2 ... = N`, all of whose coefficients are `±1`.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic_poly, prime_factors};
use crate::error::{bad_input, Error, Result};
use crate::intpoly::IntPoly;
use crate::sign::Sign;

/// One factor `Φ_p(ε x^m)` of a tower product, `m` being the product of
/// the earlier primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Form11Step {
    pub prime: u64,
    pub sign: Sign,
}

/// `outer_sign · Φ_p1(ε1 x) Φ_p2(ε2 x^p1) Φ_p3(ε3 x^(p1 p2)) ...`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Form11Decomposition {
    pub outer_sign: Sign,
    pub steps: Vec<Form11Step>,
}

impl Form11Decomposition {
    /// `∏ p_j`.
    pub fn n_value(&self) -> u64 {
        self.steps.iter().map(|s| s.prime).product()
    }

    pub fn expand(&self) -> IntPoly {
        let mut stride = 1usize;
        let mut acc = IntPoly::one();
        for step in &self.steps {
            acc = acc.mul(&step_factor(step.prime, step.sign).compose_power(stride));
            stride *= step.prime as usize;
        }
        acc.scale(self.outer_sign)
    }
}

/// `Φ2(x)Φ3(-x^2)`, with a leading `-` for a negative outer sign.
impl std::fmt::Display for Form11Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.outer_sign == Sign::Minus {
            f.write_str("-")?;
        }
        if self.steps.is_empty() {
            return f.write_str("1");
        }
        let mut stride = 1u64;
        for step in &self.steps {
            let minus = if step.sign == Sign::Minus { "-" } else { "" };
            match stride {
                1 => write!(f, "Φ{}({minus}x)", step.prime)?,
                m => write!(f, "Φ{}({minus}x^{m})", step.prime)?,
            }
            stride *= step.prime;
        }
        Ok(())
    }
}

/// `Φ_p(ε x)`.
fn step_factor(p: u64, sign: Sign) -> IntPoly {
    let phi = cyclotomic_poly(p);
    match sign {
        Sign::Plus => phi,
        Sign::Minus => phi.reflect(),
    }
}

/// Searches for a tower decomposition of a `±1` polynomial.
///
/// Tries outer sign `+` before `-`, primes ascending, inner sign `+` before
/// `-`, so the reported decomposition is deterministic.
pub fn check_form11(p: &IntPoly) -> Result<Form11Decomposition> {
    if !p.is_littlewood() {
        return Err(bad_input("coefficients must all be ±1"));
    }
    for outer in [Sign::Plus, Sign::Minus] {
        if let Some(steps) = decompose(&p.scale(outer)) {
            return Ok(Form11Decomposition {
                outer_sign: outer,
                steps,
            });
        }
    }
    Err(Error::NotForm11)
}

fn decompose(q: &IntPoly) -> Option<Vec<Form11Step>> {
    let n = q.len() as u64;
    if n == 1 {
        return (*q == IntPoly::one()).then(Vec::new);
    }
    for (p, _) in prime_factors(n) {
        for eps in [Sign::Plus, Sign::Minus] {
            let Ok(rest) = q.exact_div(&step_factor(p, eps)) else {
                continue;
            };
            let Some(inner) = decimate(&rest, p as usize) else {
                continue;
            };
            if !inner.is_littlewood() {
                continue;
            }
            if let Some(mut tail) = decompose(&inner) {
                tail.insert(0, Form11Step { prime: p, sign: eps });
                return Some(tail);
            }
        }
    }
    None
}

/// `Q` with `r(x) = Q(x^m)`, if `r` only has exponents divisible by `m`.
fn decimate(r: &IntPoly, m: usize) -> Option<IntPoly> {
    let coeffs = r.coeffs();
    if coeffs
        .iter()
        .enumerate()
        .any(|(k, c)| k % m != 0 && !num_traits::Zero::is_zero(c))
    {
        return None;
    }
    Some(IntPoly::new(coeffs.iter().step_by(m).cloned().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        IntPoly::from_sign_str(s).unwrap()
    }

    fn step(prime: u64, sign: Sign) -> Form11Step {
        Form11Step { prime, sign }
    }

    #[test]
    fn uniform_twelve() {
        let d = check_form11(&poly("++++++++++++")).unwrap();
        assert_eq!(d.outer_sign, Sign::Plus);
        assert_eq!(
            d.steps,
            vec![step(2, Sign::Plus), step(2, Sign::Plus), step(3, Sign::Plus)]
        );
    }

    #[test]
    fn p8_decomposes() {
        let p8 = poly("+++------+++");
        let d = check_form11(&p8).unwrap();
        assert_eq!(d.n_value(), 12);
        assert_eq!(d.expand(), p8);
    }

    #[test]
    fn non_cyclotomic_rejected() {
        assert_eq!(check_form11(&poly("++-+")), Err(Error::NotForm11));
        assert!(check_form11(&IntPoly::from_i64s(&[1, 2])).is_err());
    }

    #[test]
    fn negated_input_uses_outer_sign() {
        let d = check_form11(&poly("----")).unwrap();
        assert_eq!(d.outer_sign, Sign::Minus);
        assert_eq!(d.expand(), poly("----"));
    }

    #[test]
    fn display() {
        assert_eq!(
            check_form11(&poly("++++++++++++")).unwrap().to_string(),
            "Φ2(x)Φ2(x^2)Φ3(x^4)"
        );
        let d = Form11Decomposition {
            outer_sign: Sign::Minus,
            steps: vec![step(3, Sign::Minus), step(2, Sign::Plus)],
        };
        assert_eq!(d.to_string(), "-Φ3(-x)Φ2(x^3)");
    }
}
