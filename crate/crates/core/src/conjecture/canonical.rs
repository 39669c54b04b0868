use serde::{Deserialize, Serialize};

use crate::error::{bad_input, Result};
use crate::intpoly::IntPoly;
use crate::sign::Sign;

/// One of the four maps `P(x)`, `P(-x)`, `-P(x)`, `-P(-x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Identity,
    Reflect,
    Negate,
    NegateReflect,
}

impl Symmetry {
    pub fn apply(self, p: &IntPoly) -> IntPoly {
        match self {
            Symmetry::Identity => p.clone(),
            Symmetry::Reflect => p.reflect(),
            Symmetry::Negate => p.negate(),
            Symmetry::NegateReflect => p.reflect().negate(),
        }
    }
}

/// The unique member of `{P(x), P(-x), -P(x), -P(-x)}` with `a_0 = a_1 = 1`,
/// together with the symmetry that produced it.
pub fn canonical_form(p: &IntPoly) -> Result<(IntPoly, Symmetry)> {
    let signs = p.signs().ok_or_else(|| bad_input("coefficients must all be ±1"))?;
    if signs.len() < 2 {
        return Err(bad_input("degree must be at least 1"));
    }
    let sym = match (signs[0], signs[1]) {
        (Sign::Plus, Sign::Plus) => Symmetry::Identity,
        (Sign::Plus, Sign::Minus) => Symmetry::Reflect,
        (Sign::Minus, Sign::Minus) => Symmetry::Negate,
        (Sign::Minus, Sign::Plus) => Symmetry::NegateReflect,
    };
    Ok((sym.apply(p), sym))
}
