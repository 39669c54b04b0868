//! E-transformations on cyclotomic exponent maps.
//!
//! Write `N = 2^t M` with `M` odd. For each odd divisor `d` of `M` the
//! exponents `(e(d), e(2d), ..., e(2^(t+1) d))` form a [`Chain`]. A move
//! `(t', d', ±)` adds `±1` to positions `0..=t'` of chain `d'` and `∓1` to
//! position `t'+1`; it keeps every chain's weighted sum and therefore keeps
//! the polynomial odd-coefficient cyclotomic of the same degree. Every chain
//! can be walked to a fixed normal form, which gives a move path from any
//! such polynomial to `1 + x + ... + x^(N-1)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{chain_weighted_sum, divisors, split_two_adic, ExponentMap};
use crate::error::{bad_input, Error, Result};
use crate::ramanujan::{ramanujan_sum, t_sum};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// `base_d = 1`; weighted sum `2^t - 1`.
    Unit,
    /// `base_d > 1`; weighted sum `2^t`.
    Regular,
}

/// The exponent vector of one odd divisor `d | M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub base_d: u64,
    pub weights: Vec<u32>,
    pub kind: ChainKind,
}

impl Chain {
    /// `weights` has length `t + 2`.
    pub fn new(base_d: u64, weights: Vec<u32>) -> Result<Self> {
        if base_d == 0 || base_d.is_multiple_of(2) {
            return Err(bad_input(format!("chain base {base_d} must be odd")));
        }
        if weights.len() < 2 {
            return Err(bad_input("a chain has at least two weights"));
        }
        let kind = if base_d == 1 {
            ChainKind::Unit
        } else {
            ChainKind::Regular
        };
        let chain = Chain { base_d, weights, kind };
        if chain_weighted_sum(&chain.weights) != chain.target_sum() {
            return Err(bad_input(format!(
                "chain weights {:?} have weighted sum {} instead of {}",
                chain.weights,
                chain_weighted_sum(&chain.weights),
                chain.target_sum()
            )));
        }
        Ok(chain)
    }

    pub fn from_map(ev: &ExponentMap, base_d: u64) -> Result<Self> {
        if !ev.odd_part().is_multiple_of(base_d) {
            return Err(bad_input(format!("{base_d} does not divide the odd part of N")));
        }
        Chain::new(base_d, ev.chain_weights(base_d))
    }

    /// `t = v_2(N)`.
    pub fn t(&self) -> u32 {
        self.weights.len() as u32 - 2
    }

    pub fn target_sum(&self) -> u64 {
        let full = 1u64 << self.t();
        match self.kind {
            ChainKind::Unit => full - 1,
            ChainKind::Regular => full,
        }
    }

    /// `(1, ..., 1, 0)` for regular chains, `(0, 1, ..., 1, 0)` for the unit chain.
    pub fn normal_form(&self) -> Vec<u32> {
        normal_form(self.t(), self.kind)
    }

    pub fn is_normal(&self) -> bool {
        self.weights == self.normal_form()
    }

    /// Applies `m` to this chain. The move must carry this chain's base.
    pub fn apply(&self, m: &EMove) -> Result<Chain> {
        if m.d != self.base_d {
            return Err(invalid(m, format!("move targets chain {} not {}", m.d, self.base_d)));
        }
        let mut weights = self.weights.clone();
        shift_weights(&mut weights, m)?;
        Ok(Chain {
            weights,
            ..self.clone()
        })
    }
}

fn normal_form(t: u32, kind: ChainKind) -> Vec<u32> {
    let mut w = vec![1; t as usize + 2];
    w[t as usize + 1] = 0;
    if kind == ChainKind::Unit {
        w[0] = 0;
    }
    w
}

fn invalid(m: &EMove, reason: impl Into<String>) -> Error {
    Error::InvalidMove {
        t: m.t,
        d: m.d,
        reason: reason.into(),
    }
}

fn shift_weights(w: &mut [u32], m: &EMove) -> Result<()> {
    let top = m.t as usize + 1;
    if top >= w.len() {
        return Err(invalid(m, format!("t' exceeds t = {}", w.len() - 2)));
    }
    let delta = m.sign.value();
    let mut next = w.to_vec();
    for (n, x) in next.iter_mut().enumerate().take(top + 1) {
        let step = if n == top { -delta } else { delta };
        let v = i64::from(*x) + step;
        if v < 0 {
            return Err(invalid(m, format!("exponent at position {n} would become negative")));
        }
        *x = v as u32;
    }
    w.copy_from_slice(&next);
    Ok(())
}

/// One E-transformation `E(·|t', d')` with its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EMove {
    pub t: u32,
    pub d: u64,
    pub sign: Sign,
}

impl EMove {
    pub fn new(t: u32, d: u64, sign: Sign) -> Self {
        EMove { t, d, sign }
    }

    pub fn inverse(self) -> Self {
        EMove {
            sign: -self.sign,
            ..self
        }
    }
}

/// An ordered sequence of moves. Serializes as a JSON list of moves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EPath {
    pub moves: Vec<EMove>,
}

impl EPath {
    pub fn new(moves: Vec<EMove>) -> Self {
        EPath { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The levels `t'` used by the path.
    pub fn t_set(&self) -> BTreeSet<u32> {
        self.moves.iter().map(|m| m.t).collect()
    }

    /// Moves that act on chain `base_d`, in order.
    pub fn chain_moves(&self, base_d: u64) -> Vec<EMove> {
        self.moves.iter().copied().filter(|m| m.d == base_d).collect()
    }

    pub fn apply_to(&self, ev: &ExponentMap) -> Result<ExponentMap> {
        self.moves.iter().try_fold(ev.clone(), |acc, m| apply_move(&acc, m))
    }
}

/// Applies one move to a full exponent map.
pub fn apply_move(ev: &ExponentMap, m: &EMove) -> Result<ExponentMap> {
    let (t, odd) = split_two_adic(ev.n_value());
    if m.t > t {
        return Err(invalid(m, format!("t' exceeds t = {t}")));
    }
    if m.d.is_multiple_of(2) || odd % m.d != 0 {
        return Err(invalid(m, format!("d' must be an odd divisor of {odd}")));
    }
    let mut w = ev.chain_weights(m.d);
    shift_weights(&mut w, m)?;
    let mut out = ev.clone();
    for (n, &x) in w.iter().enumerate() {
        out.set_exponent(m.d << n, x);
    }
    Ok(out)
}

/// The move prescribed for `w`, or `None` once every weight is at most 1.
fn prescribed(w: &[u32]) -> Result<Option<(u32, Sign)>> {
    let Some(big) = w.iter().rposition(|&x| x >= 2) else {
        return Ok(None);
    };
    let r = w.iter().position(|&x| x == 0);
    if r.is_none_or(|r| r < big) {
        if big == 0 {
            return Err(bad_input(format!("unbalanced chain {w:?}")));
        }
        Ok(Some((big as u32 - 1, Sign::Plus)))
    } else {
        Ok(Some((big as u32, Sign::Minus)))
    }
}

fn undone_next(w: &[u32], level: u32) -> Result<bool> {
    let mut next = w.to_vec();
    shift_weights(&mut next, &EMove::new(level, 1, Sign::Minus))?;
    Ok(prescribed(&next)? == Some((level, Sign::Plus)))
}

/// Walks a chain to its normal form and returns the moves used.
///
/// First the two lowest weights are balanced with `t' = 0` moves. Then, with
/// `r` the first zero position and `R` the last position holding at least 2,
/// the move `(R-1, +)` is applied when `r < R` and `(R, -)` when `r > R`,
/// until no weight exceeds 1. When `(R, -)` would be reverted by the next
/// step, `(r-1, -)` is applied instead, which breaks the two-cycles that
/// otherwise appear from `t = 4` on. A last move fixes the remaining square-free
/// pattern if it is not already normal.
pub fn normalize_chain(c: &Chain) -> Result<EPath> {
    let t = c.t();
    let guard = 4u64.saturating_pow(t + 2);
    let mut w = c.weights.clone();
    let mut moves = Vec::new();
    let mut steps = 0u64;
    let mut step = |w: &mut Vec<u32>, level: u32, sign: Sign| -> Result<()> {
        steps += 1;
        if steps > guard {
            return Err(Error::NonTermination { guard });
        }
        let m = EMove::new(level, c.base_d, sign);
        shift_weights(w, &m)?;
        moves.push(m);
        Ok(())
    };

    if t >= 1 {
        let gap = match c.kind {
            ChainKind::Unit => 1,
            ChainKind::Regular => 0,
        };
        loop {
            let diff = i64::from(w[1]) - i64::from(w[0]);
            if diff == gap {
                break;
            }
            let sign = if diff > gap { Sign::Plus } else { Sign::Minus };
            step(&mut w, 0, sign)?;
        }
    }

    while let Some((level, sign)) = prescribed(&w)? {
        let (level, sign) = if sign == Sign::Minus && undone_next(&w, level)? {
            // (R, -) would be reverted by (R, +); push across the first zero instead
            let r = w.iter().position(|&x| x == 0).unwrap_or(w.len() - 1);
            (r as u32 - 1, Sign::Minus)
        } else {
            (level, sign)
        };
        step(&mut w, level, sign)?;
    }

    let normal = normal_form(t, c.kind);
    if w != normal {
        let fix = match c.kind {
            ChainKind::Regular => (t, Sign::Plus),
            ChainKind::Unit => (0, Sign::Minus),
        };
        step(&mut w, fix.0, fix.1)?;
    }
    if w != normal {
        return Err(bad_input(format!("chain ended at {w:?}, not at a normal form")));
    }
    Ok(EPath::new(moves))
}

/// The chains of `ev`, ascending in base divisor.
pub fn chains(ev: &ExponentMap) -> Result<Vec<Chain>> {
    divisors(ev.odd_part())
        .into_iter()
        .map(|d| Chain::from_map(ev, d))
        .collect()
}

/// Concatenated normalization paths of every chain; applying it to `ev`
/// yields the map of `1 + x + ... + x^(N-1)`.
pub fn path_to_uniform(ev: &ExponentMap) -> Result<EPath> {
    let mut moves = Vec::new();
    for chain in chains(ev)? {
        moves.extend(normalize_chain(&chain)?.moves);
    }
    Ok(EPath::new(moves))
}

pub fn reverse_path(p: &EPath) -> EPath {
    EPath::new(p.moves.iter().rev().map(|m| m.inverse()).collect())
}

/// `-1 + Σ sign · T_{t'}(k) · C_{d'}(k)` over the moves of a path that starts
/// at `1 + x + ... + x^(N-1)`.
pub fn predicted_power_sum(path: &EPath, k: u64) -> i64 {
    -1 + path
        .moves
        .iter()
        .map(|m| m.sign.value() * t_sum(m.t, k) * ramanujan_sum(m.d, k))
        .sum::<i64>()
}

/// Weight vectors visited by chain `start` under the moves of `path` that
/// target it, starting with `start` itself.
pub fn trace_chain(start: &Chain, path: &EPath) -> Result<Vec<Vec<u32>>> {
    let mut cur = start.clone();
    let mut out = vec![cur.weights.clone()];
    for m in path.chain_moves(start.base_d) {
        cur = cur.apply(&m)?;
        out.push(cur.weights.clone());
    }
    Ok(out)
}

/// All nonnegative weight vectors of length `t + 2` with the chain sum of `kind`.
pub fn enumerate_chain_weights(t: u32, kind: ChainKind) -> Vec<Vec<u32>> {
    let target = match kind {
        ChainKind::Unit => (1u64 << t) - 1,
        ChainKind::Regular => 1u64 << t,
    };
    let len = t as usize + 2;
    let mut out = Vec::new();
    let mut w = vec![0u32; len];
    fill_weights(len - 1, target, &mut w, &mut out);
    out.sort();
    out
}

fn fill_weights(pos: usize, remaining: u64, w: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == 0 {
        w[0] = remaining as u32;
        out.push(w.clone());
        return;
    }
    let unit = 1u64 << (pos - 1);
    for x in 0..=remaining / unit {
        w[pos] = x as u32;
        fill_weights(pos - 1, remaining - x * unit, w, out);
    }
    w[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::factor_cyclotomic;
    use crate::intpoly::IntPoly;
    use crate::powersums::power_sums_from_exponents;

    fn chain(d: u64, w: &[u32]) -> Chain {
        Chain::new(d, w.to_vec()).unwrap()
    }

    fn map_of(s: &str) -> ExponentMap {
        let p = IntPoly::from_sign_str(s).unwrap();
        factor_cyclotomic(&p, p.len() as u64).unwrap()
    }

    #[test]
    fn chain_moves_from_worked_example() {
        let c = chain(3, &[2, 4, 1, 0, 0]);
        let c = c.apply(&EMove::new(0, 3, Sign::Plus)).unwrap();
        assert_eq!(c.weights, vec![3, 3, 1, 0, 0]);
        let c2 = chain(3, &[2, 2, 2, 0, 0])
            .apply(&EMove::new(2, 3, Sign::Minus))
            .unwrap();
        assert_eq!(c2.weights, vec![1, 1, 1, 1, 0]);
        assert!(chain(3, &[1, 1, 1, 1, 0]).apply(&EMove::new(0, 3, Sign::Minus)).is_ok());
        assert!(matches!(
            chain(3, &[0, 0, 0, 0, 1]).apply(&EMove::new(1, 3, Sign::Minus)),
            Err(Error::InvalidMove { .. })
        ));
    }

    #[test]
    fn move_and_inverse() {
        let ev = map_of("++--++--++--");
        let m = EMove::new(1, 3, Sign::Plus);
        let there = apply_move(&ev, &m).unwrap();
        assert_eq!(apply_move(&there, &m.inverse()).unwrap(), ev);
        assert!(there.satisfies_chain_sums());
        assert_eq!(there.degree(), 11);
    }

    #[test]
    fn normalize_worked_example() {
        let path = normalize_chain(&chain(3, &[2, 4, 1, 0, 0])).unwrap();
        assert_eq!(
            path.moves,
            vec![
                EMove::new(0, 3, Sign::Plus),
                EMove::new(1, 3, Sign::Minus),
                EMove::new(2, 3, Sign::Minus)
            ]
        );
        let trace = trace_chain(&chain(3, &[2, 4, 1, 0, 0]), &path).unwrap();
        assert_eq!(
            trace,
            vec![
                vec![2, 4, 1, 0, 0],
                vec![3, 3, 1, 0, 0],
                vec![2, 2, 2, 0, 0],
                vec![1, 1, 1, 1, 0]
            ]
        );
    }

    #[test]
    fn normalize_trivial_and_square_free() {
        assert!(normalize_chain(&chain(5, &[1, 1, 1, 0])).unwrap().is_empty());
        assert!(normalize_chain(&chain(1, &[0, 1, 1, 0])).unwrap().is_empty());
        let p = normalize_chain(&chain(5, &[0, 0, 0, 1])).unwrap();
        assert_eq!(p.moves, vec![EMove::new(2, 5, Sign::Plus)]);
        // t = 0
        let p = normalize_chain(&chain(3, &[0, 1])).unwrap();
        assert_eq!(p.moves, vec![EMove::new(0, 3, Sign::Plus)]);
        assert!(normalize_chain(&chain(1, &[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn path_to_uniform_examples() {
        assert!(path_to_uniform(&ExponentMap::uniform(12)).unwrap().is_empty());

        let p3 = map_of("++--++++--++");
        let path = path_to_uniform(&p3).unwrap();
        let back = reverse_path(&path);
        let trace = trace_chain(&Chain::from_map(&ExponentMap::uniform(12), 3).unwrap(), &back).unwrap();
        assert_eq!(trace, vec![vec![1, 1, 1, 0], vec![0, 0, 2, 0]]);

        let p8 = map_of("+++------+++");
        let path = path_to_uniform(&p8).unwrap();
        assert_eq!(path.apply_to(&p8).unwrap(), ExponentMap::uniform(12));
        let back = reverse_path(&path);
        assert_eq!(
            back.apply_to(&ExponentMap::uniform(12))
                .unwrap()
                .with_sign(p8.outer_sign()),
            p8
        );
        let trace = trace_chain(&Chain::from_map(&ExponentMap::uniform(12), 3).unwrap(), &back).unwrap();
        assert_eq!(trace.first().unwrap(), &vec![1, 1, 1, 0]);
        assert_eq!(trace.last().unwrap(), &vec![3, 1, 0, 0]);
    }

    #[test]
    fn reverse_examples() {
        assert!(reverse_path(&EPath::default()).is_empty());
        let p = EPath::new(vec![EMove::new(0, 3, Sign::Plus)]);
        assert_eq!(reverse_path(&p).moves, vec![EMove::new(0, 3, Sign::Minus)]);
    }

    #[test]
    fn predictions() {
        for k in 1..10 {
            assert_eq!(predicted_power_sum(&EPath::default(), k), -1);
        }
        let p6 = map_of("++++++------");
        let path = reverse_path(&path_to_uniform(&p6).unwrap());
        assert_eq!(predicted_power_sum(&path, 6), 11);
        let p2 = map_of("++++----++++");
        let path = reverse_path(&path_to_uniform(&p2).unwrap());
        assert_eq!(
            predicted_power_sum(&path, 4),
            power_sums_from_exponents(&p2).get(4).unwrap()
        );
        assert_eq!(predicted_power_sum(&path, 4), 7);
    }

    #[test]
    fn weight_enumeration_counts() {
        // w0 + w1 + 2 w2 = 2
        assert_eq!(
            enumerate_chain_weights(1, ChainKind::Regular),
            vec![vec![0, 0, 1], vec![0, 2, 0], vec![1, 1, 0], vec![2, 0, 0]]
        );
        assert_eq!(
            enumerate_chain_weights(1, ChainKind::Unit),
            vec![vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn json_shape() {
        let p = EPath::new(vec![EMove::new(2, 3, Sign::Minus)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"[{"t":2,"d":3,"sign":-1}]"#);
    }
}
