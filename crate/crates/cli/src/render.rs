use std::fmt::Display;

use llab_core::conjecture::analyze;
use llab_core::cyclotomic::{divisors, split_two_adic};
use llab_core::{EMove, Error, ExponentMap, IntPoly};
use serde::Serialize;

/// Left-aligned columns two spaces apart, without trailing blanks.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// `{1,2}`.
pub fn braces<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    format!("{{{}}}", joined(items, ","))
}

pub fn joined<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn vector(w: &[u32]) -> String {
    format!("({})", joined(w, ","))
}

pub fn first_defect(i: Option<u64>) -> String {
    i.map_or_else(|| "-".to_string(), |i| i.to_string())
}

pub fn emove(m: &EMove) -> String {
    format!("E({},{},{})", m.t, m.d, m.sign.symbol())
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainChange {
    pub d: u64,
    pub from: Vec<u32>,
    pub to: Vec<u32>,
}

impl ChainChange {
    /// `from→to`; the `d = 1` chain drops its last weight, which is always 0.
    pub fn arrow(&self) -> String {
        let keep = if self.d == 1 {
            self.from.len() - 1
        } else {
            self.from.len()
        };
        format!("{}→{}", vector(&self.from[..keep]), vector(&self.to[..keep]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub signs: String,
    pub i: Option<u64>,
    pub factors: ExponentMap,
    pub factorization: String,
    /// Chains that differ from those of `1 + x + ... + x^(N-1)`.
    pub chains: Vec<ChainChange>,
    #[serde(rename = "T")]
    pub t: Vec<u32>,
}

pub fn table_rows(members: &[IntPoly]) -> Result<Vec<TableRow>, Error> {
    members
        .iter()
        .map(|p| {
            let a = analyze(p)?;
            let uniform = ExponentMap::uniform(a.n_value());
            let chains = divisors(a.factors.odd_part())
                .into_iter()
                .map(|d| ChainChange {
                    d,
                    from: uniform.chain_weights(d),
                    to: a.factors.chain_weights(d),
                })
                .filter(|c| c.from != c.to)
                .collect();
            Ok(TableRow {
                signs: a.signs.clone(),
                i: a.first_defect(),
                factorization: a.factors.to_string(),
                factors: a.factors,
                chains,
                t: a.t_eff.into_iter().collect(),
            })
        })
        .collect()
}

/// `(e(3),e(6),e(12),e(24))`; the `d = 1` header stops at `e(2^t)`.
pub fn chain_header(n: u64, d: u64) -> String {
    let (t, _) = split_two_adic(n);
    let top = if d == 1 { t } else { t + 1 };
    format!("({})", joined((0..=top).map(|k| format!("e({})", d << k)), ","))
}

pub fn level_set(t: &[u32]) -> String {
    if t.is_empty() {
        "∅".to_string()
    } else {
        joined(t, ",")
    }
}

pub fn table_text(n: u64, rows: &[TableRow]) -> String {
    let (_, odd) = split_two_adic(n);
    let ds = divisors(odd);
    let mut grid = vec![[
        vec!["P(x)".into(), "i".into(), "factorization".into()],
        ds.iter().map(|&d| chain_header(n, d)).collect(),
        vec!["T(E)".into()],
    ]
    .concat()];
    for r in rows {
        let mut line = vec![r.signs.clone(), first_defect(r.i), r.factorization.clone()];
        for &d in &ds {
            line.push(
                r.chains
                    .iter()
                    .find(|c| c.d == d)
                    .map(ChainChange::arrow)
                    .unwrap_or_default(),
            );
        }
        line.push(level_set(&r.t));
        grid.push(line);
    }
    format!("N = {n}\n{}", align(&grid))
}
