use std::fmt::Write as _;
use std::fs;

use llab_core::conjecture::{
    analyze, check_form11, verify_conjecture12, verify_conjecture43, verify_theorem39, Check, Method,
    VerificationReport, WitnessCategory,
};
use llab_core::cyclotomic::divisors;
use llab_core::etransform::{path_to_uniform, reverse_path, trace_chain};
use llab_core::norms::{big_omega, extremal_l4, extremal_l4_closed_form, l4_fourth_power, verify_bound, NormRecord};
use llab_core::{Chain, Error, ExponentMap};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::cache;
use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::input::{NRange, PolyInput};
use crate::render::{align, braces, emove, first_defect, joined, table_rows, table_text, vector, TableRow};

/// What a command prints and whether its checks came out positive.
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, ok: true }
    }
}

fn admit_all(range: NRange, method: Method, cfg: &RunConfig) -> Result<(), CliError> {
    let opts = cfg.enumerate_options();
    for n in range.values() {
        opts.admits(n, method)?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8_lossy(&w.into_inner()?).into_owned())
}

#[derive(Serialize)]
struct MemberJson {
    signs: String,
    i: Option<u64>,
    factors: ExponentMap,
}

#[derive(Serialize)]
struct EnumerationJson {
    #[serde(rename = "N")]
    n: u64,
    method: Method,
    members: Vec<MemberJson>,
}

pub fn enumerate(range: NRange, method: Method, cfg: &RunConfig) -> Result<Outcome, CliError> {
    admit_all(range, method, cfg)?;
    let mut all = Vec::new();
    for n in range.values() {
        let members = cache::members(n, method, cfg)?
            .iter()
            .map(|p| {
                let a = analyze(p)?;
                Ok(MemberJson {
                    signs: a.signs.clone(),
                    i: a.first_defect(),
                    factors: a.factors,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        all.push(EnumerationJson { n, method, members });
    }
    let body = match cfg.format {
        Format::Json => to_json(&all)?,
        Format::Csv => csv_text(
            &["N", "signs", "i", "factorization"],
            all.iter()
                .flat_map(|e| {
                    e.members.iter().map(move |m| {
                        vec![
                            e.n.to_string(),
                            m.signs.clone(),
                            first_defect(m.i),
                            m.factors.to_string(),
                        ]
                    })
                })
                .collect(),
        )?,
        Format::Text => {
            let blocks: Vec<String> = all
                .iter()
                .map(|e| {
                    let mut grid = vec![vec!["P(x)".to_string(), "i".into(), "factorization".into()]];
                    grid.extend(
                        e.members
                            .iter()
                            .map(|m| vec![m.signs.clone(), first_defect(m.i), m.factors.to_string()]),
                    );
                    format!(
                        "N={} method={} count={}\n{}",
                        e.n,
                        e.method,
                        e.members.len(),
                        align(&grid)
                    )
                })
                .collect();
            blocks.join("\n")
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Serialize)]
struct TableJson {
    #[serde(rename = "N")]
    n: u64,
    rows: Vec<TableRow>,
}

pub fn table(range: NRange, method: Method, cfg: &RunConfig) -> Result<Outcome, CliError> {
    admit_all(range, method, cfg)?;
    let mut all = Vec::new();
    for n in range.values() {
        all.push(TableJson {
            n,
            rows: table_rows(&cache::members(n, method, cfg)?)?,
        });
    }
    let body = match cfg.format {
        Format::Json => to_json(&all)?,
        Format::Csv => csv_text(
            &["N", "signs", "i", "factorization", "chains", "T"],
            all.iter()
                .flat_map(|t| {
                    t.rows.iter().map(move |r| {
                        vec![
                            t.n.to_string(),
                            r.signs.clone(),
                            first_defect(r.i),
                            r.factorization.clone(),
                            joined(r.chains.iter().map(|c| format!("d={}:{}", c.d, c.arrow())), ";"),
                            joined(&r.t, ","),
                        ]
                    })
                })
                .collect(),
        )?,
        Format::Text => all
            .iter()
            .map(|t| table_text(t.n, &t.rows))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome::ok(body))
}

fn signs_or_coeffs(input: &PolyInput) -> String {
    input.poly.sign_string().unwrap_or_else(|| input.poly.to_string())
}

pub fn factor(input: PolyInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let shown = signs_or_coeffs(&input);
    let ok = input.factors.is_some();
    let body = match cfg.format {
        Format::Json => to_json(&json!({
            "poly": shown,
            "N": input.poly.len(),
            "cyclotomic": ok,
            "factors": input.factors,
        }))?,
        Format::Csv => csv_text(
            &["poly", "N", "factorization"],
            vec![vec![
                shown,
                input.poly.len().to_string(),
                input.factors.as_ref().map(ToString::to_string).unwrap_or_default(),
            ]],
        )?,
        Format::Text => match &input.factors {
            Some(ev) => format!("{shown}\n= {ev}\n"),
            None => format!("{shown}\nnot a product of cyclotomic polynomials\n"),
        },
    };
    Ok(Outcome { body, ok })
}

pub fn check_tower(input: PolyInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let shown = signs_or_coeffs(&input);
    let found = match check_form11(&input.poly) {
        Ok(d) => Some(d),
        Err(Error::NotForm11) => None,
        Err(e) => return Err(e.into()),
    };
    let ok = found.is_some();
    let body = match cfg.format {
        Format::Json => to_json(&json!({ "poly": shown, "tower": ok, "decomposition": found }))?,
        Format::Csv => csv_text(
            &["poly", "tower", "decomposition"],
            vec![vec![
                shown,
                ok.to_string(),
                found.as_ref().map(ToString::to_string).unwrap_or_default(),
            ]],
        )?,
        Format::Text => match &found {
            Some(d) => format!("{shown}\n= {d}\n"),
            None => format!("{shown}\nno decomposition ±Φ_p1(±x)Φ_p2(±x^p1)...\n"),
        },
    };
    Ok(Outcome { body, ok })
}

#[derive(Serialize)]
struct ChainTrace {
    d: u64,
    trace: Vec<Vec<u32>>,
}

pub fn epath(input: PolyInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ev = input
        .factors
        .ok_or_else(|| CliError::Invalid("the polynomial is not a product of cyclotomic polynomials".into()))?;
    if !ev.satisfies_chain_sums() {
        return Err(CliError::Invalid(format!("{ev} does not have odd coefficients")));
    }
    let to_uniform = path_to_uniform(&ev)?;
    let from_uniform = reverse_path(&to_uniform);
    let uniform = ExponentMap::uniform(ev.n_value()).with_sign(ev.outer_sign());
    let traces = divisors(ev.odd_part())
        .into_iter()
        .map(|d| {
            Ok(ChainTrace {
                d,
                trace: trace_chain(&Chain::from_map(&uniform, d)?, &from_uniform)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let levels: Vec<u32> = from_uniform.t_set().into_iter().collect();
    let body = match cfg.format {
        Format::Json => to_json(&json!({
            "N": ev.n_value(),
            "factors": ev,
            "from_uniform": from_uniform,
            "to_uniform": to_uniform,
            "chains": traces,
            "levels": levels,
        }))?,
        Format::Csv => csv_text(
            &["d", "step", "weights"],
            traces
                .iter()
                .flat_map(|c| {
                    c.trace
                        .iter()
                        .enumerate()
                        .map(move |(k, w)| vec![c.d.to_string(), k.to_string(), vector(w)])
                })
                .collect(),
        )?,
        Format::Text => {
            let mut s = format!("N={}  {}\n", ev.n_value(), ev);
            let moves = |p: &llab_core::EPath| {
                if p.is_empty() {
                    "(none)".to_string()
                } else {
                    joined(p.moves.iter().map(emove), " ")
                }
            };
            let _ = writeln!(s, "from uniform: {}", moves(&from_uniform));
            let _ = writeln!(s, "to uniform:   {}", moves(&to_uniform));
            let grid: Vec<Vec<String>> = traces
                .iter()
                .map(|c| vec![format!("d={}", c.d), joined(c.trace.iter().map(|w| vector(w)), "→")])
                .collect();
            s.push_str(&align(&grid));
            let _ = writeln!(s, "levels: {}", braces(&levels));
            s
        }
    };
    Ok(Outcome::ok(body))
}

pub fn norms(input: Option<PolyInput>, max_r: u32, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match input {
        Some(input) => poly_norm(input, cfg),
        None => norm_table(max_r, cfg),
    }
}

fn poly_norm(input: PolyInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let shown = signs_or_coeffs(&input);
    let n = input.poly.len() as u64;
    let l4 = l4_fourth_power(&input.poly);
    let r = big_omega(n);
    let u_r = extremal_l4(r);
    let ratio = to_f64(&l4) / (n * n) as f64;
    let bound = to_f64(&u_r) / 4f64.powi(r as i32);
    let tower = check_form11(&input.poly).is_ok();
    // exact comparison l4 · 4^r ≥ u_r · N^2
    let holds = l4.clone() << (2 * r) >= u_r.clone() * (n * n);
    let ok = !tower || holds;
    let body = match cfg.format {
        Format::Json => {
            let record = input
                .poly
                .is_littlewood()
                .then(|| NormRecord::new(&input.poly))
                .transpose()?;
            to_json(&json!({
                "poly": shown,
                "N": n,
                "l4_fourth": l4.to_string(),
                "ratio": ratio,
                "record": record,
                "r": r,
                "u_r": u_r.to_string(),
                "bound": bound,
                "tower": tower,
                "bound_holds": holds,
            }))?
        }
        Format::Csv => csv_text(
            &[
                "poly",
                "N",
                "l4_fourth",
                "ratio",
                "r",
                "u_r",
                "bound",
                "tower",
                "bound_holds",
            ],
            vec![vec![
                shown,
                n.to_string(),
                l4.to_string(),
                format!("{ratio:.6}"),
                r.to_string(),
                u_r.to_string(),
                format!("{bound:.6}"),
                tower.to_string(),
                holds.to_string(),
            ]],
        )?,
        Format::Text => {
            let verdict = match (tower, holds) {
                (true, true) => "tower product, bound holds",
                (true, false) => "tower product, BOUND VIOLATED",
                (false, true) => "not a tower product, bound holds anyway",
                (false, false) => "not a tower product, below the bound",
            };
            format!(
                "{shown}\nN={n}  ||P||_4^4={l4}  ratio={ratio:.6}\nr={r}  u_r={u_r}  u_r/4^r={bound:.6}\n{verdict}\n"
            )
        }
    };
    Ok(Outcome { body, ok })
}

fn norm_table(max_r: u32, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rows: Vec<(u32, String, f64, f64, f64)> = (0..=max_r)
        .map(|r| {
            let exact = extremal_l4(r);
            let closed = extremal_l4_closed_form(r);
            let e = to_f64(&exact);
            (
                r,
                exact.to_string(),
                closed,
                (closed - e).abs() / e,
                e / 4f64.powi(r as i32),
            )
        })
        .collect();
    let body = match cfg.format {
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(r, u, c, rel, b)| json!({"r": r, "u_r": u, "closed_form": c, "relative_error": rel, "bound": b}))
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => csv_text(
            &["r", "u_r", "closed_form", "relative_error", "bound"],
            rows.iter()
                .map(|(r, u, c, rel, b)| {
                    vec![
                        r.to_string(),
                        u.clone(),
                        format!("{c:.6e}"),
                        format!("{rel:.1e}"),
                        format!("{b:.6}"),
                    ]
                })
                .collect(),
        )?,
        Format::Text => {
            let mut grid = vec![vec![
                "r".to_string(),
                "u_r".into(),
                "closed form".into(),
                "rel. error".into(),
                "u_r/4^r".into(),
            ]];
            grid.extend(rows.iter().map(|(r, u, c, rel, b)| {
                vec![
                    r.to_string(),
                    u.clone(),
                    format!("{c:.6e}"),
                    format!("{rel:.1e}"),
                    format!("{b:.6}"),
                ]
            }));
            align(&grid)
        }
    };
    Ok(Outcome::ok(body))
}

pub fn verify(range: NRange, check: Check, method: Method, cfg: &RunConfig) -> Result<Outcome, CliError> {
    admit_all(range, method, cfg)?;
    let mut reports = Vec::new();
    for n in range.values() {
        let members = cache::members(n, method, cfg)?;
        let report = match check {
            Check::C12 => verify_conjecture12(n, &members, method)?,
            Check::C43 => verify_conjecture43(n, &members, method)?,
            Check::T39 => verify_theorem39(n, &members, method)?,
            Check::Bound => verify_bound(n, &members, method)?,
        };
        fs::create_dir_all(&cfg.cache_dir)?;
        fs::write(
            cfg.cache_dir.join(format!("report-{check}-N={n}.json")),
            to_json(&report)?,
        )?;
        reports.push(report);
    }
    let failed: Vec<u64> = reports.iter().filter(|r| !r.passed()).map(|r| r.n_value).collect();
    let body = match cfg.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => csv_text(
            &["N", "check", "signs", "i", "K", "T_eff", "T_path", "ok", "notes"],
            reports
                .iter()
                .flat_map(|r| {
                    r.entries.iter().map(move |e| {
                        vec![
                            r.n_value.to_string(),
                            r.check.to_string(),
                            e.signs.clone(),
                            first_defect(e.i),
                            joined(&e.k_set, " "),
                            joined(&e.t_eff, " "),
                            joined(&e.t_path, " "),
                            e.ok.to_string(),
                            e.notes.join("; "),
                        ]
                    })
                })
                .collect(),
        )?,
        Format::Text => {
            let mut s: String = reports.iter().map(report_text).collect::<Vec<_>>().join("\n");
            let _ = writeln!(
                s,
                "\n{check} over N={}..{}: {} passed, {} failed{}",
                range.lo,
                range.hi,
                reports.len() - failed.len(),
                failed.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(" (N = {})", joined(&failed, ", "))
                }
            );
            s
        }
    };
    Ok(Outcome {
        body,
        ok: failed.is_empty(),
    })
}

fn report_text(r: &VerificationReport) -> String {
    let status = if r.passed() { "pass" } else { "FAIL" };
    let mut s = format!(
        "N={} {} {}: {} count={}\n",
        r.n_value,
        r.check,
        r.method,
        status,
        r.entries.len()
    );
    let mut grid = vec![match r.check {
        Check::C43 => vec!["P(x)", "i", "T", "path", "witnesses"],
        Check::Bound => vec!["P(x)", "||P||_4^4", "ratio", "tower"],
        _ => vec!["P(x)", "i", "K", "tower"],
    }
    .into_iter()
    .map(String::from)
    .collect::<Vec<_>>()];
    for e in &r.entries {
        let tower = e
            .form11
            .as_ref()
            .map_or_else(|| "none".to_string(), ToString::to_string);
        let mut line = match r.check {
            Check::C43 => {
                let w = match &e.witness {
                    None => "-".to_string(),
                    Some(w) => match w.category {
                        WitnessCategory::Witnessed => {
                            joined(w.witnesses.iter().map(|x| format!("{}@{}", x.signs, x.t)), " ")
                        }
                        WitnessCategory::CoveredNoWitness => "none needed (|T| ≤ 1)".into(),
                        WitnessCategory::NoWitness => "NONE".into(),
                    },
                };
                vec![
                    e.signs.clone(),
                    first_defect(e.i),
                    braces(&e.t_eff),
                    braces(&e.t_path),
                    w,
                ]
            }
            Check::Bound => {
                let (l4, ratio) = e.norm.as_ref().map_or((String::new(), String::new()), |n| {
                    (n.l4_fourth.to_string(), format!("{:.6}", n.ratio))
                });
                vec![e.signs.clone(), l4, ratio, tower]
            }
            _ => vec![e.signs.clone(), first_defect(e.i), braces(&e.k_set), tower],
        };
        if !e.ok {
            line.push(format!("FAIL {}", e.notes.join("; ")));
        }
        grid.push(line);
    }
    for line in align(&grid).lines() {
        let _ = writeln!(s, "  {line}");
    }
    if let Some(rc) = &r.reverse_check {
        let _ = writeln!(
            s,
            "reverse check: {} random tower products, {} missing",
            rc.samples,
            rc.missing.len()
        );
        for m in &rc.missing {
            let _ = writeln!(s, "  missing {m}");
        }
    }
    if let Some(b) = &r.bound {
        let _ = writeln!(
            s,
            "bound: r={} u_r={} u_r/4^r={:.6} min ratio={} minimizer={} attained={}",
            b.r,
            b.u_r,
            b.bound,
            b.min_ratio.map_or("-".to_string(), |v| format!("{v:.6}")),
            b.minimizer.as_deref().unwrap_or("-"),
            if b.attained { "yes" } else { "no" }
        );
    }
    for f in &r.findings {
        let _ = writeln!(s, "finding: {f}");
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "counterexample: {c}");
    }
    s
}

fn to_f64(x: &llab_core::BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
