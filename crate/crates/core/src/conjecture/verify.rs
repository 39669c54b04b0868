use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{divisors, factor_cyclotomic, prime_factors, split_two_adic, ExponentMap};
use crate::error::{bad_input, Error, Result};
use crate::etransform::{path_to_uniform, reverse_path, EPath};
use crate::intpoly::IntPoly;
use crate::norms::{BoundSummary, NormRecord};
use crate::powersums::{effective_t_set, power_sums_from_exponents, PowerSumProfile};
use crate::ramanujan::v2;
use crate::sign::Sign;

use super::canonical::canonical_form;
use super::enumerate::Method;
use super::form11::{check_form11, Form11Decomposition, Form11Step};

/// Random tower-product samples drawn per `N` when checking the reverse direction.
pub const REVERSE_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    C12,
    C43,
    T39,
    Bound,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Check::C12 => "c12",
            Check::C43 => "c43",
            Check::T39 => "t39",
            Check::Bound => "bound",
        })
    }
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c12" => Ok(Check::C12),
            "c43" => Ok(Check::C43),
            "t39" => Ok(Check::T39),
            "bound" => Ok(Check::Bound),
            other => Err(bad_input(format!("unknown check {other:?}"))),
        }
    }
}

/// Everything the verifiers need to know about one canonical polynomial.
#[derive(Clone, Debug)]
pub struct PolyAnalysis {
    pub poly: IntPoly,
    pub signs: String,
    pub factors: ExponentMap,
    pub profile: PowerSumProfile,
    pub k_set: BTreeSet<u64>,
    pub t_eff: BTreeSet<u32>,
    /// Moves carrying `1 + x + ... + x^(N-1)` to this polynomial.
    pub path: EPath,
    pub t_path: BTreeSet<u32>,
    pub form11: Option<Form11Decomposition>,
}

impl PolyAnalysis {
    pub fn n_value(&self) -> u64 {
        self.factors.n_value()
    }

    pub fn first_defect(&self) -> Option<u64> {
        self.profile.first_defect
    }
}

/// Factors, profiles and decomposes a cyclotomic `±1` polynomial.
pub fn analyze(p: &IntPoly) -> Result<PolyAnalysis> {
    let signs = p
        .sign_string()
        .ok_or_else(|| bad_input("coefficients must all be ±1"))?;
    let n_value = p.len() as u64;
    let factors = factor_cyclotomic(p, n_value)?;
    let profile = power_sums_from_exponents(&factors);
    let k_set = profile.k_set();
    let t_eff = effective_t_set(&profile, None)?;
    let path = reverse_path(&path_to_uniform(&factors)?);
    let t_path = path.t_set();
    let form11 = match check_form11(p) {
        Ok(d) => Some(d),
        Err(Error::NotForm11) => None,
        Err(e) => return Err(e),
    };
    Ok(PolyAnalysis {
        poly: p.clone(),
        signs,
        factors,
        profile,
        k_set,
        t_eff,
        path,
        t_path,
        form11,
    })
}

/// Violations of the divisibility laws every cyclotomic Littlewood
/// polynomial obeys: `2^(v_2(k)+1) | S_k + 1` at each defect, defect levels
/// at most `v_2(N)`, `K(P) ⊆ divisors(N)` with `min K(P) = i`, and
/// `S_i = 2i - 1`. Empty when all hold.
pub fn check_defect_laws(a: &PolyAnalysis) -> Vec<String> {
    let n = a.n_value();
    let (t, _) = split_two_adic(n);
    let mut out = Vec::new();
    for &k in &a.profile.defect_set {
        let s = a.profile.get(k).unwrap_or(-1);
        let m = 1i64 << (v2(k) + 1);
        if (s + 1) % m != 0 {
            out.push(format!(
                "{}: 2^{} does not divide S_{k}+1 = {}",
                a.signs,
                v2(k) + 1,
                s + 1
            ));
        }
    }
    if let Some(&lvl) = a.t_eff.iter().find(|&&l| l > t) {
        out.push(format!("{}: defect level {lvl} exceeds v_2(N) = {t}", a.signs));
    }
    if let Some(&k) = a.k_set.iter().find(|&&k| !n.is_multiple_of(k)) {
        out.push(format!("{}: K(P) element {k} does not divide N = {n}", a.signs));
    }
    if let Some(i) = a.first_defect() {
        if a.k_set.first() != Some(&i) {
            out.push(format!("{}: min K(P) differs from first defect {i}", a.signs));
        }
        if !(2..n).contains(&i) || !n.is_multiple_of(i) {
            out.push(format!(
                "{}: first defect {i} is not a divisor of N in [2, N-1]",
                a.signs
            ));
        }
        if a.profile.get(i) != Some(2 * i as i64 - 1) {
            out.push(format!(
                "{}: S_{i} = {:?}, expected {}",
                a.signs,
                a.profile.get(i),
                2 * i - 1
            ));
        }
        let expected_i = a.signs.find('-').map(|pos| pos as u64);
        if expected_i != Some(i) {
            out.push(format!("{}: first defect {i} is not the first sign change", a.signs));
        }
    } else if a.signs.contains('-') {
        out.push(format!("{}: no defect although P is not uniform", a.signs));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    SquareFree,
    OddN,
    PowerOfTwo,
    TwoPPower,
    TwoME4,
}

/// Which of the settled special cases apply to `N` (and to `ev`, when given).
pub fn classify_known_case(n_value: u64, ev: Option<&ExponentMap>) -> BTreeSet<CaseLabel> {
    let mut out = BTreeSet::new();
    if n_value < 2 {
        return out;
    }
    let (t, odd) = split_two_adic(n_value);
    if let Some(ev) = ev {
        if ev.is_square_free() {
            out.insert(CaseLabel::SquareFree);
        }
    }
    if t == 0 {
        out.insert(CaseLabel::OddN);
    }
    if odd == 1 {
        out.insert(CaseLabel::PowerOfTwo);
    }
    if t == 1 && prime_factors(odd).len() == 1 {
        out.insert(CaseLabel::TwoPPower);
    }
    if let Some(ev) = ev {
        if t == 1 && divisors(odd).into_iter().all(|d| ev.exponent(4 * d) == 0) {
            out.insert(CaseLabel::TwoME4);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCategory {
    Witnessed,
    /// No partner found, but `|T(P)| ≤ 1` already settles `P`.
    CoveredNoWitness,
    NoWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub signs: String,
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub category: WitnessCategory,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub signs: String,
    pub i: Option<u64>,
    pub factors: ExponentMap,
    #[serde(rename = "K")]
    pub k_set: Vec<u64>,
    pub t_eff: Vec<u32>,
    pub t_path: Vec<u32>,
    pub form11: Option<Form11Decomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormRecord>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportEntry {
    pub fn from_analysis(a: &PolyAnalysis) -> Self {
        ReportEntry {
            signs: a.signs.clone(),
            i: a.first_defect(),
            factors: a.factors.clone(),
            k_set: a.k_set.iter().copied().collect(),
            t_eff: a.t_eff.iter().copied().collect(),
            t_path: a.t_path.iter().copied().collect(),
            form11: a.form11.clone(),
            witness: None,
            norm: None,
            ok: true,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReverseCheck {
    pub samples: usize,
    /// Canonical sign strings of sampled products absent from the enumeration.
    pub missing: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(rename = "N")]
    pub n_value: u64,
    pub check: Check,
    pub method: Method,
    pub entries: Vec<ReportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reverse_check: Option<ReverseCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundSummary>,
    #[serde(default)]
    pub findings: Vec<String>,
    pub status: Status,
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub(crate) fn assemble(
        n_value: u64,
        check: Check,
        method: Method,
        mut entries: Vec<ReportEntry>,
        extra_failure: Option<String>,
    ) -> Self {
        entries.sort_by(|a, b| a.signs.cmp(&b.signs));
        let counterexample = entries
            .iter()
            .find(|e| !e.ok)
            .map(|e| e.signs.clone())
            .or(extra_failure);
        VerificationReport {
            n_value,
            check,
            method,
            entries,
            reverse_check: None,
            bound: None,
            findings: Vec::new(),
            status: if counterexample.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub(crate) fn analyze_all(members: &[IntPoly], n_value: u64) -> Result<Vec<PolyAnalysis>> {
    members
        .iter()
        .map(|p| {
            if p.len() as u64 != n_value {
                return Err(bad_input(format!("member of length {} in an N={n_value} set", p.len())));
            }
            analyze(p)
        })
        .collect()
}

/// A random tower product for `N`: primes in shuffled order, random signs.
pub fn random_form11<R: Rng>(n_value: u64, rng: &mut R) -> Form11Decomposition {
    let mut primes: Vec<u64> = prime_factors(n_value)
        .into_iter()
        .flat_map(|(p, e)| std::iter::repeat_n(p, e as usize))
        .collect();
    primes.shuffle(rng);
    let mut pick = || if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
    let steps = primes
        .into_iter()
        .map(|prime| Form11Step { prime, sign: pick() })
        .collect();
    Form11Decomposition {
        outer_sign: pick(),
        steps,
    }
}

/// Every enumerated polynomial must decompose as a tower product, and
/// `|K(P)| ≤ 1` must hold exactly when it does. Random tower products
/// must all appear in the enumeration.
pub fn verify_conjecture12(n_value: u64, members: &[IntPoly], method: Method) -> Result<VerificationReport> {
    let analyses = analyze_all(members, n_value)?;
    let entries = analyses
        .iter()
        .map(|a| {
            let mut e = ReportEntry::from_analysis(a);
            let biconditional = (a.k_set.len() <= 1) == a.form11.is_some();
            e.ok = a.form11.is_some() && biconditional;
            if a.form11.is_none() {
                e.notes.push("no tower decomposition".into());
            }
            if !biconditional {
                e.notes
                    .push(format!("|K(P)| = {} disagrees with decomposability", a.k_set.len()));
            }
            e
        })
        .collect();

    let known: HashSet<&str> = analyses.iter().map(|a| a.signs.as_str()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(n_value);
    let mut missing = BTreeSet::new();
    for _ in 0..REVERSE_SAMPLES {
        let sample = random_form11(n_value, &mut rng).expand();
        let (rep, _) = canonical_form(&sample)?;
        let s = rep.sign_string().expect("tower products have ±1 coefficients");
        if !known.contains(s.as_str()) {
            missing.insert(s);
        }
    }
    let extra = missing
        .iter()
        .next()
        .map(|s| format!("tower product {s} not enumerated"));
    let mut report = VerificationReport::assemble(n_value, Check::C12, method, entries, extra);
    report.reverse_check = Some(ReverseCheck {
        samples: REVERSE_SAMPLES,
        missing: missing.into_iter().collect(),
    });
    Ok(report)
}

/// `|K(P)| ≤ 1` iff `P` is a tower product, plus the defect laws.
pub fn verify_theorem39(n_value: u64, members: &[IntPoly], method: Method) -> Result<VerificationReport> {
    let analyses = analyze_all(members, n_value)?;
    let entries = analyses
        .iter()
        .map(|a| {
            let mut e = ReportEntry::from_analysis(a);
            let biconditional = (a.k_set.len() <= 1) == a.form11.is_some();
            if !biconditional {
                e.notes
                    .push(format!("|K(P)| = {} disagrees with decomposability", a.k_set.len()));
            }
            e.notes.extend(check_defect_laws(a));
            e.ok = e.notes.is_empty();
            e
        })
        .collect();
    Ok(VerificationReport::assemble(n_value, Check::T39, method, entries, None))
}

/// For each non-uniform `P1` with first defect `i`, looks for `P2 ≠ P1` with
/// the same `i` such that `|T(P1)| ≤ |T(P2)| + 1` and the power sums of `P1`
/// and `P2` differ at exactly one 2-adic level `t' ≥ v_2(i)`.
///
/// `T` here is the effective level set `{v_2(k) : S_k ≠ -1}`. A `P1` without
/// a partner counts as a failure only when `|T(P1)| ≥ 2`.
pub fn verify_conjecture43(n_value: u64, members: &[IntPoly], method: Method) -> Result<VerificationReport> {
    let analyses = analyze_all(members, n_value)?;
    let mut entries = Vec::with_capacity(analyses.len());
    let mut findings = Vec::new();
    for p1 in &analyses {
        let mut e = ReportEntry::from_analysis(p1);
        if p1.t_path != p1.t_eff {
            findings.push(format!(
                "{}: path levels {:?} differ from effective levels {:?}",
                p1.signs, p1.t_path, p1.t_eff
            ));
        }
        if let Some(i) = p1.first_defect() {
            let mut witnesses = Vec::new();
            for p2 in analyses
                .iter()
                .filter(|a| a.first_defect() == Some(i) && a.signs != p1.signs)
            {
                if p1.t_eff.len() > p2.t_eff.len() + 1 {
                    continue;
                }
                let diff = effective_t_set(&p2.profile, Some(&p1.profile))?;
                if diff.len() == 1 {
                    let t = *diff.first().expect("len checked");
                    if t >= v2(i) {
                        witnesses.push(Witness {
                            signs: p2.signs.clone(),
                            t,
                        });
                    }
                }
            }
            let category = if !witnesses.is_empty() {
                WitnessCategory::Witnessed
            } else if p1.t_eff.len() <= 1 {
                WitnessCategory::CoveredNoWitness
            } else {
                WitnessCategory::NoWitness
            };
            e.ok = category != WitnessCategory::NoWitness;
            e.witness = Some(WitnessRecord { category, witnesses });
        }
        entries.push(e);
    }
    let mut report = VerificationReport::assemble(n_value, Check::C43, method, entries, None);
    report.findings = findings;
    Ok(report)
}
