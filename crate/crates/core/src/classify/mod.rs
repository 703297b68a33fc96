//! Closed-form bounds and formulas for the Tjurina number, and the taxonomy of
//! curves by their syzygy data.

use serde::{Deserialize, Serialize};

use crate::syzres::ResolutionData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("no closed formula for delta m = {delta_m} with m = {m} generators")]
    UnsupportedDelta { delta_m: i64, m: usize },
}

/// `C(n, 2)`, zero for `n < 2`.
pub fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub d: i64,
    pub r: i64,
    pub tau_min: i64,
    pub tau_max: i64,
    pub tau_max_prime: i64,
    pub m_max: i64,
}

pub fn bounds(d: u32, r: u32) -> Bounds {
    let (d, r) = (d as i64, r as i64);
    let tau_max = (d - 1) * (d - 1) - r * (d - r - 1);
    Bounds {
        d,
        r,
        tau_min: (d - 1) * (d - r - 1),
        tau_max,
        tau_max_prime: tau_max - binom2(2 * r + 2 - d),
        m_max: 2 * r - d + 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Free,
    NearlyFree,
    PlusOneGenerated,
    MaximalTjurina,
    TypeDrm,
    Smooth,
    #[serde(rename = "GENERIC_3SYZ")]
    Generic3Syz,
    Other,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Free => "FREE",
            Verdict::NearlyFree => "NEARLY_FREE",
            Verdict::PlusOneGenerated => "PLUS_ONE_GENERATED",
            Verdict::MaximalTjurina => "MAXIMAL_TJURINA",
            Verdict::TypeDrm => "TYPE_DRM",
            Verdict::Smooth => "SMOOTH",
            Verdict::Generic3Syz => "GENERIC_3SYZ",
            Verdict::Other => "OTHER",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One named comparison between a formula and the computed data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The rule being tested, in words.
    pub rule: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Check {
    fn new(name: &str, rule: &str, expected: impl ToString, computed: impl ToString, ok: bool) -> Self {
        Check {
            name: name.into(),
            rule: rule.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    fn not_applicable(name: &str, rule: &str, why: &str) -> Self {
        Check {
            name: name.into(),
            rule: rule.into(),
            expected: why.into(),
            computed: String::new(),
            status: Status::NotApplicable,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// A closed-form value of `tau` together with the ε-pattern under which it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub case: String,
    pub tau: i64,
    /// Sorted ε-vector required by this case, when the formula has one.
    pub epsilons: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdicts: Vec<Verdict>,
    pub r: u32,
    pub bounds: Bounds,
    pub delta_m: Option<i64>,
    pub predicted_tau: Vec<Prediction>,
    /// Case whose ε-pattern matches the computed one.
    pub realized_case: Option<String>,
    pub checks: Vec<Check>,
}

impl Classification {
    pub fn has(&self, v: Verdict) -> bool {
        self.verdicts.contains(&v)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn r_of(res: &ResolutionData) -> u32 {
    res.exponents.first().copied().unwrap_or(0)
}

pub fn is_type_drm(res: &ResolutionData) -> bool {
    res.common_exponent().is_some()
}

/// `m(d, r)_max - m` for a curve whose exponents are all equal to `r`.
pub fn delta_m(res: &ResolutionData) -> Option<i64> {
    let r = res.common_exponent()? as i64;
    Some(2 * r - res.d as i64 + 3 - res.m as i64)
}

pub fn verdicts(res: &ResolutionData) -> Vec<Verdict> {
    let e = &res.exponents;
    let d = res.d;
    let mut out = Vec::new();
    if res.m == 2 {
        out.push(Verdict::Free);
    }
    if res.m == 3 && e[0] + e[1] == d && e[1] == e[2] {
        out.push(Verdict::NearlyFree);
    }
    if res.m == 3 && e[0] + e[1] == d {
        out.push(Verdict::PlusOneGenerated);
    }
    if let Some(r) = res.common_exponent() {
        if res.m as i64 == 2 * r as i64 - d as i64 + 3 {
            out.push(Verdict::MaximalTjurina);
        }
        out.push(Verdict::TypeDrm);
    }
    if res.tau == 0 {
        out.push(Verdict::Smooth);
    }
    if res.m == 3 && !out.contains(&Verdict::TypeDrm) && !out.contains(&Verdict::PlusOneGenerated) {
        out.push(Verdict::Generic3Syz);
    }
    if out.is_empty() {
        out.push(Verdict::Other);
    }
    out.sort();
    out
}

fn pattern(len: usize, tail: &[i64]) -> Vec<i64> {
    let mut v = vec![1; len.saturating_sub(tail.len())];
    v.extend_from_slice(tail);
    v
}

/// Closed-form candidates for `tau`. For equal exponents `r` with `m > 3` the
/// value is `d(d-1)/2 + r(d-r-2) - c`, with `c` fixed by `Δm` and the ε-pattern.
pub fn predict_tau(res: &ResolutionData) -> Result<Vec<Prediction>, ClassifyError> {
    let d = res.d as i64;
    let e: Vec<i64> = res.exponents.iter().map(|&x| x as i64).collect();
    let mut out = Vec::new();
    match res.m {
        2 => out.push(Prediction { case: "free".into(), tau: (d - 1) * (d - 1) - e[0] * e[1], epsilons: Some(vec![]) }),
        3 => {
            let general = (d - 1) * (e[0] + e[1] + e[2]) - (e[0] * e[1] + e[1] * e[2] + e[0] * e[2]);
            if let Some(dm) = delta_m(res) {
                let r = e[0];
                out.push(Prediction { case: "m=3".into(), tau: 3 * r * (d - 1 - r), epsilons: Some(vec![dm + 1]) });
            }
            out.push(Prediction { case: "3-syzygy".into(), tau: general, epsilons: None });
        }
        m => {
            let Some(dm) = delta_m(res) else {
                return Ok(out);
            };
            let r = e[0];
            let base = d * (d - 1) / 2 + r * (d - r - 2);
            let len = m - 2;
            let cases: Vec<(&str, i64, Vec<i64>)> = match dm {
                0 => vec![("maximal", 0, pattern(len, &[]))],
                1 => vec![("delta1", 1, pattern(len, &[2]))],
                2 => vec![("delta2:case1", 3, pattern(len, &[3])), ("delta2:case2", 2, pattern(len, &[2, 2]))],
                3 => vec![
                    ("delta3:case1", 6, pattern(len, &[4])),
                    ("delta3:case2", 4, pattern(len, &[2, 3])),
                    ("delta3:case3", 3, pattern(len, &[2, 2, 2])),
                ],
                _ => return Err(ClassifyError::UnsupportedDelta { delta_m: dm, m }),
            };
            for (case, c, eps) in cases {
                // a pattern needs room for its non-trivial tail
                if eps.len() == len {
                    out.push(Prediction { case: case.into(), tau: base - c, epsilons: Some(eps) });
                }
            }
        }
    }
    Ok(out)
}

fn sorted_eps(res: &ResolutionData) -> Vec<i64> {
    let mut v = res.epsilons.clone();
    v.sort();
    v
}

/// Matches the computed ε-vector against the patterns permitted for `Δm`.
pub fn check_epsilon_pattern(res: &ResolutionData) -> (Check, Option<String>) {
    const NAME: &str = "epsilon-pattern";
    const RULE: &str = "computed epsilons match exactly one pattern permitted by delta m";
    if !is_type_drm(res) {
        return (Check::not_applicable(NAME, RULE, "exponents not all equal"), None);
    }
    if res.m == 2 {
        return (Check::not_applicable(NAME, RULE, "free curve"), None);
    }
    let preds = match predict_tau(res) {
        Ok(p) => p,
        Err(e) => return (Check::not_applicable(NAME, RULE, &e.to_string()), None),
    };
    let eps = sorted_eps(res);
    let matching: Vec<&Prediction> = preds.iter().filter(|p| p.epsilons.as_ref() == Some(&eps)).collect();
    let allowed: Vec<String> = preds.iter().filter_map(|p| p.epsilons.as_ref().map(|e| format!("{e:?}"))).collect();
    let check = Check::new(NAME, RULE, allowed.join(" | "), format!("{eps:?}"), matching.len() == 1);
    (check, matching.first().map(|p| p.case.clone()))
}

/// du Plessis-Wall bounds and the characterizations of free and nearly free
/// curves at the top of the range.
pub fn dpw_check(res: &ResolutionData) -> Vec<Check> {
    let r = r_of(res);
    let b = bounds(res.d, r);
    let tau = res.tau as i64;
    let v = verdicts(res);
    let free = v.contains(&Verdict::Free);
    let nearly = v.contains(&Verdict::NearlyFree);
    let mut out = vec![Check::new(
        "dpw-range",
        "tau_min <= tau <= tau_max",
        format!("[{}, {}]", b.tau_min, b.tau_max),
        tau,
        b.tau_min <= tau && tau <= b.tau_max,
    )];
    if 2 * r >= res.d {
        out.push(Check::new(
            "dpw-prime",
            "tau <= tau'_max when 2r >= d",
            format!("<= {}", b.tau_max_prime),
            tau,
            tau <= b.tau_max_prime,
        ));
    } else {
        out.push(Check::not_applicable("dpw-prime", "tau <= tau'_max when 2r >= d", "2r < d"));
    }
    out.push(Check::new(
        "dpw-free",
        "tau = tau_max iff free",
        format!("free = {free}"),
        format!("tau = tau_max: {}", tau == b.tau_max),
        (tau == b.tau_max) == free,
    ));
    let nearly_ok = (tau == b.tau_max - 1) == nearly && (!nearly || 2 * r <= res.d);
    out.push(Check::new(
        "dpw-nearly-free",
        "tau = tau_max - 1 iff nearly free, and then r <= d/2",
        format!("nearly free = {nearly}"),
        format!("tau = tau_max - 1: {}", tau == b.tau_max - 1),
        nearly_ok,
    ));
    out
}

/// Identities every resolution must satisfy.
pub fn identity_checks(res: &ResolutionData) -> Vec<Check> {
    let d = res.d as i64;
    let e = &res.exponents;
    let mut out = Vec::new();
    if res.m >= 2 {
        let sum: i64 = res.epsilons.iter().sum();
        let lhs = e[0] as i64 + e[1] as i64;
        out.push(Check::new("degree-sum", "d1 + d2 = d - 1 + sum of epsilons", lhs, d - 1 + sum, lhs == d - 1 + sum));
        out.push(Check::new(
            "generator-count",
            "2 <= m <= d1 + d2 - d + 3",
            format!("<= {}", lhs - d + 3),
            res.m,
            res.m as i64 <= lhs - d + 3,
        ));
        out.push(Check::new(
            "epsilon-positive",
            "every epsilon >= 1",
            ">= 1",
            format!("{:?}", res.epsilons),
            res.epsilons.iter().all(|&x| x >= 1),
        ));
        if let Some(dm) = delta_m(res) {
            let s: i64 = res.epsilons.iter().map(|x| x - 1).sum();
            out.push(Check::new("delta-m-sum", "delta m = sum of (epsilon - 1)", dm, s, dm == s));
        }
    }
    if res.m == 3 {
        let (a, b, c) = (e[0] as i64, e[1] as i64, e[2] as i64);
        let v = (d - 1) * (a + b + c) - (a * b + b * c + a * c);
        out.push(Check::new(
            "three-syzygy-tau",
            "tau = (d-1)(d1+d2+d3) - (d1d2+d2d3+d1d3)",
            v,
            res.tau,
            v == res.tau as i64,
        ));
    }
    out
}

pub fn classify(res: &ResolutionData) -> Classification {
    let r = r_of(res);
    let verdicts = verdicts(res);
    let dm = delta_m(res);
    let predicted = predict_tau(res).unwrap_or_default();
    let (eps_check, realized) = check_epsilon_pattern(res);
    let mut checks = identity_checks(res);
    checks.push(eps_check);
    match (&realized, predicted.iter().find(|p| Some(&p.case) == realized.as_ref())) {
        (Some(case), Some(p)) => checks.push(Check::new(
            "tau-formula",
            "tau equals the closed-form value of the realized case",
            format!("{} ({case})", p.tau),
            res.tau,
            p.tau == res.tau as i64,
        )),
        _ => checks.push(Check::not_applicable(
            "tau-formula",
            "tau equals the closed-form value of the realized case",
            "no applicable closed form",
        )),
    }
    checks.extend(dpw_check(res));
    Classification {
        verdicts,
        r,
        bounds: bounds(res.d, r),
        delta_m: dm,
        predicted_tau: predicted,
        realized_case: realized,
        checks,
    }
}
