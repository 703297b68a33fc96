use std::fmt::Write as _;

use jacsyz_core::classify::{Bounds, Check, Prediction, Status, Verdict};
use jacsyz_core::polycore::{basis_len, Reducedness};
use jacsyz_core::syzres::{format_poly, HilbertData, SaturationProfile};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub k: u32,
    /// `dim M(f)_k`.
    pub milnor: usize,
    /// `dim D_0(f)_k`, available while `k + d - 1 <= 3d - 4`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syzygies: Option<usize>,
    /// `n(f)_k`, with the saturation pass only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub rows: Vec<HilbertRow>,
    pub numerator: String,
    pub tau: usize,
}

impl HilbertTable {
    pub fn new(h: &HilbertData, sat: Option<&SaturationProfile>) -> Self {
        let d = h.d;
        let top = h.dims.len() as u32 - 1;
        let rows = (0..=top)
            .map(|k| {
                let syzygies = (k + d - 1 <= top).then(|| {
                    let t = (k + d - 1) as usize;
                    h.dims[t] + 3 * basis_len(k as usize) - basis_len(t)
                });
                let saturation = sat.and_then(|s| s.n_dims.get(k as usize).copied());
                HilbertRow { k, milnor: h.dims[k as usize], syzygies, saturation }
            })
            .collect();
        HilbertTable { rows, numerator: format_poly(&h.numerator), tau: h.tau }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationSummary {
    /// `3(d - 2)`.
    pub t: u32,
    pub n_dims: Vec<usize>,
    pub symmetric: bool,
}

impl From<&SaturationProfile> for SaturationSummary {
    fn from(s: &SaturationProfile) -> Self {
        SaturationSummary { t: s.t, n_dims: s.n_dims.clone(), symmetric: s.asymmetries().is_empty() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationSummary {
    pub verdicts: Vec<Verdict>,
    pub r: u32,
    pub bounds: Bounds,
    pub delta_m: Option<i64>,
    pub predicted_tau: Vec<Prediction>,
    pub realized_case: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    /// Canonical expanded form.
    pub polynomial: String,
    pub degree: u32,
    pub arithmetic: String,
    pub reducedness: Reducedness,
    pub mdr: u32,
    pub exponents: Vec<u32>,
    pub m: usize,
    /// Second syzygy degrees `e_i`.
    pub relation_degrees: Vec<u32>,
    pub epsilons: Vec<i64>,
    pub tau: usize,
    pub generator_bound: u32,
    pub escalations: u32,
    pub hilbert: HilbertTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation: Option<SaturationSummary>,
    pub classification: ClassificationSummary,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::NotApplicable => "N/A",
    }
}

pub fn render_hilbert(t: &HilbertTable) -> String {
    let mut out = String::new();
    let sat = t.rows.iter().any(|r| r.saturation.is_some());
    let _ = write!(out, "{:>4}  {:>8}  {:>8}", "k", "dim M_k", "dim D0_k");
    if sat {
        let _ = write!(out, "  {:>6}", "n_k");
    }
    out.push('\n');
    for r in &t.rows {
        let _ = write!(out, "{:>4}  {:>8}  {:>8}", r.k, r.milnor, opt(&r.syzygies));
        if sat {
            let _ = write!(out, "  {:>6}", opt(&r.saturation));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "numerator: {}", t.numerator);
    let _ = writeln!(out, "tau: {}", t.tau);
    out
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let c = &r.classification;
    let b = &c.bounds;
    let _ = writeln!(out, "input: {}", r.input);
    let _ = writeln!(out, "polynomial: {}", r.polynomial);
    let _ = writeln!(out, "degree: {}", r.degree);
    let _ = writeln!(out, "arithmetic: {}", r.arithmetic);
    let red = match &r.reducedness {
        Reducedness::Reduced { line } => format!("reduced (line {:?} + t {:?})", line.p, line.q),
        Reducedness::NotReduced { .. } => "not reduced".into(),
        Reducedness::Inconclusive => "inconclusive".into(),
    };
    let _ = writeln!(out, "reducedness: {red}");
    let _ = writeln!(out, "mdr: {}", r.mdr);
    let _ = writeln!(out, "exponents: ({})", list(&r.exponents));
    let _ = writeln!(out, "m: {}", r.m);
    let _ = writeln!(out, "relation degrees: ({})", list(&r.relation_degrees));
    let _ = writeln!(out, "epsilons: ({})", list(&r.epsilons));
    let _ = writeln!(out, "tau: {}", r.tau);
    let _ = writeln!(out, "generator bound: {} (escalations: {})", r.generator_bound, r.escalations);
    let _ = writeln!(out, "verdicts: {}", c.verdicts.iter().map(Verdict::label).collect::<Vec<_>>().join(", "));
    let _ = writeln!(
        out,
        "bounds (d={}, r={}): tau_min={} tau_max={} tau_max'={} m_max={}",
        b.d, b.r, b.tau_min, b.tau_max, b.tau_max_prime, b.m_max
    );
    let _ = writeln!(out, "delta m: {}", opt(&c.delta_m));
    for p in &c.predicted_tau {
        let eps = p.epsilons.as_ref().map(|e| format!(" epsilons ({})", list(e))).unwrap_or_default();
        let _ = writeln!(out, "predicted tau [{}]: {}{eps}", p.case, p.tau);
    }
    let _ = writeln!(out, "realized case: {}", opt(&c.realized_case));
    out.push_str("hilbert:\n");
    out.push_str(&render_hilbert(&r.hilbert));
    if let Some(s) = &r.saturation {
        let _ = writeln!(out, "saturation (T={}): ({}) symmetric: {}", s.t, list(&s.n_dims), s.symmetric);
    }
    out.push_str("checks:\n");
    for ch in &r.checks {
        let _ = writeln!(
            out,
            "  [{}] {}: {} (expected {}, computed {})",
            status(ch.status),
            ch.name,
            ch.rule,
            ch.expected,
            ch.computed
        );
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "time: {ms} ms");
    }
    out
}
