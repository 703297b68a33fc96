//! Curves from the literature with their claimed invariants, and the
//! comparison of those claims against computed resolutions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{build, FamilyError};
use crate::classify::{classify, Classification, Verdict};
use crate::polycore::{parse, HomPoly};
use crate::syzres::{resolve, ResolutionData, ResolveOptions};

const SHIPPED: &str = include_str!("../../fixtures/registry.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRef {
    pub name: String,
    pub params: BTreeMap<String, i64>,
}

/// Claimed invariants. Absent fields are not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_pattern: Option<Vec<i64>>,
    /// Every listed verdict must be among the computed ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<Verdict>>,
    /// Closed-formula case realized by the ε-pattern, e.g. `delta2:case1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    pub source: String,
    /// The claim is suspected to be wrong; mismatches are reported but tolerated.
    #[serde(default)]
    pub flagged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Outside the default desk-scale range.
    #[serde(default)]
    pub extended: bool,
}

impl CurveEntry {
    pub fn polynomial(&self) -> Result<HomPoly, FamilyError> {
        match (&self.expression, &self.family) {
            (Some(text), None) => Ok(parse(text)?),
            (None, Some(fam)) => build(&fam.name, &fam.params),
            _ => Err(FamilyError::Registry(format!("{}: exactly one of expression and family is required", self.id))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub field: String,
    pub claimed: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntryOutcome {
    Match,
    Mismatch,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub source: String,
    pub flagged: bool,
    pub outcome: EntryOutcome,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<ResolutionData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EntryReport {
    /// Mismatches and errors on unflagged entries fail a verification run.
    pub fn fails_run(&self) -> bool {
        !self.flagged && self.outcome != EntryOutcome::Match
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.matches)
    }
}

fn show<T: std::fmt::Debug>(v: &T) -> String {
    format!("{v:?}")
}

fn cmp<T: PartialEq + std::fmt::Debug>(out: &mut Vec<Comparison>, field: &str, claimed: &Option<T>, computed: T) {
    if let Some(c) = claimed {
        out.push(Comparison {
            field: field.into(),
            claimed: show(c),
            computed: show(&computed),
            matches: *c == computed,
        });
    }
}

/// Field-by-field comparison of the claims with computed data.
pub fn compare(expected: &Expected, data: &ResolutionData, cls: &Classification) -> Vec<Comparison> {
    let mut out = Vec::new();
    cmp(&mut out, "d", &expected.d, data.d);
    cmp(&mut out, "exponents", &expected.exponents, data.exponents.clone());
    cmp(&mut out, "m", &expected.m, data.m);
    cmp(&mut out, "tau", &expected.tau, data.tau);
    cmp(&mut out, "delta_m", &expected.delta_m.map(Some), cls.delta_m);
    cmp(&mut out, "epsilon_pattern", &expected.epsilon_pattern, data.epsilons.clone());
    cmp(&mut out, "case", &expected.case.clone().map(Some), cls.realized_case.clone());
    if let Some(vs) = &expected.verdicts {
        let ok = vs.iter().all(|v| cls.has(*v));
        let labels = |v: &[Verdict]| v.iter().map(Verdict::label).collect::<Vec<_>>().join(",");
        out.push(Comparison {
            field: "verdicts".into(),
            claimed: labels(vs),
            computed: labels(&cls.verdicts),
            matches: ok,
        });
    }
    out
}

/// Resolves the entry's curve and compares it against the claims.
pub fn verify_entry(entry: &CurveEntry, opts: &ResolveOptions) -> EntryReport {
    let mut report = EntryReport {
        id: entry.id.clone(),
        source: entry.source.clone(),
        flagged: entry.flagged,
        outcome: EntryOutcome::Error,
        comparisons: Vec::new(),
        computed: None,
        classification: None,
        error: None,
    };
    let res = entry.polynomial().map_err(|e| e.to_string()).and_then(|f| resolve(&f, opts).map_err(|e| e.to_string()));
    match res {
        Ok(res) => {
            let cls = classify(&res.data);
            report.comparisons = entry.expected.as_ref().map(|e| compare(e, &res.data, &cls)).unwrap_or_default();
            report.outcome =
                if report.comparisons.iter().all(|c| c.matches) { EntryOutcome::Match } else { EntryOutcome::Mismatch };
            report.computed = Some(res.data);
            report.classification = Some(cls);
        }
        Err(e) => report.error = Some(e),
    }
    report
}

/// Shell-style `*` and `?` matching over the whole id.
pub fn glob_matches(pattern: &str, text: &str) -> bool {
    glob::Pattern::new(pattern).map(|p| p.matches(text)).unwrap_or(pattern == text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub entries: Vec<CurveEntry>,
}

impl Registry {
    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let reg: Registry = serde_json::from_str(text).map_err(|e| FamilyError::Registry(e.to_string()))?;
        let mut seen = std::collections::HashSet::new();
        for e in &reg.entries {
            if !seen.insert(e.id.as_str()) {
                return Err(FamilyError::Registry(format!("duplicate id '{}'", e.id)));
            }
        }
        Ok(reg)
    }

    pub fn shipped() -> Self {
        Self::from_json(SHIPPED).expect("shipped registry parses")
    }

    pub fn load(path: &Path) -> Result<Self, FamilyError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, id: &str) -> Option<&CurveEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Entries whose id matches `filter`; extended entries only on request.
    pub fn select(&self, filter: Option<&str>, extended: bool) -> Vec<&CurveEntry> {
        self.entries
            .iter()
            .filter(|e| extended || !e.extended)
            .filter(|e| filter.is_none_or(|f| glob_matches(f, &e.id)))
            .collect()
    }

    pub fn verify(&self, entry: &CurveEntry, opts: &ResolveOptions) -> EntryReport {
        verify_entry(entry, opts)
    }
}
