use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use jacsyz_core::classify::{classify, Check, Status};
use jacsyz_core::families::{
    build_text, parse_params, search, CertificateStore, EntryOutcome, EntryReport, Registry, SearchRequest, Template,
};
use jacsyz_core::polycore::{is_reduced, parse, HomPoly, Reducedness};
use jacsyz_core::syzres::{format_poly, hilbert_data, resolve, saturation_from_hilbert, saturation_profile, SyzError};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{render_hilbert, render_text, ClassificationSummary, HilbertTable, Report, SaturationSummary};
use crate::{exit, CliError, Config, Format, Output};

pub fn map_syz(e: SyzError) -> CliError {
    match e {
        SyzError::DegreeTooLow(_) | SyzError::MdrZero => {
            CliError::invalid(format!("MDR_ZERO or degenerate input: {e}"))
        }
        SyzError::NotStabilized { .. } => CliError::invalid(format!("NOT_REDUCED: {e}")),
        SyzError::BoundTooLow { .. } => CliError::usage(e.to_string()),
        SyzError::ClosureFailure { .. } => CliError::failure(format!("CLOSURE_FAILURE: {e}")),
        _ => CliError::failure(e.to_string()),
    }
}

fn parse_poly(text: &str) -> Result<HomPoly, CliError> {
    parse(text).map_err(|e| CliError::invalid(format!("invalid polynomial: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| CliError::failure(e.to_string()))
}

fn check(name: &str, rule: &str, expected: impl ToString, computed: impl ToString, ok: bool) -> Check {
    Check {
        name: name.into(),
        rule: rule.into(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

/// Full analysis of one curve.
pub fn analyze_poly(input: &str, f: &HomPoly, cfg: &Config) -> Result<Report, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let arith = cfg.arithmetic();
    let reducedness = is_reduced(f, cfg.seed, arith).map_err(map_syz)?;
    if let Reducedness::NotReduced { milnor_3d5, milnor_3d4 } = reducedness {
        return Err(CliError::invalid(format!(
            "NOT_REDUCED: dim M(f) grows from {milnor_3d5} to {milnor_3d4} at degree 3d-4"
        )));
    }
    let res = resolve(f, &cfg.resolve_options()).map_err(map_syz)?;
    let sat =
        if cfg.saturation { Some(saturation_from_hilbert(f, &res.hilbert, arith).map_err(map_syz)?) } else { None };
    let cls = classify(&res.data);
    let mut checks = cls.checks.clone();
    let betti = res.data.betti_numerator();
    checks.push(check(
        "closure",
        "Betti numerator of the resolution equals the Hilbert series numerator",
        format_poly(&res.hilbert.numerator),
        format_poly(&betti),
        betti == res.hilbert.numerator,
    ));
    if let Some(s) = &sat {
        let asym = s.asymmetries();
        checks.push(check(
            "saturation-symmetry",
            "n(f)_a = n(f)_(T-a) for all a",
            "no asymmetric pairs",
            format!("{asym:?}"),
            asym.is_empty(),
        ));
    }
    let data = &res.data;
    Ok(Report {
        input: input.to_string(),
        polynomial: f.to_string(),
        degree: data.d,
        arithmetic: cfg.arithmetic_label(),
        reducedness,
        mdr: res.profile.mdr.unwrap_or(0),
        exponents: data.exponents.clone(),
        m: data.m,
        relation_degrees: data.relation_degrees.clone(),
        epsilons: data.epsilons.clone(),
        tau: data.tau,
        generator_bound: res.bound,
        escalations: res.escalations,
        hilbert: HilbertTable::new(&res.hilbert, sat.as_ref()),
        saturation: sat.as_ref().map(SaturationSummary::from),
        classification: ClassificationSummary {
            verdicts: cls.verdicts.clone(),
            r: cls.r,
            bounds: cls.bounds,
            delta_m: cls.delta_m,
            predicted_tau: cls.predicted_tau.clone(),
            realized_case: cls.realized_case.clone(),
        },
        checks,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn render_report(r: &Report, cfg: &Config) -> Result<String, CliError> {
    match cfg.format {
        Format::Text => Ok(render_text(r)),
        Format::Json => to_json(r),
    }
}

pub fn cmd_analyze(text: &str, cfg: &Config) -> Result<Output, CliError> {
    let f = parse_poly(text)?;
    let report = analyze_poly(text, &f, cfg)?;
    Ok(Output::ok(render_report(&report, cfg)?))
}

pub fn cmd_hilbert(text: &str, cfg: &Config) -> Result<Output, CliError> {
    cfg.validate()?;
    let f = parse_poly(text)?;
    let arith = cfg.arithmetic();
    let h = hilbert_data(&f, arith).map_err(map_syz)?;
    let sat = if cfg.saturation { Some(saturation_profile(&f, arith).map_err(map_syz)?) } else { None };
    let table = HilbertTable::new(&h, sat.as_ref());
    Ok(Output::ok(match cfg.format {
        Format::Text => render_hilbert(&table),
        Format::Json => to_json(&table)?,
    }))
}

#[derive(Serialize)]
struct FamilyOutput<'a> {
    family: &'a str,
    params: &'a BTreeMap<String, i64>,
    expression: String,
    polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
}

pub fn cmd_family(name: &str, words: &[String], analyze: bool, cfg: &Config) -> Result<Output, CliError> {
    let mut params = parse_params(words.iter().map(String::as_str)).map_err(|e| CliError::usage(e.to_string()))?;
    if name == "nodal" {
        params.entry("seed".into()).or_insert(cfg.seed as i64);
    }
    let expression = build_text(name, &params).map_err(|e| CliError::invalid(e.to_string()))?;
    let f = parse_poly(&expression)?;
    let report = if analyze { Some(analyze_poly(&expression, &f, cfg)?) } else { None };
    let stdout = match cfg.format {
        Format::Json => {
            to_json(&FamilyOutput { family: name, params: &params, expression, polynomial: f.to_string(), report })?
        }
        Format::Text => {
            let mut s = format!("{expression}\n");
            if let Some(r) = &report {
                s.push_str(&render_text(r));
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}

fn entry_line(r: &EntryReport) -> String {
    let flag = if r.flagged { " (flagged)" } else { "" };
    match r.outcome {
        EntryOutcome::Match => {
            let c = r.computed.as_ref().expect("computed on match");
            format!("MATCH     {}{flag}  exponents={:?} tau={}", r.id, c.exponents, c.tau)
        }
        EntryOutcome::Mismatch => {
            let diffs: Vec<String> = r
                .mismatches()
                .map(|c| format!("{}: claimed {}, computed {}", c.field, c.claimed, c.computed))
                .collect();
            format!("MISMATCH  {}{flag}  {}", r.id, diffs.join("; "))
        }
        EntryOutcome::Error => format!("ERROR     {}{flag}  {}", r.id, r.error.as_deref().unwrap_or("")),
    }
}

/// Verifies registry entries against their claims.
pub fn cmd_verify_paper(
    filter: Option<&str>,
    extended: bool,
    registry: Option<&Path>,
    cfg: &Config,
) -> Result<Output, CliError> {
    cfg.validate()?;
    let reg = match registry {
        Some(p) => Registry::load(p).map_err(|e| CliError::invalid(e.to_string()))?,
        None => Registry::shipped(),
    };
    let entries = reg.select(filter, extended);
    if entries.is_empty() {
        return Err(CliError::invalid(format!("no registry entry matches '{}'", filter.unwrap_or("*"))));
    }
    let opts = cfg.resolve_options();
    let reports: Vec<EntryReport> = entries.par_iter().map(|e| reg.verify(e, &opts)).collect();
    let count = |o: EntryOutcome| reports.iter().filter(|r| r.outcome == o).count();
    let flagged = reports.iter().filter(|r| r.flagged && r.outcome != EntryOutcome::Match).count();
    let failing = reports.iter().filter(|r| r.fails_run()).count();
    let summary = format!(
        "{} entries: {} match, {} mismatch, {} error; {} flagged discrepancies, {} failing\n",
        reports.len(),
        count(EntryOutcome::Match),
        count(EntryOutcome::Mismatch),
        count(EntryOutcome::Error),
        flagged,
        failing
    );
    let (stdout, stderr) = match cfg.format {
        Format::Json => (to_json(&reports)?, summary),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{}", entry_line(r));
            }
            s.push_str(&summary);
            (s, String::new())
        }
    };
    Ok(Output { stdout, stderr, code: if failing == 0 { exit::SUCCESS } else { exit::FAILURE } })
}

pub struct SearchArgs<'a> {
    pub d: u32,
    pub r: u32,
    pub m: usize,
    pub pool: Vec<i64>,
    pub budget: usize,
    pub store: Option<&'a Path>,
    pub templates: Option<&'a Path>,
}

pub fn cmd_search(args: &SearchArgs, cfg: &Config) -> Result<Output, CliError> {
    cfg.validate()?;
    let templates = match args.templates {
        Some(p) => Template::load(p).map_err(|e| CliError::invalid(e.to_string()))?,
        None => Template::shipped(),
    };
    let req = SearchRequest {
        d: args.d,
        r: args.r,
        m: args.m,
        pool: args.pool.clone(),
        templates,
        budget: args.budget,
        seed: cfg.seed,
        prime: cfg.screening_field(),
    };
    let outcome = search(&req).map_err(|e| CliError::invalid(e.to_string()))?;
    let mut stdout = String::new();
    for c in &outcome.certificates {
        match cfg.format {
            Format::Json => {
                let line = serde_json::to_string(c).map_err(|e| CliError::failure(e.to_string()))?;
                let _ = writeln!(stdout, "{line}");
            }
            Format::Text => {
                let res = &c.resolution;
                let _ = writeln!(
                    stdout,
                    "CERT {} type ({},{},{}) tau={} epsilons={:?} {}",
                    &c.hash[..12],
                    res.d,
                    args.r,
                    res.m,
                    res.tau,
                    res.epsilons,
                    c.entry.expression.as_deref().unwrap_or("")
                );
            }
        }
    }
    let mut stderr = format!(
        "search ({},{},{}): {} candidates, {} duplicates skipped, {} rejected, {} certified, {} prime/rational disagreements\n",
        args.d,
        args.r,
        args.m,
        outcome.candidates,
        outcome.duplicates,
        outcome.rejected,
        outcome.certificates.len(),
        outcome.disagreements.len()
    );
    if let Some(path) = args.store {
        let added = CertificateStore::new(path)
            .append(&outcome.certificates)
            .map_err(|e| CliError::failure(format!("certificate store: {e}")))?;
        let _ = writeln!(stderr, "{added} new certificates appended to {}", path.display());
    }
    let code = if outcome.disagreements.is_empty() { exit::SUCCESS } else { exit::FAILURE };
    Ok(Output { stdout, stderr, code })
}
