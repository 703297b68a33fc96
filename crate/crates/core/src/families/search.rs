//! Template-driven search for curves of a prescribed type `(d, r, m)`.
//!
//! Candidates are screened modulo a prime and only survivors are resolved
//! over `ℚ`. A certificate is emitted when both computations agree.

use std::collections::{BTreeMap, HashSet};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::registry::{CurveEntry, Expected};
use super::FamilyError;
use crate::classify::classify;
use crate::exactla::PrimeField;
use crate::polycore::{is_reduced, parse, HomPoly};
use crate::syzres::{mdr, resolve, Arithmetic, ResolutionData, ResolveOptions};

const SHIPPED_TEMPLATES: &str = include_str!("../../fixtures/templates.json");

pub const DEFAULT_POOL: &[i64] = &[-3, -1, 1, 2, 3];

/// A polynomial pattern with holes. `{a}`, `{b}`, ... take values from the
/// coefficient pool; `{d}`, `{d-4}`, `{d+1}` are exponents computed from the
/// target degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub name: String,
    pub pattern: String,
}

enum Hole {
    Coeff(String),
    Exponent(i64),
}

fn classify_hole(inner: &str) -> Result<Hole, FamilyError> {
    let inner = inner.trim();
    if let Some(rest) = inner.strip_prefix('d') {
        let rest = rest.replace(' ', "");
        if rest.is_empty() {
            return Ok(Hole::Exponent(0));
        }
        if let Ok(v) = rest.parse::<i64>() {
            return Ok(Hole::Exponent(v));
        }
    }
    if !inner.is_empty() && inner.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(Hole::Coeff(inner.to_string()));
    }
    Err(FamilyError::Precondition(format!("bad template hole '{{{inner}}}'")))
}

/// Splits a pattern into literal text and holes.
fn segments(pattern: &str) -> Result<Vec<Result<String, Hole>>, FamilyError> {
    let mut out = Vec::new();
    let mut rest = pattern;
    while let Some(open) = rest.find('{') {
        out.push(Ok(rest[..open].to_string()));
        let close =
            rest[open..].find('}').ok_or_else(|| FamilyError::Precondition(format!("unclosed hole in '{pattern}'")))?;
        out.push(Err(classify_hole(&rest[open + 1..open + close])?));
        rest = &rest[open + close + 1..];
    }
    out.push(Ok(rest.to_string()));
    Ok(out)
}

impl Template {
    pub fn shipped() -> Vec<Template> {
        serde_json::from_str(SHIPPED_TEMPLATES).expect("shipped templates parse")
    }

    pub fn load(path: &Path) -> Result<Vec<Template>, FamilyError> {
        serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| FamilyError::Registry(e.to_string()))
    }

    /// Coefficient hole names in order of first appearance.
    pub fn holes(&self) -> Result<Vec<String>, FamilyError> {
        let mut names: Vec<String> = Vec::new();
        for s in segments(&self.pattern)? {
            if let Err(Hole::Coeff(n)) = s {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
        }
        Ok(names)
    }

    /// Fills the holes; `None` when an exponent would drop below 1.
    pub fn instantiate(&self, d: u32, values: &BTreeMap<String, i64>) -> Result<Option<String>, FamilyError> {
        let mut text = String::new();
        for s in segments(&self.pattern)? {
            match s {
                Ok(lit) => text.push_str(&lit),
                Err(Hole::Exponent(off)) => {
                    let e = d as i64 + off;
                    if e < 1 {
                        return Ok(None);
                    }
                    text.push_str(&e.to_string());
                }
                Err(Hole::Coeff(n)) => {
                    let v =
                        values.get(&n).ok_or_else(|| FamilyError::Precondition(format!("no value for hole '{n}'")))?;
                    text.push_str(&format!("({v})"));
                }
            }
        }
        Ok(Some(text))
    }
}

/// SHA-256 of the primitive, sign-normalized polynomial text.
pub fn canonical_hash(f: &HomPoly) -> String {
    hex::encode(Sha256::digest(f.primitive().to_string().as_bytes()))
}

/// Parses a pool such as `"-3,-1,1,2,3"` or `"1 2 5"`.
pub fn parse_pool(text: &str) -> Result<Vec<i64>, FamilyError> {
    let pool: Vec<i64> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| FamilyError::Precondition(format!("'{s}' is not an integer"))))
        .collect::<Result<_, _>>()?;
    if pool.is_empty() {
        return Err(FamilyError::Precondition("empty coefficient pool".into()));
    }
    Ok(pool)
}

#[derive(Clone, Debug)]
pub struct SearchRequest {
    pub d: u32,
    pub r: u32,
    pub m: usize,
    pub pool: Vec<i64>,
    pub templates: Vec<Template>,
    /// Maximal number of distinct candidates evaluated.
    pub budget: usize,
    pub seed: u64,
    pub prime: PrimeField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub hash: String,
    pub template: String,
    pub coefficients: BTreeMap<String, i64>,
    pub entry: CurveEntry,
    pub resolution: ResolutionData,
    /// The prime-field screen produced the same data as the rational run.
    pub prefilter_agrees: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchOutcome {
    pub candidates: usize,
    pub duplicates: usize,
    pub rejected: usize,
    /// Hashes where the prime screen and the rational run disagree.
    pub disagreements: Vec<String>,
    pub certificates: Vec<Certificate>,
}

struct Candidate {
    template: String,
    coefficients: BTreeMap<String, i64>,
    poly: HomPoly,
    hash: String,
}

fn check_range(d: u32, r: u32, m: usize) -> Result<(), FamilyError> {
    let (di, ri, mi) = (d as i64, r as i64, m as i64);
    if 2 * ri < di || ri > di - 1 {
        return Err(FamilyError::Precondition(format!("need d/2 <= r <= d-1, got d={d}, r={r}")));
    }
    if mi < 3 || mi >= 2 * ri - di + 3 {
        return Err(FamilyError::Precondition(format!("need 3 <= m < 2r-d+3 = {}, got m={m}", 2 * ri - di + 3)));
    }
    Ok(())
}

fn enumerate(req: &SearchRequest) -> Result<(Vec<Candidate>, usize), FamilyError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut duplicates = 0;
    let n = req.pool.len();
    for t in &req.templates {
        let holes = t.holes()?;
        let mut idx = vec![0usize; holes.len()];
        loop {
            if out.len() >= req.budget {
                return Ok((out, duplicates));
            }
            let values: BTreeMap<String, i64> = holes.iter().cloned().zip(idx.iter().map(|&i| req.pool[i])).collect();
            if let Some(text) = t.instantiate(req.d, &values)? {
                if let Ok(poly) = parse(&text) {
                    if poly.degree() == req.d && !poly.is_zero() {
                        let hash = canonical_hash(&poly);
                        if seen.insert(hash.clone()) {
                            out.push(Candidate { template: t.name.clone(), coefficients: values, poly, hash });
                        } else {
                            duplicates += 1;
                        }
                    }
                }
            }
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok((out, duplicates))
}

enum Verdict {
    Rejected,
    Disagree(String),
    Certified(Box<Certificate>),
}

fn has_type(data: &ResolutionData, r: u32, m: usize) -> bool {
    data.common_exponent() == Some(r) && data.m == m
}

fn evaluate(c: &Candidate, req: &SearchRequest) -> Verdict {
    let prime = Arithmetic::Prime(req.prime);
    if !matches!(is_reduced(&c.poly, req.seed, prime), Ok(r) if r.is_reduced()) {
        return Verdict::Rejected;
    }
    if mdr(&c.poly, prime).ok() != Some(req.r) {
        return Verdict::Rejected;
    }
    let screen = match resolve(&c.poly, &ResolveOptions { arithmetic: prime, ..Default::default() }) {
        Ok(res) if has_type(&res.data, req.r, req.m) => res.data,
        _ => return Verdict::Rejected,
    };
    let exact = match resolve(&c.poly, &ResolveOptions::default()) {
        Ok(res) => res.data,
        Err(_) => return Verdict::Disagree(c.hash.clone()),
    };
    if exact != screen {
        return Verdict::Disagree(c.hash.clone());
    }
    let cls = classify(&exact);
    let entry = CurveEntry {
        id: format!("search:({},{},{}):{}", req.d, req.r, req.m, &c.hash[..12]),
        expression: Some(c.poly.to_string()),
        family: None,
        expected: Some(Expected {
            d: Some(exact.d),
            exponents: Some(exact.exponents.clone()),
            m: Some(exact.m),
            tau: Some(exact.tau),
            delta_m: cls.delta_m,
            epsilon_pattern: Some(exact.epsilons.clone()),
            verdicts: Some(cls.verdicts.clone()),
            case: cls.realized_case.clone(),
        }),
        source: format!("search template '{}'", c.template),
        flagged: false,
        note: None,
        extended: false,
    };
    Verdict::Certified(Box::new(Certificate {
        hash: c.hash.clone(),
        template: c.template.clone(),
        coefficients: c.coefficients.clone(),
        entry,
        resolution: exact,
        prefilter_agrees: true,
    }))
}

/// Enumerates up to `budget` distinct candidates and certifies those of type
/// `(d, r, m)`. Results follow candidate order.
pub fn search(req: &SearchRequest) -> Result<SearchOutcome, FamilyError> {
    check_range(req.d, req.r, req.m)?;
    if req.pool.is_empty() {
        return Err(FamilyError::Precondition("empty coefficient pool".into()));
    }
    let (cands, duplicates) = enumerate(req)?;
    let verdicts: Vec<Verdict> = cands.par_iter().map(|c| evaluate(c, req)).collect();
    let mut out = SearchOutcome { candidates: cands.len(), duplicates, ..Default::default() };
    for v in verdicts {
        match v {
            Verdict::Rejected => out.rejected += 1,
            Verdict::Disagree(h) => out.disagreements.push(h),
            Verdict::Certified(c) => out.certificates.push(*c),
        }
    }
    Ok(out)
}

/// Append-only JSON-lines file of certificates keyed by hash.
pub struct CertificateStore {
    path: PathBuf,
}

impl CertificateStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        CertificateStore { path: path.into() }
    }

    pub fn load(&self) -> Result<Vec<Certificate>, FamilyError> {
        if !self.path.exists() {
            return Ok(Vec::new());
        }
        let file = std::fs::File::open(&self.path)?;
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(
                serde_json::from_str(&line)
                    .map_err(|e| FamilyError::Registry(format!("{}:{}: {e}", self.path.display(), i + 1)))?,
            );
        }
        Ok(out)
    }

    /// Appends certificates whose hash is not stored yet; returns how many.
    pub fn append(&self, certs: &[Certificate]) -> Result<usize, FamilyError> {
        let mut known: HashSet<String> = self.load()?.into_iter().map(|c| c.hash).collect();
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut added = 0;
        for c in certs {
            if known.insert(c.hash.clone()) {
                let line = serde_json::to_string(c).map_err(|e| FamilyError::Registry(e.to_string()))?;
                writeln!(file, "{line}")?;
                added += 1;
            }
        }
        Ok(added)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holes_and_instantiation() {
        let t = Template { name: "t".into(), pattern: "z(x^{d-4}+{a}y^{d-4})(x+{b}y+{a}z)".into() };
        assert_eq!(t.holes().unwrap(), vec!["a".to_string(), "b".to_string()]);
        let vals: BTreeMap<String, i64> = [("a".to_string(), -2), ("b".to_string(), 3)].into();
        assert_eq!(t.instantiate(6, &vals).unwrap().unwrap(), "z(x^2+(-2)y^2)(x+(3)y+(-2)z)");
        assert_eq!(t.instantiate(4, &vals).unwrap(), None);
        let f = parse(&t.instantiate(6, &vals).unwrap().unwrap()).unwrap();
        assert_eq!(f.degree(), 4);
    }

    #[test]
    fn hash_ignores_scaling() {
        let a = parse("2x^2-4yz").unwrap();
        let b = parse("-x^2+2yz").unwrap();
        assert_eq!(canonical_hash(&a), canonical_hash(&b));
        assert_ne!(canonical_hash(&a), canonical_hash(&parse("x^2+2yz").unwrap()));
    }

    #[test]
    fn shipped_templates_are_valid() {
        for t in Template::shipped() {
            t.holes().unwrap();
        }
    }

    #[test]
    fn range_checks() {
        assert!(check_range(6, 4, 4).is_ok());
        assert!(check_range(6, 2, 3).is_err());
        assert!(check_range(6, 4, 5).is_err());
        assert!(check_range(7, 4, 2).is_err());
        assert_eq!(parse_pool("-3, -1 1,2").unwrap(), vec![-3, -1, 1, 2]);
    }
}
