//! Named curve families, line arrangements, the example registry and the
//! type search driver.

mod arrangement;
mod registry;
mod search;

use std::collections::BTreeMap;

pub use arrangement::{
    build_thm62_arrangement, combinatorics_of_lines, line_arrangement_combinatorics, line_of, line_poly, lines_text,
    nodal_arrangement, nodal_lines, product, rk63_lines, thm62_arrangement_lines, thm62_lines, thm62_lines_scaled,
    verify_thm62, ArrangementCombinatorics, IntersectionPoint, Line, NODAL_ATTEMPTS, THM62_VARIANTS,
};
pub use registry::{glob_matches, Comparison, CurveEntry, EntryOutcome, EntryReport, Expected, FamilyRef, Registry};
pub use search::{
    canonical_hash, parse_pool, search, Certificate, CertificateStore, SearchOutcome, SearchRequest, Template,
    DEFAULT_POOL,
};

use crate::polycore::{parse, HomPoly, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family '{family}' needs parameter '{param}'")]
    MissingParam { family: String, param: String },
    #[error("{family}: {param} = {value} is outside {min}..{}", max.map(|m| format!("={m}")).unwrap_or_default())]
    OutOfRange { family: String, param: String, value: i64, min: i64, max: Option<i64> },
    #[error("construction hypothesis failed: {0}")]
    HypothesisFailure(String),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("factor {0} is not a linear form")]
    NotLinear(usize),
    #[error("no nodal arrangement found after {attempts} attempts")]
    RetryExhausted { attempts: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("registry: {0}")]
    Registry(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A builder with one integer parameter and its validity range.
#[derive(Clone, Copy, Debug)]
pub struct FamilySpec {
    pub name: &'static str,
    pub param: &'static str,
    pub min: i64,
    pub max: Option<i64>,
    pub formula: &'static str,
}

pub const FAMILIES: &[FamilySpec] = &[
    FamilySpec { name: "fermat", param: "d", min: 2, max: None, formula: "x^d+y^d+z^d" },
    FamilySpec { name: "prop4.2", param: "d", min: 5, max: None, formula: "xyz(x^(d-3)+y^(d-3)+z^(d-3))" },
    FamilySpec {
        name: "prop4.3",
        param: "d",
        min: 8,
        max: None,
        formula: "xyz(x^(d-4)y+x^(d-5)z^2+z^(d-5)xy+y^(d-4)z)",
    },
    FamilySpec { name: "ex4.8", param: "k", min: 3, max: Some(20), formula: "z(x^k-z^k)(y^k-z^k)((x+y)^k-2z^k)" },
    FamilySpec {
        name: "ex5.1",
        param: "d",
        min: 6,
        max: Some(20),
        formula: "(x-2y)(y-3z)(z-5x)(2y+3z+5x)(x^(d-4)+y^(d-4)-z^(d-4))",
    },
    FamilySpec {
        name: "ex5.2",
        param: "d",
        min: 7,
        max: Some(20),
        formula: "z(x^(d-5)+y^(d-5)-z^(d-5))(x^2-yz)(y^2-xz)",
    },
    FamilySpec {
        name: "ex5.3",
        param: "d",
        min: 8,
        max: Some(20),
        formula: "(x^(d-6)+y^(d-6)-z^(d-6))(yz-x^2)(xz-y^2)(xy-z^2)",
    },
    FamilySpec {
        name: "ex5.4",
        param: "d",
        min: 8,
        max: Some(20),
        formula: "(x-z)(2x+3y-5z)(x^2-yz)(y^3+xz^2)(x^(d-7)+y^(d-7)-z^(d-7))",
    },
    FamilySpec {
        name: "rk6.3",
        param: "k",
        min: 3,
        max: None,
        formula: "y*prod_(j=1..k)(jx-y-j^2z)*prod_(j=1..k-1)(jx+y-j^2z)",
    },
    FamilySpec { name: "thm6.2", param: "k", min: 2, max: None, formula: "y*prod_(j=1..k)(jx-y-j^2z)(jx+y-j^2z)" },
    FamilySpec {
        name: "nodal",
        param: "d",
        min: 3,
        max: None,
        formula: "d seeded lines in general position (optional seed=S)",
    },
];

pub fn family_spec(name: &str) -> Option<&'static FamilySpec> {
    FAMILIES.iter().find(|f| f.name == name)
}

/// The family `name` at the given parameters, as factored text.
pub fn build_text(name: &str, params: &BTreeMap<String, i64>) -> Result<String, FamilyError> {
    let spec = family_spec(name).ok_or_else(|| FamilyError::UnknownFamily(name.into()))?;
    let n = *params
        .get(spec.param)
        .ok_or_else(|| FamilyError::MissingParam { family: name.into(), param: spec.param.into() })?;
    if n < spec.min || spec.max.is_some_and(|m| n > m) {
        return Err(FamilyError::OutOfRange {
            family: name.into(),
            param: spec.param.into(),
            value: n,
            min: spec.min,
            max: spec.max,
        });
    }
    Ok(match name {
        "fermat" => format!("x^{n}+y^{n}+z^{n}"),
        "prop4.2" => format!("xyz(x^{0}+y^{0}+z^{0})", n - 3),
        "prop4.3" => format!("xyz(x^{}y+x^{}z^2+z^{}xy+y^{}z)", n - 4, n - 5, n - 5, n - 4),
        "ex4.8" => format!("z(x^{n}-z^{n})(y^{n}-z^{n})((x+y)^{n}-2z^{n})"),
        "ex5.1" => format!("(x-2y)(y-3z)(z-5x)(2y+3z+5x)(x^{0}+y^{0}-z^{0})", n - 4),
        "ex5.2" => format!("z(x^{0}+y^{0}-z^{0})(x^2-yz)(y^2-xz)", n - 5),
        "ex5.3" => format!("(x^{0}+y^{0}-z^{0})(yz-x^2)(xz-y^2)(xy-z^2)", n - 6),
        "ex5.4" => format!("(x-z)(2x+3y-5z)(x^2-yz)(y^3+xz^2)(x^{0}+y^{0}-z^{0})", n - 7),
        "rk6.3" => lines_text(&rk63_lines(n as u32)),
        "thm6.2" => lines_text(&thm62_arrangement_lines(n as u32)?),
        "nodal" => lines_text(&nodal_lines(n as u32, params.get("seed").copied().unwrap_or(0) as u64)?),
        _ => unreachable!("catalogue and builder disagree on '{name}'"),
    })
}

/// Expands the family `name` at the given parameters.
pub fn build(name: &str, params: &BTreeMap<String, i64>) -> Result<HomPoly, FamilyError> {
    Ok(parse(&build_text(name, params)?)?)
}

/// Parses `key=value` parameter words such as `d=7`.
pub fn parse_params<'a>(words: impl IntoIterator<Item = &'a str>) -> Result<BTreeMap<String, i64>, FamilyError> {
    let mut out = BTreeMap::new();
    for w in words {
        let (k, v) =
            w.split_once('=').ok_or_else(|| FamilyError::Precondition(format!("expected key=value, got '{w}'")))?;
        let v: i64 = v.trim().parse().map_err(|_| FamilyError::Precondition(format!("'{v}' is not an integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn builders_have_declared_degrees() {
        assert_eq!(build("prop4.2", &p(&[("d", 5)])).unwrap(), parse("xyz(x^2+y^2+z^2)").unwrap());
        assert_eq!(build_text("prop4.3", &p(&[("d", 8)])).unwrap(), "xyz(x^4y+x^3z^2+z^3xy+y^4z)");
        assert_eq!(build("thm6.2", &p(&[("k", 3)])).unwrap(), product(&thm62_lines(3)));
        assert_eq!(build("fermat", &p(&[("d", 4)])).unwrap(), parse("x^4+y^4+z^4").unwrap());
        assert_eq!(build("ex4.8", &p(&[("k", 3)])).unwrap().degree(), 10);
        assert_eq!(build("rk6.3", &p(&[("k", 3)])).unwrap().degree(), 6);
        assert_eq!(build("thm6.2", &p(&[("k", 4)])).unwrap().degree(), 9);
        for d in 8..=12 {
            for fam in ["ex5.1", "ex5.2", "ex5.3", "ex5.4", "prop4.3"] {
                assert_eq!(build(fam, &p(&[("d", d)])).unwrap().degree(), d as u32, "{fam} d={d}");
            }
        }
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(matches!(build("prop4.2", &p(&[("d", 4)])), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(build("prop4.3", &p(&[("d", 7)])), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(build("ex5.1", &p(&[("d", 21)])), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(build("nope", &p(&[("d", 5)])), Err(FamilyError::UnknownFamily(_))));
        assert!(matches!(build("fermat", &p(&[("k", 5)])), Err(FamilyError::MissingParam { .. })));
    }

    #[test]
    fn thm62_combinatorics() {
        let c = combinatorics_of_lines(&thm62_lines(3)).unwrap();
        assert_eq!(c.n(3), 3);
        assert_eq!(c.n(2), 21 - 9);
        assert_eq!(c.combinatorial_tau(), 24);
        assert_eq!(c.pair_count(), 21);
    }

    #[test]
    fn small_arrangements() {
        let three = combinatorics_of_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(three.n(2), 3);
        let pencil = combinatorics_of_lines(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]]).unwrap();
        assert_eq!(pencil.n(4), 1);
        assert_eq!(pencil.points.len(), 1);
        assert!(matches!(combinatorics_of_lines(&[[1, 2, 3], [-2, -4, -6]]), Err(FamilyError::DuplicateLine(0, 1))));
    }

    #[test]
    fn nodal_is_deterministic() {
        let a = nodal_lines(7, 3).unwrap();
        assert_eq!(a, nodal_lines(7, 3).unwrap());
        assert_eq!(combinatorics_of_lines(&a).unwrap().n(2), 21);
    }

    #[test]
    fn params_parse() {
        assert_eq!(parse_params(["d=7", "seed=2"]).unwrap(), p(&[("d", 7), ("seed", 2)]));
        assert!(parse_params(["d"]).is_err());
    }
}
