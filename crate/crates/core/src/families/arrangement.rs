//! Line arrangements: intersection combinatorics and two constructions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::FamilyError;
use crate::polycore::{HomPoly, Monomial};

/// Integer coefficients `(a, b, c)` of the line `a x + b y + c z = 0`.
pub type Line = [i64; 3];

pub fn line_poly(l: &Line) -> HomPoly {
    HomPoly::linear(l[0], l[1], l[2])
}

pub fn product(lines: &[Line]) -> HomPoly {
    lines.iter().fold(HomPoly::one(), |acc, l| acc.mul(&line_poly(l)))
}

/// `(a x + b y + c z)(...)...` in parseable form.
pub fn lines_text(lines: &[Line]) -> String {
    lines.iter().map(|l| format!("({})", line_poly(l))).collect()
}

/// Integer coefficients of a linear form, cleared of denominators.
pub fn line_of(p: &HomPoly, index: usize) -> Result<Line, FamilyError> {
    if p.degree() != 1 || p.is_zero() {
        return Err(FamilyError::NotLinear(index));
    }
    let q = p.primitive();
    let mut out = [0i64; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let c = q.coeff(&Monomial::var(i));
        *slot = i64::try_from(c.to_integer()).map_err(|_| FamilyError::NotLinear(index))?;
    }
    Ok(out)
}

/// Projective point with coprime integer coordinates, first nonzero positive.
pub type Point = [BigInt; 3];

fn normalize(mut p: [BigInt; 3]) -> Point {
    let g = p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in p.iter_mut() {
            *x = &*x / &g;
        }
    }
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -&*x;
        }
    }
    p
}

fn cross(a: &Line, b: &Line) -> [BigInt; 3] {
    let a: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let b: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    pub point: [String; 3],
    /// Indices of the lines through the point.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementCombinatorics {
    pub d: usize,
    pub points: Vec<IntersectionPoint>,
    /// `n_j`: number of points of multiplicity `j`.
    pub counts: BTreeMap<usize, usize>,
}

impl ArrangementCombinatorics {
    pub fn n(&self, j: usize) -> usize {
        self.counts.get(&j).copied().unwrap_or(0)
    }

    /// `Σ_j n_j C(j, 2)`, which always equals `C(d, 2)`.
    pub fn pair_count(&self) -> usize {
        self.counts.iter().map(|(j, n)| n * j * (j - 1) / 2).sum()
    }

    /// `Σ_j (j-1)^2 n_j`: each ordinary `j`-fold point has Tjurina number `(j-1)^2`.
    pub fn combinatorial_tau(&self) -> usize {
        self.counts.iter().map(|(j, n)| n * (j - 1) * (j - 1)).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }
}

/// Groups all pairwise intersection points of `lines`.
pub fn combinatorics_of_lines(lines: &[Line]) -> Result<ArrangementCombinatorics, FamilyError> {
    let mut through: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = cross(&lines[i], &lines[j]);
            if p.iter().all(Zero::is_zero) {
                return Err(FamilyError::DuplicateLine(i, j));
            }
            let e = through.entry(normalize(p)).or_default();
            for k in [i, j] {
                if !e.contains(&k) {
                    e.push(k);
                }
            }
        }
    }
    let mut counts = BTreeMap::new();
    let points = through
        .into_iter()
        .map(|(p, mut ls)| {
            ls.sort();
            *counts.entry(ls.len()).or_insert(0) += 1;
            IntersectionPoint { point: p.map(|x| x.to_string()), lines: ls }
        })
        .collect();
    Ok(ArrangementCombinatorics { d: lines.len(), points, counts })
}

/// Combinatorics of an arrangement given by linear forms.
pub fn line_arrangement_combinatorics(lines: &[HomPoly]) -> Result<ArrangementCombinatorics, FamilyError> {
    let ls = lines.iter().enumerate().map(|(i, p)| line_of(p, i)).collect::<Result<Vec<_>, _>>()?;
    combinatorics_of_lines(&ls)
}

/// `y` followed by the lines `j x - y - j^2 z` and `j x + y - j^2 z`, `j = 1..k`.
/// Each pair meets at `(j : 0 : 1)` on `y = 0`.
pub fn thm62_lines(k: u32) -> Vec<Line> {
    thm62_lines_scaled(k, 0)
}

/// Variant with slopes `s_j = 1 + (j t mod 5)`: the lines `j x ∓ s_j y - j^2 z`
/// still pair up at `(j : 0 : 1)`. `t = 0` is [`thm62_lines`].
pub fn thm62_lines_scaled(k: u32, t: i64) -> Vec<Line> {
    let mut out = vec![[0, 1, 0]];
    for j in 1..=k as i64 {
        let s = 1 + (j * t) % 5;
        out.push([j, -s, -j * j]);
        out.push([j, s, -j * j]);
    }
    out
}

pub const THM62_VARIANTS: i64 = 16;

/// The first of the slope variants that satisfies the hypothesis.
pub fn thm62_arrangement_lines(k: u32) -> Result<Vec<Line>, FamilyError> {
    if k < 2 {
        return Err(FamilyError::OutOfRange {
            family: "thm6.2".into(),
            param: "k".into(),
            value: k as i64,
            min: 2,
            max: None,
        });
    }
    let mut last = None;
    for t in 0..THM62_VARIANTS {
        let lines = thm62_lines_scaled(k, t);
        match verify_thm62(k, &lines) {
            Ok(_) => return Ok(lines),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one variant"))
}

/// Lines `j x - y - j^2 z` for `j = 1..k` and `j x + y - j^2 z` for `j = 1..k-1`,
/// preceded by `y`.
pub fn rk63_lines(k: u32) -> Vec<Line> {
    let mut out = vec![[0, 1, 0]];
    for j in 1..=k as i64 {
        out.push([j, -1, -j * j]);
    }
    for j in 1..k as i64 {
        out.push([j, 1, -j * j]);
    }
    out
}

/// Checks that the last `2k` lines form a nodal arrangement and that adding
/// `y = 0` creates exactly `k` triple points, all on that line.
pub fn verify_thm62(k: u32, lines: &[Line]) -> Result<ArrangementCombinatorics, FamilyError> {
    let sub = combinatorics_of_lines(&lines[1..])?;
    let pairs = (2 * k as usize) * (2 * k as usize - 1) / 2;
    if sub.n(2) != pairs {
        return Err(FamilyError::HypothesisFailure(format!("the {} lines off y = 0 are not nodal", 2 * k)));
    }
    let full = combinatorics_of_lines(lines)?;
    let triples: Vec<&IntersectionPoint> = full.points.iter().filter(|p| p.lines.len() == 3).collect();
    let on_axis = triples.iter().all(|p| p.lines.contains(&0));
    if full.max_multiplicity() > 3 || triples.len() != k as usize || !on_axis {
        return Err(FamilyError::HypothesisFailure(format!(
            "expected {k} triple points on y = 0, found {} (max multiplicity {})",
            triples.len(),
            full.max_multiplicity()
        )));
    }
    Ok(full)
}

/// The `2k + 1` line arrangement with `k` collinear triple points.
pub fn build_thm62_arrangement(k: u32) -> Result<HomPoly, FamilyError> {
    Ok(product(&thm62_arrangement_lines(k)?))
}

pub const NODAL_ATTEMPTS: u64 = 32;

/// `d` lines with coefficients in `-6..=6` drawn from a seeded generator; the
/// attempt index is mixed into the seed until the arrangement is nodal.
pub fn nodal_lines(d: u32, seed: u64) -> Result<Vec<Line>, FamilyError> {
    if d < 3 {
        return Err(FamilyError::OutOfRange {
            family: "nodal".into(),
            param: "d".into(),
            value: d as i64,
            min: 3,
            max: None,
        });
    }
    for attempt in 0..NODAL_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(NODAL_ATTEMPTS).wrapping_add(attempt));
        let lines: Vec<Line> = (0..d)
            .map(|_| loop {
                let l = [rng.gen_range(-6..=6), rng.gen_range(-6..=6), rng.gen_range(-6..=6)];
                if l != [0, 0, 0] {
                    break l;
                }
            })
            .collect();
        let Ok(comb) = combinatorics_of_lines(&lines) else {
            continue;
        };
        if comb.n(2) == (d * (d - 1) / 2) as usize {
            return Ok(lines);
        }
    }
    Err(FamilyError::RetryExhausted { attempts: NODAL_ATTEMPTS as u32 })
}

pub fn nodal_arrangement(d: u32, seed: u64) -> Result<HomPoly, FamilyError> {
    Ok(product(&nodal_lines(d, seed)?))
}
