//! Squarefreeness test through restrictions to lines.
//!
//! A square factor of `f` restricts to a square factor on every line, so one
//! line with a squarefree restriction of full degree certifies that `f` is
//! reduced.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::poly::{HomPoly, Rat};
use crate::syzres::{milnor_dim, Arithmetic, SyzError};

pub const REDUCEDNESS_LINES: usize = 8;

/// The line `t ↦ P + tQ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessLine {
    pub p: [i64; 3],
    pub q: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reducedness {
    Reduced {
        line: WitnessLine,
    },
    /// All lines failed and `dim M(f)` still grows at `3d - 5`.
    NotReduced {
        milnor_3d5: usize,
        milnor_3d4: usize,
    },
    Inconclusive,
}

impl Reducedness {
    pub fn is_reduced(&self) -> bool {
        matches!(self, Reducedness::Reduced { .. })
    }
}

/// Univariate polynomial, lowest degree first.
type UPoly = Vec<Rat>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn umul(a: &[Rat], b: &[Rat]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn upow(a: &[Rat], e: u32) -> UPoly {
    let mut acc = vec![Rat::one()];
    for _ in 0..e {
        acc = umul(&acc, a);
    }
    acc
}

fn urem(a: &[Rat], b: &[Rat]) -> UPoly {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone() / &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn ugcd_degree(a: &[Rat], b: &[Rat]) -> usize {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = urem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Coefficients of `f(P + tQ)`.
pub fn restrict_to_line(f: &HomPoly, line: &WitnessLine) -> Vec<Rat> {
    let lin: Vec<UPoly> =
        (0..3).map(|i| vec![Rat::from_integer(line.p[i].into()), Rat::from_integer(line.q[i].into())]).collect();
    let mut acc: UPoly = Vec::new();
    for (m, c) in f.terms() {
        let mut t = vec![c.clone()];
        for (i, l) in lin.iter().enumerate() {
            t = umul(&t, &upow(l, m.exponent(i)));
        }
        if acc.len() < t.len() {
            acc.resize(t.len(), Rat::zero());
        }
        for (a, x) in acc.iter_mut().zip(t) {
            *a += x;
        }
    }
    trim(acc)
}

/// True when the restriction has full degree and no repeated root.
pub fn squarefree_on(f: &HomPoly, line: &WitnessLine) -> bool {
    let g = restrict_to_line(f, line);
    if g.len() != f.degree() as usize + 1 {
        return false;
    }
    let dg: UPoly = g.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer((i as i64).into())).collect();
    ugcd_degree(&g, &dg) == 0
}

fn random_line(rng: &mut ChaCha8Rng) -> WitnessLine {
    let mut coord = || [rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9)];
    WitnessLine { p: coord(), q: coord() }
}

/// Tri-state reducedness check with `REDUCEDNESS_LINES` seeded lines.
pub fn is_reduced(f: &HomPoly, seed: u64, arith: Arithmetic) -> Result<Reducedness, SyzError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REDUCEDNESS_LINES {
        let line = random_line(&mut rng);
        if squarefree_on(f, &line) {
            return Ok(Reducedness::Reduced { line });
        }
    }
    let d = f.degree();
    if d < 2 {
        return Ok(Reducedness::Inconclusive);
    }
    let a = milnor_dim(f, 3 * d - 5, arith)?;
    let b = milnor_dim(f, 3 * d - 4, arith)?;
    Ok(if a != b { Reducedness::NotReduced { milnor_3d5: a, milnor_3d4: b } } else { Reducedness::Inconclusive })
}
