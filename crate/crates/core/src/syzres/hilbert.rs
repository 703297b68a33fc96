//! Hilbert function of the Milnor algebra and the numerator of its series.

use serde::{Deserialize, Serialize};

use crate::polycore::basis_len;

/// Integer polynomial in `t`, lowest degree first, without trailing zeros.
pub type IntPoly = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub d: u32,
    /// `3(d - 2)`.
    pub t: u32,
    /// `dim M(f)_k` for `0 <= k <= 3d - 4`.
    pub dims: Vec<usize>,
    pub tau: usize,
    pub numerator: IntPoly,
}

impl HilbertData {
    /// Builds the table from `dim D_0(f)_k` for `k <= 2d - 3`. Returns `None`
    /// when `dim M(f)_{3d-5} != dim M(f)_{3d-4}`.
    pub(crate) fn from_syz_dims(d: u32, syz: &[usize]) -> Result<Self, (usize, usize)> {
        let top = 3 * d - 4;
        let dims: Vec<usize> = (0..=top)
            .map(|k| {
                if k + 1 < d {
                    basis_len(k as usize)
                } else {
                    super::pipeline::milnor_from_syz(d, k, syz[(k + 1 - d) as usize])
                }
            })
            .collect();
        let (a, b) = (dims[top as usize - 1], dims[top as usize]);
        if a != b {
            return Err((a, b));
        }
        let numerator = numerator_from_dims(&dims[..top as usize], a);
        Ok(HilbertData { d, t: 3 * (d - 2), dims, tau: a, numerator })
    }
}

pub fn trim(mut p: IntPoly) -> IntPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

/// `(1-t)^3 P(t) + tau t^{K+1} (1-t)^2` where `P = Σ_{k<=K} h_k t^k` and
/// `h = prefix` has length `K + 1`.
pub fn numerator_from_dims(prefix: &[usize], tau: usize) -> IntPoly {
    let p: Vec<i64> = prefix.iter().map(|&h| h as i64).collect();
    let first = mul(&p, &[1, -3, 3, -1]);
    let mut tail = vec![0i64; prefix.len()];
    tail.extend([tau as i64, -2 * tau as i64, tau as i64]);
    add(&first, &tail)
}

/// `1 - 3t^{d-1} + Σ_j t^{d-1+d_j} - Σ_i t^{e_i}`.
pub fn betti_numerator(d: u32, exponents: &[u32], relation_degrees: &[u32]) -> IntPoly {
    let top = exponents.iter().chain(relation_degrees).map(|&e| e + d).max().unwrap_or(d) as usize + 1;
    let mut p = vec![0i64; top.max(d as usize)];
    p[0] += 1;
    p[(d - 1) as usize] -= 3;
    for &e in exponents {
        p[(d - 1 + e) as usize] += 1;
    }
    for &e in relation_degrees {
        p[e as usize] -= 1;
    }
    trim(p)
}

/// Value and first two derivatives at `t = 1`.
pub fn derivatives_at_one(p: &[i64]) -> (i64, i64, i64) {
    let mut v = (0i64, 0i64, 0i64);
    for (i, &c) in p.iter().enumerate() {
        let i = i as i64;
        v.0 += c;
        v.1 += c * i;
        v.2 += c * i * (i - 1);
    }
    v
}

/// Readable form such as `1 - 3t^4 + 3t^8 - t^12`.
pub fn format_poly(p: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if mag != 1 || i == 0 {
            s.push_str(&mag.to_string());
        }
        s.push_str(&mono);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
