//! Graded dimensions of `N(f) = I_f / J_f`, where `I_f` is the saturation of the
//! Jacobian ideal.
//!
//! `g ∈ S_k` lies in `I_f` iff `g x^e, g y^e, g z^e ∈ J_f` for `k + e > 3(d-2)`:
//! those three products force `g · m^{3e-2} ⊂ J_f`, and `J_f` agrees with its
//! saturation past `3(d-2)`. Normal forms modulo `(J_f)_{k+e}` live in a
//! `tau`-dimensional complement, so each membership test is a small rank.

use serde::{Deserialize, Serialize};

use super::jacobian::Prepared;
use super::SyzError;
use crate::exactla::{ExactMatrix, PrimeField};
use crate::polycore::{basis_len, monomial_basis, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationProfile {
    pub d: u32,
    /// `3(d - 2)`.
    pub t: u32,
    /// `n(f)_k` for `0 <= k <= t`.
    pub n_dims: Vec<usize>,
}

impl SaturationProfile {
    /// Pairs `(a, t - a)` with `n(f)_a != n(f)_{t-a}`.
    pub fn asymmetries(&self) -> Vec<(u32, u32)> {
        (0..=self.t)
            .filter(|&a| self.n_dims[a as usize] != self.n_dims[(self.t - a) as usize])
            .map(|a| (a, self.t - a))
            .collect()
    }
}

/// Normal forms of all monomials of degree `t` modulo `(J_f)_t`, as coordinates
/// on the non-pivot monomials.
struct NormalForms {
    t: u32,
    forms: Vec<Vec<u64>>,
}

impl NormalForms {
    fn new(prep: &Prepared, t: u32, field: PrimeField) -> Self {
        let nt = basis_len(t as usize);
        let k = t + 1 - prep.d;
        let mut rows = Vec::new();
        for terms in &prep.partials {
            for u in monomial_basis(k) {
                let mut row = vec![0u64; nt];
                for (mo, c) in terms {
                    row[u.mul(mo).index()] = field.from_bigint(c);
                }
                rows.push(row);
            }
        }
        let mut m = ExactMatrix::from_rows(field, nt, rows);
        let pivots = m.eliminate(true);
        let mut is_pivot = vec![false; nt];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..nt).filter(|&j| !is_pivot[j]).collect();
        let mut forms = vec![vec![0u64; free.len()]; nt];
        for (slot, &j) in free.iter().enumerate() {
            forms[j][slot] = 1;
        }
        for (r, &p) in pivots.iter().enumerate() {
            let row = m.row(r);
            forms[p] = free.iter().map(|&j| field.neg_u(row[j])).collect();
        }
        NormalForms { t, forms }
    }

    fn codim(&self) -> usize {
        self.forms.first().map(Vec::len).unwrap_or(0)
    }

    /// `dim {g ∈ S_k : g x^e, g y^e, g z^e ∈ J_f}` with `e = t - k`.
    fn colon_dim(&self, k: u32, field: PrimeField) -> usize {
        let e = self.t - k;
        let basis = monomial_basis(k);
        let c = self.codim();
        if c == 0 {
            return basis.len();
        }
        let powers = [Monomial::new(e, 0, 0), Monomial::new(0, e, 0), Monomial::new(0, 0, e)];
        let rows: Vec<Vec<u64>> = basis
            .iter()
            .map(|u| powers.iter().flat_map(|p| self.forms[u.mul(p).index()].iter().copied()).collect())
            .collect();
        let rank = ExactMatrix::from_rows(field, 3 * c, rows).eliminate(false).len();
        basis.len() - rank
    }
}

/// `n(f)_k = dim (I_f)_k - dim (J_f)_k` for `k <= 3(d-2)`, with `dim (J_f)_k`
/// taken from the Milnor algebra dimensions `milnor`.
pub(crate) fn saturation(prep: &Prepared, milnor: &[usize], field: PrimeField) -> Result<SaturationProfile, SyzError> {
    let d = prep.d;
    let t = 3 * (d - 2);
    let first = NormalForms::new(prep, 3 * d - 4, field);
    let second = NormalForms::new(prep, 3 * d - 3, field);
    let mut n_dims = Vec::with_capacity(t as usize + 1);
    for k in 0..=t {
        let a = first.colon_dim(k, field);
        let b = second.colon_dim(k, field);
        if a != b {
            return Err(SyzError::SaturationUnstable { k });
        }
        let j_k = basis_len(k as usize) - milnor[k as usize];
        n_dims.push(a - j_k);
    }
    Ok(SaturationProfile { d, t, n_dims })
}
