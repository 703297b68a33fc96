//! Degree-by-degree generator and relation passes.
//!
//! Eliminations run modulo a reference prime. In rational mode every chosen
//! generator and relation is lifted to an exact rational vector and verified, and
//! its reduction replaces the modular representative. The ranks found mod p are
//! then lower bounds for the rational ranks of the same (integer) vectors, while
//! the modular dimensions of `D_k` and of the relation spaces are upper bounds for
//! the rational ones, so equality on both sides certifies every count.

use num_bigint::BigInt;

use super::jacobian::{shifted_mod, BlockLayout, Prepared, SparseBlocks};
use super::{Arithmetic, SyzError};
use crate::exactla::{
    kernel_from_rref, lift_kernel_vectors, primitive_integer_vector, EchelonSpace, ExactMatrix, IntColumns, LaError,
    PrimeField,
};
use crate::polycore::{basis_len, monomial_basis};

/// A minimal generator of `D_0(f)` or of the relation module.
#[derive(Clone, Debug)]
pub(crate) struct Vector {
    pub degree: u32,
    pub modp: SparseBlocks<u64>,
    pub exact: Option<SparseBlocks<BigInt>>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct GenPass {
    pub dims: Vec<usize>,
    pub mingens: Vec<usize>,
    pub gens: Vec<Vector>,
}

fn n(k: u32) -> usize {
    basis_len(k as usize)
}

/// `dim M(f)_t` from `dim D_0(f)_{t-d+1}`.
pub(crate) fn milnor_from_syz(d: u32, t: u32, syz: usize) -> usize {
    let k = t + 1 - d;
    n(t) - (3 * n(k) - syz)
}

/// Selects, in free-column order, kernel vectors of an RREF matrix that enlarge
/// `space`, until `wanted` were found.
fn choose_new(
    rref: &ExactMatrix<PrimeField>,
    pivots: &[usize],
    space: &mut EchelonSpace,
    wanted: usize,
) -> Result<Vec<(usize, Vec<u64>)>, SyzError> {
    let kb = kernel_from_rref(rref, pivots, None);
    let mut out = Vec::with_capacity(wanted);
    for &col in &kb.free_columns {
        if out.len() == wanted {
            break;
        }
        let v = kernel_from_rref(rref, pivots, Some(&[col])).vectors.pop().expect("one vector");
        if space.insert(v.clone()) {
            out.push((col, v));
        }
    }
    if out.len() != wanted {
        return Err(SyzError::Internal("kernel does not supply the expected new generators".into()));
    }
    Ok(out)
}

/// Lifts the chosen modular kernel vectors and returns primitive integer vectors
/// together with their reductions.
fn lift_chosen(
    ints: &IntColumns,
    pivots: &[usize],
    chosen: &[(usize, Vec<u64>)],
    field: PrimeField,
) -> Result<Vec<(Vec<BigInt>, Vec<u64>)>, SyzError> {
    let cols: Vec<usize> = chosen.iter().map(|(c, _)| *c).collect();
    let lifted = lift_kernel_vectors(ints, pivots, &cols)?;
    let mut out = Vec::with_capacity(lifted.len());
    for ((col, _), q) in chosen.iter().zip(&lifted) {
        let z = primitive_integer_vector(q);
        let r: Vec<u64> = z.iter().map(|x| field.from_bigint(x)).collect();
        if r[*col] == 0 {
            return Err(LaError::UnluckyPrime.into());
        }
        out.push((z, r));
    }
    Ok(out)
}

pub(crate) fn generator_pass(prep: &Prepared, arith: Arithmetic, bound: u32) -> Result<GenPass, SyzError> {
    let field = arith.field();
    let d = prep.d;
    let mut out = GenPass::default();
    let mut stable_tau: Option<usize> = None;
    for k in 0..=bound {
        let layout = BlockLayout::triples(k);
        let mut rref: Option<(ExactMatrix<PrimeField>, Vec<usize>)> = None;
        let dim_k = match stable_tau {
            // past the stabilization degree, rank J_k = dim S_{k+d-1} - tau
            Some(tau) if k + 2 > 2 * d => 3 * n(k) + tau - n(k + d - 1),
            _ => {
                let mut jm = prep.jacobian_mod(k, field);
                let pivots = jm.eliminate(true);
                let dim = 3 * n(k) - pivots.len();
                rref = Some((jm, pivots));
                dim
            }
        };
        out.dims.push(dim_k);
        if d >= 2 && k + 3 == 2 * d {
            let a = milnor_from_syz(d, 3 * d - 5, out.dims[k as usize - 1]);
            let b = milnor_from_syz(d, 3 * d - 4, dim_k);
            if a == b {
                stable_tau = Some(a);
            }
        }
        if dim_k == 0 {
            out.mingens.push(0);
            continue;
        }
        let lower: Vec<Vec<u64>> = out
            .gens
            .iter()
            .flat_map(|g| monomial_basis(k - g.degree).into_iter().map(move |u| (g, u)))
            .map(|(g, u)| shifted_mod(&g.modp, &u, &layout))
            .collect();
        let mut space = EchelonSpace::from_vectors(field, layout.len, lower);
        if space.dim() > dim_k {
            return Err(SyzError::Internal(format!("multiples exceed dim D_{k}")));
        }
        let mu = dim_k - space.dim();
        if mu > 0 {
            let (jm, pivots) = match rref {
                Some(r) => r,
                None => {
                    let mut jm = prep.jacobian_mod(k, field);
                    let p = jm.eliminate(true);
                    (jm, p)
                }
            };
            let chosen = choose_new(&jm, &pivots, &mut space, mu)?;
            if arith.certify() {
                for (z, r) in lift_chosen(&prep.jacobian_int(k), &pivots, &chosen, field)? {
                    out.gens.push(Vector {
                        degree: k,
                        modp: SparseBlocks::from_dense(k, &layout, &r, |x| *x == 0),
                        exact: Some(SparseBlocks::from_dense(k, &layout, &z, |x| x == &BigInt::from(0))),
                    });
                }
            } else {
                for (_, v) in chosen {
                    out.gens.push(Vector {
                        degree: k,
                        modp: SparseBlocks::from_dense(k, &layout, &v, |x| *x == 0),
                        exact: None,
                    });
                }
            }
        }
        out.mingens.push(mu);
    }
    Ok(out)
}

/// Column layout of the multiples `u · ρ_j` in degree `delta`: one block per
/// generator of degree below `delta`.
fn coefficient_layout(gens: &[Vector], delta: u32) -> BlockLayout {
    BlockLayout::new(gens.iter().take_while(|g| g.degree < delta).map(|g| delta - g.degree).collect())
}

fn multiples_mod(gens: &[Vector], coef: &BlockLayout, delta: u32, field: PrimeField) -> ExactMatrix<PrimeField> {
    let tri = BlockLayout::triples(delta);
    let mut m = ExactMatrix::zeros(field, tri.len, coef.len);
    for (j, g) in gens.iter().take(coef.degrees.len()).enumerate() {
        for u in monomial_basis(delta - g.degree) {
            let col = coef.index(j, &u);
            for (b, mo, x) in &g.modp.entries {
                m.set(tri.index(*b, &mo.mul(&u)), col, *x);
            }
        }
    }
    m
}

fn multiples_int(gens: &[Vector], coef: &BlockLayout, delta: u32) -> IntColumns {
    let tri = BlockLayout::triples(delta);
    let mut cols: Vec<Vec<(u32, BigInt)>> = vec![Vec::new(); coef.len];
    for (j, g) in gens.iter().take(coef.degrees.len()).enumerate() {
        let exact = g.exact.as_ref().expect("rational generators");
        for u in monomial_basis(delta - g.degree) {
            cols[coef.index(j, &u)] =
                exact.entries.iter().map(|(b, mo, x)| (tri.index(*b, &mo.mul(&u)) as u32, x.clone())).collect();
        }
    }
    let mut m = IntColumns::new(tri.len);
    for c in cols {
        m.push_col(c);
    }
    m
}

/// Minimal relations among the generators, scanned for `delta <= delta_max`.
/// Stops once `m - 2` relations are known and every generator degree was passed.
pub(crate) fn relation_pass(gens: &[Vector], arith: Arithmetic, delta_max: u32) -> Result<Vec<Vector>, SyzError> {
    let field = arith.field();
    let target = gens.len().saturating_sub(2);
    let mut rels: Vec<Vector> = Vec::new();
    if target == 0 {
        return Ok(rels);
    }
    let top = gens.last().map(|g| g.degree).unwrap_or(0);
    let start = gens[0].degree + 1;
    for delta in start..=delta_max {
        if rels.len() >= target && delta > top {
            break;
        }
        let coef = coefficient_layout(gens, delta);
        if coef.degrees.len() < 2 {
            continue;
        }
        let mut m = multiples_mod(gens, &coef, delta, field);
        let pivots = m.eliminate(true);
        let dim_r = coef.len - pivots.len();
        let lower: Vec<Vec<u64>> = rels
            .iter()
            .flat_map(|r| monomial_basis(delta - r.degree).into_iter().map(move |u| (r, u)))
            .map(|(r, u)| shifted_mod(&r.modp, &u, &coef))
            .collect();
        let count = lower.len();
        let mut space = EchelonSpace::from_vectors(field, coef.len, lower);
        if space.dim() != count {
            return Err(SyzError::Internal(format!("relation multiples are dependent in degree {delta}")));
        }
        if count > dim_r {
            return Err(SyzError::Internal(format!("relation space too small in degree {delta}")));
        }
        let nu = dim_r - count;
        if nu == 0 {
            continue;
        }
        let chosen = choose_new(&m, &pivots, &mut space, nu)?;
        if arith.certify() {
            let ints = multiples_int(gens, &coef, delta);
            for (z, r) in lift_chosen(&ints, &pivots, &chosen, field)? {
                rels.push(Vector {
                    degree: delta,
                    modp: SparseBlocks::from_dense(delta, &coef, &r, |x| *x == 0),
                    exact: Some(SparseBlocks::from_dense(delta, &coef, &z, |x| x == &BigInt::from(0))),
                });
            }
        } else {
            for (_, v) in chosen {
                rels.push(Vector {
                    degree: delta,
                    modp: SparseBlocks::from_dense(delta, &coef, &v, |x| *x == 0),
                    exact: None,
                });
            }
        }
    }
    Ok(rels)
}
