//! Matrices of the Jacobian map `(a, b, c) ↦ a f_x + b f_y + c f_z` and helpers
//! for triples of forms laid out as flat coordinate vectors.
//!
//! A triple of degree-`k` forms is stored as `[a | b | c]`, each block indexed by
//! the descending monomial basis of `S_k`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactla::{ExactMatrix, IntColumns, PrimeField, Rationals};
use crate::polycore::{basis_len, monomial_basis, HomPoly, Monomial};

/// The curve equation with its integer-scaled partial derivatives.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub f: HomPoly,
    pub d: u32,
    pub partials: [Vec<(Monomial, BigInt)>; 3],
}

impl Prepared {
    pub fn new(f: &HomPoly) -> Self {
        let g = f.primitive();
        let partials = g.partials().map(|p| p.terms().map(|(m, c)| (*m, c.to_integer())).collect());
        Prepared { f: g, d: f.degree(), partials }
    }

    /// Rows: monomials of degree `k + d - 1`. Columns: `(i, u)` for `u ∈ S_k`.
    pub fn jacobian_mod(&self, k: u32, field: PrimeField) -> ExactMatrix<PrimeField> {
        let n = basis_len(k as usize);
        let t = k + self.d - 1;
        let mut m = ExactMatrix::zeros(field, basis_len(t as usize), 3 * n);
        let reduced: Vec<Vec<(Monomial, u64)>> =
            self.partials.iter().map(|p| p.iter().map(|(mo, c)| (*mo, field.from_bigint(c))).collect()).collect();
        for (col_base, terms) in reduced.iter().enumerate() {
            for (j, u) in monomial_basis(k).iter().enumerate() {
                for (mo, c) in terms {
                    m.set(u.mul(mo).index(), col_base * n + j, *c);
                }
            }
        }
        m
    }

    pub fn jacobian_int(&self, k: u32) -> IntColumns {
        let t = k + self.d - 1;
        let mut m = IntColumns::new(basis_len(t as usize));
        for terms in &self.partials {
            for u in monomial_basis(k) {
                m.push_col(terms.iter().map(|(mo, c)| (u.mul(mo).index() as u32, c.clone())).collect());
            }
        }
        m
    }

    pub fn jacobian_rational(&self, k: u32) -> ExactMatrix<Rationals> {
        let ints = self.jacobian_int(k);
        let mut m = ExactMatrix::zeros(Rationals, ints.nrows, ints.ncols());
        for (j, col) in ints.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i as usize, j, BigRational::from_integer(v.clone()));
            }
        }
        m
    }
}

/// A vector of `S_k^r` (r blocks) held sparsely: `(block, monomial, value)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseBlocks<E> {
    pub degree: u32,
    pub entries: Vec<(usize, Monomial, E)>,
}

impl<E: Clone> SparseBlocks<E> {
    /// Reads a dense block vector whose blocks have degrees `degrees[b]`.
    pub fn from_dense(degree: u32, layout: &BlockLayout, v: &[E], is_zero: impl Fn(&E) -> bool) -> Self {
        let mut entries = Vec::new();
        for (b, (&deg, &off)) in layout.degrees.iter().zip(&layout.offsets).enumerate() {
            for (j, mo) in monomial_basis(deg).into_iter().enumerate() {
                let x = &v[off + j];
                if !is_zero(x) {
                    entries.push((b, mo, x.clone()));
                }
            }
        }
        SparseBlocks { degree, entries }
    }
}

/// Offsets of consecutive blocks `S_{deg_0} ⊕ S_{deg_1} ⊕ ...` in a flat vector.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    pub degrees: Vec<u32>,
    pub offsets: Vec<usize>,
    pub len: usize,
}

impl BlockLayout {
    pub fn new(degrees: Vec<u32>) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut len = 0;
        for &d in &degrees {
            offsets.push(len);
            len += basis_len(d as usize);
        }
        BlockLayout { degrees, offsets, len }
    }

    pub fn triples(k: u32) -> Self {
        Self::new(vec![k; 3])
    }

    #[inline]
    pub fn index(&self, block: usize, mo: &Monomial) -> usize {
        debug_assert_eq!(mo.degree(), self.degrees[block]);
        self.offsets[block] + mo.index()
    }
}

/// Dense image of `u · v` for a sparse block vector `v` (residues mod p).
pub fn shifted_mod(v: &SparseBlocks<u64>, u: &Monomial, layout: &BlockLayout) -> Vec<u64> {
    let mut out = vec![0u64; layout.len];
    for (b, mo, x) in &v.entries {
        out[layout.index(*b, &mo.mul(u))] = *x;
    }
    out
}

/// Block polynomials of a sparse integer vector.
pub fn to_polys(v: &SparseBlocks<BigInt>, degrees: &[u32]) -> Vec<HomPoly> {
    let mut out: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); degrees.len()];
    for (b, mo, x) in &v.entries {
        out[*b].push((*mo, BigRational::from_integer(x.clone())));
    }
    out.into_iter()
        .zip(degrees)
        .map(|(terms, &d)| HomPoly::from_terms(d, terms).expect("block degrees match"))
        .collect()
}
