use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, FieldTag, PrimeField, Rationals};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Right null space basis in reduced-echelon-complement form: the vector for free
/// column `j` has a 1 at `j`, zeros at every other free column, and the negated
/// reduced-row-echelon entries at the pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis<E> {
    pub dimension: usize,
    pub vectors: Vec<Vec<E>>,
    pub free_columns: Vec<usize>,
    pub pivot_columns: Vec<usize>,
}

impl<K: Field> ExactMatrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, data }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        ExactMatrix { field, rows: n, cols, data }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn field_tag(&self) -> FieldTag {
        self.field.tag()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !self.field.is_zero(a) && !self.field.is_zero(b) {
                        acc = self.field.add(&acc, &self.field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Prime field: in-place Gaussian elimination on u64 residues.

/// `dst[from..] += c * src[from..]`, skipping zero entries of a sparse source.
#[inline]
fn axpy(field: &PrimeField, dst: &mut [u64], c: u64, src: &[u64], nz: Option<&[usize]>) {
    match nz {
        Some(idx) => {
            for &j in idx {
                dst[j] = field.mul_add(dst[j], c, src[j]);
            }
        }
        None => {
            for (d, s) in dst.iter_mut().zip(src) {
                *d = field.mul_add(*d, c, *s);
            }
        }
    }
}

impl ExactMatrix<PrimeField> {
    /// Gaussian elimination with the first nonzero entry in column order as pivot.
    /// With `full`, rows above each pivot are cleared too (reduced row echelon form).
    /// Pivot rows are normalized to 1. Returns the pivot columns.
    pub fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv_u(self.data[r * cols + c]);
            for j in c..cols {
                let v = &mut self.data[r * cols + j];
                if *v != 0 {
                    *v = f.mul_u(*v, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let psrc = &prow[c..];
            let nz: Vec<usize> = psrc.iter().enumerate().filter(|(_, v)| **v != 0).map(|(j, _)| j).collect();
            let sparse = nz.len() * 3 < psrc.len();
            let nz_ref = if sparse { Some(nz.as_slice()) } else { None };
            for row in after.chunks_mut(cols) {
                let a = row[c];
                if a != 0 {
                    axpy(&f, &mut row[c..], f.neg_u(a), psrc, nz_ref);
                }
            }
            if full {
                for row in before.chunks_mut(cols) {
                    let a = row[c];
                    if a != 0 {
                        axpy(&f, &mut row[c..], f.neg_u(a), psrc, nz_ref);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    pub fn kernel(&self) -> KernelBasis<u64> {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        kernel_from_rref(&m, &pivots, None)
    }

    /// Kernel vectors for the requested free columns only.
    pub fn kernel_vectors_for(&self, wanted: &[usize]) -> (Vec<usize>, Vec<Vec<u64>>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        let kb = kernel_from_rref(&m, &pivots, Some(wanted));
        (pivots, kb.vectors)
    }
}

pub(crate) fn kernel_from_rref(
    m: &ExactMatrix<PrimeField>,
    pivots: &[usize],
    wanted: Option<&[usize]>,
) -> KernelBasis<u64> {
    let f = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&j| !is_pivot[j]).collect();
    let chosen: Vec<usize> = match wanted {
        Some(w) => w.to_vec(),
        None => free.clone(),
    };
    let vectors = chosen
        .iter()
        .map(|&j| {
            assert!(!is_pivot[j], "column {j} is a pivot column");
            let mut v = vec![0u64; m.cols];
            v[j] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg_u(*m.get(i, j));
            }
            v
        })
        .collect();
    KernelBasis { dimension: free.len(), vectors, free_columns: free, pivot_columns: pivots.to_vec() }
}

/// Rank of the span of equal-length vectors over a prime field.
pub fn span_rank(field: PrimeField, len: usize, vectors: Vec<Vec<u64>>) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(field, len, vectors).eliminate(false).len()
}

/// Incrementally built echelon basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    field: PrimeField,
    len: usize,
    // (pivot, row) sorted by pivot; row[pivot] == 1 and row[..pivot] == 0
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonSpace {
    pub fn new(field: PrimeField, len: usize) -> Self {
        EchelonSpace { field, len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis of the span of `vectors`, built by one batch elimination.
    pub fn from_vectors(field: PrimeField, len: usize, vectors: Vec<Vec<u64>>) -> Self {
        if vectors.is_empty() {
            return Self::new(field, len);
        }
        let mut m = ExactMatrix::from_rows(field, len, vectors);
        let pivots = m.eliminate(false);
        let rows = pivots.iter().enumerate().map(|(i, &p)| (p, m.row(i).to_vec())).collect();
        EchelonSpace { field, len, rows }
    }

    pub fn reduce(&self, v: &mut [u64]) {
        let f = self.field;
        for (p, row) in &self.rows {
            let a = v[*p];
            if a != 0 {
                axpy(&f, &mut v[*p..], f.neg_u(a), &row[*p..], None);
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the space; returns false when it was already contained.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv_u(v[p]);
        for x in v[p..].iter_mut() {
            *x = self.field.mul_u(*x, inv);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

// ---------------------------------------------------------------------------
// Rationals: fraction-free elimination on cleared-denominator integer rows.

fn integer_rows(m: &ExactMatrix<Rationals>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&den / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination. Forward-only gives an echelon form whose
/// pivot entries are minors of the input; `full` also clears above each pivot,
/// rescaling earlier rows so that every pivot equals the last minor. Every
/// division is exact.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize, full: bool) -> Vec<usize> {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        let piv = a[r][c].clone();
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || (!full && i < r) {
                continue;
            }
            let factor = row[c].clone();
            let start = if full && i < r { 0 } else { c };
            for j in start..cols {
                if j == c {
                    continue;
                }
                let v = &piv * &row[j] - &factor * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl ExactMatrix<Rationals> {
    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        ExactMatrix { field: Rationals, rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        let mut a = integer_rows(self);
        bareiss(&mut a, self.cols, false).len()
    }

    pub fn kernel(&self) -> KernelBasis<BigRational> {
        let mut a = integer_rows(self);
        let pivots = bareiss(&mut a, self.cols, true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let vectors = free
            .iter()
            .map(|&j| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[j] = BigRational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -BigRational::new(a[i][j].clone(), a[i][pc].clone());
                }
                v
            })
            .collect();
        KernelBasis { dimension: free.len(), vectors, free_columns: free, pivot_columns: pivots }
    }
}

/// Dimension of the span of equal-length rational vectors.
pub fn span_rank_rational(len: usize, vectors: &[Vec<BigRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(Rationals, len, vectors.to_vec()).rank()
}
