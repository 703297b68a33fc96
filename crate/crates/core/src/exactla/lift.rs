//! Rational kernel vectors recovered from modular images.
//!
//! The reduced-echelon-complement kernel vector attached to a free column is
//! unique over any field, so its images modulo good primes agree with the
//! reduction of the rational vector. Residues are combined by CRT, rational
//! numbers are recovered by half-gcd reconstruction, and every candidate is
//! checked by exact integer arithmetic before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{lifting_primes, rational_reconstruction, PrimeField};
use super::matrix::{kernel_from_rref, ExactMatrix};
use super::LaError;

/// Sparse integer matrix stored by columns.
#[derive(Clone, Debug, Default)]
pub struct IntColumns {
    pub nrows: usize,
    pub cols: Vec<Vec<(u32, BigInt)>>,
}

impl IntColumns {
    pub fn new(nrows: usize) -> Self {
        IntColumns { nrows, cols: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn push_col(&mut self, entries: Vec<(u32, BigInt)>) {
        self.cols.push(entries);
    }

    pub fn reduce(&self, field: PrimeField) -> ExactMatrix<PrimeField> {
        let mut m = ExactMatrix::zeros(field, self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                let r = field.from_bigint(v);
                let cur = *m.get(*i as usize, j);
                m.set(*i as usize, j, field.add_u(cur, r));
            }
        }
        m
    }

    /// Exact test `M v = 0`.
    pub fn annihilates(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.ncols());
        let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut acc = vec![BigInt::zero(); self.nrows];
        for (col, q) in self.cols.iter().zip(v) {
            if q.is_zero() {
                continue;
            }
            let w = q.numer() * (&den / q.denom());
            for (i, e) in col {
                acc[*i as usize] += &w * e;
            }
        }
        acc.iter().all(Zero::is_zero)
    }
}

/// Recovers the rational kernel vectors of `m` attached to the free columns
/// `wanted`, given the pivot columns computed modulo the default prime.
///
/// Primes whose pivot pattern has fewer pivots are skipped; a prime showing more
/// pivots than `pivots` proves the reference prime unlucky.
pub fn lift_kernel_vectors(
    m: &IntColumns,
    pivots: &[usize],
    wanted: &[usize],
) -> Result<Vec<Vec<BigRational>>, LaError> {
    if wanted.is_empty() {
        return Ok(Vec::new());
    }
    let n = m.ncols();
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; wanted.len()];
    let mut used = 0usize;
    for &p in lifting_primes() {
        let field = PrimeField::new(p).expect("lifting primes are prime");
        let mut rref = m.reduce(field);
        let pv = rref.eliminate(true);
        if pv.len() > pivots.len() {
            return Err(LaError::UnluckyPrime);
        }
        if pv != pivots {
            continue;
        }
        let vecs = kernel_from_rref(&rref, &pv, Some(wanted)).vectors;
        // CRT: x = a + M * ((b - a) * M^{-1} mod p)
        let big_p = BigInt::from(p);
        let m_mod_p = field.from_bigint(&modulus);
        let m_inv = field.inv_u(m_mod_p);
        for (acc, v) in residues.iter_mut().zip(&vecs) {
            for (a, &b) in acc.iter_mut().zip(v) {
                let a_mod = field.from_bigint(a);
                let diff = field.add_u(b, field.neg_u(a_mod));
                if diff != 0 {
                    let t = field.mul_u(diff, m_inv);
                    *a += &modulus * BigInt::from(t);
                }
            }
        }
        modulus *= &big_p;
        used += 1;
        if let Some(found) = reconstruct_all(&residues, &modulus) {
            if found.iter().all(|v| m.annihilates(v)) {
                return Ok(found);
            }
        }
        if used >= lifting_primes().len() - 1 {
            break;
        }
    }
    Err(LaError::LiftFailed { primes: used })
}

fn reconstruct_all(residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<BigRational>>> {
    let mut out = Vec::with_capacity(residues.len());
    for v in residues {
        let mut w = Vec::with_capacity(v.len());
        for a in v {
            if a.is_zero() {
                w.push(BigRational::zero());
            } else {
                w.push(rational_reconstruction(a, modulus)?);
            }
        }
        out.push(w);
    }
    Some(out)
}

/// Scales a rational vector to a primitive integer vector (content 1) with the
/// same sign pattern.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
