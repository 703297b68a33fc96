//! Dense exact linear algebra over the rationals and over prime fields.

mod field;
mod lift;
mod matrix;

pub use field::{
    is_prime_u64, lifting_primes, rational_reconstruction, Field, FieldTag, PrimeField, Rationals, MERSENNE_61,
};
pub use lift::{lift_kernel_vectors, primitive_integer_vector, IntColumns};
pub(crate) use matrix::kernel_from_rref;
pub use matrix::{span_rank, span_rank_rational, EchelonSpace, ExactMatrix, KernelBasis};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaError {
    #[error("{0} is not a prime in (2^20, 2^62)")]
    BadPrime(u64),
    #[error("reference prime is unlucky: another prime shows a larger rank")]
    UnluckyPrime,
    #[error("rational reconstruction did not verify after {primes} primes")]
    LiftFailed { primes: usize },
}

/// Exact rank over the matrix's own field.
pub fn rank<K: Field>(m: &ExactMatrix<K>) -> usize
where
    ExactMatrix<K>: Ranked,
{
    m.exact_rank()
}

/// Field-dispatched rank and kernel.
pub trait Ranked {
    type Elem;
    fn exact_rank(&self) -> usize;
    fn exact_kernel(&self) -> KernelBasis<Self::Elem>;
}

impl Ranked for ExactMatrix<Rationals> {
    type Elem = num_rational::BigRational;
    fn exact_rank(&self) -> usize {
        self.rank()
    }
    fn exact_kernel(&self) -> KernelBasis<Self::Elem> {
        self.kernel()
    }
}

impl Ranked for ExactMatrix<PrimeField> {
    type Elem = u64;
    fn exact_rank(&self) -> usize {
        self.rank()
    }
    fn exact_kernel(&self) -> KernelBasis<u64> {
        self.kernel()
    }
}

/// Right null space over the matrix's own field.
pub fn kernel<K: Field>(m: &ExactMatrix<K>) -> KernelBasis<<ExactMatrix<K> as Ranked>::Elem>
where
    ExactMatrix<K>: Ranked,
{
    m.exact_kernel()
}
