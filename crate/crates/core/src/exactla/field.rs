use std::fmt::Debug;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LaError;

/// Field operations over an element type. Implemented by [`Rationals`] and
/// [`PrimeField`].
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rat(&self, q: &BigRational) -> Option<Self::Elem>;
    fn tag(&self) -> FieldTag;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rat(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
}

/// Mersenne prime `2^61 - 1`, the default modulus; reduction needs no division.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// `Z/pZ` for a prime `2^20 < p < 2^62`, elements stored reduced in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    mersenne: bool,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LaError> {
        if p <= 1 << 20 || p >= 1 << 62 || !is_prime_u64(p) {
            return Err(LaError::BadPrime(p));
        }
        Ok(PrimeField { p, mersenne: p == MERSENNE_61 })
    }

    pub fn default_field() -> Self {
        PrimeField { p: MERSENNE_61, mersenne: true }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    pub fn reduce_u128(&self, t: u128) -> u64 {
        if self.mersenne {
            let lo = (t as u64) & MERSENNE_61;
            let mid = ((t >> 61) as u64) & MERSENNE_61;
            let hi = (t >> 122) as u64;
            let mut r = lo + mid + hi;
            while r >= MERSENNE_61 {
                r -= MERSENNE_61;
            }
            r
        } else {
            (t % self.p as u128) as u64
        }
    }

    #[inline(always)]
    pub fn mul_u(&self, a: u64, b: u64) -> u64 {
        self.reduce_u128(a as u128 * b as u128)
    }

    /// `a + c * b`.
    #[inline(always)]
    pub fn mul_add(&self, a: u64, c: u64, b: u64) -> u64 {
        self.reduce_u128(a as u128 + c as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add_u(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn neg_u(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow_u(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_u(acc, a);
            }
            a = self.mul_u(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv_u(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow_u(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits in u64")
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> BigInt {
        if a > self.p / 2 {
            BigInt::from(a) - BigInt::from(self.p)
        } else {
            BigInt::from(a)
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_u(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add_u(*a, self.neg_u(*b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_u(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.neg_u(*a)
    }
    fn inv(&self, a: &u64) -> u64 {
        self.inv_u(*a)
    }
    fn from_rat(&self, q: &BigRational) -> Option<u64> {
        let den = self.from_bigint(q.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul_u(self.from_bigint(q.numer()), self.inv_u(den)))
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes used for multi-modular lifting: the default Mersenne prime followed
/// by the largest primes below `2^62`, descending.
pub fn lifting_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = vec![MERSENNE_61];
        let mut n = (1u64 << 62) - 1;
        while out.len() < 400 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Rational number `r/s` with `r ≡ s·a (mod m)`, `|r|, |s| ≤ sqrt(m/2)`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    let q = BigRational::new(r1, s1);
    if q.denom().gcd(m) != BigInt::one() {
        return None;
    }
    Some(q)
}
