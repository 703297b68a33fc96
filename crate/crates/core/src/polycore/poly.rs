use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::PolyError;

/// Exact rational coefficient. `BigRational` keeps itself in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Homogeneous polynomial in `x, y, z` over the rationals.
///
/// Invariants: every stored coefficient is nonzero and every stored monomial has
/// degree `self.degree`. The zero polynomial keeps its degree but has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl HomPoly {
    pub fn zero(degree: u32) -> Self {
        HomPoly { degree, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE, Rat::one())
    }

    /// The coordinate `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), Rat::one())
    }

    pub fn monomial(m: Monomial, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        HomPoly { degree: m.degree(), terms }
    }

    /// Builds a polynomial of the given degree, summing repeated monomials.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous { expected: degree, found: m.degree() });
            }
            *map.entry(m).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomPoly { degree, terms: map })
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        Self::from_terms(
            1,
            [(Monomial::new(1, 0, 0), rat(a)), (Monomial::new(0, 1, 0), rat(b)), (Monomial::new(0, 0, 1), rat(c))],
        )
        .expect("linear terms have degree 1")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter().rev()
    }

    /// Re-scans all stored monomials; true when the homogeneity invariant holds.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == self.degree)
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(*m).or_insert_with(Rat::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomPoly { degree: self.degree, terms })
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        self.add(&-other)
    }

    pub fn scale(&self, s: &Rat) -> HomPoly {
        if s.is_zero() {
            return HomPoly::zero(self.degree);
        }
        HomPoly { degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly { degree: self.degree + other.degree, terms }
    }

    pub fn pow(&self, n: u32) -> HomPoly {
        let mut acc = HomPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, i: usize) -> HomPoly {
        let degree = self.degree.saturating_sub(1);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            match i {
                0 => dm.a -= 1,
                1 => dm.b -= 1,
                _ => dm.c -= 1,
            }
            terms.insert(dm, c * rat(e as i64));
        }
        HomPoly { degree, terms }
    }

    /// `(f_x, f_y, f_z)`.
    pub fn partials(&self) -> [HomPoly; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    pub fn eval(&self, point: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t *= num_traits::pow(p.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Scalar multiple with coprime integer coefficients and positive leading
    /// coefficient. Defines the same curve.
    pub fn primitive(&self) -> HomPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let lead = self.terms.iter().next_back().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut s = Rat::new(den, num);
        if lead {
            s = -s;
        }
        self.scale(&s)
    }

    /// Integer coefficients of [`HomPoly::primitive`], in descending term order.
    pub fn integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        self.primitive().terms().map(|(m, c)| (*m, c.to_integer())).collect()
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;
    fn mul(self, rhs: &HomPoly) -> HomPoly {
        HomPoly::mul(self, rhs)
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        HomPoly { degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

/// Canonical text: descending monomial order, integer coefficients printed bare,
/// other rationals as `p/q*monomial`. Parses back to the same polynomial.
impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = m.degree() == 0;
            if abs.is_integer() {
                if !abs.is_one() || constant {
                    write!(f, "{}", abs.numer())?;
                }
            } else {
                write!(f, "{}/{}", abs.numer(), abs.denom())?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            if !constant {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}
