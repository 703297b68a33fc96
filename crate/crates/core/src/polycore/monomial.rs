use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `x^a y^b z^c`.
///
/// The `Ord` impl is graded reverse lexicographic with `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { a, b, c }
    }

    /// The variable with index 0, 1 or 2 (x, y, z).
    pub fn var(i: usize) -> Self {
        match i {
            0 => Monomial::new(1, 0, 0),
            1 => Monomial::new(0, 1, 0),
            2 => Monomial::new(0, 0, 1),
            _ => panic!("variable index {i} out of range"),
        }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn exponent(&self, i: usize) -> u32 {
        match i {
            0 => self.a,
            1 => self.b,
            2 => self.c,
            _ => panic!("variable index {i} out of range"),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    /// Position of this monomial in [`monomial_basis`] of its own degree.
    pub fn index(&self) -> usize {
        basis_index(self.degree() as usize, self.b as usize, self.c as usize)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.c.cmp(&self.c)).then_with(|| other.b.cmp(&self.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        for (name, e) in [("x", self.a), ("y", self.b), ("z", self.c)] {
            match e {
                0 => {}
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// `dim S_k = C(k+2, 2)`.
pub fn basis_len(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

#[inline]
pub(crate) fn basis_index(k: usize, b: usize, c: usize) -> usize {
    c * (k + 1) - c * (c.saturating_sub(1)) / 2 + b
}

/// All monomials of degree `k`, in descending graded reverse lexicographic order.
pub fn monomial_basis(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(k as usize));
    for c in 0..=k {
        for b in 0..=(k - c) {
            out.push(Monomial::new(k - b - c, b, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_lengths() {
        assert_eq!(monomial_basis(0), vec![Monomial::ONE]);
        assert_eq!(monomial_basis(2).len(), 6);
        assert_eq!(monomial_basis(10).len(), 66);
    }

    #[test]
    fn basis_is_descending_grevlex_and_indexed() {
        for k in 0..9 {
            let basis = monomial_basis(k);
            for w in basis.windows(2) {
                assert!(w[0] > w[1], "{} !> {}", w[0], w[1]);
            }
            for (i, m) in basis.iter().enumerate() {
                assert_eq!(m.index(), i);
            }
        }
        let names: Vec<String> = monomial_basis(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x^2", "xy", "y^2", "xz", "yz", "z^2"]);
    }
}
