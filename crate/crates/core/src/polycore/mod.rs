//! Exact homogeneous polynomials in `x, y, z` and their text form.

mod monomial;
mod parse;
mod poly;
mod reduced;

pub use monomial::{basis_len, monomial_basis, Monomial};
pub use parse::parse;
pub use poly::{rat, HomPoly, Rat};
pub use reduced::{is_reduced, restrict_to_line, squarefree_on, Reducedness, WitnessLine, REDUCEDNESS_LINES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not homogeneous: found a term of degree {found}, expected {expected}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
}
