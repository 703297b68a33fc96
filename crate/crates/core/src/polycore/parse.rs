//! Recursive-descent parser for polynomial expressions in `x, y, z`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := coeff | var ['^' exp] | '(' expr ')' ['^' exp]
//! coeff  := int ['/' int]
//! exp    := int | '{' int '}'
//! ```
//!
//! Implicit multiplication is accepted when the left factor ends in a variable,
//! a closing parenthesis or a coefficient and the right factor starts with a
//! variable or an opening parenthesis. Two adjacent coefficients (`2 3`) are an
//! error.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::{HomPoly, Rat};
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'x' => Tok::Var(0),
            b'y' => Tok::Var(1),
            b'z' => Tok::Var(2),
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            _ => {
                let c = text[i..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax { pos: i, msg: format!("unexpected character '{c}'") });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// Mixed-degree polynomial used while parsing.
type Sparse = BTreeMap<Monomial, Rat>;

fn constant(c: Rat) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert(Monomial::ONE, c);
    }
    s
}

fn add_into(acc: &mut Sparse, other: Sparse, sign: bool) {
    for (m, c) in other {
        let e = acc.entry(m).or_insert_with(Rat::zero);
        if sign {
            *e += c;
        } else {
            *e -= c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            *out.entry(m1.mul(m2)).or_insert_with(Rat::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn pow(base: &Sparse, e: u32) -> Sparse {
    let mut acc = constant(Rat::one());
    for _ in 0..e {
        acc = mul(&acc, base);
    }
    acc
}

/// Which kind of token a factor ended with; governs implicit multiplication.
#[derive(Clone, Copy, PartialEq)]
enum FactorEnd {
    Coefficient,
    VarOrParen,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Sparse, PolyError> {
        let mut acc = Sparse::new();
        let mut sign = true;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                sign = false;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, t, sign);
            match self.peek() {
                Some(Tok::Plus) => sign = true,
                Some(Tok::Minus) => sign = false,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Sparse, PolyError> {
        let (mut acc, mut last) = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let (f, end) = self.factor()?;
                    acc = mul(&acc, &f);
                    last = end;
                }
                Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let (f, end) = self.factor()?;
                    acc = mul(&acc, &f);
                    last = end;
                }
                Some(Tok::Int(_)) => {
                    let what = if last == FactorEnd::Coefficient { "coefficient" } else { "factor" };
                    return self.err(format!("a number cannot follow a {what} without an operator"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        let braced = matches!(self.peek(), Some(Tok::LBrace));
        if braced {
            self.bump();
        }
        let e = match self.bump() {
            Some(Tok::Int(n)) => match u32::try_from(n) {
                Ok(e) if e <= 1000 => e,
                _ => {
                    self.pos -= 1;
                    return self.err("exponent too large");
                }
            },
            _ => {
                self.pos -= 1;
                return self.err("expected a non-negative integer exponent");
            }
        };
        if braced {
            match self.bump() {
                Some(Tok::RBrace) => {}
                _ => {
                    self.pos -= 1;
                    return self.err("expected '}'");
                }
            }
        }
        Ok(e)
    }

    fn maybe_power(&mut self, base: Sparse) -> Result<Sparse, PolyError> {
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = self.exponent()?;
            Ok(pow(&base, e))
        } else {
            Ok(base)
        }
    }

    fn factor(&mut self) -> Result<(Sparse, FactorEnd), PolyError> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut c = Rat::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => c /= Rat::from_integer(d),
                        Some(Tok::Int(_)) => {
                            self.pos -= 1;
                            return self.err("division by zero");
                        }
                        _ => {
                            self.pos -= 1;
                            return self.err("expected an integer denominator");
                        }
                    }
                }
                if matches!(self.peek(), Some(Tok::Caret)) {
                    return self.err("exponents apply only to variables and parenthesized groups");
                }
                Ok((constant(c), FactorEnd::Coefficient))
            }
            Some(Tok::Var(i)) => {
                let base = Sparse::from([(Monomial::var(i), Rat::one())]);
                Ok((self.maybe_power(base)?, FactorEnd::VarOrParen))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => {}
                    _ => {
                        self.pos -= 1;
                        return self.err("expected ')'");
                    }
                }
                Ok((self.maybe_power(inner)?, FactorEnd::VarOrParen))
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a number, a variable or '('")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and fully expands `text`, then checks that the result is a nonzero
/// homogeneous polynomial.
pub fn parse(text: &str) -> Result<HomPoly, PolyError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(PolyError::Syntax { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let expanded = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected token");
    }
    let Some(first) = expanded.keys().next_back() else {
        return Err(PolyError::ZeroPolynomial);
    };
    let degree = first.degree();
    if let Some(bad) = expanded.keys().find(|m| m.degree() != degree) {
        return Err(PolyError::NotHomogeneous { expected: degree, found: bad.degree() });
    }
    HomPoly::from_terms(degree, expanded)
}
