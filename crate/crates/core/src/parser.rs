//! Textual germ expressions.
//!
//! The grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := uint | 'i' | 'x' | 'y' | '(' expr ')' | '-' factor
//! ```
//!
//! Implicit multiplication is rejected (`2x` is a syntax error) with one
//! deliberate exception: a numeric literal directly followed by `i` (as in
//! `2i` or `2/3 i`) multiplies, so that formatted coefficients like
//! `(1/3+2/3 i)` re-parse.  Division is only defined by nonzero constants.
//! Exponents must be non-negative integer literals.
//!
//! [`format_poly`] is the inverse direction: a deterministic canonical
//! rendering with terms sorted by ascending total degree (then descending
//! `x`-degree), real coefficients bare, non-real coefficients parenthesized.
//! `parse_poly(format_poly(p))` reproduces `p` exactly.

use crate::algebra::{BivariatePoly, GaussianRational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Y,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let text = &src[start..pos];
                let n: BigInt = text.parse().expect("digit run parses as integer");
                out.push(Spanned { tok: Tok::Num(n), pos: start });
            }
            b'+' => {
                out.push(Spanned { tok: Tok::Plus, pos });
                pos += 1;
            }
            b'-' => {
                out.push(Spanned { tok: Tok::Minus, pos });
                pos += 1;
            }
            b'*' => {
                out.push(Spanned { tok: Tok::Star, pos });
                pos += 1;
            }
            b'/' => {
                out.push(Spanned { tok: Tok::Slash, pos });
                pos += 1;
            }
            b'^' => {
                out.push(Spanned { tok: Tok::Caret, pos });
                pos += 1;
            }
            b'(' => {
                out.push(Spanned { tok: Tok::LParen, pos });
                pos += 1;
            }
            b')' => {
                out.push(Spanned { tok: Tok::RParen, pos });
                pos += 1;
            }
            _ if b.is_ascii_alphabetic() || b == b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                let name = &src[start..pos];
                let tok = match name {
                    "x" => Tok::X,
                    "y" => Tok::Y,
                    "i" => Tok::I,
                    _ => {
                        return Err(Error::UnknownIdentifier {
                            name: name.to_string(),
                            pos: start,
                        })
                    }
                };
                out.push(Spanned { tok, pos: start });
            }
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{}`", &src[pos..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn expr(&mut self) -> Result<BivariatePoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivariatePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.here();
                    self.next();
                    let d = self.factor()?;
                    acc = divide_by_constant(&acc, &d, pos)?;
                }
                // Narrow implicit product: a numeric literal directly
                // before `i`, so formatted coefficients re-parse.
                Some(Tok::I) if acc.total_degree() == Some(0) => {
                    self.next();
                    acc = acc.scale(&GaussianRational::i());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BivariatePoly> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek().map(|t| t.tok.clone()) {
            self.next();
            let pos = self.here();
            match self.next() {
                Some(Spanned { tok: Tok::Num(n), .. }) => {
                    let e = u32::try_from(&n).map_err(|_| Error::Syntax {
                        pos,
                        msg: "exponent too large".to_string(),
                    })?;
                    if e > 1 << 20 {
                        return Err(Error::Syntax { pos, msg: "exponent too large".to_string() });
                    }
                    Ok(base.pow(e))
                }
                _ => Err(Error::NonIntegerExponent { pos }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<BivariatePoly> {
        let pos = self.here();
        match self.next().map(|t| t.tok) {
            Some(Tok::Num(n)) => Ok(BivariatePoly::constant(GaussianRational::from_rational(
                BigRational::from_integer(n),
            ))),
            Some(Tok::I) => Ok(BivariatePoly::constant(GaussianRational::i())),
            Some(Tok::X) => Ok(BivariatePoly::x()),
            Some(Tok::Y) => Ok(BivariatePoly::y()),
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Spanned { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(t) => Err(Error::Syntax {
                        pos: t.pos,
                        msg: "expected `)`".to_string(),
                    }),
                    None => Err(Error::Syntax {
                        pos: self.end,
                        msg: "unclosed parenthesis".to_string(),
                    }),
                }
            }
            Some(_) => Err(Error::Syntax { pos, msg: "expected a value".to_string() }),
            None => Err(Error::Syntax { pos: self.end, msg: "unexpected end of input".to_string() }),
        }
    }
}

fn divide_by_constant(
    num: &BivariatePoly,
    den: &BivariatePoly,
    pos: usize,
) -> Result<BivariatePoly> {
    if den.is_zero() {
        return Err(Error::DivisionByZero { pos });
    }
    if den.total_degree() != Some(0) {
        return Err(Error::DivisionByPolynomial { pos });
    }
    Ok(num.scale(&den.coeff(0, 0).inv()))
}

/// Parse an expression into a fully expanded polynomial.
pub fn parse_poly(src: &str) -> Result<BivariatePoly> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, at: 0, end: src.len() };
    let poly = p.expr()?;
    match p.peek() {
        None => Ok(poly),
        Some(t) => Err(Error::Syntax {
            pos: t.pos,
            msg: "unexpected trailing input".to_string(),
        }),
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render one monomial `x^i y^j` (empty for the constant term).
fn format_monomial(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    if i == 1 {
        parts.push("x".to_string());
    } else if i > 1 {
        parts.push(format!("x^{}", i));
    }
    if j == 1 {
        parts.push("y".to_string());
    } else if j > 1 {
        parts.push(format!("y^{}", j));
    }
    parts.join("*")
}

/// Deterministic canonical rendering; see the module docs for the rules.
pub fn format_poly(p: &BivariatePoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut keys: Vec<(u32, u32)> = p.terms().map(|(&k, _)| k).collect();
    // Ascending total degree, then descending x-degree.
    keys.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
    let mut out = String::new();
    for (n, &(i, j)) in keys.iter().enumerate() {
        let c = p.coeff(i, j);
        let mono = format_monomial(i, j);
        // (sign, unsigned body) for the join.
        let (neg, body) = if c.is_real() {
            let r = c.re();
            let mag = format_rational(&r.clone().into_owned_abs());
            let text = if mono.is_empty() {
                mag
            } else if r.clone().into_owned_abs().is_one() {
                mono.clone()
            } else {
                format!("{}*{}", mag, mono)
            };
            (r < &BigRational::from_integer(BigInt::from(0)), text)
        } else {
            let coeff = format!("({})", c.to_display_string());
            let text = if mono.is_empty() { coeff } else { format!("{}*{}", coeff, mono) };
            (false, text)
        };
        if n == 0 {
            if neg {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

/// Absolute value helper for rationals (`BigRational::abs` without the
/// `Signed` import noise at call sites).
trait IntoOwnedAbs {
    fn into_owned_abs(self) -> BigRational;
}

impl IntoOwnedAbs for BigRational {
    fn into_owned_abs(self) -> BigRational {
        use num_traits::Signed;
        self.abs()
    }
}
