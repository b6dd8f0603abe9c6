//! Text grammar for polynomials in `t`.
//!
//! ```text
//! poly := ['+' | '-'] term (('+' | '-') term)*
//! term := integer ['*'] ['t' ['^' integer]] | 't' ['^' integer]
//! ```
//!
//! Whitespace is ignored everywhere. Error positions are byte offsets into the
//! original input.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial at position {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, idx: 0, len: src.len(), _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn bump(&mut self) {
        self.idx += 1;
    }

    fn err(&self, message: impl Into<String>) -> ParsePolyError {
        ParsePolyError { position: self.pos(), message: message.into() }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }
}

pub fn parse_poly(src: &str) -> Result<IntPoly, ParsePolyError> {
    let mut cur = Cursor::new(src);
    if cur.peek().is_none() {
        return Err(cur.err("empty input"));
    }
    let mut acc: Vec<BigInt> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            Some(c) => return Err(cur.err(format!("expected '+' or '-', found '{c}'"))),
            None => unreachable!(),
        };
        first = false;
        let (coeff, exp) = parse_term(&mut cur)?;
        let coeff = if negative { -coeff } else { coeff };
        if acc.len() <= exp {
            acc.resize(exp + 1, BigInt::default());
        }
        acc[exp] += coeff;
    }
    Ok(IntPoly::from_coeffs(acc))
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(BigInt, usize), ParsePolyError> {
    let coeff = cur.digits().map(|d| d.parse::<BigInt>().expect("ascii digits"));
    let has_star = cur.peek() == Some('*');
    if has_star {
        if coeff.is_none() {
            return Err(cur.err("'*' must follow a coefficient"));
        }
        cur.bump();
    }
    if cur.peek() != Some('t') {
        if has_star {
            return Err(cur.err("expected 't' after '*'"));
        }
        return match coeff {
            Some(c) => Ok((c, 0)),
            None => Err(cur.err(match cur.peek() {
                Some(c) => format!("unexpected character '{c}'"),
                None => "expected a term".to_string(),
            })),
        };
    }
    cur.bump();
    let exp = if cur.peek() == Some('^') {
        cur.bump();
        let at = cur.pos();
        let d = cur.digits().ok_or_else(|| cur.err("expected exponent after '^'"))?;
        d.parse::<usize>().map_err(|_| ParsePolyError { position: at, message: "exponent too large".into() })?
    } else {
        1
    };
    Ok((coeff.unwrap_or_else(BigInt::one), exp))
}

impl FromStr for IntPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}
