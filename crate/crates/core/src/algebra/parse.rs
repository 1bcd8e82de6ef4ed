//! Polynomial text format.
//!
//! Strict form: terms joined by `+`, each a coefficient optionally followed by
//! `*x<i>^<e>` factors (or factors alone), e.g. `2*x0^3*x1 + x2 + 1`.
//! Extension-field coefficients are bracketed coordinate lists `[c0,c1,...]`.
//! Whitespace is ignored.
//!
//! The expression form additionally accepts `-`, parenthesised sub-expressions,
//! products of arbitrary factors and powers of them, and expands everything.

use super::field::{FieldElement, FiniteField};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        let start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let (s, e) = digits(i);
                let v = text[s..e]
                    .parse::<u64>()
                    .map_err(|_| Error::parse(i, "integer out of range"))?;
                out.push((i, Tok::Int(v)));
                i = e;
                continue;
            }
            b'x' => {
                let (s, e) = digits(i + 1);
                if s == e {
                    return Err(Error::parse(i + 1, "expected variable index after 'x'"));
                }
                let v = text[s..e]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(s, "variable index out of range"))?;
                out.push((i, Tok::Var(v)));
                i = e;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(Error::parse(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: &'a FiniteField,
    nvars: usize,
    expressions: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::parse(at, format!("expected {what}, found {t:?}"))),
            None => Err(Error::parse(at, format!("expected {what}, found end of input"))),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(e)) => {
                u32::try_from(e).map_err(|_| Error::parse(at, "exponent too large"))
            }
            _ => Err(Error::parse(at, "expected exponent")),
        }
    }

    fn coefficient_list(&mut self) -> Result<FieldElement> {
        let open = self.offset();
        self.expect(Tok::LBracket, "'['")?;
        let mut coords = Vec::new();
        loop {
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(v)) => coords.push((v % self.field.characteristic() as u64) as u32),
                _ => return Err(Error::parse(at, "expected integer coordinate")),
            }
            let at = self.offset();
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => return Err(Error::parse(at, "expected ',' or ']'")),
            }
        }
        self.field.from_coords(&coords).map_err(|_| {
            Error::parse(
                open,
                format!(
                    "coefficient has {} coordinates, field degree is {}",
                    coords.len(),
                    self.field.degree()
                ),
            )
        })
    }

    fn constant(&self, c: FieldElement) -> MultiPoly {
        MultiPoly::constant(self.field, self.nvars, c)
    }

    fn sum(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        let mut negate = false;
        if self.expressions && self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let t = self.product()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) if self.expressions => {
                    self.bump();
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor(true)?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor(false)?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self, leading: bool) -> Result<MultiPoly> {
        let at = self.offset();
        let base = match self.bump() {
            Some(Tok::Int(v)) if leading || self.expressions => {
                self.constant(self.field.from_int((v % self.field.characteristic() as u64) as i64))
            }
            Some(Tok::LBracket) if leading || self.expressions => {
                self.pos -= 1;
                let c = self.coefficient_list()?;
                self.constant(c)
            }
            Some(Tok::Var(i)) => MultiPoly::var(self.field, self.nvars, i),
            Some(Tok::LParen) if self.expressions => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                inner
            }
            Some(Tok::LParen) => {
                return Err(Error::parse(at, "parentheses are not allowed in a term"));
            }
            Some(Tok::Int(_)) | Some(Tok::LBracket) => {
                return Err(Error::parse(at, "coefficient must come first in a term"));
            }
            Some(t) => return Err(Error::parse(at, format!("unexpected {t:?}"))),
            None => return Err(Error::parse(at, "unexpected end of input")),
        };
        if self.peek() == Some(&Tok::Caret) {
            let caret = self.offset();
            self.bump();
            let is_var = matches!(self.toks[self.pos - 2].1, Tok::Var(_));
            if !self.expressions && !is_var {
                return Err(Error::parse(caret, "only variables can be raised to a power"));
            }
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

fn parse_impl(
    text: &str,
    field: &FiniteField,
    nvars: Option<usize>,
    expressions: bool,
) -> Result<MultiPoly> {
    let toks = tokenize(text)?;
    let used = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let nvars = match nvars {
        Some(n) if n < used => {
            let at = toks
                .iter()
                .find(|(_, t)| matches!(t, Tok::Var(i) if *i >= n))
                .map(|(o, _)| *o)
                .unwrap_or(0);
            return Err(Error::parse(
                at,
                format!("variable x{} out of range for {n} variables", used - 1),
            ));
        }
        Some(n) => n,
        None => used,
    };
    if toks.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        field,
        nvars,
        expressions,
    };
    let out = p.sum()?;
    if p.pos < p.toks.len() {
        let at = p.offset();
        return Err(Error::parse(at, format!("unexpected {:?}", p.toks[p.pos].1)));
    }
    Ok(out)
}

/// Parses the strict sum-of-terms format. `nvars` defaults to one more than
/// the largest variable index used.
pub fn parse_polynomial(text: &str, field: &FiniteField, nvars: Option<usize>) -> Result<MultiPoly> {
    parse_impl(text, field, nvars, false)
}

/// Parses and expands expressions with products, parentheses and subtraction.
pub fn parse_expression(text: &str, field: &FiniteField, nvars: Option<usize>) -> Result<MultiPoly> {
    parse_impl(text, field, nvars, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_field;

    #[test]
    fn strict_format() {
        let f5 = make_field(5, 1).unwrap();
        let p = parse_polynomial("2*x0^3*x1 + x2 + 1", &f5, None).unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.to_string(), "2*x0^3*x1 + x2 + 1");
        let q = parse_polynomial(" 7 *x0*x0 ", &f5, Some(2)).unwrap();
        assert_eq!(q.to_string(), "2*x0^2");
    }

    #[test]
    fn extension_coefficients() {
        let f9 = make_field(3, 2).unwrap();
        let p = parse_polynomial("[1,2]*x0 + [0,1]", &f9, None).unwrap();
        assert_eq!(p.coefficient(&[0]), f9.generator());
        assert_eq!(p.to_string(), "[1,2]*x0 + [0,1]");
        let err = parse_polynomial("[1,2,1]*x0", &f9, None).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 0, .. }), "{err:?}");
    }

    #[test]
    fn strict_rejects_products_and_minus() {
        let f2 = make_field(2, 1).unwrap();
        assert!(matches!(
            parse_polynomial("x0*(x0+x1)", &f2, None),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 - x1", &f2, None),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 + ", &f2, None),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 + y", &f2, None),
            Err(Error::Parse { pos: 5, .. })
        ));
    }

    #[test]
    fn expressions_expand() {
        let f4 = make_field(2, 2).unwrap();
        let p = parse_expression("x0*x1*(x0+x1)", &f4, None).unwrap();
        assert_eq!(p.to_string(), "x0^2*x1 + x0*x1^2");
        let f7 = make_field(7, 1).unwrap();
        let q = parse_expression("-(x0 - 1)^2 + 2*x0", &f7, None).unwrap();
        assert_eq!(q.to_string(), "6*x0^2 + 4*x0 + 6");
    }

    #[test]
    fn variable_range() {
        let f3 = make_field(3, 1).unwrap();
        assert!(matches!(
            parse_polynomial("x0 + x4", &f3, Some(3)),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert_eq!(parse_polynomial("1", &f3, None).unwrap().nvars(), 0);
    }
}
