//! Recursive-descent parser for the polynomial input language.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' INTEGER)?
//! atom     := INTEGER | VARIABLE | '(' expr ')'
//! VARIABLE := 'x' DIGITS
//! ```
//!
//! Whitespace is ignored. There is no implicit multiplication: `2x0` and
//! `x0x1` are syntax errors. A chained exponent `a^2^3` must be written with
//! parentheses.

use num_bigint::BigInt;

use super::{MultiPoly, PolyError};

pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt, String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value = digits.parse::<BigInt>().expect("ascii digits");
                out.push((Tok::Int(value, digits.to_string()), start));
                continue;
            }
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(syntax(start, "expected a variable index after 'x'"));
                }
                let index = text[digits_start..i]
                    .parse::<usize>()
                    .map_err(|_| syntax(start, "variable index too large"))?;
                out.push((Tok::Var(index), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            let exponent = match self.bump() {
                Some((Tok::Int(_, digits), _)) => match digits.parse::<u32>() {
                    Ok(e) if e <= MAX_EXPONENT => e,
                    _ => {
                        return Err(PolyError::ExponentTooLarge {
                            exponent: digits,
                            position: at,
                        })
                    }
                },
                _ => return Err(syntax(at, "exponent must be a non-negative integer literal")),
            };
            if let Some(Tok::Caret) = self.peek() {
                return Err(syntax(
                    self.offset(),
                    "chained exponents need parentheses, e.g. (a^2)^3",
                ));
            }
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        let at = self.offset();
        match self.bump() {
            Some((Tok::Int(v, _), _)) => Ok(MultiPoly::constant(self.nvars, v)),
            Some((Tok::Var(index), position)) => {
                if index >= self.nvars {
                    Err(PolyError::UnknownVariable {
                        index,
                        nvars: self.nvars,
                        position,
                    })
                } else {
                    Ok(MultiPoly::variable(self.nvars, index))
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => Err(syntax(self.offset_before(), "expected ')'")),
                }
            }
            Some(_) => Err(syntax(at, "expected a number, variable or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }

    fn offset_before(&self) -> usize {
        self.toks.get(self.pos - 1).map_or(self.end, |&(_, o)| o)
    }
}

/// Parses `text` into normal form over `nvars` coordinates `x0 .. x{nvars-1}`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly, PolyError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        nvars,
    };
    let poly = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let at = parser.offset();
        return Err(syntax(
            at,
            "expected an operator (implicit multiplication is not allowed)",
        ));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_cubic_shape() {
        let f = parse_poly("x0^3 + x1^3 + x2^3 + x3^3", 4).unwrap();
        assert_eq!(f.terms().len(), 4);
        assert_eq!(f.is_homogeneous().unwrap(), (true, Some(3)));
    }

    #[test]
    fn binomial_identity_collapses() {
        let f = parse_poly("(x0 + x1)^2 - x0^2 - 2*x0*x1", 2).unwrap();
        assert_eq!(f, parse_poly("x1^2", 2).unwrap());
        assert_eq!(f.terms().len(), 1);
    }

    #[test]
    fn quadric_surface() {
        let f = parse_poly("x0*x3 - x1*x2", 4).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(f.total_degree(), Some(2));
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than unary minus, which binds tighter than *
        assert_eq!(parse_poly("-x0^2", 1).unwrap().to_string(), "-x0^2");
        assert_eq!(parse_poly("-2^2", 1).unwrap().to_string(), "-4");
        assert_eq!(parse_poly("2*3+4", 1).unwrap().to_string(), "10");
        assert_eq!(parse_poly("2-3-4", 1).unwrap().to_string(), "-5");
        assert_eq!(parse_poly("--x0", 1).unwrap().to_string(), "x0");
        assert_eq!(parse_poly(" x0 *\n x1 ", 2).unwrap().to_string(), "x0*x1");
        assert_eq!(parse_poly("(x0-x1)^0", 2).unwrap().to_string(), "1");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(matches!(
            parse_poly("2x0", 2),
            Err(PolyError::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            parse_poly("x0x1", 2),
            Err(PolyError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("(x0)(x1)", 2),
            Err(PolyError::Syntax { position: 4, .. })
        ));
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_poly("x0 + x5", 3).unwrap_err(),
            PolyError::UnknownVariable {
                index: 5,
                nvars: 3,
                position: 5
            }
        );
        assert!(matches!(parse_poly("x0 +", 1), Err(PolyError::Syntax { position: 4, .. })));
        assert!(matches!(parse_poly("(x0 + x1", 2), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x0 ^ x1", 2), Err(PolyError::Syntax { position: 5, .. })));
        assert!(matches!(parse_poly("x0^2^3", 1), Err(PolyError::Syntax { position: 4, .. })));
        assert!(matches!(parse_poly("x0 $ 1", 1), Err(PolyError::Syntax { position: 3, .. })));
        assert!(matches!(parse_poly("x", 1), Err(PolyError::Syntax { position: 0, .. })));
        assert!(matches!(parse_poly("", 1), Err(PolyError::Syntax { position: 0, .. })));
        assert!(matches!(
            parse_poly("x0^1000", 1),
            Err(PolyError::ExponentTooLarge { position: 3, .. })
        ));
        assert!(matches!(parse_poly("x0^-1", 1), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn big_coefficients_survive() {
        let f = parse_poly("123456789012345678901234567890*x0", 1).unwrap();
        assert_eq!(f.to_string(), "123456789012345678901234567890*x0");
    }
}
