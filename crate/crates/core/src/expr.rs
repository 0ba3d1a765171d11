//! Multivector expressions: parser and canonical printer.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := literal | '(' expr ')'
//! literal := number ['/' number] ['s3'] [blade]
//!          | 's3' [blade]
//!          | blade
//! blade   := e1 | e2 | e3 | e12 | e23 | e13 | e123
//! ```
//!
//! A literal such as `1/2 s3 e13` is a field scalar times a basis blade.
//! `*` is the session product, so `2 * e1` and `2 e1` differ for products
//! without a unit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::{Blade, Multivector, Signature};
use crate::error::{Error, ParseError, Result};
use crate::products::Product;
use crate::scalar::QS3Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MvExpression {
    /// `coefficient · blade`.
    Literal { coef: QS3Scalar, blade: Blade },
    Neg(Box<MvExpression>),
    Add(Box<MvExpression>, Box<MvExpression>),
    Sub(Box<MvExpression>, Box<MvExpression>),
    Mul(Box<MvExpression>, Box<MvExpression>),
}

impl MvExpression {
    pub fn eval(&self, sig: Signature, product: &Product) -> Result<Multivector> {
        Ok(match self {
            MvExpression::Literal { coef, blade } => {
                Multivector::blade(sig, *blade).scale(coef)
            }
            MvExpression::Neg(e) => -e.eval(sig, product)?,
            MvExpression::Add(a, b) => a.eval(sig, product)? + b.eval(sig, product)?,
            MvExpression::Sub(a, b) => a.eval(sig, product)? - b.eval(sig, product)?,
            MvExpression::Mul(a, b) => {
                product.apply(&a.eval(sig, product)?, &b.eval(sig, product)?)?
            }
        })
    }

    fn has_blade(&self) -> bool {
        match self {
            MvExpression::Literal { blade, coef } => *blade != Blade::SCALAR && !coef.is_zero(),
            MvExpression::Neg(e) => e.has_blade(),
            MvExpression::Add(a, b) | MvExpression::Sub(a, b) | MvExpression::Mul(a, b) => {
                a.has_blade() || b.has_blade()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Slash,
    S3,
    Blade(Blade),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn err(message: impl Into<String>, position: usize) -> ParseError {
    ParseError {
        message: message.into(),
        position,
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("ascii digits")), pos));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "s3" {
                out.push((Tok::S3, pos));
            } else if word.starts_with('e') {
                match Blade::from_name(&word) {
                    Some(b) if b != Blade::SCALAR => out.push((Tok::Blade(b), pos)),
                    _ => return Err(err("unknown blade", pos)),
                }
            } else {
                return Err(err(format!("unknown symbol '{word}'"), pos));
            }
        } else {
            return Err(err(format!("unexpected character '{c}'"), pos));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<MvExpression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = MvExpression::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = MvExpression::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<MvExpression, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = MvExpression::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<MvExpression, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(MvExpression::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<MvExpression, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err("unbalanced parentheses", pos)),
                }
            }
            Some(Tok::Num(_)) | Some(Tok::S3) | Some(Tok::Blade(_)) => self.literal(),
            Some(Tok::RParen) => Err(err("unbalanced parentheses", pos)),
            Some(_) => Err(err("expected a term", pos)),
            None => Err(err("unexpected end of input", pos)),
        }
    }

    fn literal(&mut self) -> Result<MvExpression, ParseError> {
        let mut coef = BigRational::one();
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.bump();
            coef = BigRational::from_integer(n);
            if let Some(Tok::Slash) = self.peek() {
                let slash_pos = self.pos();
                self.bump();
                match self.bump() {
                    Some(Tok::Num(d)) if d.is_zero() => {
                        return Err(err("zero denominator", slash_pos))
                    }
                    Some(Tok::Num(d)) => coef /= BigRational::from_integer(d),
                    _ => return Err(err("expected denominator", slash_pos)),
                }
            }
        }
        let mut value = QS3Scalar::from(coef.clone());
        if let Some(Tok::S3) = self.peek() {
            self.bump();
            value = QS3Scalar::new(BigRational::zero(), coef);
        }
        let mut blade = Blade::SCALAR;
        if let Some(Tok::Blade(b)) = self.peek() {
            blade = *b;
            self.bump();
        }
        Ok(MvExpression::Literal { coef: value, blade })
    }
}

pub fn parse_expression(text: &str) -> Result<MvExpression, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, at: 0, end };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        let pos = p.pos();
        let msg = match p.peek() {
            Some(Tok::RParen) => "unbalanced parentheses",
            _ => "unexpected token",
        };
        return Err(err(msg, pos));
    }
    Ok(e)
}

/// Parses and evaluates `text`, with `*` bound to `product`.
pub fn parse(text: &str, sig: Signature, product: &Product) -> Result<Multivector> {
    parse_expression(text)?.eval(sig, product)
}

/// Parses a blade-free scalar expression such as `-1/2 + 1/2 s3`.
pub fn parse_scalar(text: &str) -> Result<QS3Scalar> {
    let e = parse_expression(text)?;
    if e.has_blade() {
        return Err(Error::Invalid(format!("'{text}' is not a scalar")));
    }
    let sig = Signature::new(3, 0)?;
    let v = e.eval(sig, &Product::standard(crate::products::ProductId::Clifford))?;
    Ok(v.scalar_part().clone())
}

fn push_term(out: &mut String, r: &BigRational, sqrt3: bool, blade: Blade) {
    use num_traits::Signed;
    if r.is_zero() {
        return;
    }
    let neg = r.is_negative();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mag = r.abs();
    let mut parts: Vec<String> = Vec::new();
    let is_unit = mag.is_one();
    if !is_unit || (!sqrt3 && blade == Blade::SCALAR) {
        if mag.denom().is_one() {
            parts.push(mag.numer().to_string());
        } else {
            parts.push(format!("{}/{}", mag.numer(), mag.denom()));
        }
    }
    if sqrt3 {
        parts.push("s3".into());
    }
    if blade != Blade::SCALAR {
        parts.push(blade.name().into());
    }
    out.push_str(&parts.join(" "));
}

/// Coordinate order, zero terms omitted, `0` for zero.
pub fn print_canonical(x: &Multivector) -> String {
    let mut out = String::new();
    for (i, c) in x.coords().iter().enumerate() {
        let blade = Blade::from_index(i);
        push_term(&mut out, c.rational_part(), false, blade);
        push_term(&mut out, c.sqrt3_part(), true, blade);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::ProductId;

    fn s30() -> Signature {
        Signature::new(3, 0).unwrap()
    }

    fn cl() -> Product {
        Product::standard(ProductId::Clifford)
    }

    #[test]
    fn blade_products_parse() {
        assert_eq!(
            parse("e1*e2", s30(), &cl()).unwrap(),
            Multivector::blade(s30(), Blade::E12)
        );
    }

    #[test]
    fn precedence_and_scalars() {
        let v = parse("-1/2 + 1/2 s3 * e3", s30(), &cl()).unwrap();
        let mut want = Multivector::scalar(s30(), QS3Scalar::frac(-1, 2));
        want.set_coord(6, QS3Scalar::from_parts(0, 1, 1, 2));
        assert_eq!(v, want);
        assert_eq!(
            parse("1 + 2 * 3", s30(), &cl()).unwrap(),
            Multivector::scalar(s30(), QS3Scalar::from_int(7))
        );
        assert_eq!(
            parse("1 - 2 - 3", s30(), &cl()).unwrap(),
            Multivector::scalar(s30(), QS3Scalar::from_int(-4))
        );
        assert_eq!(
            parse("-(1 + e1) * (1 - e1)", s30(), &cl()).unwrap(),
            Multivector::zero(s30())
        );
    }

    #[test]
    fn session_product_binds_star() {
        let dot = Product::standard(ProductId::Dot);
        assert_eq!(
            parse("e1*e1", s30(), &dot).unwrap(),
            -Multivector::one(s30())
        );
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_expression("e4").unwrap_err();
        assert_eq!(e.to_string(), "unknown blade at 1");
        let e = parse_expression("(1 + e1").unwrap_err();
        assert_eq!(e.message, "unbalanced parentheses");
        let e = parse_expression("1 + e1)").unwrap_err();
        assert_eq!((e.message.as_str(), e.position), ("unbalanced parentheses", 7));
        let e = parse_expression("1 $ 2").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(parse_expression("1/0").is_err());
        assert!(parse_expression("").is_err());
        assert!(parse_expression("x").is_err());
    }

    #[test]
    fn printing() {
        let sig = s30();
        let x = &Multivector::blade(sig, Blade::E12) + &Multivector::one(sig);
        assert_eq!(print_canonical(&x), "1 + e12");
        assert_eq!(print_canonical(&Multivector::zero(sig)), "0");
        let mut y = Multivector::one(sig);
        y.set_coord(1, QS3Scalar::from_int(2));
        y.set_coord(7, QS3Scalar::frac(-1, 2));
        assert_eq!(print_canonical(&y), "1 + 2 e12 - 1/2 e123");
        let z = Multivector::scalar(sig, QS3Scalar::from_parts(-1, 2, 1, 2));
        assert_eq!(print_canonical(&z), "-1/2 + 1/2 s3");
        let w = Multivector::blade(sig, Blade::E13).scale(&QS3Scalar::from_parts(1, 1, -1, 1));
        assert_eq!(print_canonical(&w), "e13 - s3 e13");
    }

    #[test]
    fn scalar_text() {
        assert_eq!(
            parse_scalar("-1/2 + 1/2 s3").unwrap(),
            QS3Scalar::from_parts(-1, 2, 1, 2)
        );
        assert!(parse_scalar("e1").is_err());
    }
}
