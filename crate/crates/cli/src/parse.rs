//! Text syntax for factored plane curves.
//!
//! A curve is a product of factors. Each factor is a parenthesized
//! polynomial with an optional `^k` multiplicity, or a bare atom such as `z`,
//! `x^2` or a rational constant. Inside parentheses the usual arithmetic is
//! available over `x`, `y`, `z` with integer or rational coefficients,
//! `^` for powers and implicit multiplication (`3x^2y`, `2(x + y)`). Input
//! with a top-level sum, like `x^2 - y*z`, is read as a single factor.

use std::fmt;

use milnor_core::curve::Curve;
use milnor_core::exact::{BigInt, Error as CoreError, MultiPoly, Rational};
use num_traits::{One, Zero};

/// Position-annotated failure to read a curve.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("factor at line {line}, column {column} is not homogeneous: {factor}")]
    Inhomogeneous { line: usize, column: usize, factor: String },
    #[error("invalid curve: {0}")]
    Curve(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Var(i) => write!(f, "variable {}", ["x", "y", "z"][*i]),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    /// Byte offsets into the source.
    start: usize,
    end: usize,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let (line, column) = line_col(src, offset);
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            let n: BigInt = src[i..end].parse().expect("ascii digits");
            out.push(Token {
                tok: Tok::Num(n),
                start: i,
                end,
            });
            continue;
        }
        let tok = match ch {
            'x' | 'X' => Tok::Var(0),
            'y' | 'Y' => Tok::Var(1),
            'z' | 'Z' => Tok::Var(2),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(src, i, format!("unexpected character {other:?}"))),
        };
        out.push(Token {
            tok,
            start: i,
            end: i + ch.len_utf8(),
        });
        it.next();
    }
    out.push(Token {
        tok: Tok::End,
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

/// A top-level factor with its source span.
struct Factor {
    poly: MultiPoly,
    multiplicity: u32,
    start: usize,
    end: usize,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].start
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, what: &str) -> ParseError {
        syntax(
            self.src,
            self.offset(),
            format!("expected {what}, found {}", self.peek()),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(what))
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Var(_) | Tok::LParen)
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        let at = self.offset();
        match self.bump().tok {
            Tok::Num(n) => u32::try_from(&n)
                .ok()
                .filter(|&e| e <= 1000)
                .map(Some)
                .ok_or_else(|| syntax(self.src, at, format!("exponent {n} is too large"))),
            other => Err(syntax(self.src, at, format!("expected an exponent, found {other}"))),
        }
    }

    /// sum := ('+' | '-')? product (('+' | '-') product)*
    fn sum(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = MultiPoly::zero(3);
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let term = self.product()?;
            acc = if negate { acc.sub_ref(&term) } else { acc.add_ref(&term) };
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    /// product := power (('*' | '/' | juxtaposition) power)*
    fn product(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul_ref(&self.power()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.power()?;
                    let c = constant_value(&d)
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| syntax(self.src, at, "division only by a nonzero constant"))?;
                    acc = acc.scale(&c.recip());
                }
                _ if self.starts_operand() => acc = acc.mul_ref(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    /// power := primary ('^' uint)?
    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.primary()?;
        Ok(match self.exponent()? {
            Some(e) => base.pow(e),
            None => base,
        })
    }

    fn primary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(MultiPoly::constant(3, Rational::from_integer(n)))
            }
            Tok::Var(i) => {
                self.bump();
                Ok(MultiPoly::var(i, 3))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                Ok(self.power()?.neg_ref())
            }
            _ => Err(self.error_here("a number, a variable or '('")),
        }
    }

    /// factor := '(' sum ')' ('^' uint)? | primary ('^' uint)?
    fn factor(&mut self) -> Result<Factor, ParseError> {
        let start = self.offset();
        let poly = if *self.peek() == Tok::LParen {
            self.bump();
            let inner = self.sum()?;
            self.expect(Tok::RParen, "')'")?;
            inner
        } else {
            self.primary()?
        };
        let multiplicity = self.exponent()?.unwrap_or(1);
        let end = self.toks[self.pos.saturating_sub(1)].end;
        Ok(Factor {
            poly,
            multiplicity,
            start,
            end,
        })
    }

    /// expression := factor ('*'? factor)*
    fn factors(&mut self) -> Result<Vec<Factor>, ParseError> {
        let mut out = vec![self.factor()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    out.push(self.factor()?);
                }
                _ if self.starts_operand() => out.push(self.factor()?),
                _ => return Ok(out),
            }
        }
    }
}

fn constant_value(p: &MultiPoly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.terms().count() == 1 {
        let (m, c) = p.terms().next()?;
        if m.iter().all(|&e| e == 0) {
            return Some(c.clone());
        }
    }
    None
}

fn is_top_level_sum(toks: &[Token]) -> bool {
    let mut depth = 0i32;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            // a leading sign alone does not make a sum
            Tok::Plus | Tok::Minus if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Parses a factored curve, checking that every factor is homogeneous.
/// Constant factors are absorbed into the first factor of multiplicity one.
pub fn parse_curve(src: &str) -> Result<Curve, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let mut scalar = Rational::one();
    let factors = if is_top_level_sum(&p.toks) {
        let start = p.offset();
        let poly = p.sum()?;
        let end = p.toks[p.pos.saturating_sub(1)].end;
        vec![Factor {
            poly,
            multiplicity: 1,
            start,
            end,
        }]
    } else {
        if *p.peek() == Tok::Minus {
            p.bump();
            scalar = -scalar;
        }
        p.factors()?
    };
    if *p.peek() != Tok::End {
        return Err(p.error_here("'*' or end of input"));
    }

    let mut kept = Vec::new();
    for f in factors {
        match constant_value(&f.poly) {
            Some(c) if c.is_zero() => return Err(syntax(src, f.start, "zero factor")),
            Some(c) => scalar *= num_traits::pow(c, f.multiplicity as usize),
            None => kept.push(f),
        }
    }
    if kept.is_empty() {
        return Err(syntax(src, 0, "the curve has no non-constant factor"));
    }
    if !scalar.is_one() {
        let target = kept
            .iter_mut()
            .find(|f| f.multiplicity == 1)
            .ok_or_else(|| syntax(src, 0, "a constant cannot multiply only repeated factors"))?;
        target.poly = target.poly.scale(&scalar);
    }
    for f in &kept {
        if f.poly.homogeneous_degree().is_none() {
            let (line, column) = line_col(src, f.start);
            return Err(ParseError::Inhomogeneous {
                line,
                column,
                factor: src[f.start..f.end].trim().to_string(),
            });
        }
    }
    Curve::from_factors(kept.into_iter().map(|f| (f.poly, f.multiplicity)).collect())
        .map_err(|e: CoreError| ParseError::Curve(e.to_string()))
}

/// Parses a comma-separated list of rationals such as `1,-2/3,5`.
pub fn parse_rationals(src: &str) -> Result<Vec<Rational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let t = part.trim();
        let lead = part.len() - part.trim_start().len();
        let value = t
            .parse::<Rational>()
            .map_err(|_| syntax(src, offset + lead, format!("not a rational number: {t:?}")))?;
        out.push(value);
        offset += part.len() + 1;
    }
    Ok(out)
}
