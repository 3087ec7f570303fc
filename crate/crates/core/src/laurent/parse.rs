//! Text syntax for Laurent polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ['^' exponent]
//! atom   := number | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Division and negative powers are allowed only when the divisor or base
//! is a monomial. Numbers may be integers or finite decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'x' => Tok::X,
            b'y' => Tok::Y,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let mut j = i;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let int = &s[i..j];
                let mut frac = "";
                if j < b.len() && b[j] == b'.' {
                    let k = j + 1;
                    j = k;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    frac = &s[k..j];
                }
                if int.is_empty() && frac.is_empty() {
                    return err(start, "malformed number");
                }
                let num: BigInt = format!("{int}{frac}").parse().unwrap();
                let den = BigInt::from(10u32).pow(frac.len() as u32);
                i = j;
                out.push((Tok::Num(BigRational::new(num, den)), start));
                continue;
            }
            _ => {
                let ch = s[i..].chars().next().unwrap();
                return err(start, format!("unexpected character {ch:?}"));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, s.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Tok::Plus => {
                self.bump();
                1
            }
            Tok::Minus => {
                self.bump();
                -1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(acc),
            };
            self.bump();
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let f = self.factor()?;
                    acc = &acc * &invert_monomial(&f, pos)?;
                }
                _ if self.starts_atom() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.pos();
        let k = self.exponent()?;
        if k.abs() > MAX_EXPONENT {
            return err(exp_pos, "exponent too large");
        }
        if k >= 0 {
            return Ok(base.pow(k as u32));
        }
        let inv = invert_monomial(&base, base_pos).map_err(|_| Error::Parse {
            pos: exp_pos,
            msg: "negative exponent on a non-monomial".into(),
        })?;
        Ok(inv.pow((-k) as u32))
    }

    fn exponent(&mut self) -> Result<i64> {
        let pos = self.pos();
        let value = match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                return Ok(-self.exponent()?);
            }
            Tok::Plus => {
                self.bump();
                return self.exponent();
            }
            Tok::Num(q) => {
                self.bump();
                q
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_rparen()?;
                if e.is_zero() {
                    BigRational::zero()
                } else if e.is_monomial() && e.min_exponent() == Some(LatticeVector::ZERO) {
                    e.coefficient(LatticeVector::ZERO)
                } else {
                    return err(pos, "exponent must be an integer constant");
                }
            }
            _ => return err(pos, "expected an exponent"),
        };
        if !value.is_integer() {
            return err(pos, "non-integer exponent");
        }
        value
            .to_integer()
            .to_i64()
            .ok_or(())
            .or_else(|_| err(pos, "exponent too large"))
    }

    fn expect_rparen(&mut self) -> Result<()> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), "expected ')'")
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(q) => Ok(LaurentPoly::constant(q)),
            Tok::X => Ok(LaurentPoly::x_pow(LatticeVector::new(1, 0))),
            Tok::Y => Ok(LaurentPoly::x_pow(LatticeVector::new(0, 1))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::End => err(pos, "unexpected end of input"),
            t => err(pos, format!("unexpected token {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        _ => "token",
    }
}

fn invert_monomial(f: &LaurentPoly, pos: usize) -> Result<LaurentPoly> {
    if f.is_zero() {
        return err(pos, "division by zero");
    }
    if !f.is_monomial() {
        return err(pos, "division by a non-monomial");
    }
    let (e, c) = f.terms().next().unwrap();
    Ok(LaurentPoly::monomial(-*e, BigRational::one() / c))
}

pub(crate) fn parse(s: &str) -> Result<LaurentPoly> {
    let toks = lex(s)?;
    if toks.len() == 1 {
        return err(0, "empty input");
    }
    let mut p = Parser { toks, i: 0 };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(out)
}
