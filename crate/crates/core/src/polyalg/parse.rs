//! Recursive-descent reader for polynomial expressions.
//!
//! Grammar: `expr = term (('+'|'-') term)*`, `term = unary (('*'|'/') unary)*`,
//! `unary = '-' unary | power`, `power = atom ('^' int)?`,
//! `atom = int | 'sqrt(' int ')' | name | '(' expr ')'`. Division is only by
//! constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{MultiPoly, VarTable};
use crate::error::PolyError;
use crate::exact_arith::{FieldScalar, Rational};

struct Parser<'a> {
    vars: &'a Arc<VarTable>,
    chars: Vec<char>,
    pos: usize,
}

fn err(msg: impl Into<String>) -> PolyError {
    PolyError::Parse(msg.into())
}

pub(super) fn parse_poly(vars: &Arc<VarTable>, text: &str) -> Result<MultiPoly, PolyError> {
    let mut p = Parser {
        vars,
        chars: text.chars().collect(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(out)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.poly_mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = constant_of(&d).ok_or_else(|| err("division by a non-constant"))?;
                acc = acc.scale(&c.inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| err("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected an integer at offset {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| err(format!("bad integer `{s}`")))
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err("missing `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(
                    self.vars,
                    FieldScalar::from_rational(Rational::from_bigint(n)),
                ))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "sqrt" && self.eat('(') {
                    let k = self.integer()?;
                    if !self.eat(')') {
                        return Err(err("missing `)` after sqrt argument"));
                    }
                    let k: u32 = k.try_into().map_err(|_| err("sqrt argument too large"))?;
                    let val = match k {
                        0 | 1 | 4 | 9 | 36 => FieldScalar::from_int(i64::from(k).isqrt()),
                        2 | 3 | 6 => FieldScalar::surd(Rational::one(), k),
                        _ => return Err(err(format!("sqrt({k}) is outside Q(sqrt2, sqrt3)"))),
                    };
                    return Ok(MultiPoly::constant(self.vars, val));
                }
                MultiPoly::var_named(self.vars, &name)
            }
            Some(c) => Err(err(format!("unexpected `{c}` at offset {}", self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

fn constant_of(p: &MultiPoly) -> Option<FieldScalar> {
    match p.num_terms() {
        0 => Some(FieldScalar::zero()),
        1 => {
            let (m, c) = p.leading_term()?;
            (m.degree() == 0).then(|| c.clone())
        }
        _ => None,
    }
}
