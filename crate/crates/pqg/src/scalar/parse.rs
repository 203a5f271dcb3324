//! Scalar literal grammar.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := atom (('*'|'/') atom)*
//! atom   := INT | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
//!         | IDENT '(' IDENT (('+'|'-') INT)? ')' ('^' ['-'] INT)?
//! ```
//!
//! Integers only — a decimal point is rejected everywhere (exactness policy).
//! `render` emits exactly this grammar; parse/print round-trips bit-exactly.

use super::{int, FieldSpec, Scalar};
use crate::error::{Error, Result};

pub fn parse_scalar(input: &str, field: &FieldSpec) -> Result<Scalar> {
    let mut p = Parser {
        tokens: lex(input)?,
        pos: 0,
        field,
    };
    let x = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after scalar: {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '.' => {
                return Err(Error::Parse(
                    "decimal floats are rejected; use exact rationals like \"5/4\"".to_string(),
                ))
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else if d == '.' {
                        return Err(Error::Parse(
                            "decimal floats are rejected; use exact rationals like \"5/4\""
                                .to_string(),
                        ));
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(n.parse().map_err(|_| {
                    Error::Parse(format!("integer literal too large: {n}"))
                })?));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    field: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of scalar literal".to_string()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?}, got {got:?}")))
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let t = self.atom()?;
                    acc = acc.mul(&t, self.field);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let t = self.atom()?;
                    let inv = t.inv(self.field).ok_or_else(|| {
                        Error::Parse("division by a non-invertible scalar".to_string())
                    })?;
                    acc = acc.mul(&inv, self.field);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.next()? {
            Tok::Int(n) => Ok(Scalar::from_rat(int(n))),
            Tok::LParen => {
                let x = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(x)
            }
            Tok::Minus => Ok(self.atom()?.neg()),
            Tok::Ident(name) if name == "i" => Ok(Scalar::i()),
            Tok::Ident(name) if name == "sqrt" => {
                self.expect(Tok::LParen)?;
                let x = self.expr()?;
                self.expect(Tok::RParen)?;
                x.sqrt().map_err(|e| Error::Parse(e.to_string()))
            }
            Tok::Ident(name) => {
                let sym = self
                    .field
                    .symbol_index(&name)
                    .ok_or(Error::UnknownSymbol(name.clone()))?;
                self.expect(Tok::LParen)?;
                let var = match self.next()? {
                    Tok::Ident(v) => v,
                    other => {
                        return Err(Error::Parse(format!(
                            "expected lattice variable, got {other:?}"
                        )))
                    }
                };
                if var != self.field.symbols[sym].var {
                    return Err(Error::Parse(format!(
                        "symbol {name} uses variable {}, got {var}",
                        self.field.symbols[sym].var
                    )));
                }
                let mut offset = 0i64;
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.pos += 1;
                        offset = self.int_lit()?;
                    }
                    Some(Tok::Minus) => {
                        self.pos += 1;
                        offset = -self.int_lit()?;
                    }
                    _ => {}
                }
                self.expect(Tok::RParen)?;
                let mut x = Scalar::symbol(sym, offset);
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let mut exp = 1i64;
                    if self.peek() == Some(&Tok::Minus) {
                        self.pos += 1;
                        exp = -1;
                    }
                    exp *= self.int_lit()?;
                    x = power(&x, exp, self.field)?;
                }
                Ok(x)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn int_lit(&mut self) -> Result<i64> {
        match self.next()? {
            Tok::Int(n) => Ok(n),
            other => Err(Error::Parse(format!("expected integer, got {other:?}"))),
        }
    }
}

fn power(x: &Scalar, exp: i64, field: &FieldSpec) -> Result<Scalar> {
    let base = if exp < 0 {
        x.inv(field)
            .ok_or_else(|| Error::Parse("negative power of non-invertible scalar".to_string()))?
    } else {
        x.clone()
    };
    let mut acc = Scalar::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc.mul(&base, field);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, sqrt_of_rat, SymbolSpec};

    fn shift_field() -> FieldSpec {
        let mut f = FieldSpec::rational();
        let fi = f.declare_symbol(SymbolSpec {
            name: "F".into(),
            var: "l".into(),
            positive: true,
            invertible: true,
            square_of: None,
        });
        f.declare_symbol(SymbolSpec {
            name: "Fh".into(),
            var: "l".into(),
            positive: true,
            invertible: true,
            square_of: Some(fi),
        });
        f
    }

    #[test]
    fn parses_rationals_and_radicals() {
        let f = FieldSpec::rational();
        assert_eq!(parse_scalar("5/4", &f).unwrap(), Scalar::from_rat(rat(5, 4)));
        assert_eq!(
            parse_scalar("sqrt(5/4)", &f).unwrap(),
            sqrt_of_rat(&rat(5, 4)).unwrap()
        );
        assert_eq!(
            parse_scalar("1 - 2*sqrt(2)", &f).unwrap(),
            Scalar::one().sub(&sqrt_of_rat(&rat(2, 1)).unwrap().scale(&rat(2, 1)))
        );
    }

    #[test]
    fn rejects_decimal_floats() {
        let f = FieldSpec::rational();
        assert!(parse_scalar("1.25", &f).is_err());
        assert!(parse_scalar("sqrt(2.0)", &f).is_err());
    }

    #[test]
    fn parses_symbols() {
        let f = shift_field();
        let x = parse_scalar("F(l+2)^-1*Fh(l-1)", &f).unwrap();
        assert_eq!(parse_scalar(&x.render(&f), &f).unwrap(), x);
    }

    #[test]
    fn print_parse_round_trip() {
        let f = shift_field();
        for lit in [
            "0",
            "-3/7",
            "1/2*sqrt(5)",
            "1 + sqrt(2) - 2/3*i",
            "F(l)*Fh(l+1)",
            "5/4*F(l-2)^-3",
        ] {
            let x = parse_scalar(lit, &f).unwrap();
            let printed = x.render(&f);
            let y = parse_scalar(&printed, &f).unwrap();
            assert_eq!(x, y);
            assert_eq!(printed, y.render(&f));
        }
    }
}
