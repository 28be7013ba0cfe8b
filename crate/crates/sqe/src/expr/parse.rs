//! Recursive-descent parser for the expression grammar: integers, rationals
//! `p/q`, identifiers, `+ - * /` with the usual precedence, `^` with a
//! rational literal exponent, unary minus, function calls, parentheses.

use num_bigint::BigInt;

use super::{Expr, ExprError, FuncKind, Rat, SymbolTable};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn next_token(&mut self) -> Result<(Tok, usize), ExprError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                let value: BigInt = text.parse().unwrap();
                return Ok((Tok::Int(value), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                return Ok((Tok::Ident(text.to_string()), start));
            }
            other => {
                return Err(ExprError::Syntax {
                    offset: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    symbols: &'a SymbolTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(ExprError::Syntax {
                offset: self.offset(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.into_iter().next().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.unary()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    factors.push(Expr::powi(self.unary()?, -1));
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.exponent()?;
            if *self.peek() == Tok::Caret {
                return Err(ExprError::Syntax {
                    offset: self.offset(),
                    msg: "chained `^` is not allowed; parenthesize the base".into(),
                });
            }
            return Ok(Expr::Power(Box::new(base), exp));
        }
        Ok(base)
    }

    /// Exponent literal: [-]INT[/INT], optionally parenthesized.
    fn exponent(&mut self) -> Result<Rat, ExprError> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let numer = match self.bump() {
            Tok::Int(v) => v,
            _ => {
                return Err(ExprError::Syntax {
                    offset: self.offset(),
                    msg: "exponent must be an integer or rational literal".into(),
                })
            }
        };
        // `x^3/y` is division; a rational exponent needs parentheses: `x^(3/4)`.
        let denom = if parenthesized && *self.peek() == Tok::Slash {
            self.bump();
            match self.bump() {
                Tok::Int(v) => v,
                _ => {
                    return Err(ExprError::Syntax {
                        offset: self.offset(),
                        msg: "expected integer after `/` in exponent".into(),
                    })
                }
            }
        } else {
            BigInt::from(1)
        };
        if parenthesized {
            self.expect(Tok::RParen, "`)` closing the exponent")?;
        }
        let mut r = Rat::new(numer, denom);
        if negative {
            r = -r;
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        match self.bump() {
            Tok::Int(v) => Ok(Expr::Const(Rat::from_integer(v))),
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)` closing the function argument")?;
                    if name == "sqrt" {
                        return Ok(Expr::sqrt(arg));
                    }
                    match FuncKind::from_name(&name) {
                        Some(kind) => Ok(Expr::func(kind, arg)),
                        None => Err(ExprError::Syntax {
                            offset,
                            msg: format!("unknown function `{name}`"),
                        }),
                    }
                } else if self.symbols.contains(&name) {
                    Ok(Expr::Symbol(name))
                } else {
                    Err(ExprError::UnknownIdentifier(name))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(ExprError::Syntax {
                offset,
                msg: "expected a number, identifier or `(`".into(),
            }),
        }
    }
}

/// Parse and normalize an expression against the given symbol table.
pub fn parse(text: &str, symbols: &SymbolTable) -> Result<Expr, ExprError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        let (tok, off) = lexer.next_token()?;
        let eof = tok == Tok::Eof;
        tokens.push((tok, off));
        if eof {
            break;
        }
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        symbols,
    };
    let e = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(ExprError::Syntax {
            offset: parser.offset(),
            msg: "unexpected trailing input".into(),
        });
    }
    e.normalize()
}
