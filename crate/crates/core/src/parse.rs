//! Expression front end.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | atom-start unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= INT ('^' exponent)?
//! atom    := INT | 'x' | 'y' | 'sqrt' '(' ['-'] INT ')' | '(' expr ')'
//! ```
//!
//! Juxtaposition (`2x`, `x y`) is multiplication at the precedence of `*`.
//! Products keep their source order; `/` only accepts constant divisors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{QPlane, QPoly};
use crate::scalars::{squarefree_decomposition, Field, FieldElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(FieldElem),
    Var(Variable),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub q: FieldElem,
    pub field: Field,
    pub output: OutputMode,
}

impl SessionConfig {
    pub fn new(q: FieldElem, field: Field, output: OutputMode) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let q = q.embed(field)?;
        Ok(SessionConfig { q, field, output })
    }

    pub fn plane(&self) -> QPlane {
        QPlane::new(self.q.clone(), self.field).expect("q checked at construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    X,
    Y,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos];
        let start = pos;
        let simple = match ch {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((tok, start));
            pos += 1;
        } else if ch.is_ascii_whitespace() {
            pos += 1;
        } else if ch.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let n: BigInt = input[start..pos].parse().expect("digits");
            out.push((Token::Int(n), start));
        } else if ch.is_ascii_alphabetic() || ch == b'_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            let tok = match &input[start..pos] {
                "x" => Token::X,
                "y" => Token::Y,
                "sqrt" => Token::Sqrt,
                other => {
                    return Err(Error::UnknownSymbol {
                        position: start,
                        symbol: other.to_string(),
                    })
                }
            };
            out.push((tok, start));
        } else {
            let symbol = input[start..].chars().next().unwrap().to_string();
            return Err(Error::UnknownSymbol {
                position: start,
                symbol,
            });
        }
    }
    out.push((Token::End, input.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    idx: usize,
    field: Field,
    input: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.idx].0
    }

    fn pos(&self) -> usize {
        self.tokens[self.idx].1
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.idx].0.clone();
        if t != Token::End {
            self.idx += 1;
        }
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos(),
            message: message.to_string(),
        })
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            self.syntax(&format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.advance();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.advance();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.advance();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Int(_) | Token::X | Token::Y | Token::Sqrt | Token::LParen => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Token::Minus {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Token::Caret {
            self.advance();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let pos = self.pos();
        let Token::Int(n) = self.advance() else {
            return Err(Error::Syntax {
                position: pos,
                message: "expected a nonnegative integer exponent".into(),
            });
        };
        let too_big = || Error::Syntax {
            position: pos,
            message: "exponent too large".into(),
        };
        let base = n.to_u32().ok_or_else(too_big)?;
        if *self.peek() == Token::Caret {
            self.advance();
            let e = self.exponent()?;
            return base.checked_pow(e).ok_or_else(too_big);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.advance() {
            Token::Int(n) => Ok(Expr::Const(FieldElem::from_rational(
                BigRational::from_integer(n),
                self.field,
            ))),
            Token::X => Ok(Expr::Var(Variable::X)),
            Token::Y => Ok(Expr::Var(Variable::Y)),
            Token::Sqrt => {
                self.expect(Token::LParen, "'(' after sqrt")?;
                let negative = *self.peek() == Token::Minus;
                if negative {
                    self.advance();
                }
                let Token::Int(n) = self.advance() else {
                    return Err(Error::Syntax {
                        position: pos,
                        message: "sqrt takes an integer literal".into(),
                    });
                };
                self.expect(Token::RParen, "')' closing sqrt")?;
                let n = if negative { -n } else { n };
                let radicand = n.to_i64().ok_or_else(|| Error::Syntax {
                    position: pos,
                    message: "radicand too large".into(),
                })?;
                FieldElem::from_int(radicand, self.field)
                    .sqrt()
                    .map(Expr::Const)
                    .ok_or_else(|| Error::RadicalOutsideField(radicand, self.field.to_string()))
            }
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Token::End => Err(Error::Syntax {
                position: pos,
                message: "unexpected end of input".into(),
            }),
            _ => Err(Error::Syntax {
                position: pos,
                message: format!("unexpected symbol '{}'", &self.input[pos..pos + 1]),
            }),
        }
    }
}

pub fn parse(input: &str, config: &SessionConfig) -> Result<Expr> {
    parse_in_field(input, config.field)
}

fn parse_in_field(input: &str, field: Field) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(input)?,
        idx: 0,
        field,
        input,
    };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

pub fn evaluate(e: &Expr, config: &SessionConfig) -> Result<QPoly> {
    eval_in(e, &config.plane())
}

fn eval_in(e: &Expr, plane: &QPlane) -> Result<QPoly> {
    Ok(match e {
        Expr::Const(c) => plane.constant(c.clone())?,
        Expr::Var(Variable::X) => plane.x(),
        Expr::Var(Variable::Y) => plane.y(),
        Expr::Neg(a) => -eval_in(a, plane)?,
        Expr::Add(a, b) => eval_in(a, plane)?.checked_add(&eval_in(b, plane)?)?,
        Expr::Sub(a, b) => eval_in(a, plane)?.checked_sub(&eval_in(b, plane)?)?,
        Expr::Mul(a, b) => eval_in(a, plane)?.checked_mul(&eval_in(b, plane)?)?,
        Expr::Div(a, b) => {
            let divisor = eval_in(b, plane)?;
            let Some(c) = divisor.constant_value() else {
                return Err(Error::Syntax {
                    position: 0,
                    message: "division by a non-constant polynomial".into(),
                });
            };
            eval_in(a, plane)?.scalar_mul(&c.inverse()?)?
        }
        Expr::Pow(a, n) => eval_in(a, plane)?.pow(*n),
    })
}

/// Parses and evaluates in one step.
pub fn parse_poly(input: &str, config: &SessionConfig) -> Result<QPoly> {
    evaluate(&parse(input, config)?, config)
}

/// A scalar in text form (`-3`, `5/6`, `sqrt(-1)`, `(1+2*sqrt(2))/3`).
pub fn parse_scalar(input: &str, field: Field) -> Result<FieldElem> {
    let e = parse_in_field(input, field)?;
    let plane = QPlane::new(FieldElem::one(field), field)?;
    let value = eval_in(&e, &plane)?;
    if value.is_zero() {
        return Ok(FieldElem::zero(field));
    }
    value.constant_value().ok_or_else(|| Error::Syntax {
        position: 0,
        message: "expected a scalar, found a variable".into(),
    })
}

/// The field needed by the radicals in the inputs: `Q` if every radicand is
/// a rational square, else `Q(sqrt s)` for the common squarefree part `s`.
pub fn infer_field(inputs: &[&str]) -> Result<Field> {
    let mut found: Option<i64> = None;
    for input in inputs {
        let tokens = tokenize(input)?;
        for w in tokens.windows(4) {
            if w[0].0 != Token::Sqrt || w[1].0 != Token::LParen {
                continue;
            }
            let (negative, tok) = match (&w[2].0, &w[3].0) {
                (Token::Minus, t) => (true, t),
                (t, _) => (false, t),
            };
            let Token::Int(n) = tok else { continue };
            let n = if negative { -n.clone() } else { n.clone() };
            if n.is_zero() {
                continue;
            }
            let Some((s, _)) = squarefree_decomposition(&BigRational::from_integer(n)) else {
                continue;
            };
            if s == 1 {
                continue;
            }
            match found {
                Some(prev) if prev != s => {
                    return Err(Error::FieldMismatch(
                        Field::quadratic(prev)?.to_string(),
                        Field::quadratic(s)?.to_string(),
                    ))
                }
                _ => found = Some(s),
            }
        }
    }
    match found {
        Some(s) => Field::quadratic(s),
        None => Ok(Field::Rational),
    }
}
