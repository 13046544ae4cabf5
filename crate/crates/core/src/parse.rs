//! Parser for the textual expression forms used across the crate.
//!
//! One grammar serves both coefficient strings (`"(1+q)/2"`, `"v^3"`) and
//! polynomial strings in `x`, `y` (`"x^2+(1+q)xy"`): expressions over
//! integer literals and the symbols `q`, `v`, `x`, `y` with `+ - * / ^`,
//! parentheses, and juxtaposition as multiplication, so factored input
//! like `"(1+q)(1+q^2)/4"` works. Parsing builds a small AST; evaluators
//! for the concrete value types live with those types ([`parse_qrat`]
//! here, polynomial evaluation in [`crate::qpoly`]).
//!
//! Precedence, loosest to tightest: `+ -`, then `* /` and juxtaposition
//! (left-associative, so `1/2q` is `(1/2)·q`), then unary minus, then `^`
//! with a literal integer exponent (possibly negative: `q^-1`).

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::qrat::QRat;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Expr {
    Int(BigInt),
    Sym(Sym),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sym {
    Q,
    V,
    X,
    Y,
}

/// Parse a coefficient expression over `q` and `v` into a canonical value.
/// The symbols `x` and `y` are rejected here — they belong to polynomials.
pub fn parse_qrat(text: &str) -> Result<QRat> {
    let expr = parse_expr(text)?;
    eval_qrat(&expr)
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse {
            detail: format!("trailing input after a complete expression in {text:?}"),
        });
    }
    Ok(e)
}

fn eval_qrat(e: &Expr) -> Result<QRat> {
    match e {
        Expr::Int(n) => Ok(QRat::from_rational(crate::rational::Rational::from_integer(
            n.clone(),
        ))),
        Expr::Sym(Sym::Q) => Ok(QRat::q()),
        Expr::Sym(Sym::V) => Ok(QRat::v()),
        Expr::Sym(Sym::X) | Expr::Sym(Sym::Y) => Err(Error::Parse {
            detail: "x and y are polynomial variables, not coefficient symbols".to_string(),
        }),
        Expr::Neg(a) => Ok(-&eval_qrat(a)?),
        Expr::Add(a, b) => Ok(&eval_qrat(a)? + &eval_qrat(b)?),
        Expr::Sub(a, b) => Ok(&eval_qrat(a)? - &eval_qrat(b)?),
        Expr::Mul(a, b) => Ok(&eval_qrat(a)? * &eval_qrat(b)?),
        Expr::Div(a, b) => eval_qrat(a)?.div(&eval_qrat(b)?),
        Expr::Pow(a, k) => eval_qrat(a)?.pow_signed(*k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(Sym),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                toks.push(Tok::Int(digits.parse().expect("digit run")));
            }
            'q' => {
                chars.next();
                toks.push(Tok::Sym(Sym::Q));
            }
            'v' => {
                chars.next();
                toks.push(Tok::Sym(Sym::V));
            }
            'x' => {
                chars.next();
                toks.push(Tok::Sym(Sym::X));
            }
            'y' => {
                chars.next();
                toks.push(Tok::Sym(Sym::Y));
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
            other => {
                return Err(Error::Parse {
                    detail: format!("unexpected character {other:?} in {text:?}"),
                });
            }
        }
    }
    if toks.is_empty() {
        return Err(Error::Parse {
            detail: "empty expression".to_string(),
        });
    }
    Ok(toks)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                // Juxtaposition: a factor beginning right after another
                // factor multiplies it.
                Some(Tok::Int(_)) | Some(Tok::Sym(_)) | Some(Tok::LParen) => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let k = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Sym(s)) => Ok(Expr::Sym(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse {
                        detail: "missing closing parenthesis".to_string(),
                    }),
                }
            }
            other => Err(Error::Parse {
                detail: format!("expected a value, found {other:?}"),
            }),
        }
    }

    /// Integer exponent after `^`: `2`, `-1`, or a parenthesized `(-3)`.
    fn exponent(&mut self) -> Result<i64> {
        let (neg, parens) = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                (true, false)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                (neg, true)
            }
            _ => (false, false),
        };
        let mag = match self.next() {
            Some(Tok::Int(n)) => n.to_i64().ok_or_else(|| Error::Parse {
                detail: "exponent out of range".to_string(),
            })?,
            other => {
                return Err(Error::Parse {
                    detail: format!("expected an integer exponent, found {other:?}"),
                });
            }
        };
        if parens && self.next() != Some(Tok::RParen) {
            return Err(Error::Parse {
                detail: "missing closing parenthesis after exponent".to_string(),
            });
        }
        Ok(if neg { -mag } else { mag })
    }
}
