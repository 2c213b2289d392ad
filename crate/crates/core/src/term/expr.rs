//! Expression mini-language:
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := rational ['*'] factor* | factor+
//! factor   := atom ('^*')*
//! atom     := ident | '(' expr ')'
//! rational := int ['/' int]
//! ```
//!
//! Juxtaposition (or an explicit `*`) is the algebra product. A bare
//! rational `r` denotes `r · 1`, where `1` is the sum of all vertices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Leavitt, LpaElement, Scalar, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown identifier `{name}`")]
    UnknownIdentifier { column: usize, name: String },
    #[error("column {column}: division by zero")]
    DivisionByZero { column: usize },
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Ghost,
    Plus,
    Minus,
    LParen,
    RParen,
    End,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '/' => Tok::Slash,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '^' => {
                if chars.get(i + 1) != Some(&'*') {
                    return Err(ExprError::Syntax {
                        column: col,
                        message: "expected `^*`".into(),
                    });
                }
                i += 1;
                Tok::Ghost
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                Tok::Int(digits.parse().expect("ascii digits"))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ExprError::Syntax {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a, 'g> {
    ctx: &'a Leavitt<'g>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_, '_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, message: &str) -> ExprError {
        ExprError::Syntax {
            column: self.column(),
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<LpaElement, ExprError> {
        let mut sign = Scalar::one();
        match self.peek() {
            Tok::Minus => {
                self.bump();
                sign = -sign;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?;
            acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<LpaElement, ExprError> {
        let mut coeff = Scalar::one();
        let mut acc: Option<LpaElement> = None;
        if matches!(self.peek(), Tok::Int(_)) {
            coeff = self.rational()?;
            if *self.peek() == Tok::Star {
                self.bump();
                if !self.starts_factor() {
                    return Err(self.syntax("expected a factor after `*`"));
                }
            }
            if !self.starts_factor() {
                return Ok(self.ctx.one().scale(&coeff));
            }
        } else if !self.starts_factor() {
            return Err(self.syntax("expected a term"));
        }
        loop {
            let f = self.factor()?;
            acc = Some(match acc {
                None => f,
                Some(a) => self.ctx.multiply(&a, &f)?,
            });
            if *self.peek() == Tok::Star {
                self.bump();
                if !self.starts_factor() {
                    return Err(self.syntax("expected a factor after `*`"));
                }
            } else if !self.starts_factor() {
                break;
            }
        }
        Ok(acc.expect("at least one factor").scale(&coeff))
    }

    fn rational(&mut self) -> Result<Scalar, ExprError> {
        let (Tok::Int(num), _) = self.bump() else {
            unreachable!("caller checked for an integer");
        };
        if *self.peek() != Tok::Slash {
            return Ok(Scalar::from_integer(num));
        }
        self.bump();
        let col = self.column();
        match self.bump() {
            (Tok::Int(den), _) if den.is_zero() => Err(ExprError::DivisionByZero { column: col }),
            (Tok::Int(den), _) => Ok(Scalar::new(num, den)),
            _ => Err(ExprError::Syntax {
                column: col,
                message: "expected a denominator".into(),
            }),
        }
    }

    fn factor(&mut self) -> Result<LpaElement, ExprError> {
        let (tok, col) = self.bump();
        let mut value = match tok {
            Tok::Ident(name) => {
                let g = self.ctx.graph();
                if let Some(v) = g.vertex(&name) {
                    self.ctx.vertex(v)
                } else if let Some(e) = g.edge_by_name(&name) {
                    self.ctx.edge(e)
                } else {
                    return Err(ExprError::UnknownIdentifier { column: col, name });
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.syntax("expected `)`"));
                }
                self.bump();
                inner
            }
            _ => {
                return Err(ExprError::Syntax {
                    column: col,
                    message: "expected a factor".into(),
                })
            }
        };
        while *self.peek() == Tok::Ghost {
            self.bump();
            value = value.involute();
        }
        Ok(value)
    }
}

/// Parses and evaluates an expression in normal form.
pub fn parse_expression(ctx: &Leavitt<'_>, input: &str) -> Result<LpaElement, ExprError> {
    let mut parser = Parser {
        ctx,
        toks: lex(input)?,
        pos: 0,
    };
    let value = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.syntax("unexpected input"));
    }
    Ok(ctx.normal_form(&value)?)
}
