//! Surface syntax for symbols.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' exponent)?
//! atom     := rational | 'x'int | 'p'int | 'nu' | 'H' | 'r2' | '(' expr ')'
//! rational := int ('/' int)?
//! exponent := int | '(' ['-'] int ('/' int)? ')'
//! ```
//!
//! Rational exponents are accepted on the named bases only, negative integer
//! exponents on bases and on `nu`. The printer in `projquant` emits this grammar,
//! so `parse(print(s))` reproduces `s`.

use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use projquant::sphere::{HAMILTONIAN, R2};
use projquant::{BaseTable, RadicalSymbol, Rational, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("variable index {index} at column {column} is outside 1..{n}")]
    IndexOutOfRange { column: usize, index: usize, n: usize },
    #[error("fractional exponent at column {column} on a subexpression that is not H or r2")]
    FractionalExponent { column: usize },
    #[error("negative exponent at column {column} on a subexpression that is not nu, H or r2")]
    NegativeExponent { column: usize },
    #[error("at column {column}: {message}")]
    Symbol { column: usize, message: String },
}

impl ParseError {
    /// 1-based column of the offending character.
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. }
            | ParseError::IndexOutOfRange { column, .. }
            | ParseError::FractionalExponent { column }
            | ParseError::NegativeExponent { column }
            | ParseError::Symbol { column, .. } => *column,
        }
    }
}

fn syntax(column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        column,
        message: message.into(),
    }
}

/// Parsed expression, with the 1-based column where each node starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Rational(Rational),
    /// `x<i>`, index as written (1-based).
    X(usize),
    /// `p<i>`, the momentum `ξ_i`.
    P(usize),
    Nu,
    /// `H` or `r2`.
    Base(String),
    /// Terms of a sum, each flagged `true` when subtracted.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    /// Power with the column of `^`.
    Pow(Box<Expr>, Rational, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, column));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), column));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), column));
        } else {
            return Err(syntax(column, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
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

    fn expect(&mut self, tok: Tok, what: &str) -> Result<usize, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(syntax(self.column(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        let negated = *self.peek() == Tok::Minus;
        if negated {
            self.bump();
        }
        let mut terms = vec![(negated, self.term()?)];
        loop {
            let negated = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((negated, self.term()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr {
            kind: ExprKind::Sum(terms),
            column,
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let first = self.factor()?;
        let column = first.column;
        let mut factors = vec![first];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(Expr {
            kind: ExprKind::Product(factors),
            column,
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump().1;
        let e = self.exponent()?;
        let column = base.column;
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), e, caret),
            column,
        })
    }

    fn integer(&mut self) -> Result<Rational, ParseError> {
        match self.bump() {
            (Tok::Int(digits), column) => Rational::from_str(&digits)
                .map_err(|_| syntax(column, "invalid integer")),
            (_, column) => Err(syntax(column, "expected an integer")),
        }
    }

    fn ratio(&mut self, num: Rational) -> Result<Rational, ParseError> {
        if *self.peek() != Tok::Slash {
            return Ok(num);
        }
        self.bump();
        let column = self.column();
        let den = self.integer()?;
        if den.is_zero() {
            return Err(syntax(column, "zero denominator"));
        }
        Ok(num / den)
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        if *self.peek() != Tok::LParen {
            return self.integer();
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let num = self.integer()?;
        let e = self.ratio(num)?;
        self.expect(Tok::RParen, "')'")?;
        Ok(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        let kind = match self.bump().0 {
            Tok::Int(_) => {
                self.pos -= 1;
                let num = self.integer()?;
                ExprKind::Rational(self.ratio(num)?)
            }
            Tok::Ident(name) => ident(&name, column)?,
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                return Ok(Expr { column, ..inner });
            }
            Tok::End => return Err(syntax(column, "unexpected end of input")),
            _ => return Err(syntax(column, "expected a number, variable, nu, H, r2 or '('")),
        };
        Ok(Expr { kind, column })
    }
}

fn ident(name: &str, column: usize) -> Result<ExprKind, ParseError> {
    match name {
        "nu" => return Ok(ExprKind::Nu),
        n if n == HAMILTONIAN || n == R2 => return Ok(ExprKind::Base(n.to_string())),
        _ => {}
    }
    let (head, digits) = name.split_at(1);
    let index = if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        digits.parse::<usize>().ok()
    } else {
        None
    };
    match (head, index) {
        ("x", Some(i)) => Ok(ExprKind::X(i)),
        ("p", Some(i)) => Ok(ExprKind::P(i)),
        _ => Err(syntax(column, format!("unknown identifier '{name}'"))),
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.column(), "unexpected trailing input"));
    }
    Ok(e)
}

fn index(i: usize, n: usize, column: usize) -> Result<usize, ParseError> {
    if i == 0 || i > n {
        Err(ParseError::IndexOutOfRange { column, index: i, n })
    } else {
        Ok(i - 1)
    }
}

fn lift<T>(r: projquant::Result<T>, column: usize) -> Result<T, ParseError> {
    r.map_err(|e| ParseError::Symbol {
        column,
        message: e.to_string(),
    })
}

// pairwise, so long printed sums cost n log n term merges instead of n^2
fn balanced_sum(table: &Arc<BaseTable>, mut parts: Vec<RadicalSymbol>) -> RadicalSymbol {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => &a + &b,
                None => a,
            });
        }
        parts = next;
    }
    parts.pop().unwrap_or_else(|| RadicalSymbol::zero(table))
}

/// Builds the symbol described by `e`, resolving `H` and `r2` in `table`.
pub fn elaborate(e: &Expr, table: &Arc<BaseTable>) -> Result<RadicalSymbol, ParseError> {
    let n = table.n();
    let column = e.column;
    Ok(match &e.kind {
        ExprKind::Rational(r) => RadicalSymbol::constant(table, Scalar::from_rational(r.clone())),
        ExprKind::X(i) => lift(RadicalSymbol::x(table, index(*i, n, column)?), column)?,
        ExprKind::P(i) => lift(RadicalSymbol::xi(table, index(*i, n, column)?), column)?,
        ExprKind::Nu => RadicalSymbol::constant(table, Scalar::nu_pow(1)),
        ExprKind::Base(name) => lift(RadicalSymbol::base_power(table, name, Rational::from_integer(1.into())), column)?,
        ExprKind::Sum(terms) => {
            let mut parts = Vec::with_capacity(terms.len());
            for (negated, t) in terms {
                let v = elaborate(t, table)?;
                parts.push(if *negated { -&v } else { v });
            }
            balanced_sum(table, parts)
        }
        ExprKind::Product(factors) => {
            let mut acc = RadicalSymbol::one(table);
            for f in factors {
                acc = &acc * &elaborate(f, table)?;
            }
            acc
        }
        ExprKind::Pow(a, exp, caret) => match &a.kind {
            ExprKind::Base(name) => lift(RadicalSymbol::base_power(table, name, exp.clone()), column)?,
            _ if !exp.is_integer() => return Err(ParseError::FractionalExponent { column: *caret }),
            ExprKind::Nu => {
                let k = exp
                    .to_integer()
                    .to_i32()
                    .ok_or_else(|| syntax(*caret, "exponent too large"))?;
                RadicalSymbol::constant(table, Scalar::nu_pow(k))
            }
            _ if exp.is_negative() => return Err(ParseError::NegativeExponent { column: *caret }),
            _ => {
                let k = exp
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| syntax(*caret, "exponent too large"))?;
                elaborate(a, table)?.pow(k)
            }
        },
    })
}

/// `parse` followed by `elaborate`.
pub fn parse_symbol(text: &str, table: &Arc<BaseTable>) -> Result<RadicalSymbol, ParseError> {
    elaborate(&parse(text)?, table)
}
