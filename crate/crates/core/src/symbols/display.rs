//! Text rendering of symbols.
//!
//! Coordinates print as `x1..xn`, momenta as `p1..pn`, the formal unit as `nu`, and
//! bases by their declared names. Polynomial terms appear in descending graded-lex
//! order, and within one monomial by ascending power of `nu`. Rationals print as
//! `num/den` with the denominator omitted when it is 1.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_traits::{One, Signed, Zero};

use super::{Exponents, RadicalSymbol};
use crate::algebra::{Poly, Rational};

/// One signed printed term.
pub(crate) struct Term {
    pub negative: bool,
    pub body: String,
}

fn push_factor(body: &mut String, factor: &str) {
    if !body.is_empty() {
        body.push('*');
    }
    body.push_str(factor);
}

fn var_power(name: &str, index: usize, e: u32) -> String {
    if e == 1 {
        format!("{name}{}", index + 1)
    } else {
        format!("{name}{}^{e}", index + 1)
    }
}

/// `^e`, `^(-e)` or `^(p/q)` suffix for a base exponent.
pub(crate) fn exponent_suffix(e: &Rational) -> String {
    if e.is_integer() && !e.is_negative() {
        format!("^{e}")
    } else {
        format!("^({e})")
    }
}

/// Terms of a polynomial on a chart of dimension `n`, with `extra` appended to each body.
pub(crate) fn poly_terms(p: &Poly, n: usize, extra: &str) -> Vec<Term> {
    let mut out = Vec::new();
    for (m, c) in p.terms().rev() {
        let e = m.exponents();
        let mut vars = String::new();
        for i in 0..n {
            if e[i] > 0 {
                push_factor(&mut vars, &var_power("x", i, e[i]));
            }
        }
        for i in 0..n {
            if e[n + i] > 0 {
                push_factor(&mut vars, &var_power("p", i, e[n + i]));
            }
        }
        if !extra.is_empty() {
            push_factor(&mut vars, extra);
        }
        for (&k, r) in c.terms() {
            let mag = r.abs();
            let mut body = String::new();
            if !mag.is_one() || (k == 0 && vars.is_empty()) {
                body = format!("{mag}");
            }
            if k != 0 {
                let mut nu = String::new();
                let _ = write_nu(&mut nu, k);
                push_factor(&mut body, &nu);
            }
            if !vars.is_empty() {
                push_factor(&mut body, &vars);
            }
            out.push(Term {
                negative: r.is_negative(),
                body,
            });
        }
    }
    out
}

fn write_nu(out: &mut String, k: i32) -> fmt::Result {
    match k {
        1 => out.write_str("nu"),
        k if k < 0 => write!(out, "nu^({k})"),
        k => write!(out, "nu^{k}"),
    }
}

pub(crate) fn write_terms(f: &mut impl Write, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, t) in terms.iter().enumerate() {
        match (i, t.negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        f.write_str(&t.body)?;
    }
    Ok(())
}

impl RadicalSymbol {
    fn base_factor(&self, e: &Exponents) -> String {
        let mut s = String::new();
        for (b, x) in self.table.bases().iter().zip(e.as_slice()) {
            if !x.is_zero() {
                push_factor(&mut s, &format!("{}{}", b.name, exponent_suffix(x)));
            }
        }
        s
    }

    pub(crate) fn print_terms(&self) -> Vec<Term> {
        let n = self.n();
        let mut out = Vec::new();
        for (e, p) in &self.sectors {
            let factor = self.base_factor(e);
            let mut terms = poly_terms(p, n, &factor);
            if factor.is_empty() || terms.len() == 1 {
                out.append(&mut terms);
            } else {
                let mut inner = String::from("(");
                let _ = write_terms(&mut inner, &poly_terms(p, n, ""));
                inner.push(')');
                push_factor(&mut inner, &factor);
                out.push(Term {
                    negative: false,
                    body: inner,
                });
            }
        }
        out
    }
}

impl fmt::Display for RadicalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_terms(&mut s, &self.print_terms())?;
        f.write_str(&s)
    }
}
