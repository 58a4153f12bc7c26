//! Stable JSON encoding of symbols, operators and reports.
//!
//! ```text
//! symbol   {"sectors":[{"exponents":{"H":"-1/2"},"poly":[{"coeff":{"nu_pow":0,"num":"1","den":"1"},"x":[..],"xi":[..]}]}]}
//! operator {"terms":[{"dx":[..],"coeff":<symbol>}]}
//! ```
//!
//! Sectors follow the canonical sector order, polynomial terms and operator terms
//! the descending graded-lex order used by the printer, and one polynomial
//! monomial with several powers of `nu` yields one entry per power, ascending.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use projquant::symbols::Exponents;
use projquant::{BaseTable, DiffOperator, Monomial, Poly, RadicalSymbol, Rational, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("invalid rational '{0}'")]
    Rational(String),
    #[error("unknown base '{0}'")]
    UnknownBase(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    Arity { got: usize, expected: usize },
    #[error("{0}")]
    Symbol(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub nu_pow: i32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub x: Vec<u32>,
    pub xi: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorJson {
    pub exponents: BTreeMap<String, String>,
    pub poly: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub sectors: Vec<SectorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTermJson {
    pub dx: Vec<u32>,
    pub coeff: SymbolJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub terms: Vec<OperatorTermJson>,
}

fn poly_json(p: &Poly, n: usize) -> Vec<TermJson> {
    let mut out = Vec::new();
    for (m, c) in p.terms().rev() {
        let (x, xi) = m.exponents().split_at(n);
        for (&k, r) in c.terms() {
            out.push(TermJson {
                coeff: CoeffJson {
                    nu_pow: k,
                    num: r.numer().to_string(),
                    den: r.denom().to_string(),
                },
                x: x.to_vec(),
                xi: xi.to_vec(),
            });
        }
    }
    out
}

pub fn symbol_to_json(s: &RadicalSymbol) -> SymbolJson {
    let table = s.table();
    let sectors = s
        .sectors()
        .map(|(e, p)| SectorJson {
            exponents: table
                .bases()
                .iter()
                .zip(e.as_slice())
                .filter(|(_, x)| !x.is_zero())
                .map(|(b, x)| (b.name.clone(), x.to_string()))
                .collect(),
            poly: poly_json(p, s.n()),
        })
        .collect();
    SymbolJson { sectors }
}

pub fn operator_to_json(op: &DiffOperator) -> OperatorJson {
    OperatorJson {
        terms: op
            .terms()
            .rev()
            .map(|(m, c)| OperatorTermJson {
                dx: m.exponents().to_vec(),
                coeff: symbol_to_json(c),
            })
            .collect(),
    }
}

fn rational(text: &str) -> Result<Rational, JsonError> {
    Rational::from_str(text).map_err(|_| JsonError::Rational(text.to_string()))
}

pub fn symbol_from_json(j: &SymbolJson, table: &Arc<BaseTable>) -> Result<RadicalSymbol, JsonError> {
    let n = table.n();
    let mut out = RadicalSymbol::zero(table);
    for sector in &j.sectors {
        let mut exps = vec![Rational::zero(); table.len()];
        for (name, e) in &sector.exponents {
            let i = table
                .index_of(name)
                .ok_or_else(|| JsonError::UnknownBase(name.clone()))?;
            exps[i] = rational(e)?;
        }
        let mut poly = Poly::zero(2 * n);
        for t in &sector.poly {
            for v in [&t.x, &t.xi] {
                if v.len() != n {
                    return Err(JsonError::Arity {
                        got: v.len(),
                        expected: n,
                    });
                }
            }
            let c = rational(&t.coeff.num)? / rational(&t.coeff.den)?;
            let mono = Monomial::new(t.x.iter().chain(&t.xi).copied().collect());
            poly.add_term(mono, Scalar::monomial(c, t.coeff.nu_pow));
        }
        let s = RadicalSymbol::from_sector(table, Exponents::new(exps), poly)
            .map_err(|e| JsonError::Symbol(e.to_string()))?;
        out = &out + &s;
    }
    Ok(out)
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn parse_symbol_json(text: &str, table: &Arc<BaseTable>) -> Result<RadicalSymbol, JsonError> {
    let j: SymbolJson = serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    symbol_from_json(&j, table)
}
