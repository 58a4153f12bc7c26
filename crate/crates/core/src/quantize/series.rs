//! Evaluation of `Σ_m c_m(E) ν^m D^m` on symbols.

use alloc::vec::Vec;

use num_traits::Zero;

use super::coeffs::{Coefficients, SeriesCoefficients};
use super::QContext;
use crate::algebra::Scalar;
use crate::error::{Error, Family, Result};
use crate::symbols::RadicalSymbol;

/// Highest power of `D` tried on a radical component before an untruncated
/// series is declared nonterminating. Polynomial components always terminate.
pub const MAX_UNTRUNCATED_ORDER: usize = 3;

/// Result of a series evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub value: RadicalSymbol,
    /// A nonzero term beyond the truncation order was dropped.
    pub truncated: bool,
}

/// The series split by powers of `ν`: entry `m` is `Σ_parts c_m(k − m) D^m(part)`.
///
/// Each homogeneous part of degree `k` is treated separately; `D` acts first and the
/// coefficient is read at the degree `k − m` it lands on. Coefficients are only
/// requested for orders where `D^m(part)` is nonzero.
pub fn series_terms(
    coeffs: &dyn Coefficients,
    s: &RadicalSymbol,
    truncation: Option<usize>,
) -> Result<(Vec<RadicalSymbol>, bool)> {
    let mut terms: Vec<RadicalSymbol> = Vec::new();
    let mut truncated = false;
    for part in s.decompose() {
        let polynomial = part.symbol.is_polynomial();
        let mut d = part.symbol;
        let mut m = 0;
        while !d.is_zero() {
            match truncation {
                Some(t) if m > t => {
                    truncated = true;
                    break;
                }
                None if !polynomial && m > MAX_UNTRUNCATED_ORDER => {
                    return Err(Error::NonterminatingSeries {
                        degree: part.degree,
                        steps: m,
                    });
                }
                _ => {}
            }
            let c = coeffs.coefficient(&part.degree, m)?;
            if !c.is_zero() {
                while terms.len() <= m {
                    terms.push(RadicalSymbol::zero(s.table()));
                }
                terms[m] = &terms[m] + &d.scale(&c);
            }
            d = d.divergence();
            m += 1;
        }
    }
    Ok((terms, truncated))
}

/// Applies a coefficient source as `Σ_m c_m ν^m D^m`.
pub fn apply_series(
    coeffs: &dyn Coefficients,
    s: &RadicalSymbol,
    truncation: Option<usize>,
) -> Result<Series> {
    let (terms, truncated) = series_terms(coeffs, s, truncation)?;
    let mut value = RadicalSymbol::zero(s.table());
    for (m, t) in terms.iter().enumerate() {
        value = &value + &t.scalar_mul(&Scalar::nu_pow(m as i32));
    }
    Ok(Series { value, truncated })
}

/// Applies the quantization (`Family::Quantization`) or symbol (`Family::Symbol`)
/// series of `ctx` to `s`, optionally truncated after order `truncation`.
pub fn hypergeom_apply(
    ctx: &QContext,
    family: Family,
    s: &RadicalSymbol,
    truncation: Option<usize>,
) -> Result<Series> {
    apply_series(&SeriesCoefficients::new(ctx, family), s, truncation)
}

/// `Q_{λ,μ}(s)`, as a symbol; see [`super::normal_order`] for the operator.
pub fn quantize(ctx: &QContext, s: &RadicalSymbol) -> Result<RadicalSymbol> {
    Ok(hypergeom_apply(ctx, Family::Quantization, s, None)?.value)
}

/// `σ_{λ,μ}(s)`, the inverse of [`quantize`].
pub fn symbolize(ctx: &QContext, s: &RadicalSymbol) -> Result<RadicalSymbol> {
    Ok(hypergeom_apply(ctx, Family::Symbol, s, None)?.value)
}
