//! The round sphere `S^n` in one affine chart of `RP^n`.
//!
//! With `r2 = 1 + ‖x‖²` the metric is `g^{ij} = r2 (δ^{ij} + x^i x^j)`, whose inverse is
//! `g_{ij} = (r2 δ_{ij} − x_i x_j) / r2²` and whose determinant is `r2^{−(n+1)}`. The
//! geodesic Hamiltonian is `H = g^{ij} ξ_i ξ_j`. Both `r2` and `H` are declared as
//! radical bases so that `H^α` and `r2^β` can be used with rational exponents.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{int, rat, Monomial, Poly, Rational, Scalar};
use crate::error::{Error, Family, Result};
use crate::operator::DiffOperator;
use crate::quantize::{hypergeom_apply, normal_order, quantize, QContext};
use crate::symbols::{BaseTable, RadicalSymbol};

/// Name of the base `1 + ‖x‖²`.
pub const R2: &str = "r2";
/// Name of the geodesic Hamiltonian base.
pub const HAMILTONIAN: &str = "H";

/// Metric data of the round sphere as exact radical symbols in `x`.
#[derive(Clone, Debug)]
pub struct SphereChart {
    n: usize,
    table: Arc<BaseTable>,
    inverse_metric: Vec<Vec<RadicalSymbol>>,
    metric: Vec<Vec<RadicalSymbol>>,
    /// `christoffel[k][i][j] = Γ^k_{ij}`.
    christoffel: Vec<Vec<Vec<RadicalSymbol>>>,
}

/// `1 + ‖x‖²` in the `2n` symbol variables.
fn r2_poly(n: usize) -> Poly {
    let mut p = Poly::one(2 * n);
    for i in 0..n {
        let x = Poly::var(2 * n, i).expect("i < n");
        p += &(&x * &x);
    }
    p
}

/// `r2 (‖ξ‖² + ⟨x, ξ⟩²)`.
fn hamiltonian_poly(n: usize) -> Poly {
    let mut sq = Poly::zero(2 * n);
    let mut pairing = Poly::zero(2 * n);
    for i in 0..n {
        let x = Poly::var(2 * n, i).expect("i < n");
        let p = Poly::var(2 * n, n + i).expect("n + i < 2n");
        sq += &(&p * &p);
        pairing += &(&x * &p);
    }
    &r2_poly(n) * &(&sq + &(&pairing * &pairing))
}

/// `⟨ξ, x⟩`.
fn pairing_poly(n: usize) -> Poly {
    let mut out = Poly::zero(2 * n);
    for i in 0..n {
        out += &(&Poly::var(2 * n, i).expect("i < n") * &Poly::var(2 * n, n + i).expect("n + i < 2n"));
    }
    out
}

/// Base table with `r2` (ξ-degree 0) and `H` (ξ-degree 2).
pub fn sphere_table(n: usize) -> Result<Arc<BaseTable>> {
    Ok(Arc::new(
        BaseTable::empty(n)
            .with_base(R2, r2_poly(n))?
            .with_base(HAMILTONIAN, hamiltonian_poly(n))?,
    ))
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<RadicalSymbol>], table: &Arc<BaseTable>) -> RadicalSymbol {
    match m.len() {
        0 => RadicalSymbol::one(table),
        1 => m[0][0].clone(),
        len => {
            let mut out = RadicalSymbol::zero(table);
            for col in 0..len {
                let minor: Vec<Vec<RadicalSymbol>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor, table);
                out = if col % 2 == 0 { &out + &term } else { &out - &term };
            }
            out
        }
    }
}

/// Builds the chart: metric, inverse metric and Christoffel symbols.
pub fn build_metric(n: usize) -> Result<SphereChart> {
    if n == 0 {
        return Err(Error::InvalidContext("dimension must be at least 1".into()));
    }
    let table = sphere_table(n)?;
    let x: Vec<RadicalSymbol> = (0..n)
        .map(|i| RadicalSymbol::x(&table, i))
        .collect::<Result<_>>()?;
    let r2 = RadicalSymbol::base_power(&table, R2, int(1))?;
    let r2_inv2 = RadicalSymbol::base_power(&table, R2, int(-2))?;
    let one = RadicalSymbol::one(&table);

    let mut inverse_metric = vec![vec![RadicalSymbol::zero(&table); n]; n];
    let mut metric = vec![vec![RadicalSymbol::zero(&table); n]; n];
    for i in 0..n {
        for j in 0..n {
            let xx = &x[i] * &x[j];
            let (up, down) = if i == j {
                (&one + &xx, &r2 - &xx)
            } else {
                (xx.clone(), -&xx)
            };
            inverse_metric[i][j] = &r2 * &up;
            metric[i][j] = &down * &r2_inv2;
        }
    }

    // ∂_k g_{ij}
    let dg: Vec<Vec<Vec<RadicalSymbol>>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| metric[i][j].partial_x(k)).collect::<Result<_>>())
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let half = rat(1, 2);
    let mut christoffel = vec![vec![vec![RadicalSymbol::zero(&table); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut g = RadicalSymbol::zero(&table);
                for l in 0..n {
                    let bracket = &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j];
                    g = &g + &(&inverse_metric[k][l] * &bracket);
                }
                let g = g.scale(&half);
                christoffel[k][j][i] = g.clone();
                christoffel[k][i][j] = g;
            }
        }
    }
    Ok(SphereChart {
        n,
        table,
        inverse_metric,
        metric,
        christoffel,
    })
}

impl SphereChart {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &Arc<BaseTable> {
        &self.table
    }

    /// `g^{ij}`.
    pub fn inverse_metric(&self, i: usize, j: usize) -> &RadicalSymbol {
        &self.inverse_metric[i][j]
    }

    /// `g_{ij}`.
    pub fn metric(&self, i: usize, j: usize) -> &RadicalSymbol {
        &self.metric[i][j]
    }

    /// `det g_{ij}`, by cofactor expansion.
    pub fn det_metric(&self) -> RadicalSymbol {
        determinant(&self.metric, &self.table)
    }

    /// `Γ^k_{ij}`.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &RadicalSymbol {
        &self.christoffel[k][i][j]
    }

    /// `Γ^j_{ij}`, which equals `∂_i log √det g = −(n+1) x_i / r2`.
    pub fn trace(&self, i: usize) -> RadicalSymbol {
        let mut t = RadicalSymbol::zero(&self.table);
        for j in 0..self.n {
            t = &t + &self.christoffel[j][i][j];
        }
        t
    }

    /// `r2^e`.
    pub fn r2_power(&self, e: Rational) -> RadicalSymbol {
        RadicalSymbol::base_power(&self.table, R2, e).expect("r2 is declared")
    }

    /// `H`, as a polynomial symbol.
    pub fn hamiltonian(&self) -> RadicalSymbol {
        RadicalSymbol::base_power(&self.table, HAMILTONIAN, int(1)).expect("H is declared")
    }

    /// `H^α`.
    pub fn hamiltonian_power(&self, alpha: Rational) -> RadicalSymbol {
        RadicalSymbol::base_power(&self.table, HAMILTONIAN, alpha).expect("H is declared")
    }

    /// `H_δ = H · r2^{−(n+1)δ/2} = H (det g)^{δ/2}`.
    pub fn weighted_hamiltonian(&self, delta: &Rational) -> RadicalSymbol {
        let e = -(int(self.n as i64 + 1) * delta) / int(2);
        &self.hamiltonian() * &self.r2_power(e)
    }

    /// Scalar curvature `g^{ij} R_{ij}` with
    /// `R_{ij} = ∂_k Γ^k_{ij} − ∂_j Γ^k_{ik} + Γ^k_{kl} Γ^l_{ij} − Γ^k_{jl} Γ^l_{ik}`.
    pub fn scalar_curvature(&self) -> Result<RadicalSymbol> {
        let n = self.n;
        let g = &self.christoffel;
        let trace: Vec<RadicalSymbol> = (0..n).map(|i| self.trace(i)).collect();
        let mut r = RadicalSymbol::zero(&self.table);
        for i in 0..n {
            for j in 0..n {
                let mut ric = -&trace[i].partial_x(j)?;
                for k in 0..n {
                    ric = &ric + &g[k][i][j].partial_x(k)?;
                    ric = &ric + &(&trace[k] * &g[k][i][j]);
                    for l in 0..n {
                        ric = &ric - &(&g[k][j][l] * &g[l][i][k]);
                    }
                }
                r = &r + &(&self.inverse_metric[i][j] * &ric);
            }
        }
        Ok(r)
    }
}

/// The Laplacian `g^{ij} ∇_i ∇_j` on `w`-densities.
///
/// The first derivative is `∇_j φ = ∂_j φ − w Γ^l_{jl} φ`; the second acts on the
/// density-valued covector `ψ_j` as `∇_i ψ_j = ∂_i ψ_j − Γ^k_{ij} ψ_k − w Γ^l_{il} ψ_j`.
pub fn laplacian(chart: &SphereChart, w: &Rational) -> Result<DiffOperator> {
    let n = chart.n;
    let table = &chart.table;
    let trace: Vec<RadicalSymbol> = (0..n).map(|i| chart.trace(i)).collect();
    let first: Vec<DiffOperator> = (0..n)
        .map(|j| {
            Ok(&DiffOperator::derivative(table, j)?
                - &DiffOperator::multiplication(trace[j].scale(w))?)
        })
        .collect::<Result<_>>()?;
    let mut out = DiffOperator::zero(table);
    for i in 0..n {
        for j in 0..n {
            let mut second = DiffOperator::derivative(table, i)?.compose(&first[j])?;
            second = &second - &first[j].left_mul(&trace[i].scale(w))?;
            for k in 0..n {
                second = &second - &first[k].left_mul(&chart.christoffel[k][i][j])?;
            }
            out = &out + &second.left_mul(&chart.inverse_metric[i][j])?;
        }
    }
    Ok(out)
}

/// `(n+1)² λ(μ−1) / ((n−1)((1−δ)(n+1)+1))`, or `None` when `n = 1` or the
/// denominator vanishes.
pub fn curvature_constant(ctx: &QContext) -> Option<Rational> {
    let n = int(ctx.n() as i64);
    let np1 = &n + int(1);
    let den = (&n - int(1)) * ((Rational::one() - ctx.delta()) * &np1 + int(1));
    if den.is_zero() {
        return None;
    }
    Some(&np1 * &np1 * ctx.lambda() * (ctx.mu() - int(1)) / den)
}

/// Outcome of [`verify_geodesic`].
#[derive(Clone, Debug)]
pub struct GeodesicReport {
    pub passed: bool,
    /// `C_{λ,μ}`.
    pub c: Rational,
    /// Scalar curvature `R = n(n−1)`.
    pub r: Rational,
    /// `Q(H_δ)` as an operator.
    pub lhs: DiffOperator,
    /// `ν² (det g)^{δ/2} (Δ_λ + C R)`.
    pub rhs: DiffOperator,
    /// `lhs − rhs`, zero exactly when the check passed.
    pub difference: DiffOperator,
}

/// Checks `Q(H_δ) = ν² (det g)^{δ/2} (Δ + C R)` with `Δ` acting on `λ`-densities.
///
/// Normal ordering sends `ξ_i` to `ν ∂_i`, so `ν² = −ħ²` carries the overall sign.
/// The factor `(det g)^{δ/2} = r2^{−(n+1)δ/2}` turns the `λ`-density `Δφ` into a
/// `μ`-density.
pub fn verify_geodesic(ctx: &QContext) -> Result<GeodesicReport> {
    let n = ctx.n();
    if n < 2 {
        return Err(Error::DegenerateCurvature(format!(
            "curvature constant needs n >= 2, got n = {n}"
        )));
    }
    let c = curvature_constant(ctx).ok_or_else(|| {
        Error::DegenerateCurvature(format!(
            "(1 - delta)(n + 1) + 1 vanishes at n = {n}, delta = {}",
            ctx.delta()
        ))
    })?;
    let r = int((n * (n - 1)) as i64);
    let chart = build_metric(n)?;
    let lhs = normal_order(&quantize(ctx, &chart.weighted_hamiltonian(ctx.delta()))?)?;

    let lap = laplacian(&chart, ctx.lambda())?;
    let shift = DiffOperator::multiplication(RadicalSymbol::constant(
        &chart.table,
        Scalar::from_rational(&c * &r),
    ))?;
    let density = chart.r2_power(-(int(n as i64 + 1) * ctx.delta()) / int(2));
    let rhs = (&lap + &shift)
        .left_mul(&density)?
        .scalar_mul(&Scalar::nu_pow(2));
    let difference = &lhs - &rhs;
    Ok(GeodesicReport {
        passed: difference.is_zero(),
        c,
        r,
        lhs,
        rhs,
        difference,
    })
}

/// Outcome of [`verify_power_identity`].
#[derive(Clone, Debug)]
pub struct PowerReport {
    pub passed: bool,
    /// `2α(4α + n − 1)`.
    pub coefficient: Rational,
    /// `D(H^α)` computed by differentiation.
    pub divergence: RadicalSymbol,
    /// `D(H^α) = 0`.
    pub annihilated: bool,
}

/// Checks `D(H^α) = 2α(4α+n−1) H^{α−1} r2 ⟨ξ, x⟩`, and that `D(H^α)` vanishes
/// exactly when `α = 0` or `α = (1−n)/4`.
pub fn verify_power_identity(n: usize, alpha: &Rational) -> Result<PowerReport> {
    if n == 0 {
        return Err(Error::InvalidContext("dimension must be at least 1".into()));
    }
    let table = sphere_table(n)?;
    let h = RadicalSymbol::base_power(&table, HAMILTONIAN, alpha.clone())?;
    let divergence = h.divergence();
    let coefficient = int(2) * alpha * (int(4) * alpha + int(n as i64 - 1));
    let rhs = RadicalSymbol::base_power(&table, HAMILTONIAN, alpha - int(1))?
        .mul_poly(&(&r2_poly(n) * &pairing_poly(n)))
        .scale(&coefficient);
    let annihilated = divergence.is_zero();
    let critical = alpha.is_zero() || *alpha == (int(1) - int(n as i64)) / int(4);
    Ok(PowerReport {
        passed: divergence == rhs && annihilated == critical,
        coefficient,
        annihilated,
        divergence,
    })
}

/// Outcome of [`verify_length_element`].
#[derive(Clone, Debug)]
pub struct FixedPointReport {
    pub passed: bool,
    pub alpha: Rational,
    /// `Q(H^α)`, truncated after the first correction when the series does not stop.
    pub value: RadicalSymbol,
    /// The first-order correction `C_1 ν D(H^α)`.
    pub correction: RadicalSymbol,
}

/// Checks that `Q(H^α) = H^α`, i.e. that the series collapses to its first term.
pub fn verify_length_element(ctx: &QContext, alpha: &Rational) -> Result<FixedPointReport> {
    let table = sphere_table(ctx.n())?;
    let h = RadicalSymbol::base_power(&table, HAMILTONIAN, alpha.clone())?;
    let series = hypergeom_apply(ctx, Family::Quantization, &h, Some(1))?;
    let correction = &series.value - &h;
    Ok(FixedPointReport {
        passed: correction.is_zero() && !series.truncated,
        alpha: alpha.clone(),
        value: series.value,
        correction,
    })
}

/// Derivative index of `∂_i ∂_j`.
pub fn second_derivative_index(n: usize, i: usize, j: usize) -> Monomial {
    let mut e = vec![0; n];
    e[i] += 1;
    e[j] += 1;
    Monomial::new(e)
}
