//! Lie actions of polynomial vector fields and exact equivariance checks.
//!
//! A vector field `X = X^i ∂_i` acts
//!
//! * on `w`-densities by the first-order operator `L^w_X = X^i ∂_i + w (∂_i X^i)`,
//! * on weighted symbols by the cotangent lift
//!   `L^δ_X s = X^i ∂s/∂x^i − ξ_j (∂_i X^j) ∂s/∂ξ_i + δ (∂_i X^i) s`,
//! * on operators `F_λ → F_μ` by `L^{λ,μ}_X A = L^μ_X ∘ A − A ∘ L^λ_X`.
//!
//! Densities are never materialized: every check is an identity between operators
//! or symbols with exact coefficients.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;
use crate::quantize::{apply_series, normal_order, unorder, Coefficients, QContext};
use crate::quantize::coeffs::SeriesCoefficients;
use crate::symbols::{BaseTable, RadicalSymbol};

/// Density weight `λ`, `μ` or `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(pub Rational);

/// A vector field with polynomial coefficients in `x`.
///
/// Components are stored as polynomials in the `2n` symbol variables with no `ξ`
/// dependence, so they multiply symbols directly.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    n: usize,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(n: usize, components: Vec<Poly>) -> Result<Self> {
        if components.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: components.len(),
            });
        }
        for c in &components {
            if c.nvars() != 2 * n {
                return Err(Error::DimensionMismatch {
                    left: 2 * n,
                    right: c.nvars(),
                });
            }
            if c.max_degree_in(n..2 * n) > 0 {
                return Err(Error::NotOperatorSymbol(
                    "vector field component depends on the momenta".into(),
                ));
            }
        }
        Ok(VectorField { n, components })
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(2 * n, i).expect("index in range")
    }

    /// `∂_i`.
    pub fn translation(n: usize, i: usize) -> Self {
        let mut c = alloc::vec![Poly::zero(2 * n); n];
        c[i] = Poly::one(2 * n);
        VectorField { n, components: c }
    }

    /// `x^i ∂_j`.
    pub fn linear(n: usize, i: usize, j: usize) -> Self {
        let mut c = alloc::vec![Poly::zero(2 * n); n];
        c[j] = Self::x(n, i);
        VectorField { n, components: c }
    }

    /// `x^i x^j ∂_j`, summed over `j`.
    pub fn quadratic(n: usize, i: usize) -> Self {
        let xi = Self::x(n, i);
        let c = (0..n).map(|j| &xi * &Self::x(n, j)).collect();
        VectorField { n, components: c }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// Largest polynomial degree among the components.
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.max_degree_in(0..self.n))
            .max()
            .unwrap_or(0)
    }

    /// True for the affine fields (degree at most one).
    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    /// `∂_i X^i`.
    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(2 * self.n);
        for (i, c) in self.components.iter().enumerate() {
            out += &c.partial(i).expect("index in range");
        }
        out
    }

    /// Lie bracket `[X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let components = (0..n)
            .map(|i| {
                let mut c = Poly::zero(2 * n);
                for j in 0..n {
                    c += &(&self.components[j] * &other.components[i].partial(j).expect("j < n"));
                    c -= &(&other.components[j] * &self.components[i].partial(j).expect("j < n"));
                }
                c
            })
            .collect();
        Ok(VectorField { n, components })
    }

    /// Coordinates in the basis returned by [`sl_generators`], if the field lies in
    /// its span: `n` translation, `n²` linear (`x^i ∂_j` at `n + i·n + j`) and `n`
    /// quadratic coefficients.
    pub fn sl_coordinates(&self) -> Option<Vec<Rational>> {
        let n = self.n;
        let gens = sl_generators(n);
        let mut coords = Vec::with_capacity(gens.len());
        let one = Monomial::one(2 * n);
        for c in &self.components {
            coords.push(c.coeff(&one).as_rational()?);
        }
        for i in 0..n {
            for j in 0..n {
                coords.push(self.components[j].coeff(&Monomial::var(2 * n, i)).as_rational()?);
            }
        }
        for i in 0..n {
            let mut e = alloc::vec![0; 2 * n];
            e[i] = 2;
            coords.push(self.components[i].coeff(&Monomial::new(e)).as_rational()?);
        }
        let mut rebuilt = alloc::vec![Poly::zero(2 * n); n];
        for (g, a) in gens.iter().zip(&coords) {
            for (r, c) in rebuilt.iter_mut().zip(&g.components) {
                *r += &c.scale(a);
            }
        }
        (rebuilt == self.components).then_some(coords)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = Arc::new(BaseTable::empty(self.n));
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let s = RadicalSymbol::from_poly(&table, c.clone()).map_err(|_| fmt::Error)?;
            let text: String = alloc::format!("{s}");
            if text == "1" {
                write!(f, "d{}", i + 1)?;
            } else {
                write!(f, "({text})*d{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The `n + n² + n` fields spanning the projective action of `sl(n+1)` on one
/// affine chart: translations, linear fields `x^i ∂_j` (row-major in `i`), and the
/// quadratic fields `x^i x^j ∂_j`.
pub fn sl_generators(n: usize) -> Vec<VectorField> {
    let mut out = Vec::with_capacity(n * n + 2 * n);
    out.extend((0..n).map(|i| VectorField::translation(n, i)));
    for i in 0..n {
        out.extend((0..n).map(|j| VectorField::linear(n, i, j)));
    }
    out.extend((0..n).map(|i| VectorField::quadratic(n, i)));
    out
}

fn lift(table: &Arc<BaseTable>, p: &Poly) -> Result<RadicalSymbol> {
    RadicalSymbol::from_poly(table, p.clone())
}

fn check_dimension(table: &BaseTable, x: &VectorField) -> Result<()> {
    if table.n() != x.n {
        return Err(Error::DimensionMismatch {
            left: table.n(),
            right: x.n,
        });
    }
    Ok(())
}

/// `L^w_X = X^i ∂_i + w (∂_i X^i)` as an operator on `w`-densities.
pub fn act_on_density_op(table: &Arc<BaseTable>, x: &VectorField, w: &Weight) -> Result<DiffOperator> {
    check_dimension(table, x)?;
    let n = x.n;
    let mut op = DiffOperator::zero(table);
    for (i, c) in x.components.iter().enumerate() {
        op.add_term(Monomial::var(n, i), lift(table, c)?)?;
    }
    op.add_term(Monomial::one(n), lift(table, &x.divergence().scale(&w.0))?)?;
    Ok(op)
}

/// `L^δ_X s = X^i ∂s/∂x^i − ξ_j (∂_i X^j) ∂s/∂ξ_i + δ (∂_i X^i) s`.
pub fn act_on_symbol(x: &VectorField, delta: &Weight, s: &RadicalSymbol) -> Result<RadicalSymbol> {
    let table = s.table();
    check_dimension(table, x)?;
    let n = x.n;
    let mut out = s.mul_poly(&x.divergence().scale(&delta.0));
    for i in 0..n {
        out = &out + &s.partial_x(i)?.mul_poly(&x.components[i]);
        let ds = s.partial_xi(i)?;
        if ds.is_zero() {
            continue;
        }
        let mut lifted = Poly::zero(2 * n);
        for j in 0..n {
            let dxj = x.components[j].partial(i)?;
            if !dxj.is_zero() {
                lifted += &(&Poly::var(2 * n, n + j)? * &dxj);
            }
        }
        out = &out - &ds.mul_poly(&lifted);
    }
    Ok(out)
}

/// `L^{λ,μ}_X A = L^μ_X ∘ A − A ∘ L^λ_X`.
pub fn act_on_operator(x: &VectorField, ctx: &QContext, a: &DiffOperator) -> Result<DiffOperator> {
    let table = a.table();
    let lmu = act_on_density_op(table, x, &Weight(ctx.mu().clone()))?;
    let llambda = act_on_density_op(table, x, &Weight(ctx.lambda().clone()))?;
    Ok(&lmu.compose(a)? - &a.compose(&llambda)?)
}

/// Outcome of one equivariance check.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivarianceReport {
    pub passed: bool,
    /// `I(Q(L_X s)) − L_X(I(Q(s)))`; zero exactly when the check passed.
    pub discrepancy: DiffOperator,
}

/// Checks `I(Q(L^δ_X s)) = L^{λ,μ}_X I(Q(s))` with the quantization series of `ctx`.
pub fn check_equivariance(ctx: &QContext, s: &RadicalSymbol, x: &VectorField) -> Result<EquivarianceReport> {
    check_equivariance_with(&SeriesCoefficients::quantization(ctx), s, x)
}

/// As [`check_equivariance`] with an arbitrary coefficient source, e.g. a truncated
/// family for negative controls.
pub fn check_equivariance_with(
    coeffs: &dyn Coefficients,
    s: &RadicalSymbol,
    x: &VectorField,
) -> Result<EquivarianceReport> {
    let ctx = coeffs.context();
    let delta = Weight(ctx.delta().clone());
    let acted = act_on_symbol(x, &delta, s)?;
    let lhs = normal_order(&apply_series(coeffs, &acted, None)?.value)?;
    let op = normal_order(&apply_series(coeffs, s, None)?.value)?;
    let rhs = act_on_operator(x, ctx, &op)?;
    let discrepancy = &lhs - &rhs;
    Ok(EquivarianceReport {
        passed: discrepancy.is_zero(),
        discrepancy,
    })
}

/// Mirror check for the symbol map: `σ(L_X A) = L^δ_X σ(A)` for the operator
/// `A = I(s)`, both sides compared as symbols.
pub fn check_symbol_equivariance(
    ctx: &QContext,
    s: &RadicalSymbol,
    x: &VectorField,
) -> Result<(bool, RadicalSymbol)> {
    let sigma = SeriesCoefficients::symbol(ctx);
    let a = normal_order(s)?;
    let acted_op = act_on_operator(x, ctx, &a)?;
    let lhs = apply_series(&sigma, &unorder(&acted_op), None)?.value;
    let symbol = apply_series(&sigma, &unorder(&a), None)?.value;
    let rhs = act_on_symbol(x, &Weight(ctx.delta().clone()), &symbol)?;
    let diff = &lhs - &rhs;
    Ok((diff.is_zero(), diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Scalar};

    fn table(n: usize) -> Arc<BaseTable> {
        Arc::new(BaseTable::empty(n))
    }

    #[test]
    fn density_action_of_generators() {
        let t = table(2);
        let w = Weight(rat(2, 5));
        let d1 = act_on_density_op(&t, &VectorField::translation(2, 0), &w).unwrap();
        assert_eq!(d1, DiffOperator::derivative(&t, 0).unwrap());

        let lin = act_on_density_op(&t, &VectorField::linear(2, 0, 0), &w).unwrap();
        let x1 = RadicalSymbol::x(&t, 0).unwrap();
        let expected = &DiffOperator::from_term(&t, Monomial::var(2, 0), x1.clone()).unwrap()
            + &DiffOperator::multiplication(RadicalSymbol::constant(&t, Scalar::from_rational(rat(2, 5))))
                .unwrap();
        assert_eq!(lin, expected);

        // divergence of x¹x^j∂_j is (n+1)x¹
        let quad = act_on_density_op(&t, &VectorField::quadratic(2, 0), &w).unwrap();
        let x2 = RadicalSymbol::x(&t, 1).unwrap();
        let expected = &(&DiffOperator::from_term(&t, Monomial::var(2, 0), &x1 * &x1).unwrap()
            + &DiffOperator::from_term(&t, Monomial::var(2, 1), &x1 * &x2).unwrap())
            + &DiffOperator::multiplication(x1.scale(&(int(3) * rat(2, 5)))).unwrap();
        assert_eq!(quad, expected);
    }

    #[test]
    fn symbol_action_examples() {
        let t = table(1);
        let x = RadicalSymbol::x(&t, 0).unwrap();
        let p = RadicalSymbol::xi(&t, 0).unwrap();
        let zero = Weight(int(0));
        assert_eq!(
            act_on_symbol(&VectorField::translation(1, 0), &zero, &(&x * &p)).unwrap(),
            p
        );
        assert_eq!(
            act_on_symbol(&VectorField::linear(1, 0, 0), &zero, &p).unwrap(),
            -&p
        );
    }

    #[test]
    fn operator_action_examples() {
        let t = table(1);
        let ctx = QContext::new(1, int(0), int(0)).unwrap();
        let id = DiffOperator::identity(&t);
        assert!(act_on_operator(&VectorField::translation(1, 0), &ctx, &id).unwrap().is_zero());

        let d = DiffOperator::derivative(&t, 0).unwrap();
        let got = act_on_operator(&VectorField::linear(1, 0, 0), &ctx, &d).unwrap();
        assert_eq!(got, -&d);

        let ctx = QContext::new(1, rat(1, 3), rat(1, 3)).unwrap();
        let x = VectorField::quadratic(1, 0);
        let l = act_on_density_op(&t, &x, &Weight(rat(1, 3))).unwrap();
        assert!(act_on_operator(&x, &ctx, &l).unwrap().is_zero());
    }

    #[test]
    fn generator_counts() {
        assert_eq!(sl_generators(1).len(), 3);
        assert_eq!(sl_generators(2).len(), 8);
        assert_eq!(sl_generators(3).len(), 15);
        for g in sl_generators(3).iter().take(3) {
            assert!(g.divergence().is_zero());
        }
    }

    #[test]
    fn sl_coordinates_round_trip() {
        let gens = sl_generators(2);
        for (k, g) in gens.iter().enumerate() {
            let c = g.sl_coordinates().unwrap();
            for (i, a) in c.iter().enumerate() {
                assert_eq!(*a, if i == k { int(1) } else { int(0) });
            }
        }
        // x¹x¹∂_1 alone is not in the span for n = 2
        let x1 = Poly::var(4, 0).unwrap();
        let f = VectorField::new(2, alloc::vec![&x1 * &x1, Poly::zero(4)]).unwrap();
        assert!(f.sl_coordinates().is_none());
    }

    #[test]
    fn first_order_equivariance_at_half_densities() {
        let t = table(1);
        let ctx = QContext::new(1, rat(1, 2), rat(1, 2)).unwrap();
        let s = &RadicalSymbol::x(&t, 0).unwrap() * &RadicalSymbol::xi(&t, 0).unwrap();
        for g in sl_generators(1) {
            let r = check_equivariance(&ctx, &s, &g).unwrap();
            assert!(r.passed, "{g}: {}", r.discrepancy);
        }
    }

    fn sample_symbols(t: &Arc<BaseTable>) -> Vec<RadicalSymbol> {
        let n = t.n();
        let x = |i| RadicalSymbol::x(t, i).unwrap();
        let p = |i| RadicalSymbol::xi(t, i).unwrap();
        let mut out = alloc::vec![&x(0) * &p(0), &(&x(0) * &x(0)) * &(&p(0) * &p(0))];
        if n > 1 {
            out.push(&(&x(0) * &x(1)) * &(&p(0) * &p(1)));
            out.push(&(&(&x(1) * &p(0)) * &p(0)) * &p(1));
        }
        out.push(&(&p(0) * &p(0)) * &p(0));
        out
    }

    #[test]
    fn generic_weights_all_generators() {
        for (n, lambda, mu) in [(1, rat(1, 3), rat(2, 7)), (2, rat(1, 5), rat(1, 2)), (2, int(0), int(0))] {
            let t = table(n);
            let ctx = QContext::new(n, lambda, mu).unwrap();
            for s in sample_symbols(&t) {
                for g in sl_generators(n) {
                    let r = check_equivariance(&ctx, &s, &g).unwrap();
                    assert!(r.passed, "n={n} s={s} X={g}: {}", r.discrepancy);
                    let (ok, diff) = check_symbol_equivariance(&ctx, &s, &g).unwrap();
                    assert!(ok, "sigma n={n} s={s} X={g}: {diff}");
                }
            }
        }
    }

    #[test]
    fn truncated_series_breaks_equivariance() {
        use crate::quantize::TruncatedCoefficients;
        let t = table(1);
        let ctx = QContext::new(1, rat(1, 2), rat(1, 2)).unwrap();
        let full = SeriesCoefficients::quantization(&ctx);
        let cut = TruncatedCoefficients::new(&full, 0);
        let s = &RadicalSymbol::x(&t, 0).unwrap() * &RadicalSymbol::xi(&t, 0).unwrap();
        let r = check_equivariance_with(&cut, &s, &VectorField::quadratic(1, 0)).unwrap();
        assert!(!r.passed);
        assert!(!r.discrepancy.is_zero());
    }

    #[test]
    fn brackets_close() {
        for n in 1..=3 {
            let gens = sl_generators(n);
            for a in &gens {
                for b in &gens {
                    assert!(a.bracket(b).unwrap().sl_coordinates().is_some(), "[{a}, {b}]");
                }
            }
        }
        let d = VectorField::translation(1, 0);
        let e = VectorField::linear(1, 0, 0);
        assert_eq!(e.bracket(&d).unwrap(), VectorField::new(1, alloc::vec![-&Poly::one(2)]).unwrap());
    }
}
