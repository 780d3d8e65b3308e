use std::ops::{Add, Neg, Sub};

use crate::algebra::{Coeff, Monomial, Polynomial};
use crate::error::{Error, Result};

use super::chart::Chart;

/// A derivation `Σ c_k ∂_k`, stored by its coefficients in the plain frame.
///
/// Coefficients are arena elements. On a torus chart every such field is
/// logarithmic along the coordinate divisor; on a polynomial chart the
/// log-frame conversion in [`LogVectorField::log_coeffs`] is the check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogVectorField<C> {
    coeffs: Vec<Polynomial<C>>,
}

impl<C: Coeff> LogVectorField<C> {
    pub fn new(coeffs: Vec<Polynomial<C>>) -> Self {
        let n = coeffs.len();
        assert!(coeffs.iter().all(|c| c.nvars() == n), "field coefficients must share the context");
        LogVectorField { coeffs }
    }

    pub fn zero(nvars: usize) -> Self {
        LogVectorField { coeffs: vec![Polynomial::zero(nvars); nvars] }
    }

    /// `∂_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[i] = Polynomial::one(nvars);
        f
    }

    /// Frame element `ξ_i`: `z_i∂_i` on divisor coordinates, `∂_i` otherwise.
    pub fn frame(chart: &Chart, i: usize) -> Self {
        let n = chart.nvars();
        let mut f = Self::zero(n);
        f.coeffs[i] = if chart.is_log(i) { Polynomial::var(n, i) } else { Polynomial::one(n) };
        f
    }

    /// Builds `Σ v_k ξ_k` from log-frame coefficients.
    pub fn from_log_coeffs(chart: &Chart, v: Vec<Polynomial<C>>) -> Self {
        let n = chart.nvars();
        let coeffs = v
            .into_iter()
            .enumerate()
            .map(|(k, c)| if chart.is_log(k) { c.mul_monomial(&Monomial::var(n, k, 1)) } else { c })
            .collect();
        LogVectorField { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Polynomial<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial<C> {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Coefficients in the log frame `ξ_k`; fails when a divisor-coordinate
    /// coefficient `c_k` is not divisible by `z_k` in the arena.
    pub fn log_coeffs(&self, chart: &Chart) -> Result<Vec<Polynomial<C>>> {
        let n = chart.nvars();
        if n != self.nvars() {
            return Err(Error::ContextMismatch(format!("{}-variable field in a {n}-variable chart", self.nvars())));
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if !chart.is_log(k) {
                    return Ok(c.clone());
                }
                let v = c.mul_monomial(&Monomial::var(n, k, -1));
                chart.check_element(&v).map_err(|_| {
                    Error::NotLogarithmic(format!("coefficient of ∂{} is not divisible by {}", chart.name(k), chart.name(k)))
                })?;
                Ok(v)
            })
            .collect()
    }

    /// `δ(f)`.
    pub fn apply(&self, f: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero(f.nvars());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(k);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// `f·δ`.
    pub fn scale(&self, f: &Polynomial<C>) -> Self {
        LogVectorField { coeffs: self.coeffs.iter().map(|c| c * f).collect() }
    }

    /// The commutator `[δ1, δ2]`.
    pub fn lie_bracket(&self, other: &Self) -> Self {
        LogVectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| &self.apply(b) - &other.apply(a))
                .collect(),
        }
    }
}

impl<C: Coeff> Add for &LogVectorField<C> {
    type Output = LogVectorField<C>;

    fn add(self, rhs: &LogVectorField<C>) -> LogVectorField<C> {
        LogVectorField { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<C: Coeff> Sub for &LogVectorField<C> {
    type Output = LogVectorField<C>;

    fn sub(self, rhs: &LogVectorField<C>) -> LogVectorField<C> {
        LogVectorField { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<C: Coeff> Neg for &LogVectorField<C> {
    type Output = LogVectorField<C>;

    fn neg(self) -> LogVectorField<C> {
        LogVectorField { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::logcalc::Arena;

    type F = LogVectorField<Scalar>;
    type P = Polynomial<Scalar>;

    fn euler(n: usize, i: usize) -> F {
        let mut c = vec![P::zero(n); n];
        c[i] = P::var(n, i);
        F::new(c)
    }

    #[test]
    fn commuting_euler_fields() {
        assert!(euler(2, 0).lie_bracket(&euler(2, 1)).is_zero());
        let neg_y = -&euler(2, 1);
        assert!(neg_y.lie_bracket(&euler(2, 0)).is_zero());
    }

    #[test]
    fn partial_and_euler() {
        assert_eq!(F::partial(2, 0).lie_bracket(&euler(2, 0)), F::partial(2, 0));
    }

    #[test]
    fn log_coeffs_in_polynomial_arena() {
        let chart = Chart::with_names(&["x", "y"], &["x", "y"], Arena::Polynomial).unwrap();
        assert!(F::partial(2, 0).log_coeffs(&chart).is_err());
        let v = euler(2, 0).log_coeffs(&chart).unwrap();
        assert_eq!(v[0], P::one(2));
    }
}
