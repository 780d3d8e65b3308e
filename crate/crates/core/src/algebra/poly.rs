//! Sparse multivariate (Laurent) polynomials over a [`Coeff`] ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use super::coeff::Coeff;
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// the exponent of the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, idx: usize, exp: i32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exp(&self, idx: usize) -> i32 {
        self.0[idx]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent stays non-negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let exps: Vec<i32> = self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect();
        exps.iter().all(|&e| e >= 0).then(|| Monomial::new(exps))
    }

    /// Quotient allowing negative exponents.
    pub fn laurent_div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn with_exp(&self, idx: usize, exp: i32) -> Monomial {
        let mut e = self.0.to_vec();
        e[idx] = exp;
        Monomial::new(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in a fixed number of variables. Exponents may be negative;
/// which variables are allowed to carry negative exponents is decided by the
/// arena of the chart the polynomial lives in, not by this type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, idx, 1), C::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Self {
        Self::from_terms(nvars, [(m, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(nvars: usize, terms: I) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    /// The constant value when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Single term `c·z^α`, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &C)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.exps().iter().all(|&e| e >= 0))
    }

    /// Total degree of the leading term; `-1` for zero. Laurent terms can
    /// make this smaller than the largest exponent of a single variable.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, idx: usize) -> i32 {
        self.terms.keys().map(|m| m.exp(idx)).max().unwrap_or(i32::MIN)
    }

    pub fn min_degree_in(&self, idx: usize) -> i32 {
        self.terms.keys().map(|m| m.exp(idx)).min().unwrap_or(0)
    }

    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.exp(idx) != 0)
    }

    /// Componentwise minimum of the exponents (the largest monomial dividing
    /// every term in the Laurent sense).
    pub fn min_exponents(&self) -> Monomial {
        let mut e = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (slot, &x) in e.iter_mut().zip(m.exps()) {
                *slot = (*slot).min(x);
            }
        }
        if self.terms.is_empty() {
            e.iter_mut().for_each(|x| *x = 0);
        }
        Monomial::new(e)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch(format!(
                "{} variables vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// `self^k` for `k ≥ 0`; negative powers are only defined for monomials.
    pub fn pow(&self, k: i32) -> Option<Self> {
        if k < 0 {
            let (m, c) = self.as_monomial()?;
            let inv = c.inverse()?;
            let m = Monomial::new(m.exps().iter().map(|e| -e).collect());
            return Polynomial::monomial(self.nvars, m, inv).pow(-k);
        }
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Some(acc)
    }

    /// Formal partial derivative; Laurent exponents differentiate monomially.
    pub fn partial(&self, idx: usize) -> Self {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.exp(idx) != 0).map(|(m, c)| {
                let e = m.exp(idx);
                (m.with_exp(idx, e - 1), c.clone() * C::from_int(e as i64))
            }),
        )
    }

    /// `z_idx ∂/∂z_idx`, which multiplies each term by its exponent.
    pub fn euler(&self, idx: usize) -> Self {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * C::from_int(m.exp(idx) as i64))),
        )
    }

    /// Substitutes `z_idx = value`; the variable must not carry negative
    /// exponents when `value` is zero.
    pub fn substitute(&self, idx: usize, value: &Polynomial<C>) -> Result<Self> {
        self.check_ctx(value)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            let factor = value
                .pow(e)
                .ok_or_else(|| Error::Invalid("negative power of a non-unit substitution".into()))?;
            let rest = Polynomial::monomial(self.nvars, m.with_exp(idx, 0), c.clone());
            out = out.try_add(&rest.try_mul(&factor)?)?;
        }
        Ok(out)
    }

    /// Keeps terms where `z_idx` has exponent zero (evaluation at `z_idx = 0`
    /// for a polynomial that is regular in `z_idx`).
    pub fn at_zero(&self, idx: usize) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(idx) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embeds into a context with `extra` more variables appended.
    pub fn extend_vars(&self, extra: usize) -> Self {
        let nvars = self.nvars + extra;
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exps().to_vec();
                    e.resize(nvars, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient in the polynomial ring (non-negative exponents).
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.nvars != divisor.nvars {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(self.nvars));
        }
        if let Some(c) = divisor.as_constant() {
            if let Some(inv) = c.inverse() {
                return Some(self.scale(&inv));
            }
        }
        C::poly_exact_div(self, divisor)
    }

    /// Exact quotient where both sides may carry negative exponents; the
    /// monomial parts are treated as units.
    pub fn laurent_exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let ma = self.min_exponents();
        let mb = divisor.min_exponents();
        let a = self.mul_monomial(&Monomial::new(ma.exps().iter().map(|e| -e).collect()));
        let b = divisor.mul_monomial(&Monomial::new(mb.exps().iter().map(|e| -e).collect()));
        let q = a.exact_div(&b)?;
        Some(q.mul_monomial(&ma.laurent_div(&mb)))
    }

    /// Gcd (polynomial ring, non-negative exponents) normalized per the
    /// coefficient ring.
    pub fn gcd(&self, other: &Self) -> Self {
        C::poly_gcd(self, other)
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                let base = if e < 0 { x.inverse()? } else { x.clone() };
                for _ in 0..e.unsigned_abs() {
                    t = t * base.clone();
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Add for Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    /// Debug-style rendering with positional variable names `z0, z1, …`;
    /// named output goes through the frontend printer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{i}")?,
                    _ => write!(f, "*z{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::Rational;
    use crate::algebra::Scalar;

    type P = Polynomial<Scalar>;

    fn x() -> P {
        P::var(2, 0)
    }

    fn y() -> P {
        P::var(2, 1)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&x() + &y()) * &(&x() - &y());
        let rhs = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_inverse() {
        let xinv = x().pow(-1).unwrap();
        assert_eq!(&xinv * &x(), P::one(2));
        assert!(!xinv.is_polynomial());
    }

    #[test]
    fn saito_row_product() {
        // x·(−y²) − y·x² = −xy² − x²y
        let lhs = &(&x() * &-(&y() * &y())) - &(&y() * &(&x() * &x()));
        let rhs = -(&(&x() * &(&y() * &y())) + &(&(&x() * &x()) * &y()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials() {
        let p = &(&x() * &x()) * &y();
        assert_eq!(p.partial(0), (&x() * &y()).scale(&Scalar::int(2)));
        let xinv = x().pow(-1).unwrap();
        assert_eq!(xinv.partial(0), -x().pow(-2).unwrap());
    }

    #[test]
    fn saito_partial_z() {
        let n = 3;
        let (x, y, z) = (P::var(n, 0), P::var(n, 1), P::var(n, 2));
        let two = P::constant(n, Scalar::int(2));
        let lin = &(&(&z - &two) * &x) + &y;
        let base = &(&x * &y) * &(&x + &y);
        let h = &base * &lin;
        assert_eq!(h.partial(2), &x * &base);
    }

    #[test]
    fn context_mismatch() {
        let a = P::var(2, 0);
        let b = P::var(3, 0);
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x() * &x()) + &(&(&x() * &y()) * &y());
        assert_eq!(p.leading().unwrap().0, &Monomial::new(vec![1, 2]));
        let q: Polynomial<Rational> = Polynomial::var(2, 0);
        assert_eq!(q.total_degree(), 1);
    }
}
