use std::ops::{Add, Div, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Quotient `num / den` of polynomials. Kept unreduced through arithmetic;
/// [`RationalFunction::reduce`] cancels the gcd on demand.
#[derive(Clone, Debug)]
pub struct RationalFunction<C> {
    pub num: Polynomial<C>,
    pub den: Polynomial<C>,
}

impl<C: Coeff> RationalFunction<C> {
    pub fn new(num: Polynomial<C>, den: Polynomial<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial<C>) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(n) }
    }

    /// A Laurent polynomial as `p·z^m / z^m` with both parts polynomial.
    pub fn from_laurent(p: &Polynomial<C>) -> Self {
        let lo = p.min_exponents();
        let clear: Vec<i32> = lo.exps().iter().map(|&e| (-e).max(0)).collect();
        let m = Monomial::new(clear);
        RationalFunction {
            num: p.mul_monomial(&m),
            den: Polynomial::monomial(p.nvars(), m, C::one()),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the gcd of numerator and denominator and normalizes the
    /// denominator's leading coefficient where the coefficient ring allows.
    pub fn reduce(&self) -> Self {
        let n = self.num.nvars();
        if self.num.is_zero() {
            return Self::zero(n);
        }
        let g = self.num.gcd(&self.den);
        let (mut num, mut den) = if g.is_constant() {
            (self.num.clone(), self.den.clone())
        } else {
            (
                self.num.exact_div(&g).expect("gcd divides numerator"),
                self.den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if let Some(inv) = den.leading_coeff().inverse() {
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    /// The polynomial value when the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<Polynomial<C>> {
        self.num.exact_div(&self.den)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num: &self.num * &rhs.den, den: &self.den * &rhs.num })
    }
}

impl<C: Coeff> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Coeff> Eq for RationalFunction<C> {}

impl<C: Coeff> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.den == rhs.den {
            return RationalFunction { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<C: Coeff> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self + &-rhs
    }
}

impl<C: Coeff> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl<C: Coeff> Div for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn div(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.try_div(rhs).expect("rational function division by zero")
    }
}

impl<C: Coeff> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn neg(self) -> RationalFunction<C> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}
