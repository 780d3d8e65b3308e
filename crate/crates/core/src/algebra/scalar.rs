//! Exact constants: Gaussian rationals adjoined with a formal invertible `T = 2πi`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use super::coeff::{fmt_gauss, Coeff, GaussRational, Rational};
use super::gcd;
use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Element of `ℚ(i)[T, T⁻¹]`, stored as a table `k ↦ c_k` meaning `Σ c_k T^k`.
///
/// The table never holds a zero value, so the empty table is zero and equality
/// of values is equality of tables.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, GaussRational>,
}

impl Scalar {
    pub fn from_terms<I: IntoIterator<Item = (i32, GaussRational)>>(terms: I) -> Self {
        let mut s = Scalar::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn gauss(c: GaussRational) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn rational(q: Rational) -> Self {
        Self::gauss(Complex::new(q, Rational::zero()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(v: i64) -> Self {
        Self::ratio(v, 1)
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Self::gauss(Complex::new(Rational::zero(), Rational::one()))
    }

    /// `T^k` with `T = 2πi`.
    pub fn t_pow(k: i32) -> Self {
        Self::from_terms([(k, GaussRational::one())])
    }

    /// `c · T^k`.
    pub fn monomial(c: GaussRational, k: i32) -> Self {
        Self::from_terms([(k, c)])
    }

    fn add_term(&mut self, k: i32, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(GaussRational::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(k, c)` when the scalar is a single term `c·T^k`.
    pub fn single_power(&self) -> Option<(i32, &GaussRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Coefficient of `T^k`.
    pub fn coeff(&self, k: i32) -> GaussRational {
        self.terms.get(&k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: i32) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        // conj(T) = -T, so odd powers change sign on top of conjugating c
        Self::from_terms(self.terms.iter().map(|(k, c)| {
            let c = c.conj();
            (*k, if k.rem_euclid(2) == 1 { -c } else { c })
        }))
    }

    /// Rational integer value, when the scalar is one (T-power 0, real, integral).
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        let (k, c) = self.single_power()?;
        (k == 0 && c.im.is_zero() && c.re.is_integer()).then(|| c.re.to_integer())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.clone() * rhs.try_inverse()?)
    }

    /// Inverse of a single-power scalar.
    pub fn try_inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.single_power() {
            Some((k, c)) => Ok(Scalar::monomial(c.inverse().expect("nonzero"), -k)),
            None => Err(Error::NotInvertible(self.to_string())),
        }
    }

    /// Exact quotient in `ℚ(i)[T, T⁻¹]`, which is a Laurent ring in one
    /// variable and hence allows division whenever the quotient exists.
    pub fn exact_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let a = scalar_to_univariate(self);
        let b = scalar_to_univariate(rhs);
        let q = gcd::field_exact_div(&a.0, &b.0)?;
        Some(univariate_to_scalar(&q, a.1 - b.1))
    }
}

/// `(p(T), shift)` with `s = p(T)·T^shift` and `p` not divisible by `T`.
fn scalar_to_univariate(s: &Scalar) -> (Polynomial<GaussRational>, i32) {
    let lo = s.min_power().unwrap_or(0);
    let p = Polynomial::from_terms(
        1,
        s.terms()
            .map(|(k, c)| (Monomial::new(vec![k - lo]), c.clone())),
    );
    (p, lo)
}

fn univariate_to_scalar(p: &Polynomial<GaussRational>, shift: i32) -> Scalar {
    Scalar::from_terms(p.terms().map(|(m, c)| (m.exp(0) + shift, c.clone())))
}

impl fmt::Display for Scalar {
    /// Canonical text: terms in increasing power of `T`, e.g. `1/2 + 3*T^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let (neg, c) = split_sign(c);
            let body = match k {
                0 => fmt_gauss(&c),
                _ => {
                    let t = if k == 1 { "T".to_string() } else { format!("T^{k}") };
                    if c.is_one() {
                        t
                    } else {
                        format!("{}*{}", fmt_gauss(&c), t)
                    }
                }
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Pulls a leading minus sign out of a Gaussian coefficient for printing.
pub(crate) fn split_sign(c: &GaussRational) -> (bool, GaussRational) {
    let neg = if c.re.is_zero() {
        c.im < Rational::zero()
    } else {
        c.re < Rational::zero() && c.im.is_zero()
    };
    if neg {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::t_pow(0)
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(mut self, rhs: Scalar) -> Scalar {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Div for Scalar {
    type Output = Scalar;

    /// Panics unless `rhs` is a nonzero single-power scalar; use
    /// [`Scalar::checked_div`] for the fallible form.
    fn div(self, rhs: Scalar) -> Scalar {
        self.checked_div(&rhs).expect("scalar division")
    }
}

impl Coeff for Scalar {
    fn from_int(v: i64) -> Self {
        Scalar::int(v)
    }

    fn from_rational(q: &Rational) -> Self {
        Scalar::rational(q.clone())
    }

    fn inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        gcd::scalar_gcd(a, b)
    }

    fn poly_exact_div(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        gcd::scalar_exact_div(a, b)
    }

    fn poly_divmod(a: &Polynomial<Self>, b: &Polynomial<Self>) -> (Polynomial<Self>, Polynomial<Self>) {
        gcd::scalar_divmod(a, b)
    }

    fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (k, c) = self.single_power()?;
        (k == 0 && c.im.is_zero()).then(|| c.re.clone())
    }
}
