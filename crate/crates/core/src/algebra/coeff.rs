//! Coefficient domains for the polynomial engine.
//!
//! Everything above this module is generic over [`Coeff`]. Exact rationals,
//! Gaussian rationals and the [`Scalar`](super::Scalar) ring with a formal
//! `T = 2πi` all implement it. Floating point types are deliberately absent:
//! every predicate in the calculus is an exact identity.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd;
use super::poly::Polynomial;

pub type Rational = BigRational;
pub type GaussRational = Complex<BigRational>;

/// Commutative ring of exact polynomial coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// Inverse when the element is a unit of the coefficient ring.
    fn inverse(&self) -> Option<Self>;

    /// Gcd of two polynomials, normalized so the leading coefficient is one
    /// (or the closest canonical unit-free representative).
    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self>;

    /// Exact quotient `a / b` when `b` divides `a` in the polynomial ring.
    /// Both arguments must have non-negative exponents.
    fn poly_exact_div(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>>;

    /// Division with remainder `a = q·b + r` by the single divisor `b`.
    fn poly_divmod(a: &Polynomial<Self>, b: &Polynomial<Self>) -> (Polynomial<Self>, Polynomial<Self>);

    /// The rational value, when the element is a plain rational number.
    fn as_rational(&self) -> Option<Rational>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }
}

/// Coefficient rings that are fields; multivariate division and gcd run here.
pub trait Field: Coeff {
    fn inv(&self) -> Self {
        self.inverse().expect("inverse of zero")
    }
}

impl Coeff for Rational {
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        gcd::field_gcd(a, b)
    }

    fn poly_exact_div(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        gcd::field_exact_div(a, b)
    }

    fn poly_divmod(a: &Polynomial<Self>, b: &Polynomial<Self>) -> (Polynomial<Self>, Polynomial<Self>) {
        gcd::field_divmod(a, b)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Field for Rational {}

impl Coeff for GaussRational {
    fn from_int(v: i64) -> Self {
        Complex::new(Rational::from_int(v), Rational::zero())
    }

    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm_sqr();
        Some(Complex::new(&self.re / &norm, -&self.im / &norm))
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        gcd::field_gcd(a, b)
    }

    fn poly_exact_div(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        gcd::field_exact_div(a, b)
    }

    fn poly_divmod(a: &Polynomial<Self>, b: &Polynomial<Self>) -> (Polynomial<Self>, Polynomial<Self>) {
        gcd::field_divmod(a, b)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
}

impl Field for GaussRational {}

/// Canonical text for a rational: `3`, `-3/2`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text for a Gaussian rational; `None` for zero.
///
/// Single-part values print bare (`3/2`, `-I`, `2*I`); values with both parts
/// print parenthesized so they can be multiplied without re-association.
pub fn fmt_gauss(g: &GaussRational) -> String {
    let re = &g.re;
    let im = &g.im;
    let im_part = |im: &Rational| -> String {
        if im.is_one() {
            "I".to_string()
        } else if (-im).is_one() {
            "-I".to_string()
        } else {
            format!("{}*I", fmt_rational(im))
        }
    };
    match (re.is_zero(), im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => fmt_rational(re),
        (true, false) => im_part(im),
        (false, false) => {
            if im.is_negative() {
                format!("({} - {})", fmt_rational(re), im_part(&-im))
            } else {
                format!("({} + {})", fmt_rational(re), im_part(im))
            }
        }
    }
}
