//! Exact arithmetic: scalars with a formal `2πi`, multivariate Laurent
//! polynomials, rational functions, gcd and fraction-free linear solving.

pub mod coeff;
pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use coeff::{Coeff, Field, GaussRational, Rational};
pub use linalg::{determinant, solve_linear};
pub use poly::{Monomial, Polynomial};
pub use rational::RationalFunction;
pub use scalar::Scalar;

/// Outcome of an ideal-membership test `f ∈ (h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divides<C> {
    Yes(Polynomial<C>),
    No,
}

impl<C> Divides<C> {
    pub fn quotient(&self) -> Option<&Polynomial<C>> {
        match self {
            Divides::Yes(q) => Some(q),
            Divides::No => None,
        }
    }
}

/// Decides `f ∈ (h)` by division by the single generator `h`.
pub fn divides<C: Coeff>(h: &Polynomial<C>, f: &Polynomial<C>) -> Divides<C> {
    assert!(!h.is_zero(), "divides: h must be nonzero");
    match f.exact_div(h) {
        Some(q) => Divides::Yes(q),
        None => Divides::No,
    }
}

/// Multivariate gcd, normalized so the leading coefficient is one.
pub fn gcd_mv<C: Coeff>(p: &Polynomial<C>, q: &Polynomial<C>) -> Polynomial<C> {
    p.gcd(q)
}
