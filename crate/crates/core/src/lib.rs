//! Exact logarithmic symplectic calculus on affine charts.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: scalars in `ℚ(i)[T, T⁻¹]` with `T = 2πi`, sparse Laurent
//!   polynomials, gcd, and Bareiss elimination. Generic over [`Coeff`].
//! * [`divisor`]: reducedness, coordinate normal crossings, Saito's freeness
//!   criterion, weighted homogeneity.
//! * [`logcalc`]: logarithmic vector fields and forms, `d`, wedge, interior
//!   product, Lie derivative and bracket, residues, symplectic data.
//! * [`poisson`]: Hamiltonian fields and the regular and singular brackets.
//! * [`diffop`]: first-order logarithmic operators on a trivialized line.
//! * [`prequant`]: rank-1 log connections, periods, integrality and the
//!   prequantization pipeline.
//! * [`frontend`]: the session-file grammar and canonical printer.

pub mod algebra;
pub mod diffop;
pub mod divisor;
pub mod error;
pub mod frontend;
pub mod logcalc;
pub mod poisson;
pub mod prequant;
#[cfg(any(test, feature = "testing"))]
pub mod testing;

pub use algebra::{Coeff, Field, GaussRational, Polynomial, Rational, RationalFunction, Scalar};
pub use error::{Error, Result};

/// Polynomials and Laurent polynomials with `ℚ(i)[T, T⁻¹]` coefficients.
pub type Poly = Polynomial<Scalar>;
/// Same storage as [`Poly`]; negative exponents are admitted on divisor
/// coordinates of a torus chart.
pub type LaurentPoly = Polynomial<Scalar>;
/// Polynomials over exact rationals.
pub type QPoly = Polynomial<Rational>;
pub type RatFn = RationalFunction<Scalar>;
pub type VectorField = logcalc::LogVectorField<Scalar>;
pub type Form = logcalc::LogForm<Scalar>;
pub type Chart = logcalc::Chart;
pub type Symplectic = logcalc::SymplecticData<Scalar>;
