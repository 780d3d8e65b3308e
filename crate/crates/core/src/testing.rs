//! Seeded random generators for property tests. Objects are drawn small so
//! that exact arithmetic stays fast.

use num_complex::Complex;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{Monomial, Polynomial, Scalar};
use crate::diffop::LogDiffOp1;
use crate::logcalc::{Arena, Chart, LogForm, LogVectorField};

type P = Polynomial<Scalar>;

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

/// A Gaussian rational times `T^k` with `|k| ≤ 1`, occasionally a sum of two.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let one = |rng: &mut R| {
        let im = if rng.gen_bool(0.2) { small_rational(rng) } else { BigRational::from_integer(0.into()) };
        Scalar::monomial(Complex::new(small_rational(rng), im), rng.gen_range(-1..=1))
    };
    let mut s = one(rng);
    if rng.gen_bool(0.15) {
        s = s + one(rng);
    }
    s
}

/// A nonzero rational scalar with no `T`.
pub fn rational_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let q = small_rational(rng);
        if q != BigRational::from_integer(0.into()) {
            return Scalar::rational(q);
        }
    }
}

/// An arena element with up to `terms` terms of degree at most `deg` in
/// each variable; divisor coordinates of a torus chart also get negative
/// exponents down to `-1`.
pub fn poly<R: Rng>(rng: &mut R, chart: &Chart, terms: usize, deg: i32) -> P {
    let n = chart.nvars();
    let mut p = P::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let exps = (0..n)
            .map(|i| {
                let lo = if chart.arena() == Arena::Torus && chart.is_log(i) { -1 } else { 0 };
                rng.gen_range(lo..=deg)
            })
            .collect();
        p.add_term(Monomial::new(exps), scalar(rng));
    }
    p
}

/// A polynomial with rational coefficients and non-negative exponents.
pub fn rational_poly<R: Rng>(rng: &mut R, nvars: usize, terms: usize, deg: i32) -> P {
    let mut p = P::zero(nvars);
    for _ in 0..rng.gen_range(1..=terms) {
        let exps = (0..nvars).map(|_| rng.gen_range(0..=deg)).collect();
        p.add_term(Monomial::new(exps), rational_scalar(rng));
    }
    p
}

/// A logarithmic vector field: random coefficients in the log frame.
pub fn field<R: Rng>(rng: &mut R, chart: &Chart) -> LogVectorField<Scalar> {
    let coeffs = (0..chart.nvars()).map(|_| poly(rng, chart, 2, 1)).collect();
    LogVectorField::from_log_coeffs(chart, coeffs)
}

pub fn form<R: Rng>(rng: &mut R, chart: &Chart, degree: usize) -> LogForm<Scalar> {
    let n = chart.nvars();
    let mut w = LogForm::zero(n, degree);
    for cell in 0u32..(1 << n) {
        if cell.count_ones() as usize == degree && rng.gen_bool(0.6) {
            w.add_cell(cell, poly(rng, chart, 2, 1));
        }
    }
    w
}

/// `d η` plus constant multiples of pure divisor cells; closed by
/// construction.
pub fn closed_form<R: Rng>(rng: &mut R, chart: &Chart, degree: usize) -> LogForm<Scalar> {
    let n = chart.nvars();
    let mut w = if degree == 0 { LogForm::zero(n, 0) } else { form(rng, chart, degree - 1).d(chart) };
    let mask = chart.ctx().divisor_mask();
    for cell in 0u32..(1 << n) {
        if cell.count_ones() as usize == degree && cell & !mask == 0 && rng.gen_bool(0.5) {
            w.add_cell(cell, P::constant(n, scalar(rng)));
        }
    }
    w
}

pub fn op<R: Rng>(rng: &mut R, chart: &Chart) -> LogDiffOp1<Scalar> {
    LogDiffOp1::new(chart, field(rng, chart), poly(rng, chart, 2, 1)).expect("logarithmic by construction")
}

/// Charts used across property tests: a full torus, a half torus and a
/// polynomial chart with one divisor coordinate.
pub fn charts() -> Vec<Chart> {
    vec![
        Chart::with_names(&["x", "y"], &["x", "y"], Arena::Torus).unwrap(),
        Chart::with_names(&["x", "y", "z"], &["x"], Arena::Torus).unwrap(),
        Chart::with_names(&["x", "y", "z"], &["y"], Arena::Polynomial).unwrap(),
    ]
}
