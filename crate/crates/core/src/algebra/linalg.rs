//! Fraction-free (Bareiss) elimination over polynomial rings.

use super::coeff::Coeff;
use super::poly::Polynomial;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn determinant<C: Coeff>(m: &[Vec<Polynomial<C>>]) -> Result<Polynomial<C>> {
    let n = m.len();
    let nvars = m.first().and_then(|r| r.first()).map(|p| p.nvars()).unwrap_or(0);
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(Polynomial::one(nvars));
    }
    let mut a: Vec<Vec<Polynomial<C>>> = m.to_vec();
    let mut prev = Polynomial::one(nvars);
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Polynomial::zero(nvars));
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Solves `A·x = b` exactly.
///
/// Each row is first cleared of denominators, the augmented polynomial
/// system is triangularized fraction-free, and the back substitution runs in
/// the fraction field. The result is checked against `A·x − b = 0` before it
/// is returned.
pub fn solve_linear<C: Coeff>(
    a: &[Vec<RationalFunction<C>>],
    b: &[RationalFunction<C>],
) -> Result<Vec<RationalFunction<C>>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid(format!("system is not {n}x{n}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let nvars = b[0].num.nvars();

    let mut m: Vec<Vec<Polynomial<C>>> = Vec::with_capacity(n);
    for (row, rhs) in a.iter().zip(b) {
        let mut dens: Vec<&Polynomial<C>> = row.iter().map(|e| &e.den).collect();
        dens.push(&rhs.den);
        let mut l = Polynomial::one(nvars);
        for d in &dens {
            if !d.is_constant() || !d.leading_coeff().is_unit() {
                if l.exact_div(d).is_none() {
                    l = &l * d;
                }
            }
        }
        let clear = |e: &RationalFunction<C>| -> Polynomial<C> {
            let scaled = &e.num * &l;
            scaled.exact_div(&e.den).expect("row multiplier clears denominators")
        };
        let mut prow: Vec<Polynomial<C>> = row.iter().map(clear).collect();
        prow.push(clear(rhs));
        m.push(prow);
    }

    let mut prev = Polynomial::one(nvars);
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
        m.swap(p, k);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }

    let mut x: Vec<RationalFunction<C>> = vec![RationalFunction::zero(nvars); n];
    for i in (0..n).rev() {
        let mut acc = RationalFunction::from_poly(m[i][n].clone());
        for j in i + 1..n {
            let t = &RationalFunction::from_poly(m[i][j].clone()) * &x[j];
            acc = &acc - &t;
        }
        let piv = RationalFunction::from_poly(m[i][i].clone());
        x[i] = (&acc / &piv).reduce();
    }

    for (row, rhs) in a.iter().zip(b) {
        let mut lhs = RationalFunction::zero(nvars);
        for (e, xi) in row.iter().zip(&x) {
            lhs = &lhs + &(e * xi);
        }
        let defect = &lhs - rhs;
        assert!(defect.is_zero(), "back-substitution check failed");
    }
    Ok(x)
}
