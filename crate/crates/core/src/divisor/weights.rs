//! Positive weight vectors making a polynomial weighted homogeneous.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Coeff, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub weights: Vec<BigInt>,
    pub degree: BigInt,
}

/// Finds positive integer weights `w` with `w·α` constant over the exponent
/// vectors `α` of `h`, or `None` when no such weights exist.
///
/// When all-ones works the polynomial is homogeneous and that answer is
/// returned. Otherwise the solution space is the nullspace of the difference
/// system; a one-dimensional nullspace has a unique primitive solution, and
/// larger ones go through Fourier–Motzkin elimination of `N·c ≥ 1`.
pub fn weighted_homogeneous<C: Coeff>(h: &Polynomial<C>) -> Option<Weights> {
    assert!(!h.is_zero(), "weighted_homogeneous: h must be nonzero");
    let n = h.nvars();
    let exps: Vec<Vec<i64>> = h.terms().map(|(m, _)| m.exps().iter().map(|&e| e as i64).collect()).collect();
    if exps.iter().any(|e| e.iter().any(|&x| x < 0)) {
        return None;
    }
    let base = &exps[0];
    let rows: Vec<Vec<Rational>> = exps[1..]
        .iter()
        .map(|e| e.iter().zip(base).map(|(a, b)| Rational::from_integer(BigInt::from(a - b))).collect())
        .collect();

    let ones = vec![BigInt::one(); n];
    if rows.iter().all(|r| r.iter().fold(Rational::zero(), |acc, x| acc + x).is_zero()) {
        return Some(finish(ones, base));
    }

    let basis = nullspace(&rows, n);
    let w: Vec<Rational> = match basis.len() {
        0 => return None,
        1 => {
            let v = &basis[0];
            if v.iter().all(|x| x.is_positive()) {
                v.clone()
            } else if v.iter().all(|x| x.is_negative()) {
                v.iter().map(|x| -x).collect()
            } else {
                return None;
            }
        }
        r => {
            // w = Σ c_j basis_j with every component ≥ 1
            let constraints: Vec<(Vec<Rational>, Rational)> = (0..n)
                .map(|i| ((0..r).map(|j| basis[j][i].clone()).collect(), Rational::one()))
                .collect();
            let c = fourier_motzkin(constraints, r)?;
            (0..n)
                .map(|i| (0..r).fold(Rational::zero(), |acc, j| acc + &basis[j][i] * &c[j]))
                .collect()
        }
    };
    Some(finish(primitive_integer(&w), base))
}

fn finish(w: Vec<BigInt>, base: &[i64]) -> Weights {
    let degree = w.iter().zip(base).fold(BigInt::zero(), |acc, (wi, &e)| acc + wi * BigInt::from(e));
    Weights { weights: w, degree }
}

/// Scales a rational vector to the primitive integer vector on its ray.
fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of `{w : rows·w = 0}` via reduced row echelon form.
pub(crate) fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Finds `c` with `a·c ≥ b` for every constraint, by Fourier–Motzkin
/// elimination followed by back substitution.
pub(crate) fn fourier_motzkin(constraints: Vec<(Vec<Rational>, Rational)>, nvars: usize) -> Option<Vec<Rational>> {
    let mut stages: Vec<Vec<(Vec<Rational>, Rational)>> = Vec::with_capacity(nvars + 1);
    let mut cur = constraints;
    for k in (0..nvars).rev() {
        stages.push(cur.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            if c.0[k].is_positive() {
                pos.push(c);
            } else if c.0[k].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = an[k].abs();
                let sn = ap[k].clone();
                let a: Vec<Rational> = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = bp * &sp + bn * &sn;
                rest.push((a, b));
            }
        }
        cur = rest;
    }
    // only constant constraints 0 ≥ b remain
    if cur.iter().any(|(_, b)| b.is_positive()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); nvars];
    // stages[s] still involves variables 0..=(nvars-1-s)
    for k in 0..nvars {
        let stage = &stages[nvars - 1 - k];
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (a, b) in stage {
            let rest = (0..k).fold(Rational::zero(), |acc, j| acc + &a[j] * &sol[j]);
            let rhs = b - rest;
            if a[k].is_positive() {
                let v = &rhs / &a[k];
                lo = Some(match lo {
                    Some(l) if l >= v => l,
                    _ => v,
                });
            } else if a[k].is_negative() {
                let v = &rhs / &a[k];
                hi = Some(match hi {
                    Some(h) if h <= v => h,
                    _ => v,
                });
            }
        }
        sol[k] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(Rational::zero()),
            (None, None) => Rational::zero(),
        };
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    type P = Polynomial<Scalar>;

    fn w(v: &[i64], d: i64) -> Option<Weights> {
        Some(Weights { weights: v.iter().map(|&x| BigInt::from(x)).collect(), degree: BigInt::from(d) })
    }

    #[test]
    fn homogeneous_cubic() {
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let h = &(&(&x * &x) * &y) + &y.pow(3).unwrap();
        assert_eq!(weighted_homogeneous(&h), w(&[1, 1], 3));
    }

    #[test]
    fn cusp() {
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let h = &x.pow(3).unwrap() + &y.pow(2).unwrap();
        assert_eq!(weighted_homogeneous(&h), w(&[2, 3], 6));
    }

    #[test]
    fn mixed_sign_nullspace() {
        // x²y − xy... exponents (2,1),(1,0): w1 + w2 = 0 impossible with w > 0
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let h = &(&(&x * &x) * &y) - &x;
        assert_eq!(weighted_homogeneous(&h), None);
    }

    #[test]
    fn two_dimensional_solution_space() {
        // x³y + z²: 3w1 + w2 = 2w3, nullspace of rank 2
        let (x, y, z) = (P::var(3, 0), P::var(3, 1), P::var(3, 2));
        let h = &(&x.pow(3).unwrap() * &y) + &z.pow(2).unwrap();
        let got = weighted_homogeneous(&h).unwrap();
        assert!(got.weights.iter().all(|v| v.is_positive()));
        let lhs = BigInt::from(3) * &got.weights[0] + &got.weights[1];
        assert_eq!(lhs, BigInt::from(2) * &got.weights[2]);
        assert_eq!(got.degree, lhs);
    }

    #[test]
    fn fm_infeasible() {
        // c ≥ 1 and −c ≥ 0
        let cons = vec![
            (vec![Rational::one()], Rational::one()),
            (vec![-Rational::one()], Rational::zero()),
        ];
        assert_eq!(fourier_motzkin(cons, 1), None);
    }
}
