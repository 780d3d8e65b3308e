//! Multivariate division and gcd.
//!
//! Over a field the gcd recurses on variables: contents are taken with
//! respect to the main variable and the primitive parts go through a
//! subresultant polynomial remainder sequence. Polynomials over
//! [`Scalar`](super::Scalar) are handled by lifting `T` to an extra variable.



use super::coeff::{Field, GaussRational};
use super::poly::{Monomial, Polynomial};
use super::scalar::Scalar;

/// Division with remainder by a single divisor under graded-lex order.
/// Both arguments must have non-negative exponents.
pub fn field_divmod<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> (Polynomial<F>, Polynomial<F>) {
    let n = a.nvars();
    let (lm_b, lc_b) = b.leading().expect("division by zero polynomial");
    let lm_b = lm_b.clone();
    let lc_inv = lc_b.inv();
    let mut p = a.clone();
    let mut q = Polynomial::zero(n);
    let mut r = Polynomial::zero(n);
    while let Some((m, c)) = p.leading() {
        let (m, c) = (m.clone(), c.clone());
        match m.div(&lm_b) {
            Some(t) => {
                let coef = c * lc_inv.clone();
                q.add_term(t.clone(), coef.clone());
                p = &p - &b.mul_monomial(&t).scale(&coef);
            }
            None => {
                r.add_term(m.clone(), c.clone());
                p.add_term(m, -c);
            }
        }
    }
    (q, r)
}

pub fn field_exact_div<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Option<Polynomial<F>> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = field_divmod(a, b);
    r.is_zero().then_some(q)
}

fn monic<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    match p.leading() {
        Some((_, c)) => p.scale(&c.inv()),
        None => p.clone(),
    }
}

/// Degree in `v`, or `-1` for zero.
fn deg_in<F: Field>(p: &Polynomial<F>, v: usize) -> i32 {
    if p.is_zero() {
        -1
    } else {
        p.degree_in(v)
    }
}

/// Coefficient of `v^k` as a polynomial not involving `v`.
fn coeff_in<F: Field>(p: &Polynomial<F>, v: usize, k: i32) -> Polynomial<F> {
    Polynomial::from_terms(
        p.nvars(),
        p.terms()
            .filter(|(m, _)| m.exp(v) == k)
            .map(|(m, c)| (m.with_exp(v, 0), c.clone())),
    )
}

fn coeffs_in<F: Field>(p: &Polynomial<F>, v: usize) -> Vec<Polynomial<F>> {
    let d = deg_in(p, v);
    (0..=d).map(|k| coeff_in(p, v, k)).filter(|c| !c.is_zero()).collect()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let mut g = Polynomial::zero(p.nvars());
    for c in coeffs_in(p, v) {
        g = field_gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let n = a.nvars();
    let db = deg_in(b, v);
    let lc_b = coeff_in(b, v, db);
    let mut r = a.clone();
    let mut e = deg_in(a, v) - db + 1;
    while !r.is_zero() && deg_in(&r, v) >= db {
        let dr = deg_in(&r, v);
        let s = coeff_in(&r, v, dr).mul_monomial(&Monomial::var(n, v, dr - db));
        r = &(&lc_b * &r) - &(&s * b);
        e -= 1;
    }
    let mut scale = Polynomial::one(n);
    for _ in 0..e.max(0) {
        scale = &scale * &lc_b;
    }
    &scale * &r
}

/// Gcd of two polynomials primitive in `v`, both of positive degree in `v`.
fn subresultant_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let n = a.nvars();
    let (mut a, mut b) = if deg_in(a, v) >= deg_in(b, v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let d = deg_in(&a, v) - deg_in(&b, v);
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if deg_in(&r, v) == 0 {
            return Polynomial::one(n);
        }
        let denom = &g * &h.pow(d).expect("nonnegative power");
        a = b;
        b = field_exact_div(&r, &denom).expect("subresultant division is exact");
        g = coeff_in(&a, v, deg_in(&a, v));
        h = if d == 0 {
            h
        } else {
            let num = g.pow(d).expect("nonnegative power");
            let den = h.pow(d - 1).expect("nonnegative power");
            field_exact_div(&num, &den).expect("subresultant division is exact")
        };
    }
    let c = content_in(&b, v);
    field_exact_div(&b, &c).expect("content divides")
}

/// Monic gcd over a field. `gcd(0, 0) = 0`.
pub fn field_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let n = a.nvars();
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    // monomial shortcut keeps the frequent xy-type cases cheap
    if let (Some((ma, _)), Some((mb, _))) = (a.as_monomial(), b.as_monomial()) {
        let e = ma.exps().iter().zip(mb.exps()).map(|(x, y)| (*x).min(*y)).collect();
        return Polynomial::monomial(n, Monomial::new(e), F::one());
    }
    let v = (0..n)
        .find(|&i| a.involves(i) || b.involves(i))
        .expect("non-constant polynomial involves a variable");
    match (a.involves(v), b.involves(v)) {
        (true, false) => return field_gcd(&content_in(a, v), b),
        (false, true) => return field_gcd(a, &content_in(b, v)),
        _ => {}
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = field_exact_div(a, &ca).expect("content divides");
    let pb = field_exact_div(b, &cb).expect("content divides");
    let c = field_gcd(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, v);
    monic(&(&c * &g))
}

/// Lifts a polynomial over `Scalar` to one over `ℚ(i)` with `T` appended as
/// the last variable, shifted so every `T` exponent is non-negative.
/// Returns the lifted polynomial and the shift that was removed.
pub(crate) fn lift_t(p: &Polynomial<Scalar>) -> (Polynomial<GaussRational>, i32) {
    let n = p.nvars();
    let shift = p.terms().filter_map(|(_, s)| s.min_power()).min().unwrap_or(0);
    let mut out = Polynomial::zero(n + 1);
    for (m, s) in p.terms() {
        for (k, c) in s.terms() {
            let mut e = m.exps().to_vec();
            e.push(k - shift);
            out.add_term(Monomial::new(e), c.clone());
        }
    }
    (out, shift)
}

pub(crate) fn unlift_t(p: &Polynomial<GaussRational>, shift: i32) -> Polynomial<Scalar> {
    let n = p.nvars() - 1;
    Polynomial::from_terms(
        n,
        p.terms().map(|(m, c)| {
            let e = m.exps();
            (Monomial::new(e[..n].to_vec()), Scalar::monomial(c.clone(), e[n] + shift))
        }),
    )
}

pub fn scalar_exact_div(a: &Polynomial<Scalar>, b: &Polynomial<Scalar>) -> Option<Polynomial<Scalar>> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Polynomial::zero(a.nvars()));
    }
    let (la, sa) = lift_t(a);
    let (lb, sb) = lift_t(b);
    let q = field_exact_div(&la, &lb)?;
    Some(unlift_t(&q, sa - sb))
}

/// Division with remainder after lifting `T`; `a = q·b + r` holds in the
/// `Scalar` ring.
pub fn scalar_divmod(a: &Polynomial<Scalar>, b: &Polynomial<Scalar>) -> (Polynomial<Scalar>, Polynomial<Scalar>) {
    let (la, sa) = lift_t(a);
    let (lb, sb) = lift_t(b);
    let (q, r) = field_divmod(&la, &lb);
    (unlift_t(&q, sa - sb), unlift_t(&r, sa))
}

/// Gcd over the `Scalar` ring, with every factor free of the polynomial
/// variables treated as a unit. The result's leading coefficient has its
/// lowest `T` term equal to `1·T^0`.
pub fn scalar_gcd(a: &Polynomial<Scalar>, b: &Polynomial<Scalar>) -> Polynomial<Scalar> {
    let n = a.nvars();
    if a.is_zero() && b.is_zero() {
        return Polynomial::zero(n);
    }
    let (la, _) = lift_t(a);
    let (lb, _) = lift_t(b);
    let g = field_gcd(&la, &lb);
    // strip the content in T
    let t_content = content_excluding(&g, n);
    let g = field_exact_div(&g, &t_content).expect("content divides");
    let g = unlift_t(&g, 0);
    normalize_scalar_lead(&g)
}

/// Gcd of the coefficients of `p` grouped by the monomial in all variables
/// except `keep`.
fn content_excluding<F: Field>(p: &Polynomial<F>, keep: usize) -> Polynomial<F> {
    let n = p.nvars();
    let mut groups: std::collections::BTreeMap<Monomial, Polynomial<F>> = Default::default();
    for (m, c) in p.terms() {
        let key = m.with_exp(keep, 0);
        let t = Polynomial::monomial(n, Monomial::var(n, keep, m.exp(keep)), c.clone());
        let slot = groups.entry(key).or_insert_with(|| Polynomial::zero(n));
        *slot = &*slot + &t;
    }
    let mut g = Polynomial::zero(n);
    for c in groups.values() {
        g = field_gcd(&g, c);
    }
    if g.is_zero() {
        Polynomial::one(n)
    } else {
        g
    }
}

pub(crate) fn normalize_scalar_lead(p: &Polynomial<Scalar>) -> Polynomial<Scalar> {
    let Some((_, lead)) = p.leading() else {
        return p.clone();
    };
    let (k, c) = lead.terms().next().expect("nonzero coefficient");
    let unit = Scalar::monomial(c.clone(), k);
    p.scale(&unit.try_inverse().expect("single power"))
}
