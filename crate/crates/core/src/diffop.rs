//! First-order logarithmic operators on a trivialized line bundle, written
//! `φ = (δ, m)` with `φ(f·s) = (δ(f) + m·f)·s`.

use std::ops::{Add, Neg, Sub};

use crate::algebra::{Coeff, Polynomial};
use crate::error::{Error, Result};
use crate::logcalc::{Chart, LogForm, LogVectorField, SymplecticData};
use crate::poisson::{bracket, cochain_eval, hamiltonian};
use crate::prequant::Connection1;

/// A rank-1 module `O·s` on a chart; sections `f·s` are stored as `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineModel {
    pub chart: Chart,
    pub section: String,
}

impl LineModel {
    pub fn new(chart: Chart, section: impl Into<String>) -> Self {
        LineModel { chart, section: section.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDiffOp1<C> {
    delta: LogVectorField<C>,
    mult: Polynomial<C>,
}

impl<C: Coeff> LogDiffOp1<C> {
    /// Checks that `δ` is logarithmic on the chart and `m` lies in the arena.
    pub fn new(chart: &Chart, delta: LogVectorField<C>, mult: Polynomial<C>) -> Result<Self> {
        if delta.nvars() != chart.nvars() || mult.nvars() != chart.nvars() {
            return Err(Error::ContextMismatch("operator data from another chart".into()));
        }
        delta.log_coeffs(chart)?;
        chart.check_element(&mult)?;
        Ok(LogDiffOp1 { delta, mult })
    }

    pub fn from_parts(delta: LogVectorField<C>, mult: Polynomial<C>) -> Self {
        LogDiffOp1 { delta, mult }
    }

    pub fn multiplier(m: Polynomial<C>) -> Self {
        let n = m.nvars();
        LogDiffOp1 { delta: LogVectorField::zero(n), mult: m }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::multiplier(Polynomial::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.mult.nvars()
    }

    pub fn delta(&self) -> &LogVectorField<C> {
        &self.delta
    }

    pub fn mult(&self) -> &Polynomial<C> {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.mult.is_zero()
    }

    pub fn apply(&self, f: &Polynomial<C>) -> Polynomial<C> {
        &self.delta.apply(f) + &(&self.mult * f)
    }

    pub fn symbol(&self) -> &LogVectorField<C> {
        &self.delta
    }

    /// `[(δ1, m1), (δ2, m2)] = ([δ1, δ2], δ1(m2) − δ2(m1))`.
    pub fn commutator(&self, other: &Self) -> Self {
        LogDiffOp1 {
            delta: self.delta.lie_bracket(&other.delta),
            mult: &self.delta.apply(&other.mult) - &other.delta.apply(&self.mult),
        }
    }

    /// The left module action `f·φ`.
    pub fn scale(&self, f: &Polynomial<C>) -> Self {
        LogDiffOp1 { delta: self.delta.scale(f), mult: f * &self.mult }
    }
}

impl<C: Coeff> Add for &LogDiffOp1<C> {
    type Output = LogDiffOp1<C>;
    fn add(self, rhs: Self) -> LogDiffOp1<C> {
        LogDiffOp1 { delta: &self.delta + &rhs.delta, mult: &self.mult + &rhs.mult }
    }
}

impl<C: Coeff> Sub for &LogDiffOp1<C> {
    type Output = LogDiffOp1<C>;
    fn sub(self, rhs: Self) -> LogDiffOp1<C> {
        LogDiffOp1 { delta: &self.delta - &rhs.delta, mult: &self.mult - &rhs.mult }
    }
}

impl<C: Coeff> Neg for &LogDiffOp1<C> {
    type Output = LogDiffOp1<C>;
    fn neg(self) -> LogDiffOp1<C> {
        LogDiffOp1 { delta: -&self.delta, mult: -&self.mult }
    }
}

/// `∇_δ = (δ, σ(δ))`.
pub fn from_connection<C: Coeff>(chart: &Chart, conn: &Connection1<C>, delta: &LogVectorField<C>) -> Result<LogDiffOp1<C>> {
    let m = conn.sigma().evaluate(chart, std::slice::from_ref(delta))?;
    LogDiffOp1::new(chart, delta.clone(), m)
}

/// `φ = ∇_{σ_φ} + m(φ)`; returns `(σ_φ, m(φ))`.
pub fn decompose<C: Coeff>(
    chart: &Chart,
    phi: &LogDiffOp1<C>,
    conn: &Connection1<C>,
) -> Result<(LogVectorField<C>, Polynomial<C>)> {
    let nabla = from_connection(chart, conn, phi.symbol())?;
    let rest = phi - &nabla;
    debug_assert!(rest.delta.is_zero());
    Ok((phi.delta.clone(), rest.mult))
}

/// `Q(f) = ∇_{δ_f} + α·f`.
pub fn prequantum_op<C: Coeff>(
    s: &SymplecticData<C>,
    conn: &Connection1<C>,
    f: &Polynomial<C>,
    alpha: &C,
) -> Result<LogDiffOp1<C>> {
    let h = hamiltonian(s, f)?;
    let nabla = from_connection(s.chart(), conn, &h.field)?;
    Ok(&nabla + &LogDiffOp1::multiplier(f.scale(alpha)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracCheck<C> {
    pub holds: bool,
    /// `[Q(f), Q(g)] − Q({f, g})`.
    pub defect: LogDiffOp1<C>,
    /// `K_∇(δ_f, δ_g) − α·ω(δ_f, δ_g)`, which the defect multiplier must equal.
    pub expected: Polynomial<C>,
}

pub fn dirac_check<C: Coeff>(
    s: &SymplecticData<C>,
    conn: &Connection1<C>,
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    alpha: &C,
) -> Result<DiracCheck<C>> {
    let qf = prequantum_op(s, conn, f, alpha)?;
    let qg = prequantum_op(s, conn, g, alpha)?;
    let fg = bracket(s, f, g)?;
    let defect = &qf.commutator(&qg) - &prequantum_op(s, conn, &fg, alpha)?;
    let df = hamiltonian(s, f)?.field;
    let dg = hamiltonian(s, g)?.field;
    let k = conn.curvature().evaluate(s.chart(), &[df, dg])?;
    let expected = &k + &fg.scale(alpha);
    assert!(defect.delta.is_zero(), "[δ_f, δ_g] ≠ δ_{{f,g}}");
    assert_eq!(defect.mult, expected, "Dirac defect disagrees with the curvature formula");
    Ok(DiracCheck { holds: defect.is_zero(), defect, expected })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atiyah<C> {
    Admissible,
    /// `σ_φ(z_k) ≠ l(z_k)` at this coordinate.
    Violation { coordinate: usize, symbol: Polynomial<C>, expected: Polynomial<C> },
}

/// A pair `(φ, l)` is admissible iff `σ_φ = l`; witnessed on coordinates.
pub fn atiyah_check<C: Coeff>(chart: &Chart, phi: &LogDiffOp1<C>, l: &LogVectorField<C>) -> Atiyah<C> {
    for k in 0..chart.nvars() {
        let z = chart.var(k);
        let (a, b) = (phi.delta.apply(&z), l.apply(&z));
        if a != b {
            return Atiyah::Violation { coordinate: k, symbol: a, expected: b };
        }
    }
    Atiyah::Admissible
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub checked: usize,
    /// Count of operators with `i(λφ) + χ(πφ) = φ`.
    pub reconstructs: usize,
    /// Count of fields with `λ(χ(δ)) = 0`.
    pub retracts: usize,
}

impl Splitting {
    pub fn holds(&self) -> bool {
        self.reconstructs == self.checked && self.retracts == self.checked
    }
}

/// Checks the splitting `χ(δ) = ∇_δ`, `λ(φ) = m(φ)` of the symbol sequence:
/// reconstruction on `ops`, and `λ ∘ χ = 0` on their symbols.
pub fn splitting_check<C: Coeff>(chart: &Chart, conn: &Connection1<C>, ops: &[LogDiffOp1<C>]) -> Result<Splitting> {
    let mut out = Splitting { checked: ops.len(), reconstructs: 0, retracts: 0 };
    for phi in ops {
        let (delta, m) = decompose(chart, phi, conn)?;
        let chi = from_connection(chart, conn, &delta)?;
        if &(&LogDiffOp1::multiplier(m) + &chi) == phi {
            out.reconstructs += 1;
        }
        if decompose(chart, &chi, conn)?.1.is_zero() {
            out.retracts += 1;
        }
    }
    Ok(out)
}

/// A 1-cochain of the shape `m(f) = θ(δ_f) + c·f`, with `θ` in the chart's
/// log coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpec<C> {
    pub theta: LogForm<C>,
    pub c: C,
}

impl<C: Coeff> CochainSpec<C> {
    pub fn new(theta: LogForm<C>, c: C) -> Result<Self> {
        if theta.degree() != 1 {
            return Err(Error::Degree(format!("cochain form of degree {}", theta.degree())));
        }
        Ok(CochainSpec { theta, c })
    }

    pub fn eval(&self, s: &SymplecticData<C>, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        let h = hamiltonian(s, f)?;
        let t = self.theta.evaluate(s.chart(), &[h.field])?;
        Ok(&t + &f.scale(&self.c))
    }
}

/// `δ_g m(f) − δ_f m(g) + m({f, g}) − K_∇(δ_f, δ_g)/α`.
pub fn verify_e15<C: Coeff>(
    s: &SymplecticData<C>,
    conn: &Connection1<C>,
    spec: &CochainSpec<C>,
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    alpha: &C,
) -> Result<Polynomial<C>> {
    if alpha.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv = alpha.inverse().ok_or_else(|| Error::NotInvertible(format!("α = {alpha}")))?;
    let df = hamiltonian(s, f)?.field;
    let dg = hamiltonian(s, g)?.field;
    let (mf, mg) = (spec.eval(s, f)?, spec.eval(s, g)?);
    let m_fg = spec.eval(s, &bracket(s, f, g)?)?;
    let k = conn.curvature().evaluate(s.chart(), &[df.clone(), dg.clone()])?;
    Ok(&(&(&dg.apply(&mf) - &df.apply(&mg)) + &m_fg) - &k.scale(&inv))
}

/// `K_{η1∧η2}(f, g) − (K_{η1}(f) K_{η2}(g) − K_{η1}(g) K_{η2}(f))` for 1-forms.
pub fn wedge_defect<C: Coeff>(
    s: &SymplecticData<C>,
    eta1: &LogForm<C>,
    eta2: &LogForm<C>,
    f: &Polynomial<C>,
    g: &Polynomial<C>,
) -> Result<Polynomial<C>> {
    if eta1.degree() != 1 || eta2.degree() != 1 {
        return Err(Error::Degree("wedge compatibility is checked on 1-forms".into()));
    }
    let lhs = cochain_eval(s, &eta1.wedge(eta2)?, &[f.clone(), g.clone()])?;
    let k = |eta: &LogForm<C>, p: &Polynomial<C>| cochain_eval(s, eta, std::slice::from_ref(p));
    let rhs = &(&k(eta1, f)? * &k(eta2, g)?) - &(&k(eta1, g)? * &k(eta2, f)?);
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::logcalc::{assemble_symplectic, Arena};

    type P = Polynomial<Scalar>;
    type Fm = LogForm<Scalar>;
    type V = LogVectorField<Scalar>;

    fn half_plane() -> (Chart, SymplecticData<Scalar>) {
        let c = Chart::with_names(&["x", "y"], &["y"], Arena::Torus).unwrap();
        let s = assemble_symplectic(&c, &Fm::basis(2, 0b11)).unwrap();
        (c, s)
    }

    fn t() -> Scalar {
        Scalar::t_pow(1)
    }

    fn exact_conn(c: &Chart) -> Connection1<Scalar> {
        Connection1::new(c, Fm::coframe(2, 1).scale(&P::var(2, 0).scale(&t()))).unwrap()
    }

    #[test]
    fn apply_and_commutator() {
        let x = P::var(2, 0);
        let dx = LogDiffOp1::from_parts(V::partial(2, 0), P::zero(2));
        assert_eq!(dx.apply(&(&x * &x)), x.scale(&Scalar::int(2)));
        let mx = LogDiffOp1::multiplier(x.clone());
        assert_eq!(dx.commutator(&mx), LogDiffOp1::multiplier(P::one(2)));
        assert!(mx.commutator(&mx).is_zero());
    }

    #[test]
    fn connection_operators() {
        let (c, _) = half_plane();
        let conn = exact_conn(&c);
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let ydx = V::partial(2, 0).scale(&y);
        assert_eq!(from_connection(&c, &conn, &ydx).unwrap().mult(), &P::zero(2));
        let minus_ydy = V::partial(2, 1).scale(&-&y);
        let op = from_connection(&c, &conn, &minus_ydy).unwrap();
        assert_eq!(op.mult(), &x.scale(&-t()));
        let bare = LogDiffOp1::from_parts(minus_ydy, P::zero(2));
        assert_eq!(decompose(&c, &bare, &conn).unwrap().1, x.scale(&t()));
        assert_eq!(atiyah_check(&c, &op, op.symbol()), Atiyah::Admissible);
        assert!(matches!(atiyah_check(&c, &op, &ydx), Atiyah::Violation { coordinate: 0, .. }));
    }

    #[test]
    fn prequantum_operators() {
        let (c, s) = half_plane();
        let conn = exact_conn(&c);
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let qx = prequantum_op(&s, &conn, &x, &t()).unwrap();
        assert_eq!(qx, LogDiffOp1::from_parts(V::partial(2, 1).scale(&-&y), P::zero(2)));
        let qy = prequantum_op(&s, &conn, &y, &t()).unwrap();
        assert_eq!(qy, LogDiffOp1::from_parts(V::partial(2, 0).scale(&y), y.scale(&t())));
        let q1 = prequantum_op(&s, &conn, &P::one(2), &t()).unwrap();
        assert_eq!(q1, LogDiffOp1::multiplier(P::constant(2, t())));
    }

    #[test]
    fn dirac_both_directions() {
        let (c, s) = half_plane();
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        assert!(dirac_check(&s, &exact_conn(&c), &x, &y, &t()).unwrap().holds);
        let flat = Connection1::trivial(&c);
        let r = dirac_check(&s, &flat, &x, &y, &t()).unwrap();
        assert!(!r.holds);
        // ω(δ_x, δ_y) = −{x, y} = y
        assert_eq!(r.defect.mult(), &y.scale(&-t()));
    }

    #[test]
    fn e15_defects() {
        let (c, s) = half_plane();
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let spec = CochainSpec::new(Fm::zero(2, 1), Scalar::int(1)).unwrap();
        assert!(verify_e15(&s, &exact_conn(&c), &spec, &x, &y, &t()).unwrap().is_zero());
        let flat = Connection1::trivial(&c);
        assert_eq!(verify_e15(&s, &flat, &spec, &x, &y, &t()).unwrap(), y);
        assert!(matches!(
            verify_e15(&s, &flat, &spec, &x, &y, &Scalar::int(0)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn wedge_on_hamiltonians() {
        let (_, s) = half_plane();
        let (x, y) = (P::var(2, 0), P::var(2, 1));
        let e1 = Fm::coframe(2, 0).scale(&y);
        let e2 = &Fm::coframe(2, 1).scale(&x) + &Fm::coframe(2, 0);
        assert!(wedge_defect(&s, &e1, &e2, &(&x * &y), &(&x + &y)).unwrap().is_zero());
    }

    #[test]
    fn splitting_reconstructs() {
        let (c, _) = half_plane();
        let conn = exact_conn(&c);
        let y = P::var(2, 1);
        let ops = vec![
            LogDiffOp1::from_parts(V::partial(2, 0), y.clone()),
            LogDiffOp1::from_parts(V::partial(2, 1).scale(&y), P::one(2)),
        ];
        assert!(splitting_check(&c, &conn, &ops).unwrap().holds());
    }
}
