//! Rank-1 logarithmic connections `∇s = σ ⊗ s` on a trivialized line, their
//! curvature, gauge moves and residues, the period and integrality checks,
//! and the prequantization pipeline `K_∇ = T·ω`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Coeff, Monomial, Polynomial, Rational, Scalar};
use crate::divisor::{is_coordinate_ncd, weighted_homogeneous, Divisor};
use crate::error::{Error, Result};
use crate::logcalc::{cell_indices, res_const, Chart, Frame, LogForm, Residues, SymplecticData};

/// A connection form together with its curvature `K = dσ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection1<C> {
    sigma: LogForm<C>,
    curvature: LogForm<C>,
}

impl<C: Coeff> Connection1<C> {
    pub fn new(chart: &Chart, sigma: LogForm<C>) -> Result<Self> {
        if sigma.degree() != 1 {
            return Err(Error::Degree(format!("connection form of degree {}", sigma.degree())));
        }
        if sigma.nvars() != chart.nvars() {
            return Err(Error::ContextMismatch("connection form from another chart".into()));
        }
        for (_, c) in sigma.cells() {
            chart.check_element(c)?;
        }
        let curvature = curvature(chart, &sigma);
        Ok(Connection1 { sigma, curvature })
    }

    /// The trivial connection `σ = 0`.
    pub fn trivial(chart: &Chart) -> Self {
        let n = chart.nvars();
        Connection1 { sigma: LogForm::zero(n, 1), curvature: LogForm::zero(n, 2.min(n)) }
    }

    pub fn sigma(&self) -> &LogForm<C> {
        &self.sigma
    }

    pub fn curvature(&self) -> &LogForm<C> {
        &self.curvature
    }
}

pub fn curvature<C: Coeff>(chart: &Chart, sigma: &LogForm<C>) -> LogForm<C> {
    sigma.d(chart)
}

/// `σ ↦ σ + τ` for a closed `τ`; the curvature does not move.
pub fn gauge<C: Coeff>(chart: &Chart, conn: &Connection1<C>, tau: &LogForm<C>) -> Result<Connection1<C>> {
    if tau.degree() != 1 {
        return Err(Error::Degree(format!("gauge form of degree {}", tau.degree())));
    }
    if !tau.is_closed(chart) {
        return Err(Error::NotClosed("gauge form must be closed".into()));
    }
    let out = Connection1::new(chart, conn.sigma.try_add(tau)?)?;
    assert_eq!(out.curvature, conn.curvature, "gauge move changed the curvature");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flatness<C> {
    /// `σ = Σ a_i e^i + d f` with these constant residues `a_i`.
    Flat { residues: Vec<(usize, C)>, potential: Polynomial<C> },
    NotFlat(LogForm<C>),
}

/// Flatness, and for flat connections the split `σ = Σ a_i e^i + d f`.
pub fn is_flat<C: Coeff>(chart: &Chart, conn: &Connection1<C>) -> Result<Flatness<C>> {
    if !conn.curvature.is_zero() {
        return Ok(Flatness::NotFlat(conn.curvature.clone()));
    }
    let residues = match res_const(chart, &conn.sigma)? {
        Residues::Constants(r) => r,
        Residues::Nonconstant(_) => unreachable!("closed log 1-forms have constant residues"),
    };
    let (class, primitive) = class_and_primitive(chart, &conn.sigma)?;
    for (i, a) in &residues {
        assert_eq!(class.coeff(1 << i).constant_term(), a.clone(), "residue differs from class coefficient");
    }
    Ok(Flatness::Flat { residues, potential: primitive.as_function().expect("0-form") })
}

/// Splits a closed form into its harmonic part (constant coefficients on
/// pure divisor cells) and a primitive of the rest:
/// `ω = class + d(primitive)`.
///
/// Terms are graded by plain weight `w` (plain exponents plus plain coframe
/// factors) and the divisor exponents `β`; `d` preserves the grading. For
/// `w > 0` the contraction with the plain Euler field divided by `w` is a
/// homotopy, for `w = 0, β ≠ 0` the contraction with `ξ_i` divided by `β_i`
/// at the first nonzero `β_i` is, and `w = 0, β = 0` is the class.
pub fn class_and_primitive<C: Coeff>(chart: &Chart, omega: &LogForm<C>) -> Result<(LogForm<C>, LogForm<C>)> {
    let n = chart.nvars();
    let p = omega.degree();
    if p == 0 {
        return Err(Error::Degree("class of a 0-form".into()));
    }
    if !omega.is_closed(chart) {
        return Err(Error::NotClosed("class_and_primitive needs a closed form".into()));
    }
    let mut class = LogForm::zero(n, p);
    let mut primitive = LogForm::zero(n, p - 1);
    for (cell, c) in omega.cells() {
        for (m, coef) in c.terms() {
            let mono = Polynomial::monomial(n, m.clone(), coef.clone());
            let w: i64 = chart.plain_coords().map(|j| m.exp(j) as i64 + ((cell >> j) & 1) as i64).sum();
            if w > 0 {
                let inv = C::from_rational(&Rational::new(BigInt::one(), BigInt::from(w)));
                let mut sign = 1;
                for k in cell_indices(cell) {
                    if !chart.is_log(k) {
                        let t = mono.mul_monomial(&Monomial::var(n, k, 1)).scale(&inv);
                        primitive.add_cell(cell & !(1 << k), if sign > 0 { t } else { -t });
                    }
                    sign = -sign;
                }
            } else if let Some(i0) = chart.log_coords().find(|&i| m.exp(i) != 0) {
                if (cell >> i0) & 1 == 0 {
                    continue;
                }
                let inv = C::from_rational(&Rational::new(BigInt::one(), BigInt::from(m.exp(i0))));
                let before = cell_indices(cell).take_while(|&k| k < i0).count();
                let t = mono.scale(&inv);
                primitive.add_cell(cell & !(1 << i0), if before % 2 == 0 { t } else { -t });
            } else {
                class.add_cell(cell, mono);
            }
        }
    }
    let check = &class + &primitive.d(chart);
    assert_eq!(&check, omega, "homotopy decomposition failed");
    Ok((class, primitive))
}

/// Torus 2-cycle `T_{ij}` and the period of a form over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub cycle: (usize, usize),
    pub value: Scalar,
}

/// Periods over the coordinate tori `|z_i| = |z_j| = 1`: `T²` times the
/// constant coefficient of `e^i ∧ e^j`.
pub fn periods(chart: &Chart, omega: &LogForm<Scalar>) -> Result<Vec<Period>> {
    if omega.degree() != 2 {
        return Err(Error::Degree(format!("periods of a {}-form", omega.degree())));
    }
    if !omega.is_closed(chart) {
        return Err(Error::NotClosed("periods need a closed form".into()));
    }
    let s: Vec<usize> = chart.log_coords().collect();
    let mut out = Vec::new();
    for (a, &i) in s.iter().enumerate() {
        for &j in &s[a + 1..] {
            let c = omega.coeff((1 << i) | (1 << j)).constant_term();
            out.push(Period { cycle: (i, j), value: c * Scalar::t_pow(2) });
        }
    }
    Ok(out)
}

/// The integer `n` with `value = n·T`, if any.
pub fn period_integer(value: &Scalar) -> Option<BigInt> {
    value.checked_div(&Scalar::t_pow(1)).ok()?.as_integer()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integrality {
    Integral,
    NonIntegral(Period),
}

/// Integral iff every period is an integer multiple of `T`.
pub fn integrality_check(chart: &Chart, omega: &LogForm<Scalar>) -> Result<Integrality> {
    for p in periods(chart, omega)? {
        if period_integer(&p.value).is_none() {
            return Ok(Integrality::NonIntegral(p));
        }
    }
    Ok(Integrality::Integral)
}

/// Shifts each residue by an integer into `0 ≤ Re < 1` using `σ += k e^i`.
pub fn normalize_residues(chart: &Chart, conn: &Connection1<Scalar>) -> Result<(Connection1<Scalar>, Vec<(usize, BigInt)>)> {
    let residues = match res_const(chart, conn.sigma())? {
        Residues::Constants(r) => r,
        Residues::Nonconstant(r) => {
            let (i, v) = r.iter().find(|(_, v)| !v.is_constant()).expect("a nonconstant residue");
            return Err(Error::NotNormalizable(format!("residue {v} along {} is not constant", chart.name(*i))));
        }
    };
    let n = chart.nvars();
    let mut sigma = conn.sigma().clone();
    let mut shifts = Vec::new();
    for (i, r) in residues {
        let re = if r.is_zero() {
            Rational::zero()
        } else {
            match r.single_power() {
                Some((0, c)) => c.re.clone(),
                _ => {
                    return Err(Error::NotNormalizable(format!(
                        "residue {r} along {} involves powers of T",
                        chart.name(i)
                    )))
                }
            }
        };
        let k = -re.floor().to_integer();
        if !k.is_zero() {
            let shift = Scalar::rational(Rational::from_integer(k.clone()));
            sigma.add_cell(1 << i, Polynomial::constant(n, shift));
        }
        shifts.push((i, k));
    }
    let out = gauge(chart, conn, &(&sigma - conn.sigma()))?;
    Ok((out, shifts))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `T·ω` is exact on the chart and the connection is returned.
    ConnectionConstructed,
    /// Periods are integral but `T·ω` has a nonzero class on the chart, so
    /// a connection exists globally only after gluing, which is not done here.
    PrequantizableGlobally,
    NonIntegral,
    NotSymplectic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrequantReport {
    pub closed: bool,
    pub even_dimension: bool,
    pub nondegenerate: bool,
    pub periods: Vec<Period>,
    pub integral: bool,
    pub witness: Option<Period>,
    pub class: Option<LogForm<Scalar>>,
    pub exact_part_primitive: Option<LogForm<Scalar>>,
    pub residues: Vec<(usize, Polynomial<Scalar>)>,
    pub normalized_shifts: Vec<(usize, BigInt)>,
    pub connection: Option<Connection1<Scalar>>,
    pub obstruction: Option<String>,
    pub lct_caveat: String,
    pub verdict: Verdict,
}

fn lct_caveat(divisor: &Divisor<Scalar>) -> String {
    if let Some(mask) = is_coordinate_ncd(divisor.h()) {
        if mask != 0 {
            return "normal crossing divisor in coordinates: complement cohomology applies".into();
        }
        return "empty divisor: ordinary de Rham cohomology".into();
    }
    match weighted_homogeneous(divisor.h()) {
        Some(_) => "weighted homogeneous on this chart; quasi-homogeneity at other points not checked".into(),
        None => "divisor is not weighted homogeneous on this chart: complement cohomology not justified".into(),
    }
}

/// Runs the pipeline on a chart in its log frame: closedness, dimension,
/// nondegeneracy, periods and integrality, then the class/primitive split of
/// `T·ω` and, when it is exact, the connection `σ` with `dσ = T·ω`.
pub fn prequantize(chart: &Chart, omega: &LogForm<Scalar>) -> PrequantReport {
    let n = chart.nvars();
    let divisor = Divisor::coordinate(n, chart.ctx().divisor_mask());
    let mut report = PrequantReport {
        closed: omega.degree() == 2 && omega.is_closed(chart),
        even_dimension: n % 2 == 0,
        nondegenerate: false,
        periods: Vec::new(),
        integral: false,
        witness: None,
        class: None,
        exact_part_primitive: None,
        residues: Vec::new(),
        normalized_shifts: Vec::new(),
        connection: None,
        obstruction: None,
        lct_caveat: lct_caveat(&divisor),
        verdict: Verdict::NotSymplectic,
    };
    if !report.closed {
        report.obstruction = Some("ω is not a closed 2-form".into());
        return report;
    }
    if !report.even_dimension {
        report.obstruction = Some(format!("odd dimension {n}"));
        return report;
    }
    match SymplecticData::assess(chart.clone(), divisor, omega.clone(), Frame::log(chart)) {
        Ok(s) if s.is_nondegenerate() => report.nondegenerate = true,
        Ok(s) => {
            report.obstruction = Some(format!("degenerate: det = {}", s.det()));
            return report;
        }
        Err(e) => {
            report.obstruction = Some(e.to_string());
            return report;
        }
    }
    report.periods = periods(chart, omega).expect("closed 2-form");
    report.witness = report.periods.iter().find(|p| period_integer(&p.value).is_none()).cloned();
    report.integral = report.witness.is_none();
    if !report.integral {
        report.verdict = Verdict::NonIntegral;
        return report;
    }
    let t_omega = omega.scale(&Polynomial::constant(n, Scalar::t_pow(1)));
    let (class, primitive) = class_and_primitive(chart, &t_omega).expect("closed 2-form");
    report.exact_part_primitive = Some(primitive.clone());
    if !class.is_zero() {
        report.class = Some(class);
        report.verdict = Verdict::PrequantizableGlobally;
        report.obstruction = Some(
            "T·ω has a nonzero integral class on this chart: the connection exists after gluing, which is out of scope"
                .into(),
        );
        return report;
    }
    report.class = Some(class);
    let conn = Connection1::new(chart, primitive).expect("primitive lives on the chart");
    assert_eq!(conn.curvature(), &t_omega, "curvature of the constructed connection");
    report.residues = chart
        .log_coords()
        .map(|i| (i, crate::logcalc::residue(chart, conn.sigma(), i).unwrap_or_else(|_| conn.sigma().coeff(1 << i))))
        .collect();
    let conn = match normalize_residues(chart, &conn) {
        Ok((c, shifts)) => {
            report.normalized_shifts = shifts;
            c
        }
        Err(_) => conn,
    };
    report.connection = Some(conn);
    report.verdict = Verdict::ConnectionConstructed;
    report
}
