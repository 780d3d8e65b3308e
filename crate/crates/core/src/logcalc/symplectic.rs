use crate::algebra::{determinant, solve_linear, Coeff, Polynomial, RationalFunction};
use crate::divisor::{Divisor, DivisorKind, SaitoBasis};
use crate::error::{Error, Result};

use super::chart::Chart;
use super::field::LogVectorField;
use super::form::{cell_indices, wedge_sign, Cell, LogForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameKind {
    /// `ξ_i = z_i∂_i` on divisor coordinates, `∂_j` elsewhere.
    Log,
    /// A certified Saito basis of `Der(−log D)`.
    Saito,
}

/// A basis `F_1, …, F_n` of logarithmic fields. Forms attached to a frame
/// are written in the dual coframe, so for the log frame they are ordinary
/// [`LogForm`]s of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame<C> {
    kind: FrameKind,
    fields: Vec<LogVectorField<C>>,
    /// `structure[k][l]` holds the frame coefficients of `[F_k, F_l]`.
    structure: Vec<Vec<Vec<Polynomial<C>>>>,
}

impl<C: Coeff> Frame<C> {
    pub fn log(chart: &Chart) -> Self {
        let n = chart.nvars();
        Frame {
            kind: FrameKind::Log,
            fields: (0..n).map(|i| LogVectorField::frame(chart, i)).collect(),
            structure: Vec::new(),
        }
    }

    /// The frame of a Saito basis, with its structure functions solved for.
    /// Brackets of basis fields are logarithmic, so freeness makes their
    /// frame coefficients polynomial; anything else is reported.
    pub fn saito(chart: &Chart, basis: &SaitoBasis<C>) -> Result<Self> {
        let fields = basis.fields().to_vec();
        let n = fields.len();
        let mut frame = Frame { kind: FrameKind::Saito, fields, structure: Vec::new() };
        let mut structure = vec![vec![Vec::new(); n]; n];
        for k in 0..n {
            for l in 0..n {
                structure[k][l] = if k == l {
                    vec![Polynomial::zero(chart.nvars()); n]
                } else if l < k {
                    structure[l][k].iter().map(|c: &Polynomial<C>| -c).collect()
                } else {
                    let b = frame.fields[k].lie_bracket(&frame.fields[l]);
                    frame.solve(chart, &b)?
                };
            }
        }
        frame.structure = structure;
        Ok(frame)
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn fields(&self) -> &[LogVectorField<C>] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    fn solve(&self, chart: &Chart, field: &LogVectorField<C>) -> Result<Vec<Polynomial<C>>> {
        let n = self.len();
        // field = Σ_k v_k F_k  ⇔  Mᵀ v = w with M[k][j] = coefficient of ∂_j in F_k
        let a: Vec<Vec<RationalFunction<C>>> = (0..n)
            .map(|j| (0..n).map(|k| RationalFunction::from_laurent(self.fields[k].coeff(j))).collect())
            .collect();
        let b: Vec<RationalFunction<C>> = field.coeffs().iter().map(RationalFunction::from_laurent).collect();
        let v = solve_linear(&a, &b)?;
        v.iter()
            .map(|r| {
                chart.from_rational(r).ok_or_else(|| {
                    Error::NotLogarithmic(format!(
                        "frame coefficient {}/{} is not in the arena",
                        r.num, r.den
                    ))
                })
            })
            .collect()
    }

    /// Coefficients `v` with `field = Σ v_k F_k`.
    pub fn coeffs_of(&self, chart: &Chart, field: &LogVectorField<C>) -> Result<Vec<Polynomial<C>>> {
        match self.kind {
            FrameKind::Log => field.log_coeffs(chart),
            FrameKind::Saito => self.solve(chart, field),
        }
    }

    /// `Σ v_k F_k`.
    pub fn field(&self, v: &[Polynomial<C>]) -> LogVectorField<C> {
        let n = v.first().map(|p| p.nvars()).unwrap_or(0);
        let mut out = LogVectorField::zero(n);
        for (vk, f) in v.iter().zip(&self.fields) {
            if !vk.is_zero() {
                out = &out + &f.scale(vk);
            }
        }
        out
    }

    /// `d f` in the dual coframe: coefficients `F_k(f)`.
    pub fn differential(&self, f: &Polynomial<C>) -> LogForm<C> {
        let n = f.nvars();
        LogForm::from_cells(n, 1, self.fields.iter().enumerate().map(|(k, fk)| (1 << k, fk.apply(f))))
    }

    /// Exterior derivative of a form written in the dual coframe.
    pub fn d(&self, chart: &Chart, eta: &LogForm<C>) -> LogForm<C> {
        match self.kind {
            FrameKind::Log => eta.d(chart),
            FrameKind::Saito => ce_differential(eta, &self.fields, |k, l| self.structure[k][l].clone()),
        }
    }

    pub fn interior(&self, chart: &Chart, eta: &LogForm<C>, field: &LogVectorField<C>) -> Result<LogForm<C>> {
        if eta.degree() == 0 {
            return Err(Error::Degree("interior product of a 0-form".into()));
        }
        Ok(eta.interior_log(&self.coeffs_of(chart, field)?))
    }

    /// `η(δ_1, …, δ_p)`.
    pub fn evaluate(&self, chart: &Chart, eta: &LogForm<C>, fields: &[LogVectorField<C>]) -> Result<Polynomial<C>> {
        if fields.len() != eta.degree() {
            return Err(Error::Degree(format!("a {}-form takes {} arguments", eta.degree(), eta.degree())));
        }
        let mut cur = eta.clone();
        for f in fields {
            cur = self.interior(chart, &cur, f)?;
        }
        Ok(cur.coeff(0))
    }

    /// `L_δ η = i_δ dη + d i_δ η`.
    pub fn lie_derivative(&self, chart: &Chart, eta: &LogForm<C>, field: &LogVectorField<C>) -> Result<LogForm<C>> {
        let v = self.coeffs_of(chart, field)?;
        let n = eta.nvars();
        let a = if eta.degree() == n {
            LogForm::zero(n, n)
        } else {
            self.d(chart, eta).interior_log(&v)
        };
        if eta.degree() == 0 {
            return Ok(a);
        }
        a.try_add(&self.d(chart, &eta.interior_log(&v)))
    }
}

/// The Chevalley–Eilenberg differential of a form given on a frame with
/// bracket coefficients `bracket(k, l)`:
///
/// `dη(F_0, …, F_p) = Σ_i (−1)^i F_i(η(…F̂_i…)) + Σ_{i<j} (−1)^{i+j} η([F_i, F_j], …F̂_i…F̂_j…)`.
pub fn ce_differential<C: Coeff>(
    eta: &LogForm<C>,
    fields: &[LogVectorField<C>],
    bracket: impl Fn(usize, usize) -> Vec<Polynomial<C>>,
) -> LogForm<C> {
    let n = eta.nvars();
    let p = eta.degree();
    if p == n {
        return LogForm::zero(n, n);
    }
    let mut out = LogForm::zero(n, p + 1);
    let full: Cell = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut cell: Cell = 0;
    loop {
        cell = next_cell(cell, full);
        if cell == 0 {
            break;
        }
        if cell.count_ones() as usize != p + 1 {
            continue;
        }
        let idx: Vec<usize> = cell_indices(cell).collect();
        let mut acc = Polynomial::zero(n);
        for (i, &ki) in idx.iter().enumerate() {
            let rest = cell & !(1 << ki);
            let c = eta.coeff(rest);
            if !c.is_zero() {
                let t = fields[ki].apply(&c);
                acc = if i % 2 == 0 { &acc + &t } else { &acc - &t };
            }
        }
        for (i, &ki) in idx.iter().enumerate() {
            for (j, &kj) in idx.iter().enumerate().skip(i + 1) {
                let rest = cell & !(1 << ki) & !(1 << kj);
                let br = bracket(ki, kj);
                let mut t = Polynomial::zero(n);
                for (m, cm) in br.iter().enumerate() {
                    if cm.is_zero() {
                        continue;
                    }
                    let s = wedge_sign(1 << m, rest);
                    if s == 0 {
                        continue;
                    }
                    let e = eta.coeff(rest | (1 << m));
                    if !e.is_zero() {
                        let v = cm * &e;
                        t = if s > 0 { &t + &v } else { &t - &v };
                    }
                }
                acc = if (i + j) % 2 == 0 { &acc + &t } else { &acc - &t };
            }
        }
        out.add_cell(cell, acc);
    }
    out
}

fn next_cell(cell: Cell, full: Cell) -> Cell {
    if cell == full {
        0
    } else {
        cell + 1
    }
}

/// A closed log 2-form on a chart, its Gram matrix in a frame and the
/// nondegeneracy verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticData<C> {
    chart: Chart,
    divisor: Divisor<C>,
    omega: LogForm<C>,
    frame: Frame<C>,
    gram: Vec<Vec<Polynomial<C>>>,
    det: Polynomial<C>,
    nondegenerate: bool,
    /// `(Aᵀ)⁻¹`, present when `det A` is a unit of the arena.
    inverse_t: Vec<Vec<Polynomial<C>>>,
}

impl<C: Coeff> SymplecticData<C> {
    /// Builds the Gram matrix `A_kl = ω(F_k, F_l)` and classifies it. Only
    /// closedness, degree and dimension are errors here; degeneracy is data.
    pub fn assess(chart: Chart, divisor: Divisor<C>, omega: LogForm<C>, frame: Frame<C>) -> Result<Self> {
        let n = chart.nvars();
        if omega.degree() != 2 {
            return Err(Error::Degree(format!("symplectic form has degree {}", omega.degree())));
        }
        if omega.nvars() != n || divisor.nvars() != n || frame.len() != n {
            return Err(Error::ContextMismatch("form, divisor and frame must share the chart".into()));
        }
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        for (_, c) in omega.cells() {
            chart.check_element(c)?;
        }
        if frame.kind() == FrameKind::Log {
            match divisor.kind() {
                DivisorKind::CoordinateNcd(mask) if mask == chart.ctx().divisor_mask() => {}
                _ => {
                    return Err(Error::Invalid(
                        "the log frame needs the coordinate divisor of the chart".into(),
                    ))
                }
            }
        }
        let dw = frame.d(&chart, &omega);
        if !dw.is_zero() {
            return Err(Error::NotClosed(format!("{} nonzero cells in dω", dw.cells().count())));
        }
        let gram: Vec<Vec<Polynomial<C>>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| match k.cmp(&l) {
                        std::cmp::Ordering::Less => omega.coeff((1 << k) | (1 << l)),
                        std::cmp::Ordering::Greater => -&omega.coeff((1 << k) | (1 << l)),
                        std::cmp::Ordering::Equal => Polynomial::zero(n),
                    })
                    .collect()
            })
            .collect();
        let det = determinant(&gram)?;
        // Hamiltonian fields need 1/det inside the arena, so nondegeneracy
        // means det is a unit: a monomial in the divisor coordinates times an
        // invertible scalar on a torus chart, an invertible scalar otherwise.
        let det_inv = match frame.kind() {
            FrameKind::Log => chart.unit_inverse(&det),
            FrameKind::Saito => det.as_constant().and_then(|c| c.inverse()).map(|c| Polynomial::constant(n, c)),
        };
        let nondegenerate = det_inv.is_some();
        let inverse_t = match &det_inv {
            Some(inv) => inverse_transpose(&gram, inv)?,
            None => Vec::new(),
        };
        Ok(SymplecticData { chart, divisor, omega, frame, gram, det, nondegenerate, inverse_t })
    }

    /// As [`SymplecticData::assess`], rejecting degenerate forms.
    pub fn assemble(chart: Chart, divisor: Divisor<C>, omega: LogForm<C>, frame: Frame<C>) -> Result<Self> {
        let s = Self::assess(chart, divisor, omega, frame)?;
        if !s.nondegenerate {
            return Err(Error::Degenerate(s.det.to_string()));
        }
        Ok(s)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn divisor(&self) -> &Divisor<C> {
        &self.divisor
    }

    pub fn omega(&self) -> &LogForm<C> {
        &self.omega
    }

    pub fn frame(&self) -> &Frame<C> {
        &self.frame
    }

    pub fn gram(&self) -> &[Vec<Polynomial<C>>] {
        &self.gram
    }

    pub fn det(&self) -> &Polynomial<C> {
        &self.det
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn nvars(&self) -> usize {
        self.chart.nvars()
    }

    /// Solves `Aᵀ v = b`, i.e. `Σ_k v_k ω(F_k, F_l) = b_l`.
    pub fn solve_dual(&self, b: &[Polynomial<C>]) -> Result<Vec<Polynomial<C>>> {
        if !self.nondegenerate {
            return Err(Error::Degenerate(self.det.to_string()));
        }
        let n = self.nvars();
        Ok((0..n)
            .map(|k| {
                let mut acc = Polynomial::zero(n);
                for (l, bl) in b.iter().enumerate() {
                    if !bl.is_zero() && !self.inverse_t[k][l].is_zero() {
                        acc = &acc + &(&self.inverse_t[k][l] * bl);
                    }
                }
                acc
            })
            .collect())
    }

    /// `ω(δ_1, δ_2)`.
    pub fn pair(&self, a: &LogVectorField<C>, b: &LogVectorField<C>) -> Result<Polynomial<C>> {
        self.frame.evaluate(&self.chart, &self.omega, &[a.clone(), b.clone()])
    }
}

/// `(Aᵀ)⁻¹ = adj(A)ᵀ / det A`, entry `(k, l)` being `(−1)^{k+l} M_kl / det A`.
fn inverse_transpose<C: Coeff>(a: &[Vec<Polynomial<C>>], det_inv: &Polynomial<C>) -> Result<Vec<Vec<Polynomial<C>>>> {
    let n = a.len();
    let mut out = vec![vec![Polynomial::zero(det_inv.nvars()); n]; n];
    for k in 0..n {
        for l in 0..n {
            let minor: Vec<Vec<Polynomial<C>>> = (0..n)
                .filter(|&r| r != k)
                .map(|r| (0..n).filter(|&c| c != l).map(|c| a[r][c].clone()).collect())
                .collect();
            let m = if n == 1 { Polynomial::one(det_inv.nvars()) } else { determinant(&minor)? };
            let v = &m * det_inv;
            out[k][l] = if (k + l) % 2 == 0 { v } else { -&v };
        }
    }
    Ok(out)
}

/// Builds [`SymplecticData`] in the log frame of a coordinate chart.
pub fn assemble_symplectic<C: Coeff>(chart: &Chart, omega: &LogForm<C>) -> Result<SymplecticData<C>> {
    let divisor = Divisor::coordinate(chart.nvars(), chart.ctx().divisor_mask());
    SymplecticData::assemble(chart.clone(), divisor, omega.clone(), Frame::log(chart))
}
