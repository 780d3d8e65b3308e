use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Coeff, Polynomial};
use crate::error::{Error, Result};

use super::chart::Chart;
use super::field::LogVectorField;

/// Index set of a basis cell, as a bitmask over variable indices.
pub type Cell = u32;

pub fn cell_indices(cell: Cell) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| cell & (1 << i) != 0)
}

/// Sign of `e^I ∧ e^J` relative to `e^{I∪J}`; zero when the sets meet.
pub fn wedge_sign(a: Cell, b: Cell) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    for j in cell_indices(b) {
        inversions += (a >> (j + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A logarithmic `p`-form `Σ_I c_I e^I` in the coframe `e^i = dz_i/z_i` for
/// divisor coordinates and `e^j = dz_j` otherwise. Only sorted index sets
/// are stored (as bitmasks) and zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogForm<C> {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Cell, Polynomial<C>>,
}

impl<C: Coeff> LogForm<C> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        assert!(degree <= nvars, "form degree exceeds dimension");
        LogForm { nvars, degree, terms: BTreeMap::new() }
    }

    /// A function viewed as a 0-form.
    pub fn function(f: Polynomial<C>) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        out.add_cell(0, f);
        out
    }

    /// The basis cell `e^I` with coefficient one.
    pub fn basis(nvars: usize, cell: Cell) -> Self {
        let mut out = Self::zero(nvars, cell.count_ones() as usize);
        out.add_cell(cell, Polynomial::one(nvars));
        out
    }

    /// `e^i`.
    pub fn coframe(nvars: usize, i: usize) -> Self {
        Self::basis(nvars, 1 << i)
    }

    pub fn from_cells(nvars: usize, degree: usize, cells: impl IntoIterator<Item = (Cell, Polynomial<C>)>) -> Self {
        let mut out = Self::zero(nvars, degree);
        for (cell, c) in cells {
            assert_eq!(cell.count_ones() as usize, degree, "cell degree mismatch");
            out.add_cell(cell, c);
        }
        out
    }

    pub fn add_cell(&mut self, cell: Cell, c: Polynomial<C>) {
        debug_assert_eq!(cell.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&cell) {
            Some(slot) => {
                let sum = &*slot + &c;
                if sum.is_zero() {
                    self.terms.remove(&cell);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(cell, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, &Polynomial<C>)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, cell: Cell) -> Polynomial<C> {
        self.terms.get(&cell).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> Option<Polynomial<C>> {
        (self.degree == 0).then(|| self.coeff(0))
    }

    pub fn scale(&self, f: &Polynomial<C>) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (cell, c) in &self.terms {
            out.add_cell(*cell, c * f);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add a {}-form to a {}-form",
                other.degree, self.degree
            )));
        }
        let mut out = self.clone();
        for (cell, c) in &other.terms {
            out.add_cell(*cell, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch("wedge of forms from different charts".into()));
        }
        if self.degree + other.degree > self.nvars {
            return Err(Error::Degree(format!(
                "wedge of degrees {} and {} exceeds dimension {}",
                self.degree, other.degree, self.nvars
            )));
        }
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let s = wedge_sign(*a, *b);
                if s != 0 {
                    out.add_cell(a | b, (ca * cb).scale(&C::from_int(s)));
                }
            }
        }
        Ok(out)
    }

    /// The logarithmic exterior derivative. The coframe is closed, so only
    /// coefficients are differentiated: `d(c e^J) = Σ_k ξ_k(c) e^k ∧ e^J`.
    pub fn d(&self, chart: &Chart) -> Self {
        let n = self.nvars;
        if self.degree == n {
            return Self::zero(n, n);
        }
        let mut out = Self::zero(n, self.degree + 1);
        for (cell, c) in &self.terms {
            for k in 0..n {
                let s = wedge_sign(1 << k, *cell);
                if s == 0 {
                    continue;
                }
                let dk = if chart.is_log(k) { c.euler(k) } else { c.partial(k) };
                if !dk.is_zero() {
                    out.add_cell(cell | (1 << k), dk.scale(&C::from_int(s)));
                }
            }
        }
        out
    }

    pub fn is_closed(&self, chart: &Chart) -> bool {
        self.d(chart).is_zero()
    }

    /// Contraction with a logarithmic field, computed from the dual pairing
    /// `⟨e^i, ξ_j⟩ = δ_ij`.
    pub fn interior(&self, chart: &Chart, field: &LogVectorField<C>) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree("interior product of a 0-form".into()));
        }
        let v = field.log_coeffs(chart)?;
        Ok(self.interior_log(&v))
    }

    /// Contraction given the field's log-frame coefficients.
    pub fn interior_log(&self, v: &[Polynomial<C>]) -> Self {
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (cell, c) in &self.terms {
            let mut sign = 1;
            for k in cell_indices(*cell) {
                if !v[k].is_zero() {
                    let t = c * &v[k];
                    out.add_cell(cell & !(1 << k), if sign > 0 { t } else { -t });
                }
                sign = -sign;
            }
        }
        out
    }

    /// `L_δ = i_δ d + d i_δ`.
    pub fn lie_derivative(&self, chart: &Chart, field: &LogVectorField<C>) -> Result<Self> {
        let v = field.log_coeffs(chart)?;
        let a = if self.degree == self.nvars {
            Self::zero(self.nvars, self.degree)
        } else {
            self.d(chart).interior_log(&v)
        };
        if self.degree == 0 {
            return Ok(a);
        }
        let b = self.interior_log(&v).d(chart);
        a.try_add(&b)
    }

    /// `η(δ_1, …, δ_p)`.
    pub fn evaluate(&self, chart: &Chart, fields: &[LogVectorField<C>]) -> Result<Polynomial<C>> {
        if fields.len() != self.degree {
            return Err(Error::Degree(format!(
                "a {}-form takes {} arguments, got {}",
                self.degree,
                self.degree,
                fields.len()
            )));
        }
        let mut cur = self.clone();
        for f in fields {
            cur = cur.interior(chart, f)?;
        }
        Ok(cur.coeff(0))
    }

    /// Maps every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (cell, c) in &self.terms {
            out.add_cell(*cell, f(c));
        }
        out
    }
}

impl<C: Coeff> Add for &LogForm<C> {
    type Output = LogForm<C>;

    fn add(self, rhs: &LogForm<C>) -> LogForm<C> {
        self.try_add(rhs).expect("form addition")
    }
}

impl<C: Coeff> Sub for &LogForm<C> {
    type Output = LogForm<C>;

    fn sub(self, rhs: &LogForm<C>) -> LogForm<C> {
        self.try_add(&-rhs).expect("form subtraction")
    }
}

impl<C: Coeff> Neg for &LogForm<C> {
    type Output = LogForm<C>;

    fn neg(self) -> LogForm<C> {
        self.map_coeffs(|c| -c)
    }
}
