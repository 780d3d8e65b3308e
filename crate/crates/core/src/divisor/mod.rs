//! Divisors `D = {h = 0}` and the predicates on them: reducedness, coordinate
//! normal crossings, logarithmic fields, Saito's criterion and weighted
//! homogeneity.

mod weights;

pub use weights::{weighted_homogeneous, Weights};

use crate::algebra::{determinant, Coeff, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::logcalc::LogVectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorKind {
    /// `h = c·∏_{i∈S} z_i`, with `S` given as a bitmask.
    CoordinateNcd(u32),
    General,
}

/// Which checks have passed. Flags are only ever set by running the check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flags {
    pub squarefree: bool,
    pub ncd: bool,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor<C> {
    h: Polynomial<C>,
    kind: DivisorKind,
    flags: Flags,
    basis: Option<SaitoBasis<C>>,
}

impl<C: Coeff> Divisor<C> {
    /// The coordinate divisor `∏_{i∈S} z_i = 0`.
    pub fn coordinate(nvars: usize, mask: u32) -> Self {
        let exps = (0..nvars).map(|i| ((mask >> i) & 1) as i32).collect();
        let h = Polynomial::monomial(nvars, Monomial::new(exps), C::one());
        Divisor {
            h,
            kind: DivisorKind::CoordinateNcd(mask),
            flags: Flags { squarefree: true, ncd: true, free: true },
            basis: None,
        }
    }

    /// A divisor given by its equation. Reducedness and coordinate normal
    /// crossings are checked here; freeness needs [`Divisor::certify`].
    pub fn general(h: Polynomial<C>) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::Invalid("divisor equation must be nonzero".into()));
        }
        if !h.is_polynomial() {
            return Err(Error::Invalid("divisor equation must be a polynomial".into()));
        }
        let squarefree = matches!(check_squarefree(&h), Squarefree::Reduced);
        let ncd = is_coordinate_ncd(&h);
        let kind = match ncd {
            Some(mask) => DivisorKind::CoordinateNcd(mask),
            None => DivisorKind::General,
        };
        Ok(Divisor {
            h,
            kind,
            flags: Flags { squarefree, ncd: ncd.is_some(), free: ncd.is_some() },
            basis: None,
        })
    }

    pub fn h(&self) -> &Polynomial<C> {
        &self.h
    }

    pub fn kind(&self) -> DivisorKind {
        self.kind
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn saito_basis(&self) -> Option<&SaitoBasis<C>> {
        self.basis.as_ref()
    }

    pub fn nvars(&self) -> usize {
        self.h.nvars()
    }

    /// Runs Saito's criterion on `fields` and records the basis on success.
    pub fn certify(mut self, fields: Vec<LogVectorField<C>>) -> Result<(Self, Saito<C>)> {
        let verdict = saito_check(fields, &self)?;
        if let Saito::Free(basis) = &verdict {
            self.flags.free = true;
            self.basis = Some(basis.clone());
        }
        Ok((self, verdict))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Squarefree<C> {
    Reduced,
    /// A non-constant common factor of `h` and all its partials.
    RepeatedFactor(Polynomial<C>),
}

/// `h` is reduced iff `gcd(h, ∂_1 h, …, ∂_n h)` is constant (characteristic 0).
pub fn check_squarefree<C: Coeff>(h: &Polynomial<C>) -> Squarefree<C> {
    assert!(!h.is_zero(), "check_squarefree: h must be nonzero");
    let mut g = h.clone();
    for i in 0..h.nvars() {
        if g.is_constant() {
            break;
        }
        let d = h.partial(i);
        if !d.is_zero() {
            g = g.gcd(&d);
        }
    }
    if g.is_constant() {
        Squarefree::Reduced
    } else {
        Squarefree::RepeatedFactor(g)
    }
}

/// `Some(S)` iff `h = c·∏_{i∈S} z_i` with `c` a nonzero constant.
pub fn is_coordinate_ncd<C: Coeff>(h: &Polynomial<C>) -> Option<u32> {
    let (m, _) = h.as_monomial()?;
    let mut mask = 0;
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => mask |= 1 << i,
            _ => return None,
        }
    }
    Some(mask)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Logarithmic<C> {
    /// `δ(h) = g·h`.
    Yes(Polynomial<C>),
    /// Remainder of `δ(h)` on division by `h`.
    No(Polynomial<C>),
}

impl<C> Logarithmic<C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Logarithmic::Yes(_))
    }
}

/// Decides `δ(h) ∈ (h)`.
pub fn is_logarithmic<C: Coeff>(delta: &LogVectorField<C>, d: &Divisor<C>) -> Logarithmic<C> {
    let h = d.h();
    let dh = delta.apply(h);
    if dh.is_polynomial() {
        match dh.exact_div(h) {
            Some(q) => Logarithmic::Yes(q),
            None => Logarithmic::No(C::poly_divmod(&dh, h).1),
        }
    } else {
        match dh.laurent_exact_div(h) {
            Some(q) => Logarithmic::Yes(q),
            None => Logarithmic::No(dh),
        }
    }
}

/// A basis of `Der(−log D)` with its determinant certificate
/// `det(coefficients) = certificate·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoBasis<C> {
    fields: Vec<LogVectorField<C>>,
    certificate: C,
}

impl<C: Coeff> SaitoBasis<C> {
    pub fn fields(&self) -> &[LogVectorField<C>] {
        &self.fields
    }

    pub fn certificate(&self) -> &C {
        &self.certificate
    }

    /// Re-expands the determinant and compares it with `certificate·h`.
    pub fn verify(&self, h: &Polynomial<C>) -> bool {
        match coefficient_det(&self.fields) {
            Ok(det) => det == h.scale(&self.certificate),
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Saito<C> {
    Free(SaitoBasis<C>),
    NotCertified(Polynomial<C>),
}

impl<C: Coeff> Saito<C> {
    pub fn det(&self, h: &Polynomial<C>) -> Polynomial<C> {
        match self {
            Saito::Free(b) => h.scale(b.certificate()),
            Saito::NotCertified(det) => det.clone(),
        }
    }
}

/// Determinant of the matrix whose rows are the `∂`-coefficients of the fields.
pub fn coefficient_det<C: Coeff>(fields: &[LogVectorField<C>]) -> Result<Polynomial<C>> {
    let rows: Vec<Vec<Polynomial<C>>> = fields.iter().map(|f| f.coeffs().to_vec()).collect();
    determinant(&rows)
}

/// Saito's criterion: `n` logarithmic fields form a basis of `Der(−log D)`
/// iff the determinant of their coefficients is a nonzero constant times `h`.
pub fn saito_check<C: Coeff>(fields: Vec<LogVectorField<C>>, d: &Divisor<C>) -> Result<Saito<C>> {
    let n = d.nvars();
    if fields.len() != n {
        return Err(Error::Invalid(format!("Saito's criterion needs {n} fields, got {}", fields.len())));
    }
    for (k, f) in fields.iter().enumerate() {
        if f.nvars() != n {
            return Err(Error::ContextMismatch(format!("field {} has {} variables", k + 1, f.nvars())));
        }
        if let Logarithmic::No(r) = is_logarithmic(f, d) {
            return Err(Error::NotLogarithmic(format!("field {} leaves remainder {r}", k + 1)));
        }
    }
    let det = coefficient_det(&fields)?;
    if let Some(q) = det.exact_div(d.h()) {
        if let Some(c) = q.as_constant() {
            if !c.is_zero() {
                return Ok(Saito::Free(SaitoBasis { fields, certificate: c }));
            }
        }
    }
    Ok(Saito::NotCertified(det))
}
