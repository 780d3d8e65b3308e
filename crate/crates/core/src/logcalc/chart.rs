use crate::algebra::{Coeff, Monomial, Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// Which ring the chart's functions live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arena {
    /// Polynomials `𝒪_X` on the affine chart.
    Polynomial,
    /// Laurent polynomials, inverted along the divisor coordinates. Models
    /// functions on the complement of a coordinate normal crossing divisor.
    Torus,
}

/// Ordered variable names plus the set `S` of coordinates along which the
/// divisor is a normal crossing in this chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    divisor: u32,
}

impl VarContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, divisor_coords: &[usize]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > 31 {
            return Err(Error::Invalid("at most 31 variables are supported".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate variable {a}")));
            }
        }
        let mut mask = 0u32;
        for &i in divisor_coords {
            if i >= names.len() {
                return Err(Error::Invalid(format!("divisor coordinate {i} out of range")));
            }
            mask |= 1 << i;
        }
        Ok(VarContext { names, divisor: mask })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn divisor_mask(&self) -> u32 {
        self.divisor
    }
}

/// A variable context together with its arena. Every object in a
/// computation is interpreted relative to one chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    ctx: VarContext,
    arena: Arena,
}

impl Chart {
    pub fn new(ctx: VarContext, arena: Arena) -> Self {
        Chart { ctx, arena }
    }

    /// Convenience constructor from names and divisor coordinate names.
    pub fn with_names(names: &[&str], divisor: &[&str], arena: Arena) -> Result<Self> {
        let idx: Vec<usize> = divisor
            .iter()
            .map(|d| {
                names
                    .iter()
                    .position(|n| n == d)
                    .ok_or_else(|| Error::Invalid(format!("unknown divisor coordinate {d}")))
            })
            .collect::<Result<_>>()?;
        Ok(Chart::new(VarContext::new(names.iter().copied(), &idx)?, arena))
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn arena(&self) -> Arena {
        self.arena
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.ctx.names[i]
    }

    /// True for divisor coordinates, whose coframe element is `dz/z`.
    pub fn is_log(&self, i: usize) -> bool {
        self.ctx.divisor & (1 << i) != 0
    }

    pub fn log_coords(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nvars()).filter(|&i| self.is_log(i))
    }

    pub fn plain_coords(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nvars()).filter(|&i| !self.is_log(i))
    }

    pub fn all_log(&self) -> bool {
        self.plain_coords().next().is_none()
    }

    pub fn var<C: Coeff>(&self, i: usize) -> Polynomial<C> {
        Polynomial::var(self.nvars(), i)
    }

    pub fn constant<C: Coeff>(&self, c: C) -> Polynomial<C> {
        Polynomial::constant(self.nvars(), c)
    }

    /// Checks that `p` is an element of the arena ring.
    pub fn check_element<C: Coeff>(&self, p: &Polynomial<C>) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "{} variables in a {}-variable chart",
                p.nvars(),
                self.nvars()
            )));
        }
        for (m, _) in p.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e < 0 && (self.arena == Arena::Polynomial || !self.is_log(i)) {
                    return Err(Error::NotInArena(format!("exponent {e} on {}", self.name(i))));
                }
            }
        }
        Ok(())
    }

    /// Units of the arena: nonzero unit constants, times monomials in the
    /// divisor coordinates on a torus chart.
    pub fn is_unit<C: Coeff>(&self, p: &Polynomial<C>) -> bool {
        self.unit_inverse(p).is_some()
    }

    pub fn unit_inverse<C: Coeff>(&self, p: &Polynomial<C>) -> Option<Polynomial<C>> {
        let (m, c) = p.as_monomial()?;
        let inv = c.inverse()?;
        let ok = m.exps().iter().enumerate().all(|(i, &e)| {
            e == 0 || (self.arena == Arena::Torus && self.is_log(i))
        });
        ok.then(|| {
            Polynomial::monomial(self.nvars(), Monomial::new(m.exps().iter().map(|e| -e).collect()), inv)
        })
    }

    /// Exact quotient in the arena ring.
    pub fn div_exact<C: Coeff>(&self, a: &Polynomial<C>, b: &Polynomial<C>) -> Option<Polynomial<C>> {
        if let Some(inv) = self.unit_inverse(b) {
            return Some(a * &inv);
        }
        let q = match self.arena {
            Arena::Polynomial => a.exact_div(b)?,
            Arena::Torus => a.laurent_exact_div(b)?,
        };
        self.check_element(&q).ok().map(|_| q)
    }

    /// Converts a rational function to an arena element when its reduced
    /// denominator is a unit.
    pub fn from_rational<C: Coeff>(&self, r: &RationalFunction<C>) -> Option<Polynomial<C>> {
        let red = r.reduce();
        if let Some(inv) = self.unit_inverse(&red.den) {
            let q = &red.num * &inv;
            return self.check_element(&q).ok().map(|_| q);
        }
        self.div_exact(&red.num, &red.den)
    }

    /// Polynomial representative of an arena element: multiplies away the
    /// negative exponents (a unit on torus charts).
    pub fn clear_denominators<C: Coeff>(&self, p: &Polynomial<C>) -> Polynomial<C> {
        let lo = p.min_exponents();
        let clear: Vec<i32> = lo.exps().iter().map(|&e| (-e).max(0)).collect();
        p.mul_monomial(&Monomial::new(clear))
    }
}
