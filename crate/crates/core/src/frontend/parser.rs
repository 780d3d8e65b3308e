use crate::algebra::{Polynomial, Scalar};
use crate::logcalc::{Chart, LogForm, LogVectorField};

use super::lexer::{Spanned, Tok};
use super::{print_poly, ParseError, SessionManifest, Value};

const MAX_DEPTH: usize = 128;
const MAX_EXPONENT: i64 = 64;
const MAX_POWER_SIZE: usize = 100_000;

type P = Polynomial<Scalar>;

pub(crate) struct ExprParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    chart: &'a Chart,
    objects: Option<&'a SessionManifest>,
    depth: usize,
}

impl<'a> ExprParser<'a> {
    pub(crate) fn new(toks: &'a [Spanned], line: usize, chart: &'a Chart, objects: Option<&'a SessionManifest>) -> Self {
        ExprParser { toks, pos: 0, line, chart, objects, depth: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos.min(self.toks.len() - 1)].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos.min(self.toks.len() - 1)].col
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err(&self, col: usize, expected: &[&str], found: impl Into<String>) -> ParseError {
        ParseError::new(self.line, col, expected, found)
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.err(self.col(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[what]))
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected(&["an operator", "end of line"])),
        }
    }

    fn n(&self) -> usize {
        self.chart.nvars()
    }

    fn names(&self) -> &[String] {
        self.chart.ctx().names()
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err(self.col(), &["shallower nesting"], format!("depth {}", self.depth)));
        }
        Ok(())
    }

    pub(crate) fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let col = self.col();
            self.bump();
            let rhs_col = self.col();
            let mut rhs = self.term()?;
            if negate {
                rhs = neg(rhs);
            }
            acc = self.add(acc, rhs, col, rhs_col)?;
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let div = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => return Ok(acc),
            };
            self.bump();
            let col = self.col();
            let rhs = self.unary()?;
            acc = if div { self.div(acc, rhs, col)? } else { self.mul(acc, rhs, col)? };
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let v = self.unary()?;
            self.depth -= 1;
            return Ok(neg(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let col = self.col();
            let negate = *self.peek() == Tok::Minus;
            if negate {
                self.bump();
            }
            let mut rhs = self.atom()?;
            if negate {
                rhs = neg(rhs);
            }
            acc = match (acc, rhs) {
                (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b).map_err(|e| self.err(col, &["forms of compatible degree"], e.to_string()))?),
                (Value::Form(_), b) => return Err(self.err(col, &["a form"], b.kind())),
                (Value::Func(a), Value::Func(b)) => Value::Func(self.pow(&a, &b, col)?),
                (Value::Func(_), b) => return Err(self.err(col, &["an integer exponent"], b.kind())),
                (a @ Value::Field(_), _) => return Err(self.err(col, &["a function or form before '^'"], a.kind())),
            };
        }
        Ok(acc)
    }

    fn pow(&self, base: &P, e: &P, col: usize) -> Result<P, ParseError> {
        let k = e
            .as_constant()
            .and_then(|c| c.as_integer())
            .ok_or_else(|| self.err(col, &["an integer exponent"], print_poly(self.names(), e)))?;
        let k: i64 = match i64::try_from(&k) {
            Ok(k) if k.abs() <= MAX_EXPONENT => k,
            _ => return Err(self.err(col, &[&format!("an exponent of size at most {MAX_EXPONENT}")], k.to_string())),
        };
        let size = base.to_string().len().saturating_mul(k.unsigned_abs() as usize);
        let terms = base.num_terms().saturating_mul(k.unsigned_abs() as usize);
        if size > MAX_POWER_SIZE || (base.num_terms() > 1 && terms > 512) {
            return Err(self.err(col, &["a smaller power"], format!("exponent {k}")));
        }
        let out = base
            .pow(k as i32)
            .ok_or_else(|| self.err(col, &["an invertible base for a negative power"], print_poly(self.names(), base)))?;
        self.in_arena(out, col)
    }

    fn in_arena(&self, p: P, col: usize) -> Result<P, ParseError> {
        match self.chart.check_element(&p) {
            Ok(()) => Ok(p),
            Err(_) => Err(self.err(col, &["an element of the chart's ring"], print_poly(self.names(), &p))),
        }
    }

    fn add(&self, a: Value, b: Value, col: usize, rhs_col: usize) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Func(a), Value::Func(b)) => Value::Func(&a + &b),
            (Value::Field(a), Value::Field(b)) => Value::Field(&a + &b),
            (Value::Form(a), Value::Form(b)) => {
                Value::Form(a.try_add(&b).map_err(|_| self.err(col, &[&format!("a {}-form", a.degree())], format!("a {}-form", b.degree())))?)
            }
            (a, b) => return Err(self.err(rhs_col, &[a.kind()], b.kind())),
        })
    }

    fn mul(&self, a: Value, b: Value, col: usize) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Func(a), Value::Func(b)) => Value::Func(&a * &b),
            (Value::Func(f), Value::Field(v)) | (Value::Field(v), Value::Func(f)) => Value::Field(v.scale(&f)),
            (Value::Func(f), Value::Form(w)) | (Value::Form(w), Value::Func(f)) => Value::Form(w.scale(&f)),
            (Value::Form(_), Value::Form(_)) => return Err(self.err(col, &["a function ('^' is the wedge product)"], "a form")),
            (_, b) => return Err(self.err(col, &["a function"], b.kind())),
        })
    }

    fn div(&self, a: Value, b: Value, col: usize) -> Result<Value, ParseError> {
        let Value::Func(g) = b else {
            return Err(self.err(col, &["a function"], b.kind()));
        };
        if g.is_zero() {
            return Err(self.err(col, &["a nonzero divisor"], "0"));
        }
        let quot = |p: &P| -> Result<P, ParseError> {
            if let Some(c) = g.as_constant() {
                let inv = c.try_inverse().map_err(|_| self.err(col, &["an invertible constant"], c.to_string()))?;
                return Ok(p.scale(&inv));
            }
            self.chart.div_exact(p, &g).ok_or_else(|| {
                self.err(
                    col,
                    &["an exact quotient in the chart's ring"],
                    format!("({}) / ({})", print_poly(self.names(), p), print_poly(self.names(), &g)),
                )
            })
        };
        Ok(match a {
            Value::Func(f) => Value::Func(quot(&f)?),
            Value::Field(v) => Value::Field(LogVectorField::new(v.coeffs().iter().map(&quot).collect::<Result<_, _>>()?)),
            Value::Form(w) => {
                let cells = w.cells().map(|(c, p)| quot(p).map(|q| (c, q))).collect::<Result<Vec<_>, _>>()?;
                Value::Form(LogForm::from_cells(w.nvars(), w.degree(), cells))
            }
        })
    }

    fn var_index(&mut self) -> Result<usize, ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Ident(name) => self
                .chart
                .ctx()
                .index_of(&name)
                .ok_or_else(|| self.err(col, &["a variable"], format!("identifier {name}"))),
            t => Err(self.err(col, &["a variable"], t.describe())),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let col = self.col();
        let n = self.n();
        match self.bump() {
            Tok::Int(k) => Ok(Value::Func(P::constant(n, Scalar::rational(num_rational::BigRational::from_integer(k))))),
            Tok::LParen => {
                self.enter()?;
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                self.depth -= 1;
                Ok(v)
            }
            Tok::At(name) => match self.chart.ctx().index_of(&name) {
                Some(i) => Ok(Value::Field(LogVectorField::partial(n, i))),
                None => Err(self.err(col, &["a variable after '@'"], format!("identifier {name}"))),
            },
            Tok::Ident(name) => self.named(&name, col),
            t => Err(self.err(col, &["a number", "a name", "'('", "'@'"], t.describe())),
        }
    }

    fn named(&mut self, name: &str, col: usize) -> Result<Value, ParseError> {
        let n = self.n();
        match name {
            "I" => return Ok(Value::Func(P::constant(n, Scalar::i()))),
            "T" => return Ok(Value::Func(P::constant(n, Scalar::t_pow(1)))),
            "d" => {
                self.expect(Tok::LParen, "'(' after d")?;
                self.enter()?;
                let inner_col = self.col();
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                self.depth -= 1;
                return match v {
                    Value::Func(f) => Ok(Value::Form(LogForm::function(f).d(self.chart))),
                    Value::Form(w) if w.degree() < n => Ok(Value::Form(w.d(self.chart))),
                    Value::Form(w) => Ok(Value::Form(LogForm::zero(n, w.degree()))),
                    v => Err(self.err(inner_col, &["a function or form inside d(...)"], v.kind())),
                };
            }
            "dlog" => {
                self.expect(Tok::LParen, "'(' after dlog")?;
                let i = self.var_index()?;
                self.expect(Tok::RParen, "')'")?;
                if self.chart.is_log(i) {
                    return Ok(Value::Form(LogForm::coframe(n, i)));
                }
                let x = P::var(n, i);
                return match self.chart.unit_inverse(&x) {
                    Some(inv) => Ok(Value::Form(LogForm::coframe(n, i).scale(&inv))),
                    None => Err(self.err(col, &["dlog of a divisor coordinate"], format!("dlog({name})", name = self.chart.name(i)))),
                };
            }
            _ => {}
        }
        if let Some(i) = self.chart.ctx().index_of(name) {
            return Ok(Value::Func(P::var(n, i)));
        }
        let Some(obj) = self.objects.and_then(|s| s.get(name)) else {
            return Err(self.err(col, &["a variable or defined name"], format!("identifier {name}")));
        };
        let value = obj.value.clone();
        if *self.peek() == Tok::LParen {
            let Value::Field(v) = value else {
                return Err(self.err(self.col(), &["an operator"], "'(' after a name that is not a vector field"));
            };
            self.bump();
            self.enter()?;
            let arg_col = self.col();
            let arg = self.expr()?;
            self.expect(Tok::RParen, "')'")?;
            self.depth -= 1;
            return match arg {
                Value::Func(f) => Ok(Value::Func(v.apply(&f))),
                a => Err(self.err(arg_col, &["a function"], a.kind())),
            };
        }
        Ok(value)
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Func(f) => Value::Func(-&f),
        Value::Field(v) => Value::Field(-&v),
        Value::Form(w) => Value::Form(-&w),
    }
}
