//! Session files and the canonical text form of functions, fields and forms.
//!
//! ```text
//! # Saito example
//! vars x y z
//! divisor poly x*y*(x + y)*((z - 2)*x + y)
//! vfield d1 : x*@x + y*@y
//! form w : (1/T)*dlog(x)^dlog(y)
//! ```
//!
//! Precedence from loosest to tightest: `+ -`, `* /`, unary `-`, `^`, atoms.
//! All binary operators associate left. `^` is the wedge product on forms
//! and an integer power on functions. `d(·)` is the exterior derivative,
//! `dlog(x)` the coframe element `dx/x` and `@x` the field `∂/∂x`. A name
//! bound to a vector field may be applied to a function: `d1(x*y)`.

mod lexer;
mod parser;
mod printer;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Polynomial, Scalar};
use crate::divisor::{is_coordinate_ncd, Divisor};
use crate::logcalc::{Arena, Chart, LogForm, LogVectorField, VarContext};

pub use printer::{print_field, print_form, print_poly, print_scalar, print_value};

use lexer::{lex_line, Tok};
use parser::ExprParser;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError { line, column, expected: expected.iter().map(|s| s.to_string()).collect(), found: found.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected {}, found {}", self.line, self.column, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

/// A parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Func(Polynomial<Scalar>),
    Field(LogVectorField<Scalar>),
    Form(LogForm<Scalar>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Func(_) => "a function",
            Value::Field(_) => "a vector field",
            Value::Form(_) => "a form",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefKind {
    Func,
    VField,
    Form,
    Conn,
}

impl DefKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DefKind::Func => "func",
            DefKind::VField => "vfield",
            DefKind::Form => "form",
            DefKind::Conn => "conn",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "func" => Some(DefKind::Func),
            "vfield" => Some(DefKind::VField),
            "form" => Some(DefKind::Form),
            "conn" => Some(DefKind::Conn),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorDecl {
    Empty,
    Coords(Vec<usize>),
    Poly(Polynomial<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub name: String,
    pub kind: DefKind,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionManifest {
    chart: Chart,
    divisor: DivisorDecl,
    arena_declared: bool,
    objects: Vec<Object>,
    index: BTreeMap<String, usize>,
}

const RESERVED: [&str; 4] = ["I", "T", "d", "dlog"];

impl SessionManifest {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn divisor_decl(&self) -> &DivisorDecl {
        &self.divisor
    }

    /// The declared divisor; coordinate when its equation is a product of
    /// distinct coordinates.
    pub fn divisor(&self) -> crate::Result<Divisor<Scalar>> {
        let n = self.chart.nvars();
        match &self.divisor {
            DivisorDecl::Empty => Ok(Divisor::coordinate(n, 0)),
            DivisorDecl::Coords(_) => Ok(Divisor::coordinate(n, self.chart.ctx().divisor_mask())),
            DivisorDecl::Poly(h) => match is_coordinate_ncd(h) {
                Some(mask) => Ok(Divisor::coordinate(n, mask)),
                None => Divisor::general(h.clone()),
            },
        }
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.index.get(name).map(|&i| &self.objects[i])
    }

    /// Parses an expression against the session's chart and named objects.
    pub fn parse_expr(&self, text: &str) -> Result<Value, ParseError> {
        if text.contains('\n') {
            return Err(ParseError::new(1, 1, &["a single-line expression"], "a line break"));
        }
        let toks = lex_line(text, 1)?;
        let mut p = ExprParser::new(&toks, 1, &self.chart, Some(self));
        let v = p.expr()?;
        p.expect_end()?;
        Ok(v)
    }

    fn insert(&mut self, obj: Object) {
        self.index.insert(obj.name.clone(), self.objects.len());
        self.objects.push(obj);
    }

    /// Canonical session text; parses back to an equal manifest.
    pub fn print_canonical(&self) -> String {
        let names = self.chart.ctx().names();
        let mut out = format!("vars {}\n", names.join(" "));
        if self.arena_declared {
            let a = match self.chart.arena() {
                Arena::Torus => "torus",
                Arena::Polynomial => "polynomial",
            };
            out.push_str(&format!("arena {a}\n"));
        }
        match &self.divisor {
            DivisorDecl::Empty => {}
            DivisorDecl::Coords(idx) => {
                let list: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
                out.push_str(&format!("divisor coords {}\n", list.join(" ")));
            }
            DivisorDecl::Poly(h) => out.push_str(&format!("divisor poly {}\n", print_poly(names, h))),
        }
        for o in &self.objects {
            out.push_str(&format!("{} {} : {}\n", o.kind.keyword(), o.name, print_value(&self.chart, &o.value)));
        }
        out
    }
}

fn found(t: &Tok) -> String {
    t.describe()
}

/// Parses a session. Declarations come first: `vars`, then optional
/// `arena torus|polynomial` and `divisor coords …|poly …`, then definitions.
pub fn parse_session(text: &str) -> Result<SessionManifest, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut arena: Option<Arena> = None;
    let mut divisor: Option<DivisorDecl> = None;
    let mut session: Option<SessionManifest> = None;

    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let toks = lex_line(line, lineno)?;
        let Tok::Ident(head) = &toks[0].tok else {
            if toks[0].tok == Tok::End {
                continue;
            }
            return Err(ParseError::new(lineno, toks[0].col, &["a declaration or definition"], found(&toks[0].tok)));
        };
        let bad_order = |what: &str| ParseError::new(lineno, 1, &[what], format!("'{head}'"));
        match head.as_str() {
            "vars" => {
                if vars.is_some() {
                    return Err(ParseError::new(lineno, 1, &["one vars declaration"], "a second one"));
                }
                let mut names = Vec::new();
                for t in &toks[1..] {
                    match &t.tok {
                        Tok::Ident(n) if RESERVED.contains(&n.as_str()) => {
                            return Err(ParseError::new(lineno, t.col, &["a variable name"], format!("reserved name {n}")));
                        }
                        Tok::Ident(n) if names.contains(n) => {
                            return Err(ParseError::new(lineno, t.col, &["a new variable name"], format!("duplicate {n}")));
                        }
                        Tok::Ident(n) => names.push(n.clone()),
                        Tok::End => break,
                        other => return Err(ParseError::new(lineno, t.col, &["a variable name"], found(other))),
                    }
                }
                if names.is_empty() || names.len() > 31 {
                    return Err(ParseError::new(lineno, toks.last().unwrap().col, &["1 to 31 variable names"], format!("{}", names.len())));
                }
                vars = Some(names);
            }
            "arena" => {
                if vars.is_none() || session.is_some() || arena.is_some() {
                    return Err(bad_order("one arena declaration after vars and before definitions"));
                }
                arena = Some(match (&toks[1].tok, &toks[2].tok) {
                    (Tok::Ident(a), Tok::End) if a == "torus" => Arena::Torus,
                    (Tok::Ident(a), Tok::End) if a == "polynomial" => Arena::Polynomial,
                    (Tok::Ident(_), t) if toks[1].tok != Tok::End => {
                        return Err(ParseError::new(lineno, toks[2].col, &["end of line"], found(t)))
                    }
                    (t, _) => return Err(ParseError::new(lineno, toks[1].col, &["torus", "polynomial"], found(t))),
                });
            }
            "divisor" => {
                let Some(names) = &vars else {
                    return Err(bad_order("vars before divisor"));
                };
                if session.is_some() || divisor.is_some() {
                    return Err(bad_order("one divisor declaration before definitions"));
                }
                match &toks[1].tok {
                    Tok::Ident(m) if m == "coords" => {
                        let mut idx = Vec::new();
                        for t in &toks[2..] {
                            match &t.tok {
                                Tok::Ident(n) => match names.iter().position(|v| v == n) {
                                    Some(i) if !idx.contains(&i) => idx.push(i),
                                    Some(_) => return Err(ParseError::new(lineno, t.col, &["a new coordinate"], format!("duplicate {n}"))),
                                    None => return Err(ParseError::new(lineno, t.col, &["a declared variable"], format!("identifier {n}"))),
                                },
                                Tok::End => break,
                                other => return Err(ParseError::new(lineno, t.col, &["a variable name"], found(other))),
                            }
                        }
                        divisor = Some(DivisorDecl::Coords(idx));
                    }
                    Tok::Ident(m) if m == "poly" => {
                        let ctx = VarContext::new(names.clone(), &[]).expect("checked names");
                        let scratch = Chart::new(ctx, Arena::Polynomial);
                        let mut p = ExprParser::new(&toks[2..], lineno, &scratch, None);
                        let col = toks[2].col;
                        let h = match p.expr()? {
                            Value::Func(h) if !h.is_zero() => h,
                            Value::Func(_) => return Err(ParseError::new(lineno, col, &["a nonzero polynomial"], "0")),
                            v => return Err(ParseError::new(lineno, col, &["a polynomial"], v.kind())),
                        };
                        p.expect_end()?;
                        divisor = Some(DivisorDecl::Poly(h));
                    }
                    t => return Err(ParseError::new(lineno, toks[1].col, &["coords", "poly"], found(t))),
                }
            }
            kw => {
                let Some(kind) = DefKind::from_keyword(kw) else {
                    return Err(ParseError::new(
                        lineno,
                        1,
                        &["vars", "arena", "divisor", "func", "vfield", "form", "conn"],
                        format!("identifier {kw}"),
                    ));
                };
                if session.is_none() {
                    let Some(names) = vars.clone() else {
                        return Err(bad_order("vars before definitions"));
                    };
                    session = Some(build(names, arena, divisor.take().unwrap_or(DivisorDecl::Empty)));
                }
                let s = session.as_mut().expect("just built");
                let name = match &toks[1].tok {
                    Tok::Ident(n) if RESERVED.contains(&n.as_str()) || s.chart.ctx().index_of(n).is_some() => {
                        return Err(ParseError::new(lineno, toks[1].col, &["a fresh name"], format!("identifier {n}")));
                    }
                    Tok::Ident(n) if s.index.contains_key(n) => {
                        return Err(ParseError::new(lineno, toks[1].col, &["a fresh name"], format!("redefinition of {n}")));
                    }
                    Tok::Ident(n) => n.clone(),
                    t => return Err(ParseError::new(lineno, toks[1].col, &["a name"], found(t))),
                };
                if toks[2].tok != Tok::Colon {
                    return Err(ParseError::new(lineno, toks[2].col, &["':'"], found(&toks[2].tok)));
                }
                let col = toks[3].col;
                let mut p = ExprParser::new(&toks[3..], lineno, &s.chart, Some(s));
                let v = p.expr()?;
                p.expect_end()?;
                let value = coerce(kind, v, s.chart.nvars()).map_err(|(want, got)| ParseError::new(lineno, col, &[want], got))?;
                s.insert(Object { name, kind, value });
            }
        }
    }
    match session {
        Some(s) => Ok(s),
        None => {
            let Some(names) = vars else {
                let lines = text.lines().count().max(1);
                return Err(ParseError::new(lines, 1, &["a vars declaration"], "end of input"));
            };
            Ok(build(names, arena, divisor.unwrap_or(DivisorDecl::Empty)))
        }
    }
}

fn build(names: Vec<String>, arena: Option<Arena>, divisor: DivisorDecl) -> SessionManifest {
    let mask_idx: Vec<usize> = match &divisor {
        DivisorDecl::Empty => vec![],
        DivisorDecl::Coords(idx) => idx.clone(),
        DivisorDecl::Poly(h) => {
            let m = is_coordinate_ncd(h).unwrap_or(0);
            (0..names.len()).filter(|i| (m >> i) & 1 == 1).collect()
        }
    };
    let default = match divisor {
        DivisorDecl::Coords(_) => Arena::Torus,
        _ => Arena::Polynomial,
    };
    let ctx = VarContext::new(names, &mask_idx).expect("checked names");
    SessionManifest {
        chart: Chart::new(ctx, arena.unwrap_or(default)),
        divisor,
        arena_declared: arena.is_some(),
        objects: Vec::new(),
        index: BTreeMap::new(),
    }
}

/// Stored value for a definition of the given kind, or `(expected, found)`.
fn coerce(kind: DefKind, v: Value, n: usize) -> Result<Value, (&'static str, String)> {
    let zero_func = |v: &Value| matches!(v, Value::Func(f) if f.is_zero());
    match (kind, v) {
        (DefKind::Func, v @ Value::Func(_)) => Ok(v),
        (DefKind::VField, v @ Value::Field(_)) => Ok(v),
        (DefKind::VField, v) if zero_func(&v) => Ok(Value::Field(LogVectorField::zero(n))),
        (DefKind::Form, v @ Value::Form(_)) => Ok(v),
        (DefKind::Form, Value::Func(f)) => Ok(Value::Form(LogForm::function(f))),
        (DefKind::Conn, Value::Form(f)) if f.degree() == 1 => Ok(Value::Form(f)),
        (DefKind::Conn, Value::Form(f)) => Err(("a 1-form", format!("a {}-form", f.degree()))),
        (DefKind::Conn, v) if zero_func(&v) => Ok(Value::Form(LogForm::zero(n, 1))),
        (DefKind::Func, v) => Err(("a function", v.kind().into())),
        (DefKind::VField, v) => Err(("a vector field", v.kind().into())),
        (DefKind::Form, v) => Err(("a form", v.kind().into())),
        (DefKind::Conn, v) => Err(("a 1-form", v.kind().into())),
    }
}
