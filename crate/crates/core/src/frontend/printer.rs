use num_traits::One;

use crate::algebra::{Monomial, Polynomial, Scalar};
use crate::logcalc::{cell_indices, Cell, Chart, LogForm, LogVectorField};

use super::Value;

/// A scalar as an atom-safe factor: sums of several `T` powers are
/// parenthesized.
pub fn print_scalar(c: &Scalar) -> String {
    if c.num_terms() > 1 {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn print_monomial(names: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
        .collect();
    parts.join("*")
}

/// One signed term `c·m`, without surrounding spaces.
fn print_term(names: &[String], m: &Monomial, c: &Scalar) -> String {
    let mono = print_monomial(names, m);
    if mono.is_empty() {
        return print_scalar(c);
    }
    if c.is_one() {
        mono
    } else if (-c.clone()).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", print_scalar(c))
    }
}

fn join_signed(terms: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Terms in decreasing graded-lex order.
pub fn print_poly(names: &[String], p: &Polynomial<Scalar>) -> String {
    join_signed(p.terms().rev().map(|(m, c)| print_term(names, m, c)))
}

/// `coefficient*basis`, with multi-term coefficients parenthesized.
fn scaled(names: &[String], p: &Polynomial<Scalar>, basis: &str) -> String {
    if p.num_terms() == 1 {
        let (m, c) = p.terms().next().expect("one term");
        let head = print_term(names, m, c);
        match head.as_str() {
            "1" => basis.to_string(),
            "-1" => format!("-{basis}"),
            _ => format!("{head}*{basis}"),
        }
    } else {
        format!("({})*{basis}", print_poly(names, p))
    }
}

pub fn print_field(names: &[String], v: &LogVectorField<Scalar>) -> String {
    join_signed(
        v.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| scaled(names, c, &format!("@{}", names[i]))),
    )
}

fn print_basis(names: &[String], log_mask: u32, cell: Cell) -> String {
    let parts: Vec<String> = cell_indices(cell)
        .map(|i| if (log_mask >> i) & 1 == 1 { format!("dlog({})", names[i]) } else { format!("d({})", names[i]) })
        .collect();
    parts.join("^")
}

/// Forms need their chart to name the coframe: `dlog(x)` on divisor
/// coordinates, `d(x)` elsewhere.
pub fn print_form(chart: &Chart, w: &LogForm<Scalar>) -> String {
    let names = chart.ctx().names();
    let log_mask = chart.ctx().divisor_mask();
    if w.degree() == 0 {
        return print_poly(names, &w.coeff(0));
    }
    if w.is_zero() {
        return format!("0*{}", print_basis(names, log_mask, (1 << w.degree()) - 1));
    }
    join_signed(w.cells().map(|(cell, c)| scaled(names, c, &print_basis(names, log_mask, cell))))
}

/// Prints a parsed value against the chart it was parsed on.
pub fn print_value(chart: &Chart, v: &Value) -> String {
    let names = chart.ctx().names();
    match v {
        Value::Func(f) => print_poly(names, f),
        Value::Field(x) => print_field(names, x),
        Value::Form(w) => print_form(chart, w),
    }
}
