//! Writers for the s-expression text format and for Unicode display.
//!
//! Text grammar: integers, `a/b`, `(c re im)`, `nu0`, symbol sugar
//! `(z k [chart])`, `(e k [chart])`, `(nue k [chart])`, `(nuz k [chart])`,
//! `(nu1 [chart])`, bare names, and the operators `+ - * / ^ d`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::coefficient::Coefficient;
use crate::forms::{DiffWord, Form};
use crate::grassmann::GrassmannElement;
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussRat;
use crate::supermatrix::{Entry, SuperMatrix};
use crate::symbol::{Registry, SymbolId};

/// Sugar heads in the order they are tried when splitting a name.
const SUGAR: [&str; 4] = ["nue", "nuz", "z", "e"];

/// Splits names like `z1.4` into `("z", 1, Some(4))`.
pub fn split_name(name: &str) -> Option<(&'static str, u32, Option<usize>)> {
    let (stem, chart) = match name.split_once('.') {
        Some((s, c)) => (s, Some(c.parse().ok()?)),
        None => (name, None),
    };
    if stem == "nu1" {
        return Some(("nu1", 1, chart));
    }
    for head in SUGAR {
        if let Some(digits) = stem.strip_prefix(head) {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && !digits.starts_with('0') {
                return Some((head, digits.parse().ok()?, chart));
            }
        }
    }
    None
}

/// Name produced by the sugar form `(head k [chart])`.
pub fn sugar_name(head: &str, k: u32, chart: Option<usize>) -> String {
    let stem = if head == "nu1" { String::from("nu1") } else { format!("{head}{k}") };
    match chart {
        Some(c) => format!("{stem}.{c}"),
        None => stem,
    }
}

pub fn write_symbol(reg: &Registry, id: SymbolId) -> String {
    let name = reg.name(id);
    match split_name(name) {
        Some(("nu1", _, Some(c))) => format!("(nu1 {c})"),
        Some(("nu1", _, None)) => String::from("(nu1)"),
        Some((head, k, Some(c))) => format!("({head} {k} {c})"),
        Some((head, k, None)) => format!("({head} {k})"),
        None => name.to_string(),
    }
}

fn join(op: &str, parts: Vec<String>) -> String {
    match parts.len() {
        0 if op == "+" => String::from("0"),
        0 => String::from("1"),
        1 => parts.into_iter().next().unwrap(),
        _ => format!("({op} {})", parts.join(" ")),
    }
}

fn write_factor(reg: &Registry, v: SymbolId, e: u32) -> String {
    if e == 1 {
        write_symbol(reg, v)
    } else {
        format!("(^ {} {e})", write_symbol(reg, v))
    }
}

fn write_term(reg: &Registry, c: &GaussRat, m: &Monomial) -> String {
    let mut parts = Vec::new();
    if !c.is_one() || m.is_one() {
        parts.push(c.to_string());
    }
    parts.extend(m.factors().iter().map(|&(v, e)| write_factor(reg, v, e)));
    join("*", parts)
}

pub fn write_poly(reg: &Registry, p: &Poly) -> String {
    join("+", p.terms().map(|(m, c)| write_term(reg, c, m)).collect())
}

pub fn write_coefficient(reg: &Registry, c: &Coefficient) -> String {
    if c.denominator().is_one() {
        write_poly(reg, c.numerator())
    } else {
        format!("(/ {} {})", write_poly(reg, c.numerator()), write_poly(reg, c.denominator()))
    }
}

pub fn write_element(reg: &Registry, g: &GrassmannElement) -> String {
    let terms = g
        .terms()
        .map(|(m, nu0, c)| {
            let mut parts = Vec::new();
            if !c.is_one() || (m.is_empty() && !nu0) {
                parts.push(write_coefficient(reg, c));
            }
            if nu0 {
                parts.push(String::from("nu0"));
            }
            parts.extend(m.symbols().iter().map(|&s| write_symbol(reg, s)));
            join("*", parts)
        })
        .collect();
    join("+", terms)
}

fn write_word(reg: &Registry, w: &DiffWord) -> Vec<String> {
    w.factors()
        .iter()
        .map(|&(s, e)| {
            let d = format!("(d {})", write_symbol(reg, s));
            if e == 1 {
                d
            } else {
                format!("(^ {d} {e})")
            }
        })
        .collect()
}

pub fn write_form(reg: &Registry, f: &Form) -> String {
    let terms = f
        .terms()
        .map(|(w, g)| {
            let mut parts = Vec::new();
            if !g.is_one() || w.is_empty() {
                let body = write_element(reg, g);
                parts.push(body);
            }
            parts.extend(write_word(reg, w));
            join("*", parts)
        })
        .collect();
    join("+", terms)
}

/// `(matrix (a b | c) (d e | f) | (g h | i))`: `|` splits even from odd
/// columns inside a row and even from odd rows between rows.
pub fn write_matrix<E: Entry>(m: &SuperMatrix<E>, mut entry: impl FnMut(&E) -> String) -> String {
    let mut out = String::from("(matrix");
    for i in 0..m.rows().total() {
        if i == m.rows().even && m.rows().odd > 0 {
            out.push_str(" |");
        }
        out.push_str(" (");
        for j in 0..m.cols().total() {
            if j > 0 {
                out.push(' ');
            }
            if j == m.cols().even && m.cols().odd > 0 {
                out.push_str("| ");
            }
            out.push_str(&entry(m.get(i, j)));
        }
        out.push(')');
    }
    out.push(')');
    out
}

const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub fn subscript(n: usize) -> String {
    n.to_string().bytes().map(|b| SUB[usize::from(b - b'0')]).collect()
}

pub fn superscript(n: usize) -> String {
    n.to_string().bytes().map(|b| SUP[usize::from(b - b'0')]).collect()
}

fn chart_mark(chart: Option<usize>) -> String {
    match chart {
        Some(c) => format!("⁽{}⁾", superscript(c)),
        None => String::new(),
    }
}

pub fn pretty_symbol(reg: &Registry, id: SymbolId) -> String {
    let name = reg.name(id);
    if let Some(k) = name.strip_prefix("rho").and_then(|d| d.parse::<usize>().ok()) {
        return format!("ρ{}", subscript(k));
    }
    if name == "tau" {
        return String::from("τ");
    }
    match split_name(name) {
        Some(("nu1", _, chart)) => format!("ν(1){}", chart_mark(chart)),
        Some(("nue", k, chart)) => format!("ν(e{}{})", subscript(k as usize), chart_mark(chart)),
        Some(("nuz", k, chart)) => format!("ν(z{}{})", subscript(k as usize), chart_mark(chart)),
        Some((head, k, chart)) => format!("{head}{}{}", subscript(k as usize), chart_mark(chart)),
        None => name.to_string(),
    }
}

fn pretty_rat(c: &GaussRat) -> String {
    if c.is_real() {
        c.re().to_string()
    } else if c.re().is_zero() {
        format!("{}i", c.im())
    } else {
        format!("({} + {}i)", c.re(), c.im())
    }
}

fn pretty_monomial(reg: &Registry, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .factors()
        .iter()
        .map(|&(v, e)| {
            if e == 1 {
                pretty_symbol(reg, v)
            } else {
                format!("{}{}", pretty_symbol(reg, v), superscript(e as usize))
            }
        })
        .collect();
    parts.join("·")
}

/// Infix rendering `t1 + t2 − t3` of signed parts.
fn pretty_sum(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (negative, s)) in parts.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('−'),
            (0, false) => {}
            (_, true) => out.push_str(" − "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&s);
    }
    out
}

fn pretty_poly_parts(reg: &Registry, p: &Poly) -> Vec<(bool, String)> {
    p.terms()
        .rev()
        .map(|(m, c)| {
            let negative = c.is_real() && c.re().is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            let text = match (abs.is_one(), m.is_one()) {
                (_, true) => pretty_rat(&abs),
                (true, false) => pretty_monomial(reg, m),
                (false, false) => format!("{}·{}", pretty_rat(&abs), pretty_monomial(reg, m)),
            };
            (negative, text)
        })
        .collect()
}

fn parenthesize(parts: &[(bool, String)], s: String) -> String {
    if parts.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

pub fn pretty_coefficient(reg: &Registry, c: &Coefficient) -> String {
    let num_parts = pretty_poly_parts(reg, c.numerator());
    let num = pretty_sum(num_parts.clone());
    if c.denominator().is_one() {
        return num;
    }
    let den_parts = pretty_poly_parts(reg, c.denominator());
    let den = pretty_sum(den_parts.clone());
    format!("{}/{}", parenthesize(&num_parts, num), parenthesize(&den_parts, den))
}

pub fn pretty_element(reg: &Registry, g: &GrassmannElement) -> String {
    let parts = g
        .terms()
        .map(|(m, nu0, c)| {
            let mut factors = Vec::new();
            let coeff = pretty_coefficient(reg, c);
            let compound = c.numerator().len() > 1 && c.denominator().is_one();
            let negative = c.numerator().len() == 1 && c.numerator().terms().next().is_some_and(|(_, k)| k.is_real() && k.re().is_negative());
            let shown = if negative { pretty_coefficient(reg, &-c) } else { coeff };
            let has_factors = nu0 || !m.is_empty();
            if shown != "1" || !has_factors {
                factors.push(if compound && has_factors { format!("({shown})") } else { shown });
            }
            if nu0 {
                factors.push(String::from("ν₀"));
            }
            factors.extend(m.symbols().iter().map(|&s| pretty_symbol(reg, s)));
            (negative, factors.join("·"))
        })
        .collect();
    pretty_sum(parts)
}

pub fn pretty_form(reg: &Registry, f: &Form) -> String {
    let parts = f
        .terms()
        .map(|(w, g)| {
            let mut factors = Vec::new();
            let coeff = pretty_element(reg, g);
            if coeff != "1" || w.is_empty() {
                factors.push(if g.len() > 1 && !w.is_empty() { format!("({coeff})") } else { coeff });
            }
            for &(s, e) in w.factors() {
                let d = format!("d{}", pretty_symbol(reg, s));
                factors.push(if e == 1 { d } else { format!("({d}){}", superscript(e as usize)) });
            }
            (false, factors.join("∧"))
        })
        .collect();
    pretty_sum(parts)
}
