//! Canonical text rendering.
//!
//! Terms appear in descending graded-lex order, `*` separates factors and
//! subtraction is written `a - b`; the output parses back to the same value.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elem::DomainElem;
use super::poly::{Monomial, MultiPoly};
use super::qpoly::QPoly;

/// Name of the map variable with index `i`: X, Y, W, then Z1, Z2, ...
pub fn var_name(i: usize) -> String {
    match i {
        0 => "X".into(),
        1 => "Y".into(),
        2 => "W".into(),
        k => format!("Z{}", k - 2),
    }
}

/// Inverse of [`var_name`].
pub fn var_index(name: &str) -> Option<usize> {
    match name {
        "X" => Some(0),
        "Y" => Some(1),
        "W" => Some(2),
        _ => {
            let k: usize = name.strip_prefix('Z')?.parse().ok()?;
            (k >= 1 && !name[1..].starts_with('0')).then_some(k + 2)
        }
    }
}

fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Joins signed pieces as `a + b - c`, with a leading `-` on the first.
fn join_signed(pieces: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (neg, body) in pieces {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `c*m` for a positive rational `c` and a monomial body; unit coefficients
/// are omitted.
fn scaled(c: &BigRational, body: &str) -> String {
    if body.is_empty() {
        rational(c)
    } else if c.is_one() {
        body.to_string()
    } else {
        format!("{}*{}", rational(c), body)
    }
}

fn t_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "t".into(),
        k => format!("t^{k}"),
    }
}

pub fn render_qpoly(p: &QPoly) -> String {
    join_signed(p.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.is_negative(), scaled(&c.abs(), &t_power(k)))))
}

fn qpoly_is_atom(p: &QPoly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

fn paren_qpoly(p: &QPoly) -> String {
    if qpoly_is_atom(p) && !p.is_lc_negative() {
        render_qpoly(p)
    } else {
        format!("({})", render_qpoly(p))
    }
}

/// Standalone rendering of a scalar.
pub fn render_scalar(c: &DomainElem) -> String {
    match c {
        DomainElem::Int(n) => n.to_string(),
        DomainElem::Rat(q) => rational(q),
        DomainElem::Poly(p) => render_qpoly(p),
        DomainElem::Frac(f) => {
            if f.is_polynomial() {
                render_qpoly(f.num())
            } else {
                let num = if qpoly_is_atom(f.num()) { render_qpoly(f.num()) } else { format!("({})", render_qpoly(f.num())) };
                format!("{}/{}", num, paren_qpoly(f.den()))
            }
        }
    }
}

/// Renders `|c|` as a coefficient of a monomial body (empty body for the
/// constant term) and reports the sign that was split off.
fn coefficient_term(c: &DomainElem, body: &str) -> (bool, String) {
    let neg = c.is_negative();
    let abs = if neg { -c } else { c.clone() };
    let text = match &abs {
        DomainElem::Int(n) => scaled(&BigRational::from_integer(n.clone()), body),
        DomainElem::Rat(q) => scaled(q, body),
        DomainElem::Poly(p) if p.is_constant() => scaled(&p.coeff(0), body),
        DomainElem::Frac(f) if f.is_polynomial() && f.num().is_constant() => scaled(&f.num().coeff(0), body),
        other => {
            let s = match other {
                DomainElem::Poly(p) if !qpoly_is_atom(p) => format!("({})", render_qpoly(p)),
                DomainElem::Frac(f) if f.is_polynomial() && !qpoly_is_atom(f.num()) => {
                    format!("({})", render_qpoly(f.num()))
                }
                _ => render_scalar(other),
            };
            if body.is_empty() {
                s
            } else {
                format!("{s}*{body}")
            }
        }
    };
    (neg, text)
}

pub fn render_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var_name(i)),
            e => parts.push(format!("{}^{}", var_name(i), e)),
        }
    }
    parts.join("*")
}

pub fn render_poly(p: &MultiPoly) -> String {
    join_signed(p.terms().rev().map(|(m, c)| coefficient_term(c, &render_monomial(m))))
}

/// `(P, Q, ...)`.
pub fn render_components(components: &[MultiPoly]) -> String {
    let parts: Vec<String> = components.iter().map(render_poly).collect();
    format!("({})", parts.join(", "))
}
