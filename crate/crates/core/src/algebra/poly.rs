//! Sparse multivariate polynomials over a declared coefficient domain.
//!
//! The map variables (X, Y, W, Z1, ...) live only in exponent vectors; the
//! parameter `t` of ℚ[t] is part of the coefficients, so every degree
//! reported here counts map variables only.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::elem::{self, DomainElem};
use super::error::{same_ring, AlgebraError, Result};
use super::ring::Ring;

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic with X > Y > W > ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree; `None` is the sentinel for the zero polynomial and sorts
/// below every integer.
pub type Degree = Option<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, DomainElem>,
}

impl MultiPoly {
    pub fn zero(ring: Ring, nvars: usize) -> MultiPoly {
        MultiPoly { ring, nvars, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring, nvars: usize) -> MultiPoly {
        MultiPoly::constant(DomainElem::one(ring), nvars)
    }

    pub fn constant(c: DomainElem, nvars: usize) -> MultiPoly {
        MultiPoly::term(c, Monomial::one(nvars))
    }

    pub fn from_int(ring: Ring, nvars: usize, n: i64) -> MultiPoly {
        MultiPoly::constant(DomainElem::from_int(ring, n), nvars)
    }

    /// The variable `X_i` (0 = X, 1 = Y, 2 = W, ...).
    pub fn var(ring: Ring, nvars: usize, i: usize) -> MultiPoly {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        MultiPoly::term(DomainElem::one(ring), Monomial::var(nvars, i))
    }

    pub fn term(c: DomainElem, m: Monomial) -> MultiPoly {
        let ring = c.ring();
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ring, nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms(ring: Ring, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, DomainElem)>) -> MultiPoly {
        let mut out = MultiPoly::zero(ring, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            assert_eq!(c.ring(), ring, "coefficient ring");
            out.add_term(Monomial(e), c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: DomainElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &DomainElem)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// No map variable occurs (the polynomial is a scalar).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> DomainElem {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn coeff(&self, m: &Monomial) -> DomainElem {
        self.terms.get(m).cloned().unwrap_or_else(|| DomainElem::zero(self.ring))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &DomainElem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    /// Sum of the terms of maximal total degree.
    pub fn leading_form(&self) -> Result<MultiPoly> {
        let d = self.total_degree().ok_or(AlgebraError::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        self.filter_terms(|m| m.degree() == d)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> MultiPoly {
        MultiPoly { ring: self.ring, nvars: self.nvars, terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn scale(&self, c: &DomainElem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.ring, self.nvars);
        }
        MultiPoly { ring: self.ring, nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { ring: self.ring, nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.ring, self.nvars);
        if e == 0 {
            return acc;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        acc
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(self * other)
    }

    fn compatible(&self, other: &MultiPoly) -> Result<()> {
        same_ring(self.ring, other.ring)?;
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// Exact quotient `self / q` in the polynomial ring.
    pub fn exact_div(&self, q: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(q)?;
        let (lm_q, lc_q) = q.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.ring, self.nvars);
        while let Some((lm, lc)) = rem.leading_term() {
            let inexact = || AlgebraError::InexactDivision(format!("({self}) / ({q})"));
            let m = lm.div(lm_q).ok_or_else(inexact)?;
            let c = lc.exact_div(lc_q).ok_or_else(inexact)?;
            let t = MultiPoly::term(c, m);
            rem = &rem - &(&t * q);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// Divides every coefficient by the scalar `c`, which must divide each.
    pub fn exact_div_scalar(&self, c: &DomainElem) -> Result<MultiPoly> {
        same_ring(self.ring, c.ring())?;
        if c.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            let q = x.exact_div(c).ok_or_else(|| AlgebraError::InexactDivision(format!("({self}) / ({c})")))?;
            terms.insert(m.clone(), q);
        }
        Ok(MultiPoly { ring: self.ring, nvars: self.nvars, terms })
    }

    /// Whether the scalar `c` divides every coefficient.
    pub fn divisible_by_scalar(&self, c: &DomainElem) -> bool {
        self.terms.values().all(|x| c.divides(x))
    }

    /// Image under the ring morphism `X_i -> args[i]`.
    pub fn substitute(&self, args: &[MultiPoly]) -> Result<MultiPoly> {
        if args.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, found: args.len() });
        }
        let Some(first) = args.first() else {
            return Ok(self.clone());
        };
        let target_nvars = first.nvars;
        for a in args {
            same_ring(self.ring, a.ring)?;
            if a.nvars != target_nvars {
                return Err(AlgebraError::ArityMismatch { expected: target_nvars, found: a.nvars });
            }
        }
        let terms: Vec<(&Monomial, &DomainElem)> = self.terms.iter().collect();
        Ok(substitute_rec(&terms, 0, args, self.ring, target_nvars))
    }

    /// Replaces a single variable by `value`, leaving the others fixed.
    pub fn substitute_var(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly> {
        let args: Vec<MultiPoly> = (0..self.nvars).map(|i| if i == var { value.clone() } else { MultiPoly::var(self.ring, self.nvars, i) }).collect();
        self.substitute(&args)
    }

    pub fn derivative(&self, var: usize) -> Result<MultiPoly> {
        self.check_var(var)?;
        let mut out = MultiPoly::zero(self.ring, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * &DomainElem::from_int(self.ring, i64::from(e)));
        }
        Ok(out)
    }

    /// Substitutes `0` for one variable.
    pub fn eval_at_zero(&self, var: usize) -> Result<MultiPoly> {
        self.check_var(var)?;
        Ok(self.filter_terms(|m| m.0[var] == 0))
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.nvars {
            return Err(AlgebraError::VariableOutOfRange { index: var, nvars: self.nvars });
        }
        Ok(())
    }

    /// Groups by the exponent of `var`: `self = sum_k var^k * c_k` with the
    /// `c_k` free of `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let k = std::mem::replace(&mut exps[var], 0);
            out.entry(k).or_insert_with(|| MultiPoly::zero(self.ring, self.nvars)).add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Applies `f` to every coefficient, landing in `ring`.
    pub fn map_coeffs(&self, ring: Ring, f: impl Fn(&DomainElem) -> DomainElem) -> MultiPoly {
        let mut out = MultiPoly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            let v = f(c);
            assert_eq!(v.ring(), ring, "map_coeffs produced a value outside the target ring");
            out.add_term(m.clone(), v);
        }
        out
    }

    pub fn to_fraction_field(&self) -> MultiPoly {
        self.map_coeffs(self.ring.fraction_field(), DomainElem::to_fraction_field)
    }

    /// Converts every coefficient into `ring`, failing on the first one that
    /// is not an element.
    pub fn to_ring(&self, ring: Ring) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            let v = c.to_ring(ring).ok_or_else(|| AlgebraError::NotInRing { value: c.to_string(), ring })?;
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }

    /// Pads exponent vectors with zeros to `nvars` variables.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly {
            ring: self.ring,
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Moves variable `i` to position `perm[i]` in an ambient of `nvars`.
    pub fn rename_vars(&self, perm: &[usize], nvars: usize) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = MultiPoly::zero(self.ring, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[perm[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Canonical gcd of the coefficients (`0` for the zero polynomial).
    pub fn content(&self) -> DomainElem {
        let mut g = DomainElem::zero(self.ring);
        for c in self.terms.values() {
            g = elem::gcd(&g, c).expect("coefficients share the ring");
            if g.is_one() {
                break;
            }
        }
        g
    }
}

fn substitute_rec(terms: &[(&Monomial, &DomainElem)], var: usize, args: &[MultiPoly], ring: Ring, nvars: usize) -> MultiPoly {
    if terms.is_empty() {
        return MultiPoly::zero(ring, nvars);
    }
    if var == args.len() {
        let mut c = DomainElem::zero(ring);
        for (_, x) in terms {
            c = &c + x;
        }
        return MultiPoly::constant(c, nvars);
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &DomainElem)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[var]).or_default().push((m, c));
    }
    let top = *groups.keys().next_back().expect("nonempty");
    let mut acc = MultiPoly::zero(ring, nvars);
    for k in (0..=top).rev() {
        if !acc.is_zero() {
            acc = &acc * &args[var];
        }
        if let Some(g) = groups.get(&k) {
            acc = &acc + &substitute_rec(g, var + 1, args, ring, nvars);
        }
    }
    acc
}

fn assert_compatible(a: &MultiPoly, b: &MultiPoly) {
    assert!(a.ring == b.ring && a.nvars == b.nvars, "polynomial arithmetic across {}[{} vars] and {}[{} vars]", a.ring, a.nvars, b.ring, b.nvars);
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_compatible(self, rhs);
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_compatible(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { ring: self.ring, nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_compatible(self, rhs);
        let mut out = MultiPoly::zero(self.ring, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qpoly::QPoly;

    fn qt_var(i: usize) -> MultiPoly {
        MultiPoly::var(Ring::QT, 2, i)
    }

    fn t2() -> MultiPoly {
        MultiPoly::constant(DomainElem::t(Ring::QT).unwrap(), 2)
    }

    #[test]
    fn exact_div_by_parameter() {
        let (x, y, t) = (qt_var(0), qt_var(1), t2());
        let p = &t * &x.pow(2) + &t.pow(2) * &x * &y;
        let q = p.exact_div(&t).unwrap();
        assert_eq!(q, x.pow(2) + &t * &x * &y);
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (qt_var(0), qt_var(1));
        assert_eq!(&(&x + &y) * &(&x - &y), x.pow(2) - y.pow(2));
    }

    #[test]
    fn inexact_division_is_an_error() {
        let x = qt_var(0);
        let p = x.pow(2) + MultiPoly::one(Ring::QT, 2);
        assert!(matches!(p.exact_div(&x), Err(AlgebraError::InexactDivision(_))));
    }

    #[test]
    fn substitution_examples() {
        let (x, y, t) = (qt_var(0), qt_var(1), t2());
        let p = &t * &y + x.pow(2);
        let one = MultiPoly::one(Ring::QT, 2);
        let got = p.substitute(&[x.clone(), &y + &one]).unwrap();
        assert_eq!(got, &t * &y + &t + x.pow(2));
        let g1 = &x + y.pow(3);
        assert_eq!(x.substitute(&[g1.clone(), y.clone()]).unwrap(), g1);
        assert!(matches!(p.substitute(&[x]), Err(AlgebraError::ArityMismatch { .. })));
    }

    #[test]
    fn derivative_and_evaluation() {
        let (x, y, t) = (qt_var(0), qt_var(1), t2());
        let p = &t * &y.pow(2);
        let two = MultiPoly::from_int(Ring::QT, 2, 2);
        assert_eq!(p.derivative(1).unwrap(), &two * &t * &y);
        let q = &x.pow(2) * &y + &y;
        assert_eq!(q.eval_at_zero(0).unwrap(), y);
        // D(Y) = tY has D'(0) = t
        let d = &t * &y;
        assert_eq!(d.derivative(1).unwrap().eval_at_zero(1).unwrap(), t);
    }

    #[test]
    fn degrees_ignore_the_parameter() {
        let (x, y, t) = (qt_var(0), qt_var(1), t2());
        let p = &x + &t.pow(2) * &y + &t * &x.pow(2);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.leading_form().unwrap(), &t * &x.pow(2));
        assert_eq!(MultiPoly::zero(Ring::QT, 2).total_degree(), None);
        assert!(None < Some(0u32));
        assert!(MultiPoly::zero(Ring::QT, 2).leading_form().is_err());
    }

    #[test]
    fn content_of_t_multiples() {
        let (x, t) = (qt_var(0), t2());
        let p = &t.pow(2) * &x + &t * &x.pow(3);
        assert_eq!(p.content(), DomainElem::Poly(QPoly::t()));
    }
}
