//! Scalars of the coefficient domains: ℤ, ℚ, ℚ[t] and ℚ(t).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::error::{same_ring, AlgebraError, Result};
use super::qpoly::QPoly;
use super::ratfunc::RatFunc;
use super::ring::{Ring, RingKind};

/// An element of one of the supported coefficient domains.
///
/// The variant determines the ring, so mixing variants in arithmetic is a
/// ring mismatch. The operator impls panic on a mismatch; the checked entry
/// points ([`gcd`], [`extended_gcd`], ...) return [`AlgebraError`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DomainElem {
    Int(BigInt),
    Rat(BigRational),
    Poly(QPoly),
    Frac(RatFunc),
}

impl DomainElem {
    pub fn ring(&self) -> Ring {
        match self {
            DomainElem::Int(_) => Ring::Z,
            DomainElem::Rat(_) => Ring::Q,
            DomainElem::Poly(_) => Ring::QT,
            DomainElem::Frac(_) => Ring::QT_FRAC,
        }
    }

    pub fn zero(ring: Ring) -> DomainElem {
        DomainElem::from_int(ring, 0)
    }

    pub fn one(ring: Ring) -> DomainElem {
        DomainElem::from_int(ring, 1)
    }

    pub fn from_int(ring: Ring, n: i64) -> DomainElem {
        DomainElem::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: Ring, n: BigInt) -> DomainElem {
        if ring == Ring::Z {
            DomainElem::Int(n)
        } else if ring == Ring::QT {
            DomainElem::Poly(QPoly::constant(BigRational::from_integer(n)))
        } else if ring == Ring::QT_FRAC {
            DomainElem::Frac(RatFunc::from_poly(QPoly::constant(BigRational::from_integer(n))))
        } else {
            DomainElem::Rat(BigRational::from_integer(n))
        }
    }

    /// A rational constant in `ring`, or `None` when it is not an element
    /// (a non-integer in ℤ).
    pub fn from_rational(ring: Ring, q: BigRational) -> Option<DomainElem> {
        Some(match (ring.kind(), ring.is_fraction_field()) {
            (RingKind::Integers, false) => {
                if !q.is_integer() {
                    return None;
                }
                DomainElem::Int(q.to_integer())
            }
            (RingKind::RatPolyT, false) => DomainElem::Poly(QPoly::constant(q)),
            (RingKind::RatPolyT, true) => DomainElem::Frac(RatFunc::from_poly(QPoly::constant(q))),
            _ => DomainElem::Rat(q),
        })
    }

    /// The parameter `t` in ℚ[t] or ℚ(t).
    pub fn t(ring: Ring) -> Option<DomainElem> {
        match (ring.kind(), ring.is_fraction_field()) {
            (RingKind::RatPolyT, false) => Some(DomainElem::Poly(QPoly::t())),
            (RingKind::RatPolyT, true) => Some(DomainElem::Frac(RatFunc::from_poly(QPoly::t()))),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            DomainElem::Int(n) => n.is_zero(),
            DomainElem::Rat(q) => q.is_zero(),
            DomainElem::Poly(p) => p.is_zero(),
            DomainElem::Frac(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            DomainElem::Int(n) => n.is_one(),
            DomainElem::Rat(q) => q.is_one(),
            DomainElem::Poly(p) => p.is_one(),
            DomainElem::Frac(f) => f.is_one(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            DomainElem::Int(n) => n.abs().is_one(),
            DomainElem::Rat(q) => !q.is_zero(),
            DomainElem::Poly(p) => !p.is_zero() && p.is_constant(),
            DomainElem::Frac(f) => !f.is_zero(),
        }
    }

    /// Multiplicative inverse, when `self` is a unit.
    pub fn inverse(&self) -> Option<DomainElem> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            DomainElem::Int(n) => DomainElem::Int(n.clone()),
            DomainElem::Rat(q) => DomainElem::Rat(q.recip()),
            DomainElem::Poly(p) => DomainElem::Poly(QPoly::constant(p.lc().recip())),
            DomainElem::Frac(f) => DomainElem::Frac(f.inv()?),
        })
    }

    pub fn pow(&self, mut e: u32) -> DomainElem {
        let mut base = self.clone();
        let mut acc = DomainElem::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self / d` when the quotient exists in the ring.
    pub fn exact_div(&self, d: &DomainElem) -> Option<DomainElem> {
        if d.is_zero() || self.ring() != d.ring() {
            return None;
        }
        match (self, d) {
            (DomainElem::Int(a), DomainElem::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(DomainElem::Int(q))
            }
            (DomainElem::Rat(a), DomainElem::Rat(b)) => Some(DomainElem::Rat(a / b)),
            (DomainElem::Poly(a), DomainElem::Poly(b)) => a.exact_div(b).map(DomainElem::Poly),
            (DomainElem::Frac(a), DomainElem::Frac(b)) => Some(DomainElem::Frac(a * &b.inv()?)),
            _ => None,
        }
    }

    pub fn divides(&self, other: &DomainElem) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Euclidean division with `norm(r) < norm(d)`; integer quotients
    /// truncate toward zero so that `q = 0` exactly when `|a| < |d|`.
    pub fn div_rem(&self, d: &DomainElem) -> Result<(DomainElem, DomainElem)> {
        same_ring(self.ring(), d.ring())?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, d) {
            (DomainElem::Int(a), DomainElem::Int(b)) => {
                let (q, r) = (a / b, a % b);
                (DomainElem::Int(q), DomainElem::Int(r))
            }
            (DomainElem::Poly(a), DomainElem::Poly(b)) => {
                let (q, r) = a.div_rem(b);
                (DomainElem::Poly(q), DomainElem::Poly(r))
            }
            _ => (self.exact_div(d).expect("field division"), DomainElem::zero(self.ring())),
        })
    }

    /// Compares Euclidean norms (absolute value, t-degree, or trivial for fields).
    pub fn euclid_cmp(&self, other: &DomainElem) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match (self, other) {
            (DomainElem::Int(a), DomainElem::Int(b)) => a.abs().cmp(&b.abs()),
            (DomainElem::Poly(a), DomainElem::Poly(b)) => a.degree().cmp(&b.degree()),
            _ => Ordering::Equal,
        }
    }

    /// Splits `self = unit * canonical` with the canonical associate
    /// positive (ℤ), monic (ℚ[t]) or one (fields).
    pub fn unit_normal(&self) -> (DomainElem, DomainElem) {
        let ring = self.ring();
        if self.is_zero() {
            return (DomainElem::one(ring), self.clone());
        }
        match self {
            DomainElem::Int(n) => {
                if n.is_negative() {
                    (DomainElem::Int(-BigInt::one()), DomainElem::Int(-n))
                } else {
                    (DomainElem::one(ring), self.clone())
                }
            }
            DomainElem::Poly(p) => {
                let lc = p.lc();
                (DomainElem::Poly(QPoly::constant(lc.clone())), DomainElem::Poly(p.scale(&lc.recip())))
            }
            _ => (self.clone(), DomainElem::one(ring)),
        }
    }

    pub fn canonical_associate(&self) -> DomainElem {
        self.unit_normal().1
    }

    /// Image in the fraction field.
    pub fn to_fraction_field(&self) -> DomainElem {
        match self {
            DomainElem::Int(n) => DomainElem::Rat(BigRational::from_integer(n.clone())),
            DomainElem::Poly(p) => DomainElem::Frac(RatFunc::from_poly(p.clone())),
            _ => self.clone(),
        }
    }

    /// Converts into `ring` when `self` is an element of it (ℤ ⊂ ℚ,
    /// ℚ[t] ⊂ ℚ(t), ℚ ⊂ ℚ[t]).
    pub fn to_ring(&self, ring: Ring) -> Option<DomainElem> {
        if self.ring() == ring {
            return Some(self.clone());
        }
        match (self, ring) {
            (DomainElem::Int(_), r) => DomainElem::from_rational(r, self.as_rational()?),
            (DomainElem::Rat(q), r) => DomainElem::from_rational(r, q.clone()),
            (DomainElem::Poly(p), r) if r == Ring::QT_FRAC => Some(DomainElem::Frac(RatFunc::from_poly(p.clone()))),
            (DomainElem::Poly(p), r) if p.is_constant() => DomainElem::from_rational(r, p.coeff(0)),
            (DomainElem::Frac(f), Ring::QT) if f.is_polynomial() => Some(DomainElem::Poly(f.num().clone())),
            (DomainElem::Frac(f), r) if f.is_polynomial() && f.num().is_constant() => DomainElem::from_rational(r, f.num().coeff(0)),
            _ => None,
        }
    }

    /// The value as a rational number, if it is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            DomainElem::Int(n) => Some(BigRational::from_integer(n.clone())),
            DomainElem::Rat(q) => Some(q.clone()),
            DomainElem::Poly(p) if p.is_constant() => Some(p.coeff(0)),
            DomainElem::Frac(f) if f.is_polynomial() && f.num().is_constant() => Some(f.num().coeff(0)),
            _ => None,
        }
    }

    /// Numerator and denominator over the integral base ring (ℤ or ℚ[t]).
    /// Integral elements return `(self, 1)`.
    pub fn num_den(&self) -> (DomainElem, DomainElem) {
        match self {
            DomainElem::Rat(q) => (DomainElem::Int(q.numer().clone()), DomainElem::Int(q.denom().clone())),
            DomainElem::Frac(f) => (DomainElem::Poly(f.num().clone()), DomainElem::Poly(f.den().clone())),
            _ => (self.clone(), DomainElem::one(self.ring())),
        }
    }

    /// Sign used by the renderer: the leading coefficient is negative.
    pub fn is_negative(&self) -> bool {
        match self {
            DomainElem::Int(n) => n.is_negative(),
            DomainElem::Rat(q) => q.is_negative(),
            DomainElem::Poly(p) => p.is_lc_negative(),
            DomainElem::Frac(f) => f.num().is_lc_negative(),
        }
    }

    /// Whether `self` involves the parameter `t`.
    pub fn involves_t(&self) -> bool {
        match self {
            DomainElem::Poly(p) => !p.is_constant(),
            DomainElem::Frac(f) => !(f.num().is_constant() && f.den().is_constant()),
            _ => false,
        }
    }

    pub fn as_poly(&self) -> Option<&QPoly> {
        match self {
            DomainElem::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            DomainElem::Int(n) => Some(n),
            _ => None,
        }
    }
}

fn mismatch(a: &DomainElem, b: &DomainElem) -> ! {
    panic!("ring mismatch in scalar arithmetic: {} vs {}", a.ring(), b.ring())
}

impl Add for &DomainElem {
    type Output = DomainElem;
    fn add(self, rhs: &DomainElem) -> DomainElem {
        match (self, rhs) {
            (DomainElem::Int(a), DomainElem::Int(b)) => DomainElem::Int(a + b),
            (DomainElem::Rat(a), DomainElem::Rat(b)) => DomainElem::Rat(a + b),
            (DomainElem::Poly(a), DomainElem::Poly(b)) => DomainElem::Poly(a + b),
            (DomainElem::Frac(a), DomainElem::Frac(b)) => DomainElem::Frac(a + b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &DomainElem {
    type Output = DomainElem;
    fn sub(self, rhs: &DomainElem) -> DomainElem {
        match (self, rhs) {
            (DomainElem::Int(a), DomainElem::Int(b)) => DomainElem::Int(a - b),
            (DomainElem::Rat(a), DomainElem::Rat(b)) => DomainElem::Rat(a - b),
            (DomainElem::Poly(a), DomainElem::Poly(b)) => DomainElem::Poly(a - b),
            (DomainElem::Frac(a), DomainElem::Frac(b)) => DomainElem::Frac(a - b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &DomainElem {
    type Output = DomainElem;
    fn mul(self, rhs: &DomainElem) -> DomainElem {
        match (self, rhs) {
            (DomainElem::Int(a), DomainElem::Int(b)) => DomainElem::Int(a * b),
            (DomainElem::Rat(a), DomainElem::Rat(b)) => DomainElem::Rat(a * b),
            (DomainElem::Poly(a), DomainElem::Poly(b)) => DomainElem::Poly(a * b),
            (DomainElem::Frac(a), DomainElem::Frac(b)) => DomainElem::Frac(a * b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &DomainElem {
    type Output = DomainElem;
    fn neg(self) -> DomainElem {
        match self {
            DomainElem::Int(a) => DomainElem::Int(-a),
            DomainElem::Rat(a) => DomainElem::Rat(-a),
            DomainElem::Poly(a) => DomainElem::Poly(-a),
            DomainElem::Frac(a) => DomainElem::Frac(-a),
        }
    }
}

impl fmt::Display for DomainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_scalar(self))
    }
}

/// Canonical-associate gcd; `gcd(0, 0) = 0`. Over a field the gcd of
/// anything nonzero is `1`.
pub fn gcd(x: &DomainElem, y: &DomainElem) -> Result<DomainElem> {
    same_ring(x.ring(), y.ring())?;
    let ring = x.ring();
    Ok(match (x, y) {
        (DomainElem::Int(a), DomainElem::Int(b)) => DomainElem::Int(a.gcd(b)),
        (DomainElem::Poly(a), DomainElem::Poly(b)) => DomainElem::Poly(a.gcd(b)),
        _ => {
            if x.is_zero() && y.is_zero() {
                DomainElem::zero(ring)
            } else {
                DomainElem::one(ring)
            }
        }
    })
}

pub fn lcm(x: &DomainElem, y: &DomainElem) -> Result<DomainElem> {
    let g = gcd(x, y)?;
    if g.is_zero() {
        return Ok(g);
    }
    let prod = &x.exact_div(&g).expect("gcd divides") * y;
    Ok(prod.canonical_associate())
}

/// Extended Euclid: `(g, u, v)` with `u*x + v*y = g` and `g` the canonical
/// associate of `gcd(x, y)`.
pub fn extended_gcd(x: &DomainElem, y: &DomainElem) -> Result<(DomainElem, DomainElem, DomainElem)> {
    same_ring(x.ring(), y.ring())?;
    let ring = x.ring();
    let zero = DomainElem::zero(ring);
    let one = DomainElem::one(ring);
    if ring.is_field() {
        return Ok(if !x.is_zero() {
            (one, x.inverse().expect("field element"), zero)
        } else if !y.is_zero() {
            (one, zero, y.inverse().expect("field element"))
        } else {
            (zero.clone(), zero.clone(), zero)
        });
    }
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (unit, g) = r0.unit_normal();
    let inv = unit.inverse().expect("unit part is invertible");
    Ok((g, &s0 * &inv, &t0 * &inv))
}
