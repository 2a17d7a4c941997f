//! Desk-scale factorization in ℤ and ℚ[t].
//!
//! Integers use trial division up to a configurable bound. Polynomials in
//! `t` go through Yun's squarefree decomposition, rational-root extraction,
//! and a Kronecker search for the residual factors of degree ≥ 4.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elem::{self, DomainElem};
use super::error::{AlgebraError, Result};
use super::poly::MultiPoly;
use super::qpoly::QPoly;
use super::render::render_qpoly;
use super::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Largest trial divisor for integers.
    pub int_bound: u64,
    /// Largest degree of a root-free residual that is searched for factors.
    pub max_poly_degree: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { int_bound: 1_000_000, max_poly_degree: 4 }
    }
}

/// `unit * prod(p^e)` with pairwise non-associate canonical irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: DomainElem,
    pub factors: Vec<(DomainElem, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> DomainElem {
        self.factors.iter().fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }

    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

pub fn factor_irreducibles(b: &DomainElem, cfg: &FactorConfig) -> Result<Factorization> {
    if b.is_zero() {
        return Err(AlgebraError::ZeroInput("factor_irreducibles"));
    }
    match b {
        DomainElem::Int(n) => {
            let unit = DomainElem::Int(if n.is_negative() { -BigInt::one() } else { BigInt::one() });
            let factors = factor_integer(&n.abs(), cfg.int_bound)?.into_iter().map(|(p, e)| (DomainElem::Int(p), e)).collect();
            Ok(Factorization { unit, factors })
        }
        DomainElem::Poly(p) => {
            let unit = DomainElem::Poly(QPoly::constant(p.lc()));
            let mut factors: Vec<(QPoly, u32)> = Vec::new();
            for (part, mult) in squarefree_decomposition(&p.monic()) {
                for q in split_squarefree(&part, cfg)? {
                    factors.push((q, mult));
                }
            }
            factors.sort_by_cached_key(|(q, _)| (q.degree(), render_qpoly(q)));
            Ok(Factorization { unit, factors: factors.into_iter().map(|(q, e)| (DomainElem::Poly(q), e)).collect() })
        }
        _ => Ok(Factorization { unit: b.clone(), factors: Vec::new() }),
    }
}

/// Product of the distinct irreducible factors, as a canonical associate.
pub fn radical(b: &DomainElem, cfg: &FactorConfig) -> Result<DomainElem> {
    if b.is_zero() {
        return Err(AlgebraError::ZeroInput("radical"));
    }
    match b {
        DomainElem::Poly(p) => {
            let g = p.gcd(&p.derivative());
            Ok(DomainElem::Poly(p.exact_div(&g).expect("gcd divides").monic()))
        }
        DomainElem::Int(_) => {
            let f = factor_irreducibles(b, cfg)?;
            Ok(f.factors.iter().fold(DomainElem::one(Ring::Z), |acc, (p, _)| &acc * p))
        }
        _ => Ok(DomainElem::one(b.ring())),
    }
}

/// Writes `f` (over a fraction field) as `A / b` with `A` over the base
/// ring, `b` canonical and coprime to the content of `A`.
pub fn clear_denominators(f: &MultiPoly) -> Result<(MultiPoly, DomainElem)> {
    let base = match f.ring() {
        r if r == Ring::Q || r == Ring::Z => Ring::Z,
        _ => Ring::QT,
    };
    let mut b = DomainElem::one(base);
    for (_, c) in f.terms() {
        let (_, den) = c.num_den();
        let den = den.to_ring(base).expect("denominator lies in the base ring");
        b = elem::lcm(&b, &den)?;
    }
    let scaled = f.scale(&b.to_ring(f.ring()).expect("base embeds"));
    let mut a = scaled.to_ring(base)?;
    let g = elem::gcd(&b, &a.content())?;
    if !g.is_one() {
        a = a.exact_div_scalar(&g)?;
        b = b.exact_div(&g).expect("gcd divides");
    }
    let (unit, canon) = b.unit_normal();
    if !unit.is_one() {
        a = a.exact_div_scalar(&unit)?;
    }
    Ok((a, canon))
}

/// Prime factorization of `n > 0` by trial division.
pub fn factor_integer(n: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut push = |n: &mut BigInt, p: BigInt| {
        let mut e = 0;
        while (&*n % &p).is_zero() {
            *n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(&mut n, BigInt::from(2));
    let mut d: u64 = 3;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            break;
        }
        push(&mut n, dd);
        d += 2;
    }
    if n > BigInt::one() {
        let b = BigInt::from(bound);
        if &b * &b < n && n.sqrt() > b {
            return Err(AlgebraError::FactorBoundExceeded(format!("cofactor {n} has no divisor up to {bound}")));
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// Yun's algorithm: `(part_i, i)` with each part squarefree, monic and
/// pairwise coprime.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

fn integer_divisors(n: &BigInt, bound: u64) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(&n, bound)? {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

fn primitive_integer(f: &QPoly) -> Vec<BigInt> {
    let (ints, _) = f.to_integer_coeffs();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Splits a monic squarefree polynomial into monic irreducibles.
fn split_squarefree(f: &QPoly, cfg: &FactorConfig) -> Result<Vec<QPoly>> {
    let mut out = Vec::new();
    let mut f = f.clone();
    if f.coeff(0).is_zero() {
        out.push(QPoly::t());
        f = f.exact_div(&QPoly::t()).expect("t divides");
    }
    if f.degree().unwrap_or(0) >= 2 {
        let ints = primitive_integer(&f);
        let ps = integer_divisors(&ints[0], cfg.int_bound)?;
        let qs = integer_divisors(ints.last().expect("nonzero"), cfg.int_bound)?;
        'outer: for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let r = BigRational::new(p * sign, q.clone());
                    if f.eval(&r).is_zero() {
                        let lin = QPoly::from_coeffs(vec![-r, BigRational::one()]);
                        out.push(lin.clone());
                        f = f.exact_div(&lin).expect("root gives a factor");
                        if f.degree().unwrap_or(0) < 2 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    match f.degree().unwrap_or(0) {
        0 => {}
        1..=3 => out.push(f.monic()),
        d if d <= cfg.max_poly_degree => out.extend(kronecker_split(&f, cfg)?),
        d => return Err(AlgebraError::FactorBoundExceeded(format!("root-free factor of degree {d} exceeds the degree bound {}", cfg.max_poly_degree))),
    }
    Ok(out)
}

/// Kronecker's method for a root-free squarefree polynomial.
fn kronecker_split(f: &QPoly, cfg: &FactorConfig) -> Result<Vec<QPoly>> {
    let n = f.degree().expect("nonzero");
    for k in 2..=n / 2 {
        if let Some(g) = kronecker_factor(f, k, cfg)? {
            let h = f.exact_div(&g).expect("factor divides");
            let mut out = kronecker_split(&g, cfg)?;
            out.extend(kronecker_split(&h, cfg)?);
            return Ok(out);
        }
    }
    Ok(vec![f.monic()])
}

/// Searches for a factor of degree exactly `k` by interpolating through
/// divisors of `f` at `k + 1` integer points.
fn kronecker_factor(f: &QPoly, k: usize, cfg: &FactorConfig) -> Result<Option<QPoly>> {
    let ints = primitive_integer(f);
    let fz = QPoly::from_coeffs(ints.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let mut points = Vec::new();
    let mut x = 0i64;
    while points.len() <= k {
        let v = fz.eval(&BigRational::from_integer(x.into()));
        points.push((x, integer_divisors(&v.to_integer(), cfg.int_bound)?));
        x = if x <= 0 { -x + 1 } else { -x };
    }
    let mut choice = vec![0usize; k + 1];
    loop {
        // fix the sign at the first point to skip associates
        for signs in 0u32..(1 << k) {
            let mut vals = Vec::with_capacity(k + 1);
            for (j, (x, divs)) in points.iter().enumerate() {
                let mut d = divs[choice[j]].clone();
                if j > 0 && signs & (1 << (j - 1)) != 0 {
                    d = -d;
                }
                vals.push((BigRational::from_integer((*x).into()), BigRational::from_integer(d)));
            }
            let g = interpolate(&vals);
            if g.degree() == Some(k) {
                if let Some(q) = fz.exact_div(&g) {
                    if q.degree().unwrap_or(0) > 0 {
                        return Ok(Some(g.monic()));
                    }
                }
            }
        }
        let mut j = 0;
        loop {
            if j > k {
                return Ok(None);
            }
            choice[j] += 1;
            if choice[j] < points[j].1.len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

fn interpolate(points: &[(BigRational, BigRational)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let lin = QPoly::from_coeffs(vec![-xj.clone(), BigRational::one()]);
                basis = (&basis * &lin).scale(&(xi - xj).recip());
            }
        }
        acc = &acc + &basis;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> DomainElem {
        DomainElem::from_int(Ring::Z, n)
    }

    fn qt(c: &[i64]) -> DomainElem {
        DomainElem::Poly(QPoly::from_ints(c))
    }

    #[test]
    fn integer_examples() {
        let cfg = FactorConfig::default();
        assert_eq!(factor_irreducibles(&z(12), &cfg).unwrap().factors, vec![(z(2), 2), (z(3), 1)]);
        assert_eq!(factor_irreducibles(&z(7), &cfg).unwrap().factors, vec![(z(7), 1)]);
        assert_eq!(radical(&z(12), &cfg).unwrap(), z(6));
        assert_eq!(radical(&z(1), &cfg).unwrap(), z(1));
        assert!(factor_irreducibles(&z(0), &cfg).is_err());
    }

    #[test]
    fn integer_bound_is_reported() {
        let cfg = FactorConfig { int_bound: 10, max_poly_degree: 4 };
        // 101 * 103 has no divisor up to 10 and exceeds 10^2
        assert!(matches!(factor_irreducibles(&z(10403), &cfg), Err(AlgebraError::FactorBoundExceeded(_))));
        // 97 < 10^2 is certified prime
        assert_eq!(factor_irreducibles(&z(97), &cfg).unwrap().factors, vec![(z(97), 1)]);
    }

    #[test]
    fn polynomial_examples() {
        let cfg = FactorConfig::default();
        // t^2 (t - 1)
        let f = factor_irreducibles(&qt(&[0, 0, -1, 1]), &cfg).unwrap();
        assert_eq!(f.factors, vec![(qt(&[0, 1]), 2), (qt(&[-1, 1]), 1)]);
        assert_eq!(radical(&qt(&[0, 0, 1, 1]), &cfg).unwrap(), qt(&[0, 1, 1]));
        assert_eq!(radical(&qt(&[5]), &cfg).unwrap(), qt(&[1]));
    }

    #[test]
    fn quartic_into_quadratics() {
        let cfg = FactorConfig::default();
        // (t^2 + 1)(t^2 + 2)
        let f = factor_irreducibles(&qt(&[2, 0, 3, 0, 1]), &cfg).unwrap();
        assert_eq!(f.factors, vec![(qt(&[1, 0, 1]), 1), (qt(&[2, 0, 1]), 1)]);
        // t^4 + 1 is irreducible over ℚ
        let g = factor_irreducibles(&qt(&[1, 0, 0, 0, 1]), &cfg).unwrap();
        assert_eq!(g.factors, vec![(qt(&[1, 0, 0, 0, 1]), 1)]);
        assert!(factor_irreducibles(&qt(&[1, 0, 0, 0, 0, 1, 0, 1]), &cfg).is_err());
    }

    #[test]
    fn clear_denominators_examples() {
        let t = DomainElem::t(Ring::QT_FRAC).unwrap();
        let x = MultiPoly::var(Ring::QT_FRAC, 2, 0);
        let f = x.pow(2).scale(&t.inverse().unwrap());
        let (a, b) = clear_denominators(&f).unwrap();
        assert_eq!(a, MultiPoly::var(Ring::QT, 2, 0).pow(2));
        assert_eq!(b, qt(&[0, 1]));

        let xq = MultiPoly::var(Ring::Q, 1, 0);
        let half = DomainElem::from_rational(Ring::Q, BigRational::new(1.into(), 2.into())).unwrap();
        let quarter = &half * &half;
        let (a, b) = clear_denominators(&(&xq.scale(&half) + &xq.pow(2).scale(&quarter))).unwrap();
        let xz = MultiPoly::var(Ring::Z, 1, 0);
        assert_eq!(a, &xz.scale(&z(2)) + &xz.pow(2));
        assert_eq!(b, z(4));

        let (a, b) = clear_denominators(&x.pow(2)).unwrap();
        assert_eq!(a, MultiPoly::var(Ring::QT, 2, 0).pow(2));
        assert!(b.is_one());
    }
}
