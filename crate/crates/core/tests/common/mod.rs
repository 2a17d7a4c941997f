//! Fixtures and independent oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's own algorithms: integers
//! are factored with a smallest-prime-factor sieve, maps are compared by
//! numeric evaluation at rational points, and t-polynomials are built from
//! known roots so their factorization is known by construction.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use stame_core::algebra::{DomainElem, MultiPoly, QPoly, Ring};
use stame_core::cli::parse_map;
use stame_core::length3::Length3Data;
use stame_core::polymap::{BlockStatus, PolyMap, TameGenerator, TameWord};

pub const NAGATA: &str = "(X + t*(t*Y + X^2), Y - 2*(t*Y+X^2)*X - t*(t*Y+X^2)^2)";

/// Canonical rendering of Nagata's map, expanded by hand from
/// `S = t*Y + X^2`: `X + t*S` and `Y - 2*X*S - t*S^2`.
pub const NAGATA_CANONICAL: &str = "(t*X^2 + X + t^2*Y, -t*X^4 - 2*X^3 - 2*t^2*X^2*Y - 2*t*X*Y - t^3*Y^2 + Y)";

/// Wright's factors `F1 = (X, Y + X^2/t^2)`, `G1 = (X + t^3*Y, Y)`,
/// `F2 = (X, Y - X^2/t^2 + 2*X^3/t)`, to be composed as `F2 ∘ G1 ∘ F1`.
pub const WRIGHT_FACTORS: [&str; 3] = ["(X, Y - X^2/t^2 + 2*X^3/t)", "(X + t^3*Y, Y)", "(X, Y + X^2/t^2)"];

/// The factored expansion with `S = t^2*Y + X^2`, as the composition
/// actually yields it: `Y - S^2 - 2*t*Y*X + 2*t^2*S^3 + 6*X^2*S + 6*t*X*S^2`.
pub const WRIGHT_FACTORED: &str =
    "(X + t*(t^2*Y + X^2), Y - (t^2*Y + X^2)^2 - 2*t*Y*X + 2*t^2*(t^2*Y + X^2)^3 + 3*2*X^2*(t^2*Y + X^2) + 3*2*t*X*(t^2*Y + X^2)^2)";

/// A widely quoted variant of the factored expansion whose last
/// three terms lack a factor of two.
pub const WRIGHT_HALVED: &str = "(X + t*(t^2*Y + X^2), Y - (t^2*Y + X^2)^2 - 2*t*Y*X + t^2*(t^2*Y + X^2)^3 + 3*X^2*(t^2*Y + X^2) + 3*t*X*(t^2*Y + X^2)^2)";

/// Expanded canonical text of `F2 ∘ G1 ∘ F1`, transcribed from an
/// independent expansion of the factored form above.
pub const WRIGHT_CANONICAL: &str = "(t*X^2 + X + t^3*Y, 2*t^2*X^6 + 6*t*X^5 + 6*t^4*X^4*Y + 5*X^4 + 12*t^3*X^3*Y + 6*t^6*X^2*Y^2 + 4*t^2*X^2*Y + 6*t^5*X*Y^2 + 2*t^8*Y^3 - 2*t*X*Y - t^4*Y^2 + Y)";

pub fn t() -> DomainElem {
    DomainElem::Poly(QPoly::t())
}

pub fn qt(coeffs: &[i64]) -> DomainElem {
    DomainElem::Poly(QPoly::from_ints(coeffs))
}

pub fn z(n: i64) -> DomainElem {
    DomainElem::from_int(Ring::Z, n)
}

pub fn map(src: &str, ring: Ring) -> PolyMap {
    parse_map(src, ring, None).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn xy(ring: Ring) -> (MultiPoly, MultiPoly) {
    (MultiPoly::var(ring, 2, 0), MultiPoly::var(ring, 2, 1))
}

/// Conjugate-type data `A1 = X^2`, `A2 = -X^2`, `D = d*Y`.
pub fn conjugate_family(b: DomainElem, d: DomainElem) -> Length3Data {
    let (x, y) = xy(b.ring());
    Length3Data::planar(b, x.pow(2), -x.pow(2), y.scale(&d))
}

pub fn wright_data() -> Length3Data {
    let (x, y) = xy(Ring::QT);
    Length3Data::planar(t().pow(2), x.pow(2), &x.pow(3).scale(&qt(&[0, 2])) - &x.pow(2), y.scale(&t()))
}

/// Every length-three family used by the acceptance suite, with its name.
pub fn families() -> Vec<(&'static str, Length3Data)> {
    let (xq, yq) = xy(Ring::QT);
    let tm1 = qt(&[-1, 1]);
    let t2tm1 = &t().pow(2) * &tm1;
    let (xz, yz) = xy(Ring::Z);
    vec![
        ("nagata b=t", conjugate_family(t(), t())),
        ("generalized nagata b=t^2", conjugate_family(t().pow(2), t().pow(2))),
        ("b=t^2(t-1)", conjugate_family(t2tm1.clone(), t2tm1)),
        ("wright b=t^2", wright_data()),
        ("integer b=2", conjugate_family(z(2), z(2))),
        ("integer b=12", conjugate_family(z(12), z(12))),
        ("integer b=4, D=4Y+8Y^2", Length3Data::planar(z(4), xz.pow(2), -xz.pow(2), &yz.scale(&z(4)) + &yz.pow(2).scale(&z(8)))),
        ("integer b=2, A1=X+X^2", Length3Data::planar(z(2), &xz + &xz.pow(2), -&(&xz + &xz.pow(2)), yz.scale(&z(2)))),
        ("unit b, cubic", Length3Data::planar(DomainElem::one(Ring::QT), xq.pow(2), xq.pow(3), yq.pow(2))),
        ("b=t+1, A1=tX+X^2", Length3Data::planar(qt(&[1, 1]), &xq.scale(&t()) + &xq.pow(2), -&(&xq.scale(&t()) + &xq.pow(2)), yq.scale(&qt(&[1, 1])))),
    ]
}

// ---------------------------------------------------------------- evaluation

/// Value of a scalar at `t = tv`.
pub fn eval_scalar(c: &DomainElem, tv: &BigRational) -> BigRational {
    match c {
        DomainElem::Int(n) => BigRational::from_integer(n.clone()),
        DomainElem::Rat(q) => q.clone(),
        DomainElem::Poly(p) => horner(p.coeffs(), tv),
        DomainElem::Frac(f) => horner(f.num().coeffs(), tv) / horner(f.den().coeffs(), tv),
    }
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Value of a polynomial at a point, term by term.
pub fn eval_poly(p: &MultiPoly, point: &[BigRational], tv: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut v = eval_scalar(c, tv);
        for (x, &e) in point.iter().zip(m.exps()) {
            for _ in 0..e {
                v *= x;
            }
        }
        total += v;
    }
    total
}

pub fn eval_map(f: &PolyMap, point: &[BigRational], tv: &BigRational) -> Vec<BigRational> {
    f.components().iter().map(|c| eval_poly(c, point, tv)).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A few fixed rational sample points in `n` variables.
pub fn sample_points(n: usize) -> Vec<Vec<BigRational>> {
    let vals = [rat(1, 2), rat(-3, 1), rat(2, 3), rat(5, 1), rat(-7, 4), rat(0, 1)];
    (0..5).map(|k| (0..n).map(|i| vals[(k + 2 * i) % vals.len()].clone()).collect()).collect()
}

pub fn t_samples() -> Vec<BigRational> {
    vec![rat(3, 1), rat(-2, 5), rat(7, 2)]
}

// ---------------------------------------------------------------- integers

/// Smallest prime factor for every `n <= limit`.
pub fn spf_sieve(limit: usize) -> Vec<usize> {
    let mut spf: Vec<usize> = (0..=limit).collect();
    let mut i = 2;
    while i * i <= limit {
        if spf[i] == i {
            let mut j = i * i;
            while j <= limit {
                if spf[j] == j {
                    spf[j] = i;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

/// Prime factorization of `n >= 2` via the sieve, primes ascending.
pub fn sieve_factor(mut n: usize, spf: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n];
        n /= p;
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

// ---------------------------------------------------------------- random words

/// Random tame word over `ring` in two variables.
///
/// `max_gens` generators, integer coefficients in `[-coef, coef]`, shear
/// degrees at most `max_deg`; the product of the nonlinear shear degrees is
/// kept at most `degree_cap` so the composite stays small.
pub fn random_tame_word(rng: &mut ChaCha8Rng, ring: Ring, max_gens: usize, coef: i64, max_deg: u32, degree_cap: u32) -> TameWord {
    let n = 2;
    let len = rng.gen_range(1..=max_gens);
    let mut gens = Vec::new();
    let mut budget = degree_cap;
    let rand_c = |rng: &mut ChaCha8Rng| -> DomainElem {
        let v = rng.gen_range(-coef..=coef);
        if ring.is_field() && rng.gen_bool(0.3) {
            let d = rng.gen_range(1..=coef.max(1));
            DomainElem::from_rational(ring, rat(v, d)).expect("field element")
        } else {
            DomainElem::from_int(ring, v)
        }
    };
    for _ in 0..len {
        match rng.gen_range(0..4) {
            0 => {
                // unimodular integer matrix from two transvections and a sign
                let a = rng.gen_range(-coef..=coef);
                let b = rng.gen_range(-coef..=coef);
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                let c = |v: i64| MultiPoly::from_int(ring, n, v);
                let m = vec![vec![c(s), c(s * a)], vec![c(b), c(a * b + 1)]];
                gens.push(TameGenerator::LinearBlock { vars: vec![0, 1], matrix: m, status: BlockStatus::Affine });
            }
            1 => {
                let shift = vec![rand_c(rng), rand_c(rng)];
                gens.push(TameGenerator::Translation { shift });
            }
            k => {
                let target = k - 2;
                let other = 1 - target;
                let top = (1..=max_deg).filter(|d| *d <= budget).max().unwrap_or(1);
                let deg = rng.gen_range(1..=top);
                if deg > 1 {
                    budget /= deg;
                }
                let mut f = MultiPoly::zero(ring, n);
                for e in 0..=deg {
                    let c = rand_c(rng);
                    let mut exps = vec![0u32; n];
                    exps[other] = e;
                    f = &f + &MultiPoly::from_terms(ring, n, [(exps, c)]);
                }
                let mut exps = vec![0u32; n];
                exps[other] = deg;
                if f.coeff(&stame_core::algebra::Monomial::new(exps.clone())).is_zero() {
                    f = &f + &MultiPoly::from_terms(ring, n, [(exps, DomainElem::one(ring))]);
                }
                gens.push(TameGenerator::elementary(target, f));
            }
        }
    }
    TameWord::from_generators(ring, n, gens).expect("valid generators")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(X, Y)` identity check by evaluation.
pub fn agrees_numerically(f: &PolyMap, g: &PolyMap) -> bool {
    let n = f.nvars();
    t_samples().iter().all(|tv| sample_points(n).iter().all(|p| eval_map(f, p, tv) == eval_map(g, p, tv)))
}

pub fn one() -> BigRational {
    BigRational::one()
}
