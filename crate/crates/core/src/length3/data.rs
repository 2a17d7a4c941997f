//! The `(b, A1, A2, D)` normal form of a length-three automorphism.
//!
//! With `G = (x + D(b*y + A1(x)), y + (A1(x) + A2(x + D(b*y + A1(x)))) / b)`
//! the map is `F = σ^o ∘ D_{u,1} ∘ G ∘ σ^o`, where `σ` swaps X and Y and
//! `o` is the orientation flag. The roles `x`, `y` and the coefficient
//! variables are explicit so that stabilization stages can reuse the type
//! with polynomial coefficients.

use serde::Serialize;
use thiserror::Error;

use super::peel::{peel_over_k, PeelError, ShearKind};
use crate::algebra::{clear_denominators, AlgebraError, DomainElem, MultiPoly, Ring};
use crate::polymap::{MapError, PolyMap, TameGenerator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Length3Error {
    #[error("expected length three, found {0}")]
    WrongLength(usize),
    #[error("factor shape {0} is not an alternating length-three word")]
    WrongShape(String),
    #[error("denominators {0} and {1} are not associates")]
    DenominatorMismatch(String, String),
    #[error("middle factor {g} is not D(bY) with D integral for b = {b}")]
    MiddleNotIntegral { g: String, b: String },
    #[error("input must be over an integral base ring (Z or Qt), found {0}")]
    NotIntegralRing(Ring),
    #[error("diagonal entry {0} is not a unit of the base ring")]
    DiagonalNotUnit(String),
    #[error("lemma check failed: {0}")]
    LemmaFailed(String),
    #[error(transparent)]
    Peel(#[from] PeelError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("internal invariant breach: {0}")]
    Breach(String),
}

impl From<AlgebraError> for Length3Error {
    fn from(e: AlgebraError) -> Self {
        Length3Error::Map(e.into())
    }
}

pub type L3Result<T> = Result<T, Length3Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Length3Data {
    pub ring: Ring,
    pub nvars: usize,
    pub x_var: usize,
    pub y_var: usize,
    /// Variables that act as coefficients of `A1`, `A2` and `D`.
    pub params: Vec<usize>,
    pub b: DomainElem,
    /// Polynomial in `x_var` and the parameters, no constant term.
    pub a1: MultiPoly,
    pub a2: MultiPoly,
    /// Polynomial in `y_var` and the parameters, no constant term.
    pub d: MultiPoly,
    /// The unit `u` of `D_{u,1}`.
    pub diagonal: DomainElem,
    /// Whether the map was conjugated by the swap to reach this shape.
    pub orientation: bool,
}

/// JSON payload with canonical text fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Length3Payload {
    pub ring: String,
    pub b: String,
    #[serde(rename = "A1")]
    pub a1: String,
    #[serde(rename = "A2")]
    pub a2: String,
    #[serde(rename = "D")]
    pub d: String,
    pub diagonal: String,
    pub orientation: bool,
}

impl Length3Data {
    pub fn payload(&self) -> Length3Payload {
        Length3Payload {
            ring: self.ring.tag().into(),
            b: self.b.to_string(),
            a1: self.a1.to_string(),
            a2: self.a2.to_string(),
            d: self.d.to_string(),
            diagonal: self.diagonal.to_string(),
            orientation: self.orientation,
        }
    }

    /// Data on the plane with the standard roles, no diagonal and no swap.
    pub fn planar(b: DomainElem, a1: MultiPoly, a2: MultiPoly, d: MultiPoly) -> Length3Data {
        let ring = b.ring();
        Length3Data { ring, nvars: 2, x_var: 0, y_var: 1, params: Vec::new(), b, a1, a2, d, diagonal: DomainElem::one(ring), orientation: false }
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self.ring, self.nvars, i)
    }

    pub fn x(&self) -> MultiPoly {
        self.var(self.x_var)
    }

    pub fn y(&self) -> MultiPoly {
        self.var(self.y_var)
    }

    pub fn constant(&self, c: &DomainElem) -> MultiPoly {
        MultiPoly::constant(c.clone(), self.nvars)
    }

    /// `p` with `var` replaced by `value`.
    pub fn subst(&self, p: &MultiPoly, var: usize, value: &MultiPoly) -> L3Result<MultiPoly> {
        Ok(p.substitute_var(var, value)?)
    }

    /// `b*y + A1(x)`.
    pub fn inner(&self) -> MultiPoly {
        &self.y().scale(&self.b) + &self.a1
    }

    /// `D(b*y + A1(x))`.
    pub fn d_of_inner(&self) -> L3Result<MultiPoly> {
        self.subst(&self.d, self.y_var, &self.inner())
    }

    /// The two nontrivial components `(G_x, G_y)` of the core map.
    pub fn core_components(&self) -> L3Result<(MultiPoly, MultiPoly)> {
        let dd = self.d_of_inner()?;
        let gx = &self.x() + &dd;
        let a2_shifted = self.subst(&self.a2, self.x_var, &gx)?;
        let num = &self.a1 + &a2_shifted;
        let gy = &self.y() + &num.exact_div_scalar(&self.b)?;
        Ok((gx, gy))
    }

    /// The core map `G` on all `nvars` variables.
    pub fn core_map(&self) -> L3Result<PolyMap> {
        let (gx, gy) = self.core_components()?;
        let mut comps: Vec<MultiPoly> = (0..self.nvars).map(|i| self.var(i)).collect();
        comps[self.x_var] = gx;
        comps[self.y_var] = gy;
        Ok(PolyMap::new(comps)?)
    }

    /// The full map, with the diagonal and orientation applied.
    pub fn reconstruct(&self) -> L3Result<PolyMap> {
        let mut m = self.core_map()?;
        if !self.diagonal.is_one() {
            m = TameGenerator::Diagonal { a: self.diagonal.clone(), position: self.x_var }.apply_left(&m)?;
        }
        if self.orientation {
            let swap = TameGenerator::swap(self.ring, self.nvars, self.x_var, self.y_var);
            m = swap.apply_left(&m)?;
            m = m.compose(&swap.to_map(self.ring, self.nvars)?)?;
        }
        Ok(m)
    }

    /// Irreducible-factor check of `b` is done elsewhere; this verifies the
    /// coprimality and vanishing constant terms.
    pub fn check_invariants(&self) -> L3Result<()> {
        for (name, p) in [("A1", &self.a1), ("A2", &self.a2), ("D", &self.d)] {
            let zero_var = if name == "D" { self.y_var } else { self.x_var };
            if !p.eval_at_zero(zero_var)?.is_zero() {
                return Err(Length3Error::Breach(format!("{name} = {p} has a term free of its variable")));
            }
        }
        if self.params.is_empty() {
            for p in [&self.a1, &self.a2] {
                let g = crate::algebra::gcd(&p.content(), &self.b)?;
                if !g.is_one() && !p.is_zero() {
                    return Err(Length3Error::Breach(format!("b = {} shares the factor {g} with {p}", self.b)));
                }
            }
        }
        Ok(())
    }
}

fn swap_conjugate(f: &PolyMap) -> L3Result<PolyMap> {
    let s = TameGenerator::swap(f.ring(), 2, 0, 1);
    Ok(s.apply_left(f)?.compose(&s.to_map(f.ring(), 2)?)?)
}

/// Extracts `(b, A1, A2, D)` from an origin-preserving length-three
/// automorphism over ℤ or ℚ[t].
pub fn extract_l3(f: &PolyMap) -> L3Result<Length3Data> {
    let ring = f.ring();
    if ring.is_field() {
        return Err(Length3Error::NotIntegralRing(ring));
    }
    if !f.is_origin_preserving() {
        return Err(PeelError::NotOriginPreserving(f.translation_part().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")).into());
    }
    let mut peel = peel_over_k(f)?;
    if peel.length() != 3 {
        return Err(Length3Error::WrongLength(peel.length()));
    }
    let mut orientation = false;
    if peel.kinds() == [ShearKind::X, ShearKind::Y, ShearKind::X] {
        peel = peel_over_k(&swap_conjugate(f)?)?;
        orientation = true;
    }
    if peel.kinds() != [ShearKind::Y, ShearKind::X, ShearKind::Y] {
        return Err(Length3Error::WrongShape(format!("{:?}", peel.kinds())));
    }
    let diagonal = peel.a.to_ring(ring).filter(DomainElem::is_unit).ok_or_else(|| Length3Error::DiagonalNotUnit(peel.a.to_string()))?;
    let (a1, b1) = clear_denominators(&peel.factors[0].f)?;
    let (a2, b2) = clear_denominators(&peel.factors[2].f)?;
    if b1 != b2 {
        return Err(Length3Error::DenominatorMismatch(b1.to_string(), b2.to_string()));
    }
    let b = b1;
    let a1 = a1.to_ring(ring)?;
    let a2 = a2.to_ring(ring)?;
    // D(Y) = g(Y/b): the coefficient of Y^i is g_i / b^i
    let g = &peel.factors[1].f;
    let bk = b.to_fraction_field();
    let mut d = MultiPoly::zero(ring, 2);
    for (m, c) in g.terms() {
        let i = m.exps()[1];
        let di = c.exact_div(&bk.pow(i)).and_then(|v| v.to_ring(ring)).ok_or_else(|| Length3Error::MiddleNotIntegral { g: g.to_string(), b: b.to_string() })?;
        d = &d + &MultiPoly::term(di, m.clone());
    }
    let data = Length3Data { diagonal, orientation, ..Length3Data::planar(b, a1, a2, d) };
    data.check_invariants()?;
    let back = data.reconstruct()?;
    if back != *f {
        return Err(Length3Error::Breach(format!("reconstruction gives {back}, expected {f}")));
    }
    Ok(data)
}
