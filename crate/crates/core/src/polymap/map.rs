use std::fmt;

use thiserror::Error;

use crate::algebra::render::render_components;
use crate::algebra::{AlgebraError, DomainElem, MultiPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("a map on {nvars} variables needs {nvars} components, found {found}")]
    ComponentCount { nvars: usize, found: usize },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
}

pub type MapResult<T> = std::result::Result<T, MapError>;

/// A polynomial map `(F_1, ..., F_n)` of affine `n`-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    ring: Ring,
    components: Vec<MultiPoly>,
}

impl PolyMap {
    /// Checks that every component lives over the same ring in
    /// `components.len()` variables.
    pub fn new(components: Vec<MultiPoly>) -> MapResult<PolyMap> {
        let n = components.len();
        let ring = components.first().map(MultiPoly::ring).ok_or(MapError::ComponentCount { nvars: 0, found: 0 })?;
        for c in &components {
            if c.ring() != ring {
                return Err(AlgebraError::RingMismatch { left: ring, right: c.ring() }.into());
            }
            if c.nvars() != n {
                return Err(MapError::ComponentCount { nvars: c.nvars(), found: n });
            }
        }
        Ok(PolyMap { ring, components })
    }

    pub fn identity(ring: Ring, n: usize) -> PolyMap {
        PolyMap { ring, components: (0..n).map(|i| MultiPoly::var(ring, n, i)).collect() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<MultiPoly> {
        self.components
    }

    /// `(self ∘ g)_i = self_i(g_1, ..., g_n)`.
    pub fn compose(&self, g: &PolyMap) -> MapResult<PolyMap> {
        if self.nvars() != g.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars(), found: g.nvars() }.into());
        }
        let comps = self.components.iter().map(|c| c.substitute(&g.components)).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMap { ring: self.ring, components: comps })
    }

    /// `(F, X_{n+1}, ..., X_{n+m})`.
    pub fn extend(&self, m: usize) -> PolyMap {
        let n = self.nvars() + m;
        let mut comps: Vec<MultiPoly> = self.components.iter().map(|c| c.extend_vars(n)).collect();
        comps.extend((self.nvars()..n).map(|i| MultiPoly::var(self.ring, n, i)));
        PolyMap { ring: self.ring, components: comps }
    }

    pub fn jacobian(&self) -> MapResult<Vec<Vec<MultiPoly>>> {
        let n = self.nvars();
        let mut rows = Vec::with_capacity(n);
        for c in &self.components {
            rows.push((0..n).map(|j| c.derivative(j)).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(rows)
    }

    pub fn jacobian_det(&self) -> MapResult<MultiPoly> {
        Ok(determinant(&self.jacobian()?, self.ring, self.nvars()))
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| *c == MultiPoly::var(self.ring, self.nvars(), i))
    }

    pub fn is_origin_preserving(&self) -> bool {
        self.components.iter().all(|c| c.constant_term().is_zero())
    }

    /// Whether every component has total degree at most one.
    pub fn is_affine(&self) -> bool {
        self.components.iter().all(|c| c.total_degree().unwrap_or(0) <= 1)
    }

    /// Confirms `g` is a two-sided inverse of `self`.
    pub fn is_automorphism_witnessed(&self, g: &PolyMap) -> MapResult<bool> {
        Ok(self.compose(g)?.is_identity() && g.compose(self)?.is_identity())
    }

    pub fn translation_part(&self) -> Vec<DomainElem> {
        self.components.iter().map(MultiPoly::constant_term).collect()
    }

    pub fn map_components(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMap {
        PolyMap::new(self.components.iter().map(f).collect()).expect("component-wise image keeps the shape")
    }

    pub fn to_fraction_field(&self) -> PolyMap {
        self.map_components(MultiPoly::to_fraction_field)
    }

    pub fn to_ring(&self, ring: Ring) -> MapResult<PolyMap> {
        PolyMap::new(self.components.iter().map(|c| c.to_ring(ring)).collect::<Result<Vec<_>, _>>()?)
    }

    /// Maximum total degree of the components.
    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<MultiPoly>], ring: Ring, nvars: usize) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(ring, nvars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = MultiPoly::zero(ring, nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect()).collect();
                let term = &m[0][j] * &determinant(&minor, ring, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_components(&self.components))
    }
}
