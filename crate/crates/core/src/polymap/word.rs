use serde::{Deserialize, Serialize};

use super::map::{determinant, MapError, MapResult, PolyMap};
use crate::algebra::{DomainElem, MultiPoly, Ring};

/// Provenance of a linear block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockStatus {
    /// An affine step over the base ring.
    #[serde(rename = "AFFINE")]
    Affine,
    /// A determinant-one block left undecomposed, checked exactly.
    #[serde(rename = "CERTIFIED-BLOCK")]
    CertifiedBlock,
}

/// One generator of the tame group, acting on the ambient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TameGenerator {
    /// `X_target -> X_target + f`, with `f` free of `X_target`.
    Elementary { target: usize, f: MultiPoly },
    /// `X_{vars[r]} -> sum_c matrix[r][c] * X_{vars[c]}`; entries are free
    /// of the block variables and the determinant is a unit.
    LinearBlock { vars: Vec<usize>, matrix: Vec<Vec<MultiPoly>>, status: BlockStatus },
    /// `X_i -> X_i + shift[i]`.
    Translation { shift: Vec<DomainElem> },
    /// `X_position -> a * X_position` for a unit `a`.
    Diagonal { a: DomainElem, position: usize },
    /// Adjoins fresh variables fixed by the map; only valid as a prefix.
    AddVariables { count: usize },
}

impl TameGenerator {
    pub fn elementary(target: usize, f: MultiPoly) -> TameGenerator {
        TameGenerator::Elementary { target, f }
    }

    /// The swap of two variables as a linear block.
    pub fn swap(ring: Ring, nvars: usize, i: usize, j: usize) -> TameGenerator {
        let zero = MultiPoly::zero(ring, nvars);
        let one = MultiPoly::one(ring, nvars);
        TameGenerator::LinearBlock { vars: vec![i, j], matrix: vec![vec![zero.clone(), one.clone()], vec![one, zero]], status: BlockStatus::Affine }
    }

    pub fn is_add_variables(&self) -> bool {
        matches!(self, TameGenerator::AddVariables { .. })
    }

    /// Checks the structural invariants in an ambient of `nvars` variables.
    pub fn validate(&self, ring: Ring, nvars: usize) -> MapResult<()> {
        let bad = |msg: String| Err(MapError::InvalidGenerator(msg));
        let check_poly = |p: &MultiPoly| -> MapResult<()> {
            if p.ring() != ring || p.nvars() != nvars {
                return bad(format!("polynomial over {}[{} vars] in a word over {ring}[{nvars} vars]", p.ring(), p.nvars()));
            }
            Ok(())
        };
        match self {
            TameGenerator::Elementary { target, f } => {
                check_poly(f)?;
                if *target >= nvars {
                    return bad(format!("elementary target {target} out of range"));
                }
                if f.uses_var(*target) {
                    return bad(format!("elementary map on variable {target} involves that variable: {f}"));
                }
            }
            TameGenerator::LinearBlock { vars, matrix, .. } => {
                let k = vars.len();
                if k == 0 || matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
                    return bad("linear block is not square over its variables".into());
                }
                let mut seen = vec![false; nvars];
                for &v in vars {
                    if v >= nvars || std::mem::replace(&mut seen[v], true) {
                        return bad(format!("linear block variable list {vars:?} is invalid"));
                    }
                }
                for e in matrix.iter().flatten() {
                    check_poly(e)?;
                    if vars.iter().any(|&v| e.uses_var(v)) {
                        return bad(format!("linear block entry {e} involves a block variable"));
                    }
                }
                let det = determinant(matrix, ring, nvars);
                if !(det.is_constant() && det.constant_term().is_unit()) {
                    return Err(MapError::NotInvertible(format!("linear block determinant {det} is not a unit")));
                }
            }
            TameGenerator::Translation { shift } => {
                if shift.len() != nvars || shift.iter().any(|c| c.ring() != ring) {
                    return bad(format!("translation needs {nvars} shifts over {ring}"));
                }
            }
            TameGenerator::Diagonal { a, position } => {
                if *position >= nvars || a.ring() != ring {
                    return bad(format!("diagonal position {position} out of range"));
                }
                if !a.is_unit() {
                    return Err(MapError::NotInvertible(format!("diagonal entry {a} is not a unit")));
                }
            }
            TameGenerator::AddVariables { .. } => {}
        }
        Ok(())
    }

    /// `self ∘ acc`.
    pub fn apply_left(&self, acc: &PolyMap) -> MapResult<PolyMap> {
        let mut comps = acc.components().to_vec();
        match self {
            TameGenerator::Elementary { target, f } => {
                comps[*target] = &comps[*target] + &f.substitute(acc.components())?;
            }
            TameGenerator::LinearBlock { vars, matrix, .. } => {
                for (r, &v) in vars.iter().enumerate() {
                    let mut sum = MultiPoly::zero(acc.ring(), acc.nvars());
                    for (c, &w) in vars.iter().enumerate() {
                        let e = &matrix[r][c];
                        if e.is_zero() {
                            continue;
                        }
                        let coef = if e.is_constant() { e.clone() } else { e.substitute(acc.components())? };
                        sum = &sum + &(&coef * acc.component(w));
                    }
                    comps[v] = sum;
                }
            }
            TameGenerator::Translation { shift } => {
                for (c, s) in comps.iter_mut().zip(shift) {
                    *c = &*c + &MultiPoly::constant(s.clone(), acc.nvars());
                }
            }
            TameGenerator::Diagonal { a, position } => {
                comps[*position] = comps[*position].scale(a);
            }
            TameGenerator::AddVariables { .. } => {}
        }
        PolyMap::new(comps)
    }

    /// The generator as a map on `nvars` variables.
    pub fn to_map(&self, ring: Ring, nvars: usize) -> MapResult<PolyMap> {
        self.apply_left(&PolyMap::identity(ring, nvars))
    }

    pub fn inverse(&self) -> MapResult<TameGenerator> {
        Ok(match self {
            TameGenerator::Elementary { target, f } => TameGenerator::Elementary { target: *target, f: -f },
            TameGenerator::LinearBlock { vars, matrix, status } => {
                TameGenerator::LinearBlock { vars: vars.clone(), matrix: inverse_matrix(matrix)?, status: *status }
            }
            TameGenerator::Translation { shift } => TameGenerator::Translation { shift: shift.iter().map(|c| -c).collect() },
            TameGenerator::Diagonal { a, position } => {
                TameGenerator::Diagonal { a: a.inverse().ok_or_else(|| MapError::NotInvertible(format!("diagonal entry {a}")))?, position: *position }
            }
            TameGenerator::AddVariables { count } => TameGenerator::AddVariables { count: *count },
        })
    }
}

/// Inverse of a square matrix with unit determinant, via the adjugate.
#[allow(clippy::needless_range_loop)]
pub fn inverse_matrix(m: &[Vec<MultiPoly>]) -> MapResult<Vec<Vec<MultiPoly>>> {
    let k = m.len();
    let (ring, nvars) = (m[0][0].ring(), m[0][0].nvars());
    let det = determinant(m, ring, nvars);
    let inv = det
        .is_constant()
        .then(|| det.constant_term().inverse())
        .flatten()
        .ok_or_else(|| MapError::NotInvertible(format!("determinant {det} is not a unit")))?;
    let mut out = vec![vec![MultiPoly::zero(ring, nvars); k]; k];
    if k == 1 {
        out[0][0] = MultiPoly::constant(inv, nvars);
        return Ok(out);
    }
    for (i, row) in m.iter().enumerate() {
        for j in 0..row.len() {
            let minor: Vec<Vec<MultiPoly>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, r)| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let cof = determinant(&minor, ring, nvars).scale(&inv);
            out[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    Ok(out)
}

/// An ordered product `g_1 ∘ g_2 ∘ ... ∘ g_k` of tame generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TameWord {
    ring: Ring,
    base_nvars: usize,
    generators: Vec<TameGenerator>,
}

impl TameWord {
    pub fn new(ring: Ring, base_nvars: usize) -> TameWord {
        TameWord { ring, base_nvars, generators: Vec::new() }
    }

    pub fn from_generators(ring: Ring, base_nvars: usize, gens: impl IntoIterator<Item = TameGenerator>) -> MapResult<TameWord> {
        let mut w = TameWord::new(ring, base_nvars);
        for g in gens {
            w.push(g)?;
        }
        Ok(w)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn base_nvars(&self) -> usize {
        self.base_nvars
    }

    pub fn added_vars(&self) -> usize {
        self.generators
            .iter()
            .map(|g| match g {
                TameGenerator::AddVariables { count } => *count,
                _ => 0,
            })
            .sum()
    }

    pub fn ambient_nvars(&self) -> usize {
        self.base_nvars + self.added_vars()
    }

    pub fn generators(&self) -> &[TameGenerator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Appends on the right after validating the generator.
    pub fn push(&mut self, g: TameGenerator) -> MapResult<()> {
        if g.is_add_variables() && self.generators.iter().any(|h| !h.is_add_variables()) {
            return Err(MapError::InvalidGenerator("variables may only be added at the start of a word".into()));
        }
        let n = self.ambient_nvars() + if let TameGenerator::AddVariables { count } = g { count } else { 0 };
        g.validate(self.ring, n)?;
        self.generators.push(g);
        Ok(())
    }

    pub fn extend(&mut self, gens: impl IntoIterator<Item = TameGenerator>) -> MapResult<()> {
        for g in gens {
            self.push(g)?;
        }
        Ok(())
    }

    /// The composite map on the ambient variables.
    pub fn eval(&self) -> MapResult<PolyMap> {
        let mut acc = PolyMap::identity(self.ring, self.ambient_nvars());
        for g in self.generators.iter().rev() {
            acc = g.apply_left(&acc)?;
        }
        Ok(acc)
    }

    /// The composite, evaluated from the innermost of the nested ranges
    /// `segments` outward.
    ///
    /// Conjugation-shaped words swell far less this way than when folded
    /// from one end. The ranges only choose the order of composition, so a
    /// wrong hint costs time, never correctness; ranges that do not nest
    /// fall back to [`TameWord::eval`].
    pub fn eval_nested(&self, segments: &[(usize, usize)]) -> MapResult<PolyMap> {
        let len = self.generators.len();
        let nested = segments.windows(2).all(|w| w[1].0 <= w[0].0 && w[0].1 <= w[1].1) && segments.iter().all(|&(s, e)| s <= e && e <= len);
        if segments.is_empty() || !nested {
            return self.eval();
        }
        let (ring, n) = (self.ring, self.ambient_nvars());
        let mut acc = PolyMap::identity(ring, n);
        let (mut lo, mut hi) = segments[0];
        for g in self.generators[lo..hi].iter().rev() {
            acc = g.apply_left(&acc)?;
        }
        for &(s, e) in segments[1..].iter().chain([(0, len)].iter()) {
            for g in &self.generators[hi..e] {
                acc = acc.compose(&g.to_map(ring, n)?)?;
            }
            for g in self.generators[s..lo].iter().rev() {
                acc = g.apply_left(&acc)?;
            }
            (lo, hi) = (s, e);
        }
        Ok(acc)
    }

    /// Word for the inverse map; added variables stay a prefix.
    pub fn inverse(&self) -> MapResult<TameWord> {
        let mut out = TameWord::new(self.ring, self.base_nvars);
        let (adds, rest): (Vec<_>, Vec<_>) = self.generators.iter().partition(|g| g.is_add_variables());
        for g in adds {
            out.push(g.clone())?;
        }
        for g in rest.into_iter().rev() {
            out.push(g.inverse()?)?;
        }
        Ok(out)
    }
}
