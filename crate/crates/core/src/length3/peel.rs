//! Decomposition `F = L ∘ D_{a,1} ∘ F_m ∘ ... ∘ F_1` over the fraction field.
//!
//! Degree reduction from the left produces shears; equal leading degrees
//! allow either shear type, so both are explored and the shortest merged
//! word wins.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, DomainElem, Monomial, MultiPoly, Ring};
use crate::polymap::{MapError, PolyMap, TameGenerator, TameWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("not an automorphism over the fraction field: {0}")]
    NotAutomorphism(String),
    #[error("map does not fix the origin; translation part is {0}")]
    NotOriginPreserving(String),
    #[error("peeling needs a map in two variables, found {0}")]
    NotPlanar(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("internal invariant breach: {0}")]
    Breach(String),
}

impl From<AlgebraError> for PeelError {
    fn from(e: AlgebraError) -> Self {
        PeelError::Map(e.into())
    }
}

pub type PeelResultT<T> = Result<T, PeelError>;

/// Maximum number of complete branches explored when minimizing.
const LEAF_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShearKind {
    /// `(X, Y + f(X))`.
    Y,
    /// `(X + g(Y), Y)`.
    X,
}

/// An elementary factor over the fraction field; `f` is univariate in the
/// variable the shear does not move and has no constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shear {
    pub kind: ShearKind,
    pub f: MultiPoly,
}

impl Shear {
    pub fn target(&self) -> usize {
        match self.kind {
            ShearKind::Y => 1,
            ShearKind::X => 0,
        }
    }

    pub fn to_generator(&self) -> TameGenerator {
        TameGenerator::elementary(self.target(), self.f.clone())
    }

    pub fn is_linear(&self) -> bool {
        self.f.total_degree().unwrap_or(0) <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    /// `(c, d)` of `L = (X + c, Y + d)`, over the input ring.
    pub translation: Vec<DomainElem>,
    /// `a` of `D_{a,1}`, over the fraction field.
    pub a: DomainElem,
    /// `F_1, ..., F_m`: the rightmost factor first.
    pub factors: Vec<Shear>,
}

impl PeelResult {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    pub fn kinds(&self) -> Vec<ShearKind> {
        self.factors.iter().map(|s| s.kind).collect()
    }

    /// `L ∘ D_{a,1} ∘ F_m ∘ ... ∘ F_1` as a word over the fraction field.
    pub fn to_word(&self) -> PeelResultT<TameWord> {
        let ring = self.a.ring();
        let mut w = TameWord::new(ring, 2);
        if self.translation.iter().any(|c| !c.is_zero()) {
            w.push(TameGenerator::Translation { shift: self.translation.iter().map(DomainElem::to_fraction_field).collect() })?;
        }
        if !self.a.is_one() {
            w.push(TameGenerator::Diagonal { a: self.a.clone(), position: 0 })?;
        }
        for s in self.factors.iter().rev() {
            w.push(s.to_generator())?;
        }
        Ok(w)
    }

    pub fn compose(&self) -> PeelResultT<PolyMap> {
        Ok(self.to_word()?.eval()?)
    }
}

fn fraction_map(f: &PolyMap) -> PolyMap {
    f.to_fraction_field()
}

/// `c` with `h2 = c * h1^k`, over a field.
fn power_ratio(h1: &MultiPoly, h2: &MultiPoly, k: u32) -> Option<DomainElem> {
    let hk = h1.pow(k);
    let (_, a) = hk.leading_term()?;
    let (_, b) = h2.leading_term()?;
    let c = b.exact_div(a)?;
    (hk.scale(&c) == *h2).then_some(c)
}

struct Search {
    leaves: usize,
    best: Option<(Vec<Shear>, DomainElem)>,
}

impl Search {
    fn offer(&mut self, word: Vec<Shear>, a: DomainElem) {
        self.leaves += 1;
        if self.best.as_ref().is_none_or(|(w, _)| word.len() < w.len()) {
            self.best = Some((word, a));
        }
    }

    fn exhausted(&self) -> bool {
        self.leaves >= LEAF_CAP
    }
}

fn var(ring: Ring, i: usize) -> MultiPoly {
    MultiPoly::var(ring, 2, i)
}

/// Explores the reductions of the origin-preserving `g`; `prefix` holds the
/// left factors `S_1, ..., S_j` with `G = S_1 ∘ ... ∘ S_j ∘ g`.
fn explore(g: &PolyMap, prefix: &mut Vec<Shear>, search: &mut Search) -> PeelResultT<()> {
    let ring = g.ring();
    let (p, q) = (g.component(0), g.component(1));
    let (Some(d1), Some(d2)) = (p.total_degree(), q.total_degree()) else {
        return Err(PeelError::NotAutomorphism(format!("zero component in {g}")));
    };
    if d1 == 0 || d2 == 0 {
        return Err(PeelError::NotAutomorphism(format!("constant component in {g}")));
    }
    if d1 == 1 && d2 == 1 {
        for (word, a) in finish_linear(prefix, g)? {
            search.offer(word, a);
        }
        return Ok(());
    }
    let h1 = p.leading_form()?;
    let h2 = q.leading_form()?;
    let mut branches: Vec<Shear> = Vec::new();
    if d1 <= d2 {
        let k = d2 / d1;
        if d2 % d1 == 0 {
            if let Some(c) = power_ratio(&h1, &h2, k) {
                branches.push(Shear { kind: ShearKind::Y, f: var(ring, 0).pow(k).scale(&c) });
            }
        }
    }
    if d2 < d1 || d1 == d2 {
        let k = d1 / d2;
        if d1 % d2 == 0 {
            if let Some(c) = power_ratio(&h2, &h1, k) {
                branches.push(Shear { kind: ShearKind::X, f: var(ring, 1).pow(k).scale(&c) });
            }
        }
    }
    if branches.is_empty() {
        return Err(PeelError::NotAutomorphism(format!("degrees ({d1}, {d2}) with leading forms {h1} and {h2} admit no elementary reduction")));
    }
    for s in branches {
        if search.exhausted() && search.best.is_some() {
            break;
        }
        let reduce = TameGenerator::elementary(s.target(), -&s.f);
        let next = reduce.apply_left(g)?;
        prefix.push(s);
        let r = explore(&next, prefix, search);
        prefix.pop();
        r?;
    }
    Ok(())
}

/// Splits the linear `g` into `D_{a,1}` and shears, pushes the diagonal to
/// the far left through `prefix` and merges neighbours. Returns the merged
/// factor lists (leftmost first) with `a`.
fn finish_linear(prefix: &[Shear], g: &PolyMap) -> PeelResultT<Vec<(Vec<Shear>, DomainElem)>> {
    let ring = g.ring();
    let entry = |i: usize, j: usize| g.component(i).coeff(&Monomial::var(2, j));
    let (p, q, r, s) = (entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1));
    let a = &(&p * &s) - &(&q * &r);
    if a.is_zero() {
        return Err(PeelError::NotAutomorphism(format!("singular linear part in {g}")));
    }
    let a_inv = a.inverse().expect("nonzero field element");
    let (p, q) = (&p * &a_inv, &q * &a_inv);
    let mut out = Vec::new();
    for tail in decompose_sl2(ring, &p, &q, &r, &s) {
        let mut word: Vec<Shear> = prefix.iter().map(|sh| push_diagonal(sh, &a, &a_inv)).collect::<PeelResultT<_>>()?;
        word.extend(tail);
        out.push((merge(word), a.clone()));
    }
    Ok(out)
}

/// `S ∘ D_{a,1} = D_{a,1} ∘ S'`.
fn push_diagonal(s: &Shear, a: &DomainElem, a_inv: &DomainElem) -> PeelResultT<Shear> {
    let ring = a.ring();
    let f = match s.kind {
        ShearKind::Y => s.f.substitute(&[var(ring, 0).scale(a), var(ring, 1)])?,
        ShearKind::X => s.f.scale(a_inv),
    };
    Ok(Shear { kind: s.kind, f })
}

fn e12(ring: Ring, e: DomainElem) -> Shear {
    Shear { kind: ShearKind::X, f: var(ring, 1).scale(&e) }
}

fn e21(ring: Ring, e: DomainElem) -> Shear {
    Shear { kind: ShearKind::Y, f: var(ring, 0).scale(&e) }
}

/// Shear factorizations (leftmost first) of `[[p, q], [r, s]]` with
/// determinant one.
fn decompose_sl2(ring: Ring, p: &DomainElem, q: &DomainElem, r: &DomainElem, s: &DomainElem) -> Vec<Vec<Shear>> {
    let one = DomainElem::one(ring);
    let div = |x: &DomainElem, y: &DomainElem| x.exact_div(y).expect("field division");
    let mut out = Vec::new();
    if !r.is_zero() {
        out.push(vec![e12(ring, div(&(p - &one), r)), e21(ring, r.clone()), e12(ring, div(&(s - &one), r))]);
    }
    if !q.is_zero() {
        out.push(vec![e21(ring, div(&(s - &one), q)), e12(ring, q.clone()), e21(ring, div(&(p - &one), q))]);
    }
    if r.is_zero() && q.is_zero() {
        if p.is_one() {
            out.push(Vec::new());
        } else {
            // E21(1) * (E21(-1) * M), the latter with lower-left entry -p
            let np = -p;
            out.push(vec![e21(ring, one.clone()), e12(ring, div(&(p - &one), &np)), e21(ring, np.clone()), e12(ring, div(&(s - &one), &np))]);
        }
    }
    out
}

/// Merges adjacent shears of the same kind and drops trivial ones.
fn merge(word: Vec<Shear>) -> Vec<Shear> {
    let mut stack: Vec<Shear> = Vec::with_capacity(word.len());
    for s in word {
        if s.f.is_zero() {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.kind == s.kind => {
                top.f = &top.f + &s.f;
                if top.f.is_zero() {
                    stack.pop();
                }
            }
            _ => stack.push(s),
        }
    }
    stack
}

/// Peels `f` over the fraction field of its ring into a shortest
/// alternating word, and checks that it recomposes to `f`.
pub fn peel_over_k(f: &PolyMap) -> PeelResultT<PeelResult> {
    if f.nvars() != 2 {
        return Err(PeelError::NotPlanar(f.nvars()));
    }
    let translation = f.translation_part();
    let fk = fraction_map(f);
    let shift: Vec<MultiPoly> = fk.translation_part().into_iter().map(|c| MultiPoly::constant(c, 2)).collect();
    let g = PolyMap::new(fk.components().iter().zip(&shift).map(|(c, s)| c - s).collect())?;
    let mut search = Search { leaves: 0, best: None };
    explore(&g, &mut Vec::new(), &mut search)?;
    let (mut word, a) = search.best.ok_or_else(|| PeelError::Breach("peeling produced no candidate".into()))?;
    word.reverse();
    let result = PeelResult { translation, a, factors: word };
    let back = result.compose()?;
    if back != fk {
        return Err(PeelError::Breach(format!("peel recomposes to {back}, expected {fk}")));
    }
    Ok(result)
}

/// Number of alternating factors of an origin-preserving automorphism.
pub fn length(f: &PolyMap) -> PeelResultT<usize> {
    if !f.is_origin_preserving() {
        let t: Vec<String> = f.translation_part().iter().map(|c| c.to_string()).collect();
        return Err(PeelError::NotOriginPreserving(format!("({})", t.join(", "))));
    }
    Ok(peel_over_k(f)?.length())
}
