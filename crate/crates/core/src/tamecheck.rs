//! Tameness of plane automorphisms over a domain by degree reduction.
//!
//! Each iteration lowers `deg P + deg Q` by an affine step (equal degrees)
//! or by an elementary subtraction `Q - c*P^k`; a map of degree one is tame
//! exactly when its Jacobian determinant is a unit.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{extended_gcd, AlgebraError, Degree, DomainElem, Monomial, MultiPoly, Ring};
use crate::polymap::{inverse_matrix, BlockStatus, MapError, PolyMap, TameGenerator, TameWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TameError {
    #[error("tame2 needs a map in two variables, found {0}")]
    NotPlanar(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("internal invariant breach: {0}")]
    Breach(String),
}

impl From<AlgebraError> for TameError {
    fn from(e: AlgebraError) -> Self {
        TameError::Map(e.into())
    }
}

/// Why a map was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectCode {
    /// A component is constant, so the map cannot be an automorphism.
    Degenerate,
    /// Equal degrees with leading forms that no affine step can cancel.
    NoAffineReduction,
    /// `h2` is not `c*h1^k` for any `c` in the ring.
    NoElementaryReduction,
    /// Affine map whose Jacobian determinant is not a unit.
    NonUnitJacobian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceAction {
    /// `F <- tau ∘ F` for the linear map `tau`.
    Affine {
        tau: [[String; 2]; 2],
    },
    /// `F <- (Q, P)`.
    Swap,
    /// `F <- (X, Y - c*X^k) ∘ F`.
    Elementary {
        c: String,
        exponent: u32,
    },
    /// The final affine map was accepted.
    Accept {
        jacobian: String,
    },
    Reject {
        code: RejectCode,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: u8,
    pub degrees: (Option<u32>, Option<u32>),
    pub h1: Option<String>,
    pub h2: Option<String>,
    #[serde(serialize_with = "serialize_display")]
    pub before: PolyMap,
    pub action: TraceAction,
}

fn serialize_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameOutcome {
    Tame { word: TameWord },
    NotTame { step: u8, code: RejectCode, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameDecision {
    pub outcome: TameOutcome,
    pub trace: Vec<TraceStep>,
}

impl TameDecision {
    pub fn is_tame(&self) -> bool {
        matches!(self.outcome, TameOutcome::Tame { .. })
    }

    pub fn word(&self) -> Option<&TameWord> {
        match &self.outcome {
            TameOutcome::Tame { word } => Some(word),
            TameOutcome::NotTame { .. } => None,
        }
    }
}

fn tdeg(d: (Degree, Degree)) -> u32 {
    d.0.unwrap_or(0) + d.1.unwrap_or(0)
}

fn leading(p: &MultiPoly) -> Option<String> {
    p.leading_form().ok().map(|h| h.to_string())
}

/// Decides whether `f` lies in the tame group over its coefficient ring.
pub fn tame2(f: &PolyMap) -> Result<TameDecision, TameError> {
    if f.nvars() != 2 {
        return Err(TameError::NotPlanar(f.nvars()));
    }
    let ring = f.ring();
    let mut cur = f.clone();
    let mut steps: Vec<TameGenerator> = Vec::new();
    let mut trace = Vec::new();
    let mut last_tdeg: Option<u32> = None;

    let outcome = loop {
        let (p, q) = (cur.component(0).clone(), cur.component(1).clone());
        let degrees = (p.total_degree(), q.total_degree());
        let record = |step: u8, before: &PolyMap, action: TraceAction| TraceStep {
            step,
            degrees,
            h1: leading(before.component(0)),
            h2: leading(before.component(1)),
            before: before.clone(),
            action,
        };

        if p.is_constant() || q.is_constant() {
            trace.push(record(1, &cur, TraceAction::Reject { code: RejectCode::Degenerate }));
            break TameOutcome::NotTame { step: 1, code: RejectCode::Degenerate, detail: format!("constant component in {cur}") };
        }
        let total = tdeg(degrees);
        if let Some(prev) = last_tdeg {
            if total >= prev {
                return Err(TameError::Breach(format!("total degree did not drop ({prev} -> {total})")));
            }
        }
        last_tdeg = Some(total);
        let (d1, d2) = (degrees.0.expect("nonzero"), degrees.1.expect("nonzero"));

        if d1 == 1 && d2 == 1 {
            let jac = cur.jacobian_det()?;
            if !(jac.is_constant() && jac.constant_term().is_unit()) {
                trace.push(record(7, &cur, TraceAction::Reject { code: RejectCode::NonUnitJacobian }));
                break TameOutcome::NotTame { step: 7, code: RejectCode::NonUnitJacobian, detail: format!("det JF = {jac} is not a unit") };
            }
            trace.push(record(7, &cur, TraceAction::Accept { jacobian: jac.to_string() }));
            steps.extend(affine_generators(&cur));
            break TameOutcome::Tame { word: TameWord::new(ring, 2) };
        }

        if d1 == d2 {
            let h1 = p.leading_form()?;
            let h2 = q.leading_form()?;
            match affine_reduction(&h1, &h2, ring)? {
                Some(tau) => {
                    let strs = [0, 1].map(|r| [0, 1].map(|c| tau[r][c].to_string()));
                    trace.push(record(4, &cur, TraceAction::Affine { tau: strs }));
                    let gen = TameGenerator::LinearBlock { vars: vec![0, 1], matrix: tau.clone(), status: BlockStatus::Affine };
                    cur = gen.apply_left(&cur)?;
                    steps.push(TameGenerator::LinearBlock { vars: vec![0, 1], matrix: inverse_matrix(&tau)?, status: BlockStatus::Affine });
                    continue;
                }
                None => {
                    trace.push(record(4, &cur, TraceAction::Reject { code: RejectCode::NoAffineReduction }));
                    break TameOutcome::NotTame {
                        step: 4,
                        code: RejectCode::NoAffineReduction,
                        detail: format!("leading forms h1 = {h1} and h2 = {h2} admit no degree-lowering affine step"),
                    };
                }
            }
        }

        if d2 < d1 {
            trace.push(record(5, &cur, TraceAction::Swap));
            let swap = TameGenerator::swap(ring, 2, 0, 1);
            cur = swap.apply_left(&cur)?;
            steps.push(swap);
        }
        let (p, q) = (cur.component(0).clone(), cur.component(1).clone());
        let (d1, d2) = (p.total_degree().expect("nonzero"), q.total_degree().expect("nonzero"));
        let h1 = p.leading_form()?;
        let h2 = q.leading_form()?;
        let degrees = (Some(d1), Some(d2));
        let record6 = |action: TraceAction| TraceStep { step: 6, degrees, h1: Some(h1.to_string()), h2: Some(h2.to_string()), before: cur.clone(), action };
        let reject = |detail: String| TameOutcome::NotTame { step: 6, code: RejectCode::NoElementaryReduction, detail };
        if d2 % d1 != 0 {
            trace.push(record6(TraceAction::Reject { code: RejectCode::NoElementaryReduction }));
            break reject(format!("d1 = {d1} does not divide d2 = {d2}; h1 = {h1}, h2 = {h2}"));
        }
        let k = d2 / d1;
        let hk = h1.to_fraction_field().pow(k);
        let h2k = h2.to_fraction_field();
        let (_, lc_hk) = hk.leading_term().expect("nonzero");
        let (_, lc_h2) = h2k.leading_term().expect("nonzero");
        let c_k = lc_h2.exact_div(lc_hk).expect("field division");
        if hk.scale(&c_k) != h2k {
            trace.push(record6(TraceAction::Reject { code: RejectCode::NoElementaryReduction }));
            break reject(format!("h2 = {h2} is not a multiple of h1^{k} = {}", h1.pow(k)));
        }
        let Some(c) = c_k.to_ring(ring) else {
            trace.push(record6(TraceAction::Reject { code: RejectCode::NoElementaryReduction }));
            break reject(format!("h2 = c*h1^{k} with h1 = {h1}, h2 = {h2} requires c = {c_k}, which is not in {ring}"));
        };
        trace.push(record6(TraceAction::Elementary { c: c.to_string(), exponent: k }));
        let xk = MultiPoly::var(ring, 2, 0).pow(k).scale(&c);
        cur = TameGenerator::elementary(1, -&xk).apply_left(&cur)?;
        steps.push(TameGenerator::elementary(1, xk));
    };

    let outcome = match outcome {
        TameOutcome::Tame { .. } => {
            let word = TameWord::from_generators(ring, 2, steps)?;
            let back = word.eval()?;
            if back != *f {
                return Err(TameError::Breach(format!("recomposed word gives {back}, expected {f}")));
            }
            TameOutcome::Tame { word }
        }
        other => other,
    };
    Ok(TameDecision { outcome, trace })
}

/// `[Translation, LinearBlock]` reproducing an affine map.
pub fn affine_generators(f: &PolyMap) -> Vec<TameGenerator> {
    let n = f.nvars();
    let mut out = Vec::new();
    let shift = f.translation_part();
    if shift.iter().any(|c| !c.is_zero()) {
        out.push(TameGenerator::Translation { shift });
    }
    let matrix: Vec<Vec<MultiPoly>> = f.components().iter().map(|c| (0..n).map(|j| MultiPoly::constant(c.coeff(&Monomial::var(n, j)), n)).collect()).collect();
    let is_identity = matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, e)| e.is_one() == (i == j) && (i == j || e.is_zero())));
    if !is_identity {
        out.push(TameGenerator::LinearBlock { vars: (0..n).collect(), matrix, status: BlockStatus::Affine });
    }
    out
}

/// A determinant-one linear `tau` with `deg (tau ∘ F)_2 < deg F_2`, when
/// the leading forms are proportional over the fraction field.
fn affine_reduction(h1: &MultiPoly, h2: &MultiPoly, ring: Ring) -> Result<Option<Vec<Vec<MultiPoly>>>, TameError> {
    let (k1, k2) = (h1.to_fraction_field(), h2.to_fraction_field());
    let (m1, c1) = k1.leading_term().expect("nonzero");
    let (m2, c2) = k2.leading_term().expect("nonzero");
    if m1 != m2 {
        return Ok(None);
    }
    let lambda = c2.exact_div(c1).expect("field division");
    if k1.scale(&lambda) != k2 {
        return Ok(None);
    }
    let (p, q) = if ring.is_field() {
        (lambda, DomainElem::one(ring))
    } else {
        let (p, q) = lambda.num_den();
        (p.to_ring(ring).expect("numerator in the base ring"), q.to_ring(ring).expect("denominator in the base ring"))
    };
    // u*q + v*p = 1 makes [[u, v], [-p, q]] unimodular
    let (g, a, b) = extended_gcd(&q, &p)?;
    if !g.is_one() {
        return Err(TameError::Breach(format!("reduced ratio {p}/{q} is not coprime")));
    }
    let c = |e: DomainElem| MultiPoly::constant(e, 2);
    Ok(Some(vec![vec![c(a), c(b)], vec![c(-&p), c(q)]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPoly;

    fn nagata() -> PolyMap {
        let r = Ring::QT;
        let (x, y) = (MultiPoly::var(r, 2, 0), MultiPoly::var(r, 2, 1));
        let t = MultiPoly::constant(DomainElem::Poly(QPoly::t()), 2);
        let u = &(&t * &y) + &x.pow(2);
        let two = MultiPoly::from_int(r, 2, 2);
        PolyMap::new(vec![&x + &(&t * &u), &(&y - &(&(&two * &u) * &x)) - &(&t * &u.pow(2))]).unwrap()
    }

    #[test]
    fn nagata_is_rejected_at_step_six() {
        let d = tame2(&nagata()).unwrap();
        match &d.outcome {
            TameOutcome::NotTame { step, code, detail } => {
                assert_eq!(*step, 6);
                assert_eq!(*code, RejectCode::NoElementaryReduction);
                assert!(detail.contains("-1/t"), "{detail}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let last = d.trace.last().unwrap();
        assert_eq!(last.degrees, (Some(2), Some(4)));
        assert_eq!(last.h1.as_deref(), Some("t*X^2"));
        assert_eq!(last.h2.as_deref(), Some("-t*X^4"));
    }

    #[test]
    fn identity_is_tame_with_empty_word() {
        let d = tame2(&PolyMap::identity(Ring::Z, 2)).unwrap();
        assert!(d.word().unwrap().is_empty());
    }

    #[test]
    fn proportional_leading_forms() {
        // (X + Y^2, Y + 2*(X + Y^2)) over Z reduces with tau = (X, Y - 2X)
        let r = Ring::Z;
        let (x, y) = (MultiPoly::var(r, 2, 0), MultiPoly::var(r, 2, 1));
        let p = &x + &y.pow(2);
        let f = PolyMap::new(vec![p.clone(), &y + &p.scale(&DomainElem::from_int(r, 2))]).unwrap();
        let d = tame2(&f).unwrap();
        assert!(d.is_tame());
        assert_eq!(d.trace[0].step, 4);
        assert_eq!(d.word().unwrap().eval().unwrap(), f);
    }

    #[test]
    fn non_unit_jacobian() {
        let r = Ring::Z;
        let (x, y) = (MultiPoly::var(r, 2, 0), MultiPoly::var(r, 2, 1));
        let f = PolyMap::new(vec![x.scale(&DomainElem::from_int(r, 2)), y]).unwrap();
        let d = tame2(&f).unwrap();
        assert!(matches!(d.outcome, TameOutcome::NotTame { step: 7, .. }));
    }

    #[test]
    fn degenerate_component() {
        let r = Ring::Z;
        let f = PolyMap::new(vec![MultiPoly::var(r, 2, 0), MultiPoly::from_int(r, 2, 3)]).unwrap();
        let d = tame2(&f).unwrap();
        assert!(matches!(d.outcome, TameOutcome::NotTame { code: RejectCode::Degenerate, .. }));
    }
}
