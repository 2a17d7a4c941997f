//! Determinant-one linear blocks over a stage ring `R[params]`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::StabilizeError;
use crate::algebra::{DomainElem, Monomial, MultiPoly};
use crate::polymap::{determinant, BlockStatus, PolyMap, TameGenerator};

pub type Matrix = Vec<Vec<MultiPoly>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockOutcome {
    #[serde(rename = "ELEMENTARY-DECOMPOSED")]
    ElementaryDecomposed,
    #[serde(rename = "CERTIFIED-BLOCK")]
    CertifiedBlock,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub outcome: BlockOutcome,
    /// Generators whose composite is the block (leftmost first).
    pub generators: Vec<TameGenerator>,
}

/// The completion `A = (a*x - b̃*w, c*x + d*w)` of the row `(a, -b̃)` on the
/// variables `(x, w)`, and its inverse `(d*x + b̃*w, -c*x + a*w)`.
pub fn unimodular_complete(a: &MultiPoly, b_tilde: &DomainElem, c: &MultiPoly, d: &MultiPoly) -> Result<(Matrix, Matrix), StabilizeError> {
    let n = a.nvars();
    let bt = MultiPoly::constant(b_tilde.clone(), n);
    let m = vec![vec![a.clone(), -&bt], vec![c.clone(), d.clone()]];
    let inv = vec![vec![d.clone(), bt], vec![-c, a.clone()]];
    let det = determinant(&m, a.ring(), n);
    if !det.is_one() {
        return Err(StabilizeError::NotUnimodular(format!("completion of ({a}, {b_tilde}) has determinant {det}")));
    }
    Ok((m, inv))
}

/// Size used to pick pivots: leading monomial, then Euclidean norm of the
/// leading coefficient.
fn size_cmp(p: &MultiPoly, q: &MultiPoly) -> Ordering {
    match (p.leading_term(), q.leading_term()) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some((mp, cp)), Some((mq, cq))) => mp.cmp(mq).then_with(|| cp.euclid_cmp(cq)),
    }
}

fn unit_of(p: &MultiPoly) -> Option<DomainElem> {
    (p.is_constant() && !p.is_zero()).then(|| p.constant_term()).filter(DomainElem::is_unit)
}

/// A multiplier `q` with `size(e - q*p) < size(e)`, if one is found.
fn reducer(e: &MultiPoly, p: &MultiPoly) -> Option<MultiPoly> {
    if let Some(u) = unit_of(p) {
        return Some(e.scale(&u.inverse().expect("unit")));
    }
    if let Ok(q) = e.exact_div(p) {
        return Some(q);
    }
    let (me, ce) = e.leading_term()?;
    let (mp, cp) = p.leading_term()?;
    let m: Monomial = me.div(mp)?;
    let (qc, _) = ce.div_rem(cp).ok()?;
    (!qc.is_zero()).then(|| MultiPoly::term(qc, m))
}

struct Elim {
    rows: Vec<Vec<MultiPoly>>,
    /// Row operations `R_i += e * R_j` applied so far.
    ops: Vec<(usize, usize, MultiPoly)>,
}

impl Elim {
    fn add(&mut self, i: usize, j: usize, e: MultiPoly) {
        if e.is_zero() {
            return;
        }
        let rj = self.rows[j].clone();
        for (x, y) in self.rows[i].iter_mut().zip(&rj) {
            *x = &*x + &(&e * y);
        }
        self.ops.push((i, j, e));
    }
}

/// Row-reduces `matrix` to the identity with transvections; on success the
/// generators recompose to the block map on `vars`. When elimination stalls
/// the block itself is returned, marked certified.
pub fn decompose_linear_block(vars: &[usize], matrix: Vec<Vec<MultiPoly>>) -> Result<BlockDecomposition, StabilizeError> {
    let k = vars.len();
    let (ring, n) = (matrix[0][0].ring(), matrix[0][0].nvars());
    let det = determinant(&matrix, ring, n);
    if !det.is_one() {
        return Err(StabilizeError::NotUnimodular(format!("linear block has determinant {det}")));
    }
    let block = TameGenerator::LinearBlock { vars: vars.to_vec(), matrix: matrix.clone(), status: BlockStatus::CertifiedBlock };
    let certified = BlockDecomposition { outcome: BlockOutcome::CertifiedBlock, generators: vec![block.clone()] };
    let mut el = Elim { rows: matrix, ops: Vec::new() };
    for col in 0..k {
        loop {
            let live: Vec<usize> = (col..k).filter(|&r| !el.rows[r][col].is_zero()).collect();
            let Some(&piv) = live.iter().min_by(|&&r, &&s| size_cmp(&el.rows[r][col], &el.rows[s][col])) else {
                return Err(StabilizeError::Breach("singular column in a determinant-one block".into()));
            };
            if live.len() == 1 {
                let Some(v) = unit_of(&el.rows[piv][col]) else {
                    return Ok(certified);
                };
                let vinv = v.inverse().expect("unit");
                let c = |e: &DomainElem| MultiPoly::constant(e.clone(), n);
                if piv != col {
                    el.add(col, piv, c(&vinv));
                    el.add(piv, col, c(&-&v));
                } else if !v.is_one() && col + 1 < k {
                    let j = col + 1;
                    let one = DomainElem::one(ring);
                    el.add(j, col, c(&one));
                    el.add(col, j, c(&(&(&one - &v) * &vinv)));
                    el.add(j, col, c(&-&v));
                }
                break;
            }
            let mut progressed = false;
            for &r in &live {
                if r == piv {
                    continue;
                }
                if let Some(q) = reducer(&el.rows[r][col], &el.rows[piv][col]) {
                    el.add(r, piv, -q);
                    progressed = true;
                }
            }
            if !progressed {
                return Ok(certified);
            }
        }
    }
    for col in (0..k).rev() {
        for r in 0..col {
            let e = el.rows[r][col].clone();
            el.add(r, col, -e);
        }
    }
    let is_identity = el.rows.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() }));
    if !is_identity {
        return Ok(certified);
    }
    // ops E_m...E_1 A = I, so A = E_1^{-1} ∘ ... ∘ E_m^{-1}
    let generators: Vec<TameGenerator> =
        el.ops.iter().map(|(i, j, e)| TameGenerator::elementary(vars[*i], -&(e * &MultiPoly::var(ring, n, vars[*j])))).collect();
    let mut acc = PolyMap::identity(ring, n);
    for g in generators.iter().rev() {
        acc = g.apply_left(&acc)?;
    }
    if acc != block.to_map(ring, n)? {
        return Err(StabilizeError::Breach("transvection word does not recompose to the block".into()));
    }
    Ok(BlockDecomposition { outcome: BlockOutcome::ElementaryDecomposed, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{QPoly, Ring};

    fn consts(r: Ring, n: usize, rows: &[&[i64]]) -> Vec<Vec<MultiPoly>> {
        rows.iter().map(|row| row.iter().map(|&v| MultiPoly::from_int(r, n, v)).collect()).collect()
    }

    #[test]
    fn single_transvection() {
        let r = Ring::QT;
        let t = MultiPoly::constant(DomainElem::Poly(QPoly::t()), 3);
        let mut m = consts(r, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        m[0][2] = -t;
        let d = decompose_linear_block(&[0, 1, 2], m).unwrap();
        assert_eq!(d.outcome, BlockOutcome::ElementaryDecomposed);
        assert_eq!(d.generators.len(), 1);
    }

    #[test]
    fn integer_block() {
        let m = consts(Ring::Z, 3, &[&[3, 0, -2], &[0, 1, 0], &[-1, 0, 1]]);
        let d = decompose_linear_block(&[0, 1, 2], m).unwrap();
        assert_eq!(d.outcome, BlockOutcome::ElementaryDecomposed);
        assert!(d.generators.len() <= 8, "{}", d.generators.len());
    }

    #[test]
    fn unit_diagonal() {
        let m = consts(Ring::Z, 2, &[&[-1, 0], &[0, -1]]);
        let d = decompose_linear_block(&[0, 1], m).unwrap();
        assert_eq!(d.outcome, BlockOutcome::ElementaryDecomposed);
    }

    #[test]
    fn polynomial_entries() {
        // [[1 + tX, -t], [-X, 1]] on (Y, W) over Q[t][X]
        let r = Ring::QT;
        let t = DomainElem::Poly(QPoly::t());
        let x = MultiPoly::var(r, 3, 0);
        let one = MultiPoly::one(r, 3);
        let m = vec![vec![&one + &x.scale(&t), MultiPoly::constant(-&t, 3)], vec![-&x, one]];
        let d = decompose_linear_block(&[1, 2], m).unwrap();
        assert_eq!(d.outcome, BlockOutcome::ElementaryDecomposed);
    }

    #[test]
    fn cohn_matrix_is_certified() {
        // [[1 + XZ, X^2], [-Z^2, 1 - XZ]] acting on (Y, W) with X = var 0, Z = var 3
        let r = Ring::Q;
        let x = MultiPoly::var(r, 4, 0);
        let z = MultiPoly::var(r, 4, 3);
        let one = MultiPoly::one(r, 4);
        let m = vec![vec![&one + &(&x * &z), x.pow(2)], vec![-z.pow(2), &one - &(&x * &z)]];
        let d = decompose_linear_block(&[1, 2], m.clone()).unwrap();
        assert_eq!(d.outcome, BlockOutcome::CertifiedBlock);
        match &d.generators[0] {
            TameGenerator::LinearBlock { matrix, .. } => assert_eq!(matrix, &m),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn completion_examples() {
        let r = Ring::Z;
        let a = MultiPoly::from_int(r, 3, 3);
        let (m, inv) = unimodular_complete(&a, &DomainElem::from_int(r, 2), &MultiPoly::from_int(r, 3, -1), &MultiPoly::one(r, 3)).unwrap();
        assert_eq!(m, consts(r, 3, &[&[3, -2], &[-1, 1]]));
        assert_eq!(inv, consts(r, 3, &[&[1, 2], &[1, 3]]));
        assert!(unimodular_complete(&a, &DomainElem::from_int(r, 2), &MultiPoly::zero(r, 3), &MultiPoly::one(r, 3)).is_err());
    }
}
