//! Stage-by-stage stabilization of length-three data.
//!
//! A stage rewrites the core map as `(a*x + b̃*P1, y + P2)`, adjoins a fresh
//! variable `w` and conjugates by `τ = (w + P1)`, `γ = (x - b̃*w)` and the
//! unimodular completion `A` of `(a, -b̃)`. After two normalizing shears the
//! result fixes `x` and is again length-three data in `(w, y)` over the
//! coefficient ring extended by `x`, with `b` replaced by `b / b̃`.

use serde::{Deserialize, Serialize};

use super::bezout::bezout_over_stage;
use super::block::{decompose_linear_block, unimodular_complete, BlockOutcome};
use super::certificate::Certificate;
use super::StabilizeError;
use crate::algebra::render::var_name;
use crate::algebra::{factor_irreducibles, DomainElem, FactorConfig, MultiPoly};
use crate::length3::{compute_p1_p2, extract_l3, Length3Data};
use crate::polymap::{PolyMap, TameGenerator, TameWord};

/// One stabilization stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub index: usize,
    /// Coefficient variables of the stage ring (beyond the base ring).
    pub params: Vec<usize>,
    pub x_var: usize,
    pub w_var: usize,
    pub a: MultiPoly,
    pub b: DomainElem,
    pub b_tilde: DomainElem,
    pub c: MultiPoly,
    pub d: MultiPoly,
    pub p1: MultiPoly,
    pub p2: MultiPoly,
    /// Normalizing shifts of `y` and `w`.
    pub q: MultiPoly,
    pub r: MultiPoly,
    pub block_status: BlockOutcome,
    pub next_b: DomainElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagePayload {
    pub stage_ring: String,
    pub a: String,
    pub b: String,
    pub b_tilde: String,
    pub c: String,
    pub d: String,
    pub block_status: BlockOutcome,
}

impl StageRecord {
    pub fn stage_ring(&self, base: &str) -> String {
        if self.params.is_empty() {
            base.to_string()
        } else {
            let names: Vec<String> = self.params.iter().map(|&i| var_name(i)).collect();
            format!("{base}[{}]", names.join(", "))
        }
    }

    pub fn payload(&self) -> StagePayload {
        StagePayload {
            stage_ring: self.stage_ring(self.b.ring().tag()),
            a: self.a.to_string(),
            b: self.b.to_string(),
            b_tilde: self.b_tilde.to_string(),
            c: self.c.to_string(),
            d: self.d.to_string(),
            block_status: self.block_status,
        }
    }
}

/// Number of stages: the largest multiplicity of an irreducible factor of `b`.
pub fn stage_count(b: &DomainElem, cfg: &FactorConfig) -> Result<usize, StabilizeError> {
    let fac = factor_irreducibles(b, cfg)?;
    Ok(fac.factors.iter().map(|(_, e)| *e as usize).max().unwrap_or(0))
}

/// `s(F)`: the total multiplicity of the irreducible factors of `b`.
pub fn s_count(b: &DomainElem, cfg: &FactorConfig) -> Result<u32, StabilizeError> {
    Ok(factor_irreducibles(b, cfg)?.total_multiplicity())
}

fn lift(data: &Length3Data, n: usize) -> Length3Data {
    Length3Data { nvars: n, a1: data.a1.extend_vars(n), a2: data.a2.extend_vars(n), d: data.d.extend_vars(n), ..data.clone() }
}

fn push_elem(out: &mut Vec<TameGenerator>, target: usize, f: MultiPoly) {
    if !f.is_zero() {
        out.push(TameGenerator::elementary(target, f));
    }
}

fn linear_map(data: &Length3Data, vars: [usize; 2], m: &[Vec<MultiPoly>]) -> Result<PolyMap, StabilizeError> {
    let mut comps: Vec<MultiPoly> = (0..data.nvars).map(|i| data.var(i)).collect();
    for (r, &v) in vars.iter().enumerate() {
        comps[v] = &(&m[r][0] * &data.var(vars[0])) + &(&m[r][1] * &data.var(vars[1]));
    }
    Ok(PolyMap::new(comps)?)
}

fn breach(msg: impl Into<String>) -> StabilizeError {
    StabilizeError::Breach(msg.into())
}

/// Output of one stage: the extended core map equals
/// `left ∘ (core map of next) ∘ right`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub record: StageRecord,
    pub next: Length3Data,
    pub left: Vec<TameGenerator>,
    pub right: Vec<TameGenerator>,
}

/// Runs one stage on `data`, using `w` as the fresh variable.
pub fn stage(data: &Length3Data, w: usize, index: usize, cfg: &FactorConfig) -> Result<Stage, StabilizeError> {
    let (x, y) = (data.x_var, data.y_var);
    if w >= data.nvars || w == x || w == y || data.params.contains(&w) {
        return Err(breach(format!("stage variable {} is not fresh", var_name(w))));
    }
    let pp = compute_p1_p2(data, cfg)?;
    let bt = pp.b_tilde.clone();
    let (c, d) = bezout_over_stage(&pp.a, &bt, cfg)?;
    let (mat, inv) = unimodular_complete(&pp.a, &bt, &c, &d)?;
    let (xv, yv, wv) = (data.x(), data.y(), data.var(w));

    let tau = TameGenerator::elementary(w, pp.p1.clone());
    let gamma = TameGenerator::elementary(x, -&wv.scale(&bt));
    let f_ext = data.core_map()?;
    let ring = data.ring;
    let mid = gamma.apply_left(&f_ext.compose(&tau.to_map(ring, data.nvars)?)?)?;
    let expect_x = &(&pp.a * &xv) - &wv.scale(&bt);
    if *mid.component(x) != expect_x || *mid.component(y) != &yv + &pp.p2 || *mid.component(w) != &wv + &pp.p1 {
        return Err(breach(format!("γ∘F∘τ = {mid} is not (a*x - b̃*w, y + P2, w + P1)")));
    }
    let h = mid.compose(&linear_map(data, [x, w], &inv)?)?;
    let at_origin = |p: &MultiPoly| -> Result<MultiPoly, StabilizeError> { Ok(p.eval_at_zero(y)?.eval_at_zero(w)?) };
    let q = at_origin(&(h.component(y) - &yv))?;
    let r = at_origin(&(h.component(w) - &wv))?;
    let normalized = TameGenerator::elementary(y, -&q).apply_left(&TameGenerator::elementary(w, -&r).apply_left(&h)?)?;
    if *normalized.component(x) != xv {
        return Err(breach(format!("stage map {normalized} moves {}", var_name(x))));
    }

    let sub = |p: &MultiPoly, v: usize, val: &MultiPoly| -> Result<MultiPoly, StabilizeError> { Ok(p.substitute_var(v, val)?) };
    let dx = &d * &xv;
    let bw = wv.scale(&bt);
    let a1_dx = sub(&data.a1, x, &dx)?;
    let a11 = (&sub(&data.a1, x, &(&dx + &bw))? - &a1_dx).exact_div_scalar(&bt)?;
    let base = &dx + &sub(&data.d, y, &a1_dx)?;
    let a12 = (&sub(&data.a2, x, &(&base + &bw))? - &sub(&data.a2, x, &base)?).exact_div_scalar(&bt)?;
    let d_at = sub(&data.d, y, &a1_dx)?;
    let d1 = (&sub(&data.d, y, &(&yv.scale(&bt) + &a1_dx))? - &d_at).exact_div_scalar(&bt)?;
    let next_b = data.b.exact_div(&bt).ok_or_else(|| breach(format!("radical {bt} does not divide b = {}", data.b)))?;
    let mut params = data.params.clone();
    params.push(x);
    params.sort_unstable();
    let next =
        Length3Data { x_var: w, params, b: next_b.clone(), a1: a11, a2: a12, d: d1, diagonal: DomainElem::one(ring), orientation: false, ..data.clone() };
    let rebuilt = next.core_map()?;
    if rebuilt != normalized {
        return Err(breach(format!("next-stage data reconstructs {rebuilt}, expected {normalized}")));
    }

    let block = decompose_linear_block(&[x, w], mat)?;
    let record = StageRecord {
        index,
        params: data.params.clone(),
        x_var: x,
        w_var: w,
        a: pp.a,
        b: data.b.clone(),
        b_tilde: bt.clone(),
        c,
        d,
        p1: pp.p1.clone(),
        p2: pp.p2,
        q: q.clone(),
        r: r.clone(),
        block_status: block.outcome,
        next_b,
    };
    // F~ = γ^-1 ∘ E^-1 ∘ F1 ∘ A ∘ τ^-1
    let mut left = Vec::new();
    push_elem(&mut left, x, bw);
    push_elem(&mut left, y, q);
    push_elem(&mut left, w, r);
    let mut right = block.generators;
    push_elem(&mut right, w, -&pp.p1);
    Ok(Stage { record, next, left, right })
}

type Segments = Vec<(usize, usize)>;

/// Word for the core map of `data`; stage `k` uses the variable `first_w + k`.
///
/// Also returns the nested ranges of the word, innermost first: the unit
/// case, then each stage with everything inside it.
fn core_word(data: &Length3Data, first_w: usize, cfg: &FactorConfig, stages: &mut Vec<StageRecord>) -> Result<(Vec<TameGenerator>, Segments), StabilizeError> {
    let (x, y) = (data.x_var, data.y_var);
    if data.b.is_unit() {
        let binv = data.b.inverse().expect("unit");
        let mut out = Vec::new();
        push_elem(&mut out, y, data.a2.scale(&binv));
        push_elem(&mut out, x, data.d.substitute_var(y, &data.y().scale(&data.b))?);
        push_elem(&mut out, y, data.a1.scale(&binv));
        let n = out.len();
        return Ok((out, vec![(0, n)]));
    }
    let st = stage(data, first_w, stages.len(), cfg)?;
    stages.push(st.record);
    let mut out = st.left;
    let shift = out.len();
    let (inner, segments) = core_word(&st.next, first_w + 1, cfg, stages)?;
    out.extend(inner);
    out.extend(st.right);
    let mut segments: Vec<(usize, usize)> = segments.into_iter().map(|(s, e)| (s + shift, e + shift)).collect();
    segments.push((0, out.len()));
    Ok((out, segments))
}

/// Certificate for length-three data over its base ring.
pub fn stabilize_data(data: &Length3Data, cfg: &FactorConfig) -> Result<Certificate, StabilizeError> {
    if data.nvars != 2 || !data.params.is_empty() {
        return Err(breach("stabilization starts from planar data"));
    }
    let m = stage_count(&data.b, cfg)?;
    let n = 2 + m;
    let lifted = lift(data, n);
    let ring = data.ring;
    let mut stages = Vec::new();
    let (core, segments) = core_word(&lifted, 2, cfg, &mut stages)?;
    if stages.len() != m {
        return Err(breach(format!("expected {m} stages, ran {}", stages.len())));
    }
    let mut gens = Vec::new();
    if m > 0 {
        gens.push(TameGenerator::AddVariables { count: m });
    }
    let swap = TameGenerator::swap(ring, n, 0, 1);
    if data.orientation {
        gens.push(swap.clone());
    }
    if !data.diagonal.is_one() {
        gens.push(TameGenerator::Diagonal { a: data.diagonal.clone(), position: data.x_var });
    }
    let shift = gens.len();
    gens.extend(core);
    if data.orientation {
        gens.push(swap);
    }
    let word = TameWord::from_generators(ring, 2, gens)?;
    let original = data.reconstruct()?;
    let segments = segments.into_iter().map(|(s, e)| (s + shift, e + shift)).collect();
    let cert = Certificate::new(original, word, stages, segments);
    if !cert.check()? {
        return Err(breach("certificate word does not compose to the extended map"));
    }
    Ok(cert)
}

/// Extracts length-three data from `f` and stabilizes it.
pub fn stabilize(f: &PolyMap, cfg: &FactorConfig) -> Result<Certificate, StabilizeError> {
    let data = extract_l3(f)?;
    stabilize_data(&data, cfg)
}
