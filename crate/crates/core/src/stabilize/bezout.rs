use super::StabilizeError;
use crate::algebra::{extended_gcd, factor_irreducibles, DomainElem, FactorConfig, MultiPoly};

/// Solves `a*d + b̃*c = 1` with `a` a polynomial in the stage parameters and
/// `b̃` a squarefree scalar; returns `(c, d)`.
///
/// `a` must reduce to a nonzero constant modulo every prime `p | b̃`. Then
/// `b̃` divides the non-constant part of `a`, and `d` can be taken as the
/// inverse of the constant term of `a` modulo `b̃`.
pub fn bezout_over_stage(a: &MultiPoly, b_tilde: &DomainElem, cfg: &FactorConfig) -> Result<(MultiPoly, MultiPoly), StabilizeError> {
    let (ring, n) = (a.ring(), a.nvars());
    let a0 = a.constant_term();
    if !a.is_constant() {
        let fac = factor_irreducibles(b_tilde, cfg)?;
        if let Some((p, e)) = fac.factors.iter().find(|(_, e)| *e > 1) {
            return Err(StabilizeError::NotUnimodular(format!("b̃ = {b_tilde} is not squarefree ({p}^{e})")));
        }
        let tail = a - &MultiPoly::constant(a0.clone(), n);
        for (p, _) in &fac.factors {
            if !tail.divisible_by_scalar(p) {
                return Err(StabilizeError::NotUnimodular(format!("a = {a} is not constant modulo {p}")));
            }
        }
    }
    let (g, u, _) = extended_gcd(&a0, b_tilde)?;
    if !g.is_unit() {
        return Err(StabilizeError::NotUnimodular(format!("({a}, {b_tilde}) generate the ideal ({g})")));
    }
    let d = MultiPoly::constant(&u * &g.inverse().expect("unit"), n);
    let one = MultiPoly::one(ring, n);
    let c = (&one - &(a * &d)).exact_div_scalar(b_tilde)?;
    if &(a * &d) + &c.scale(b_tilde) != one {
        return Err(StabilizeError::Breach(format!("a*d + b̃*c != 1 for a = {a}, b̃ = {b_tilde}")));
    }
    Ok((c, d))
}
