//! Certificates and their JSON form.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::block::BlockOutcome;
use super::engine::{StagePayload, StageRecord};
use super::StabilizeError;
use crate::algebra::render::{var_index, var_name};
use crate::algebra::{DomainElem, MultiPoly, Ring};
use crate::cli::parse::{parse_map, parse_poly};
use crate::polymap::{BlockStatus, PolyMap, TameGenerator, TameWord};

/// A tame word over the base ring in `2 + added_vars` variables whose
/// composite is the original map extended by the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub original: PolyMap,
    pub added_vars: usize,
    pub word: TameWord,
    pub stages: Vec<StagePayload>,
    /// Full stage data; empty for certificates read from JSON.
    pub records: Vec<StageRecord>,
    /// Nested word ranges, innermost first, used to order the recomposition.
    pub segments: Vec<(usize, usize)>,
    pub verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    /// Every linear block was split into transvections.
    #[serde(rename = "STABLY-TAME")]
    StablyTame,
    /// Some determinant-one block was kept whole; tame provided it is a
    /// product of elementary matrices.
    #[serde(rename = "STABLY-TAME-MODULO-E")]
    StablyTameModuloE,
}

impl Certificate {
    pub fn new(original: PolyMap, word: TameWord, records: Vec<StageRecord>, segments: Vec<(usize, usize)>) -> Certificate {
        let stages = records.iter().map(StageRecord::payload).collect();
        let mut c = Certificate { original, added_vars: word.added_vars(), word, stages, records, segments, verified: false };
        c.verified = c.check().unwrap_or(false);
        c
    }

    /// Recomposes the word and compares it with the extended original.
    pub fn check(&self) -> Result<bool, StabilizeError> {
        if self.original.nvars() != 2 || self.word.base_nvars() != 2 || self.word.ring() != self.original.ring() {
            return Ok(false);
        }
        if self.word.added_vars() != self.added_vars {
            return Ok(false);
        }
        Ok(self.word.eval_nested(&self.segments)? == self.original.extend(self.added_vars))
    }

    pub fn conclusion(&self) -> Conclusion {
        let kept = self.word.generators().iter().any(|g| matches!(g, TameGenerator::LinearBlock { status: BlockStatus::CertifiedBlock, .. }));
        if kept || self.stages.iter().any(|s| s.block_status == BlockOutcome::CertifiedBlock) {
            Conclusion::StablyTameModuloE
        } else {
            Conclusion::StablyTame
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.original.ring().tag(),
            "original": self.original.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "added_vars": self.added_vars,
            "word": self.word.generators().iter().map(generator_to_json).collect::<Vec<_>>(),
            "stages": self.stages,
            "segments": self.segments,
            "conclusion": self.conclusion(),
            "verified": self.verified,
        })
    }

    /// Reads a certificate; `verified` is recomputed, never trusted.
    pub fn from_json(v: &Value) -> Result<Certificate, StabilizeError> {
        let bad = |m: &str| StabilizeError::Format(m.to_string());
        let tag = v["ring"].as_str().ok_or_else(|| bad("missing ring"))?;
        let ring = Ring::from_tag(tag).ok_or_else(|| bad(&format!("unknown ring {tag}")))?;
        let comps = v["original"].as_array().ok_or_else(|| bad("missing original"))?;
        let texts: Vec<&str> = comps.iter().map(|c| c.as_str().ok_or_else(|| bad("original components must be strings"))).collect::<Result<_, _>>()?;
        let original = parse_map(&texts.join(", "), ring, Some(texts.len()))?;
        let m = v["added_vars"].as_u64().ok_or_else(|| bad("missing added_vars"))? as usize;
        let n = original.nvars() + m;
        let gens = v["word"].as_array().ok_or_else(|| bad("missing word"))?;
        let mut word = TameWord::new(ring, original.nvars());
        for g in gens {
            word.push(generator_from_json(g, ring, n)?)?;
        }
        let stages: Vec<StagePayload> = match v.get("stages") {
            Some(s) => serde_json::from_value(s.clone()).map_err(|e| bad(&format!("stages: {e}")))?,
            None => Vec::new(),
        };
        let segments: Vec<(usize, usize)> = match v.get("segments") {
            Some(s) => serde_json::from_value(s.clone()).map_err(|e| bad(&format!("segments: {e}")))?,
            None => Vec::new(),
        };
        let mut c = Certificate { original, added_vars: m, word, stages, records: Vec::new(), segments, verified: false };
        c.verified = c.check()?;
        Ok(c)
    }
}

pub fn generator_to_json(g: &TameGenerator) -> Value {
    match g {
        TameGenerator::Elementary { target, f } => json!({"kind": "elementary", "target": var_name(*target), "f": f.to_string()}),
        TameGenerator::LinearBlock { vars, matrix, status } => json!({
            "kind": "linear",
            "vars": vars.iter().map(|&v| var_name(v)).collect::<Vec<_>>(),
            "matrix": matrix.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "status": status,
        }),
        TameGenerator::Translation { shift } => json!({"kind": "translation", "shift": shift.iter().map(|c| c.to_string()).collect::<Vec<_>>()}),
        TameGenerator::Diagonal { a, position } => json!({"kind": "diagonal", "a": a.to_string(), "position": var_name(*position)}),
        TameGenerator::AddVariables { count } => json!({"kind": "add_variables", "count": count}),
    }
}

pub fn generator_from_json(v: &Value, ring: Ring, nvars: usize) -> Result<TameGenerator, StabilizeError> {
    let bad = |m: String| StabilizeError::Format(m);
    let text = |key: &str| -> Result<&str, StabilizeError> { v[key].as_str().ok_or_else(|| bad(format!("generator field {key} missing"))) };
    let var = |name: &str| -> Result<usize, StabilizeError> { var_index(name).filter(|&i| i < nvars).ok_or_else(|| bad(format!("unknown variable {name}"))) };
    let poly = |s: &str| -> Result<MultiPoly, StabilizeError> { Ok(parse_poly(s, ring, nvars)?) };
    let scalar = |s: &str| -> Result<DomainElem, StabilizeError> {
        let p = poly(s)?;
        if p.is_constant() {
            Ok(p.constant_term())
        } else {
            Err(bad(format!("{s} is not a scalar")))
        }
    };
    let kind = text("kind")?;
    Ok(match kind {
        "elementary" => TameGenerator::Elementary { target: var(text("target")?)?, f: poly(text("f")?)? },
        "linear" => {
            let vars = v["vars"]
                .as_array()
                .ok_or_else(|| bad("linear block without vars".into()))?
                .iter()
                .map(|x| x.as_str().ok_or_else(|| bad("variable names must be strings".into())).and_then(var))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = v["matrix"]
                .as_array()
                .ok_or_else(|| bad("linear block without matrix".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| bad("matrix rows must be arrays".into()))?
                        .iter()
                        .map(|e| e.as_str().ok_or_else(|| bad("matrix entries must be strings".into())).and_then(poly))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let status: BlockStatus = serde_json::from_value(v["status"].clone()).map_err(|e| bad(format!("status: {e}")))?;
            TameGenerator::LinearBlock { vars, matrix, status }
        }
        "translation" => TameGenerator::Translation {
            shift: v["shift"]
                .as_array()
                .ok_or_else(|| bad("translation without shift".into()))?
                .iter()
                .map(|e| e.as_str().ok_or_else(|| bad("shift entries must be strings".into())).and_then(scalar))
                .collect::<Result<Vec<_>, _>>()?,
        },
        "diagonal" => TameGenerator::Diagonal { a: scalar(text("a")?)?, position: var(text("position")?)? },
        "add_variables" => TameGenerator::AddVariables { count: v["count"].as_u64().ok_or_else(|| bad("add_variables without count".into()))? as usize },
        other => return Err(bad(format!("unknown generator kind {other}"))),
    })
}
