use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::parse::{parse_map, ParseError};
use super::report::{Report, Status};
use crate::algebra::{FactorConfig, Ring};
use crate::length3::{compute_p1_p2, extract_l3, peel_over_k, verify_lemma6, Length3Error, PeelError};
use crate::polymap::{MapError, PolyMap, TameWord};
use crate::stabilize::{generator_from_json, generator_to_json, stabilize, Certificate, StabilizeError};
use crate::tamecheck::{tame2, TameError, TameOutcome};

/// Exact tameness, length and stable-tameness tools for plane polynomial maps.
#[derive(Debug, Parser)]
#[command(name = "stame", version)]
pub struct Cli {
    /// Coefficient ring: Z, Q or Qt.
    #[arg(long, global = true, default_value = "Qt", value_parser = parse_ring_tag)]
    pub ring: Ring,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Include the step-by-step trace where available.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Trial-division bound for integer factorization.
    #[arg(long, global = true, default_value_t = FactorConfig::default().int_bound)]
    pub factor_bound: u64,
    /// Read maps over the fraction field of the ring.
    #[arg(long, global = true)]
    pub over_k: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Composite F1 ∘ F2 ∘ ... of the given maps.
    Compose {
        #[arg(required = true)]
        maps: Vec<String>,
    },
    /// Inverse of a word read from a JSON file.
    InvertWord { file: PathBuf },
    /// Whether the map is an automorphism, with its inverse.
    IsAuto { map: String },
    /// Tameness decision by degree reduction.
    Tame2 { map: String },
    /// Length over the fraction field.
    Length { map: String },
    /// Length-three normal form and its divisibility checks.
    ExtractL3 { map: String },
    /// Stable tameness certificate for a length-three map.
    Stabilize { map: String },
    /// Recomposes a certificate (or a stabilize report) and checks it.
    VerifyCert { file: PathBuf },
}

fn parse_ring_tag(s: &str) -> Result<Ring, String> {
    match s {
        "Z" | "Q" | "Qt" => Ok(Ring::from_tag(s).expect("known tag")),
        other => Err(format!("unknown ring {other}; expected Z, Q or Qt")),
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Compose { .. } => "compose",
            Command::InvertWord { .. } => "invert-word",
            Command::IsAuto { .. } => "is-auto",
            Command::Tame2 { .. } => "tame2",
            Command::Length { .. } => "length",
            Command::ExtractL3 { .. } => "extract-l3",
            Command::Stabilize { .. } => "stabilize",
            Command::VerifyCert { .. } => "verify-cert",
        }
    }

    fn inputs(&self) -> Vec<String> {
        match self {
            Command::Compose { maps } => maps.clone(),
            Command::InvertWord { file } | Command::VerifyCert { file } => vec![file.display().to_string()],
            Command::IsAuto { map } | Command::Tame2 { map } | Command::Length { map } | Command::ExtractL3 { map } | Command::Stabilize { map } => {
                vec![map.clone()]
            }
        }
    }
}

/// A failed command: status plus message.
struct Failure(Status, String);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure(Status::InputError, e.to_string())
    }
}

impl From<MapError> for Failure {
    fn from(e: MapError) -> Self {
        Failure(Status::Breach, e.to_string())
    }
}

impl From<TameError> for Failure {
    fn from(e: TameError) -> Self {
        match e {
            TameError::NotPlanar(_) => Failure(Status::InputError, e.to_string()),
            _ => Failure(Status::Breach, e.to_string()),
        }
    }
}

impl From<PeelError> for Failure {
    fn from(e: PeelError) -> Self {
        match e {
            PeelError::NotAutomorphism(_) | PeelError::NotOriginPreserving(_) | PeelError::NotPlanar(_) => Failure(Status::InputError, e.to_string()),
            _ => Failure(Status::Breach, e.to_string()),
        }
    }
}

impl From<Length3Error> for Failure {
    fn from(e: Length3Error) -> Self {
        match e {
            Length3Error::Peel(p) => p.into(),
            Length3Error::Breach(_) | Length3Error::LemmaFailed(_) | Length3Error::Map(_) => Failure(Status::Breach, e.to_string()),
            _ => Failure(Status::InputError, e.to_string()),
        }
    }
}

impl From<StabilizeError> for Failure {
    fn from(e: StabilizeError) -> Self {
        match e {
            StabilizeError::Length3(l) => l.into(),
            StabilizeError::Parse(p) => p.into(),
            StabilizeError::Format(_) => Failure(Status::InputError, e.to_string()),
            _ => Failure(Status::Breach, e.to_string()),
        }
    }
}

type Outcome = Result<(Status, &'static str, Value), Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
    cfg: FactorConfig,
}

impl Ctx<'_> {
    fn ring(&self) -> Ring {
        if self.cli.over_k {
            self.cli.ring.fraction_field()
        } else {
            self.cli.ring
        }
    }

    fn map(&self, src: &str) -> Result<PolyMap, Failure> {
        Ok(parse_map(src, self.ring(), None)?)
    }

    fn planar(&self, src: &str) -> Result<PolyMap, Failure> {
        let f = self.map(src)?;
        if f.nvars() != 2 {
            return Err(Failure(Status::InputError, format!("expected a map in two variables, found {}", f.nvars())));
        }
        Ok(f)
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(Status::InputError, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(Status::InputError, format!("{} is not JSON: {e}", path.display())))
}

fn word_json(w: &TameWord) -> Value {
    Value::Array(w.generators().iter().map(generator_to_json).collect())
}

fn map_json(f: &PolyMap) -> Value {
    json!(f.components().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn compose(ctx: &Ctx, maps: &[String]) -> Outcome {
    let parsed = maps.iter().map(|m| ctx.map(m)).collect::<Result<Vec<_>, _>>()?;
    let n = parsed[0].nvars();
    if let Some(bad) = parsed.iter().find(|m| m.nvars() != n) {
        return Err(Failure(Status::InputError, format!("maps have {n} and {} components", bad.nvars())));
    }
    let mut acc = PolyMap::identity(ctx.ring(), n);
    for m in &parsed {
        acc = acc.compose(m)?;
    }
    Ok((Status::Affirmative, "COMPOSED", json!({"result": acc.to_string(), "components": map_json(&acc)})))
}

fn invert_word(ctx: &Ctx, file: &PathBuf) -> Outcome {
    let v = read_json(file)?;
    let ring = match v["ring"].as_str() {
        Some(tag) => Ring::from_tag(tag).ok_or_else(|| Failure(Status::InputError, format!("unknown ring {tag}")))?,
        None => ctx.ring(),
    };
    let base = match (&v["base_nvars"], &v["original"]) {
        (Value::Number(n), _) => n.as_u64().unwrap_or(2) as usize,
        (_, Value::Array(comps)) => comps.len(),
        _ => 2,
    };
    let gens = v["word"].as_array().ok_or_else(|| Failure(Status::InputError, "missing word array".into()))?;
    let added: usize = gens.iter().filter(|g| g["kind"] == "add_variables").map(|g| g["count"].as_u64().unwrap_or(0) as usize).sum();
    let mut word = TameWord::new(ring, base);
    for g in gens {
        let gen = generator_from_json(g, ring, base + added).map_err(Failure::from)?;
        word.push(gen).map_err(|e| Failure(Status::InputError, e.to_string()))?;
    }
    let inv = word.inverse()?;
    let (f, g) = (word.eval()?, inv.eval()?);
    if !f.compose(&g)?.is_identity() || !g.compose(&f)?.is_identity() {
        return Err(Failure(Status::Breach, "inverse word does not invert the map".into()));
    }
    Ok((Status::Affirmative, "INVERTED", json!({"inverse": word_json(&inv), "map": f.to_string(), "inverse_map": g.to_string()})))
}

fn is_auto(ctx: &Ctx, src: &str) -> Outcome {
    let f = ctx.planar(src)?;
    let ring = f.ring();
    let jac = f.jacobian_det()?;
    let no = |reason: String| Ok((Status::Negative, "NOT_AUTOMORPHISM", json!({"reason": reason, "jacobian": jac.to_string()})));
    if !jac.is_constant() || jac.is_zero() {
        return no(format!("Jacobian determinant {jac} is not a nonzero constant"));
    }
    if !jac.constant_term().is_unit() {
        return no(format!("Jacobian determinant {jac} is not a unit of {ring}"));
    }
    let peel = match peel_over_k(&f) {
        Ok(p) => p,
        Err(PeelError::NotAutomorphism(m)) => return no(m),
        Err(e) => return Err(e.into()),
    };
    let g_k = peel.to_word()?.inverse()?.eval()?;
    let g = match g_k.to_ring(ring) {
        Ok(g) => g,
        Err(_) => return no(format!("the inverse {g_k} has coefficients outside {ring}")),
    };
    if !f.compose(&g)?.is_identity() || !g.compose(&f)?.is_identity() {
        return Err(Failure(Status::Breach, format!("{g} does not invert {f}")));
    }
    Ok((Status::Affirmative, "AUTOMORPHISM", json!({"inverse": g.to_string(), "jacobian": jac.to_string()})))
}

fn tame(ctx: &Ctx, src: &str) -> Outcome {
    let f = ctx.planar(src)?;
    let dec = tame2(&f)?;
    let mut payload = match &dec.outcome {
        TameOutcome::Tame { word } => {
            if word.eval()? != f {
                return Err(Failure(Status::Breach, "tame word does not recompose to the input".into()));
            }
            json!({"word": word_json(word)})
        }
        TameOutcome::NotTame { step, code, detail } => {
            let degrees = dec.trace.last().map(|s| s.degrees);
            json!({"step": step, "code": code, "detail": detail, "degrees": degrees})
        }
    };
    if ctx.cli.trace {
        payload["trace"] = serde_json::to_value(&dec.trace).expect("trace serializes");
    }
    Ok(if dec.is_tame() { (Status::Affirmative, "TAME", payload) } else { (Status::Negative, "NOT_TAME", payload) })
}

fn length(ctx: &Ctx, src: &str) -> Outcome {
    let f = ctx.planar(src)?;
    let peel = peel_over_k(&f)?;
    let factors: Vec<Value> = peel.factors.iter().map(|s| json!({"kind": s.kind, "f": s.f.to_string()})).collect();
    Ok((
        Status::Affirmative,
        "LENGTH",
        json!({
            "length": peel.length(),
            "translation": peel.translation.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "diagonal": peel.a.to_string(),
            "factors": factors,
        }),
    ))
}

fn extract(ctx: &Ctx, src: &str) -> Outcome {
    let f = ctx.planar(src)?;
    let data = match extract_l3(&f) {
        Ok(d) => d,
        Err(Length3Error::WrongLength(k)) => return Ok((Status::Negative, "NOT_LENGTH_THREE", json!({"length": k}))),
        Err(e) => return Err(e.into()),
    };
    let lemma6 = verify_lemma6(&data, &ctx.cfg)?;
    let mut payload = json!({"data": data.payload(), "lemma6": lemma6, "lemma6_passes": lemma6.passes()});
    if !data.b.is_unit() {
        let pp = compute_p1_p2(&data, &ctx.cfg)?;
        payload["rewriting"] = json!({"a": pp.a.to_string(), "b_tilde": pp.b_tilde.to_string(), "P1": pp.p1.to_string(), "P2": pp.p2.to_string()});
    }
    if !lemma6.passes() {
        return Err(Failure(Status::Breach, format!("divisibility dichotomy fails: {payload}")));
    }
    Ok((Status::Affirmative, "LENGTH_THREE", payload))
}

fn stabilize_cmd(ctx: &Ctx, src: &str) -> Outcome {
    let f = ctx.planar(src)?;
    let cert = stabilize(&f, &ctx.cfg)?;
    if !cert.verified {
        return Err(Failure(Status::Breach, "certificate failed its own check".into()));
    }
    Ok((Status::Affirmative, "CERTIFIED", json!({"stages": cert.stages.len(), "certificate": cert.to_json()})))
}

fn verify_cert(file: &PathBuf) -> Outcome {
    let v = read_json(file)?;
    let body = if v.get("certificate").is_some() {
        &v["certificate"]
    } else if v["payload"].get("certificate").is_some() {
        &v["payload"]["certificate"]
    } else {
        &v
    };
    let cert = match Certificate::from_json(body) {
        Ok(c) => c,
        // a generator that no longer validates is a failed certificate
        Err(StabilizeError::Map(e)) => return Ok((Status::Negative, "NOT_VERIFIED", json!({"reason": e.to_string()}))),
        Err(e) => return Err(e.into()),
    };
    let payload = json!({
        "added_vars": cert.added_vars,
        "word_length": cert.word.len(),
        "conclusion": cert.conclusion(),
        "original": cert.original.to_string(),
    });
    Ok(if cert.verified { (Status::Affirmative, "VERIFIED", payload) } else { (Status::Negative, "NOT_VERIFIED", payload) })
}

/// Runs the command and returns its report.
pub fn run(cli: &Cli) -> Report {
    let ctx = Ctx { cli, cfg: FactorConfig { int_bound: cli.factor_bound, ..FactorConfig::default() } };
    let result = match &cli.command {
        Command::Compose { maps } => compose(&ctx, maps),
        Command::InvertWord { file } => invert_word(&ctx, file),
        Command::IsAuto { map } => is_auto(&ctx, map),
        Command::Tame2 { map } => tame(&ctx, map),
        Command::Length { map } => length(&ctx, map),
        Command::ExtractL3 { map } => extract(&ctx, map),
        Command::Stabilize { map } => stabilize_cmd(&ctx, map),
        Command::VerifyCert { file } => verify_cert(file),
    };
    let (status, outcome, payload) = match result {
        Ok(r) => r,
        Err(Failure(s, msg)) => {
            let outcome = if s == Status::Breach { "BREACH" } else { "INPUT_ERROR" };
            (s, outcome, json!({"error": msg}))
        }
    };
    Report::new(cli.command.name(), ctx.ring().tag(), cli.command.inputs(), status, outcome, payload)
}

/// Runs the command, writes `--json` if requested, and returns the report
/// text with the exit code.
pub fn execute(cli: &Cli) -> (String, i32) {
    let report = run(cli);
    let text = report.to_json_string();
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            let r = Report::new(
                cli.command.name(),
                report.ring.as_str(),
                report.inputs.clone(),
                Status::InputError,
                "INPUT_ERROR",
                json!({"error": format!("cannot write {}: {e}", path.display())}),
            );
            return (r.to_json_string(), r.exit_code);
        }
    }
    (text, report.exit_code)
}
