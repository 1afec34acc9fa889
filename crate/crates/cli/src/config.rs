//! JSON configuration documents.
//!
//! A document carries the system under study at the top level and the
//! campaign settings under `"campaign"`:
//!
//! ```json
//! {
//!   "beta": 0.5,
//!   "h0": [[[2, 0], [0, 0]], [[0, 0], [-2, 0]]],
//!   "h_tau": [[1, 0], [0, -1]],
//!   "u": {"generator": [[0, 1], [1, 0]], "time": 0.3},
//!   "initial_basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
//!   "campaign": {"u": 1.0, "shots": 20000, "trials": 100, "seed": 0},
//!   "noise": "ibm-like"
//! }
//! ```
//!
//! Matrices are lists of rows; an entry is `[re, im]` or a bare real.
//! `initial_basis` lists the basis vectors `|psi_i>` (the columns of the basis
//! matrix). `"preset": "paper-2qubit"` fills in `beta`, `h0`, `h_tau` and `u`;
//! any of those keys given alongside it win over the preset.

use std::path::Path;

use otm_core::interferometry::NoiseModel;
use otm_core::{c64, mat_fn_hermitian, CampaignConfig, ComplexMatrix, SystemSpec};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Name of the built-in two-qubit preset.
pub const PAPER_PRESET: &str = "paper-2qubit";

/// Campaign settings that are not part of the physical system.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSettings {
    /// Characteristic-function argument.
    pub u: f64,
    /// Shots per circuit and observable.
    pub shots: u64,
    /// Number of trials.
    pub trials: usize,
    /// Campaign seed.
    pub seed: u64,
    /// Device noise.
    pub noise: Option<NoiseModel>,
}

/// Fully resolved configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    /// System under study.
    pub spec: SystemSpec,
    /// Campaign settings.
    pub run: RunSettings,
    /// The document after preset expansion and overrides.
    pub document: Value,
}

impl Resolved {
    /// Campaign configuration for the core experiment runner.
    pub fn campaign_config(&self) -> CampaignConfig {
        CampaignConfig {
            spec: self.spec.clone(),
            u: self.run.u,
            shots: self.run.shots,
            trials: self.run.trials,
            noise: self.run.noise,
            seed: self.run.seed,
        }
    }
}

/// Reads a JSON file into a document.
pub fn read_document(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Replaces a `"preset"` key by the preset's system fields.
pub fn expand_preset(doc: Value) -> Result<Value, CliError> {
    let Value::Object(mut map) = doc else {
        return Err(CliError::Config("configuration must be a JSON object".into()));
    };
    let Some(preset) = map.remove("preset") else {
        return Ok(Value::Object(map));
    };
    match preset.as_str() {
        Some(PAPER_PRESET) => {
            let mut base = spec_to_json(&SystemSpec::paper_preset());
            for (k, v) in map {
                base.insert(k, v);
            }
            Ok(Value::Object(base))
        }
        _ => Err(CliError::Config(format!("unknown preset {preset}"))),
    }
}

/// Sets `value` at a dotted path (`campaign.shots`, `h0.0.1`), creating
/// objects along the way. Numeric segments index into existing arrays.
pub fn set_path(doc: &mut Value, key: &str, value: Value) -> Result<(), CliError> {
    let mut cur = doc;
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("malformed key {key:?}")));
    }
    for (n, part) in parts.iter().enumerate() {
        let last = n + 1 == parts.len();
        cur = match cur {
            Value::Array(items) => {
                let idx: usize = part
                    .parse()
                    .map_err(|_| CliError::Config(format!("{key}: {part:?} is not an index")))?;
                let len = items.len();
                items
                    .get_mut(idx)
                    .ok_or_else(|| CliError::Config(format!("{key}: index {idx} out of range ({len})")))?
            }
            other => {
                if !other.is_object() {
                    *other = Value::Object(Map::new());
                }
                let map = other.as_object_mut().expect("object");
                map.entry(part.to_string()).or_insert(Value::Null)
            }
        };
        if last {
            *cur = value;
            return Ok(());
        }
    }
    unreachable!("split yields at least one segment")
}

/// Parses the right-hand side of `KEY=VAL`: JSON if it parses, else a string.
pub fn parse_override(arg: &str) -> Result<(String, Value), CliError> {
    let (key, raw) = arg
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override {arg:?} is not KEY=VAL")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    Ok((key.trim().to_string(), value))
}

/// Builds a [`SystemSpec`] and [`RunSettings`] from an expanded document.
pub fn resolve(doc: Value) -> Result<Resolved, CliError> {
    let map = doc
        .as_object()
        .ok_or_else(|| CliError::Config("configuration must be a JSON object".into()))?;
    let spec = spec_from_json(map)?;
    let run = run_from_json(map)?;
    let resolved = Resolved { spec, run, document: doc };
    resolved.campaign_config().validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(resolved)
}

fn spec_from_json(map: &Map<String, Value>) -> Result<SystemSpec, CliError> {
    let beta = number(field(map, "beta")?, "beta")?;
    let h0 = matrix_from_json(field(map, "h0")?, "h0")?;
    let h_tau = matrix_from_json(field(map, "h_tau")?, "h_tau")?;
    let u = unitary_from_json(field(map, "u")?)?;
    let spec = SystemSpec::new(h0, h_tau, u, beta).map_err(|e| CliError::Config(e.to_string()))?;
    match map.get("initial_basis") {
        None | Some(Value::Null) => Ok(spec),
        Some(v) => {
            let cols = vectors_from_json(v, "initial_basis")?;
            let basis = ComplexMatrix::from_columns(&cols)
                .map_err(|e| CliError::Config(format!("initial_basis: {e}")))?;
            spec.with_initial_basis(basis).map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

fn run_from_json(map: &Map<String, Value>) -> Result<RunSettings, CliError> {
    let defaults = CampaignConfig::default();
    let campaign = match map.get("campaign") {
        None | Some(Value::Null) => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(CliError::Config("campaign must be an object".into())),
    };
    let u = match campaign.get("u") {
        Some(v) => number(v, "campaign.u")?,
        None => defaults.u,
    };
    let shots = match campaign.get("shots") {
        Some(v) => integer(v, "campaign.shots")?,
        None => defaults.shots,
    };
    let trials = match campaign.get("trials") {
        Some(v) => integer(v, "campaign.trials")? as usize,
        None => defaults.trials,
    };
    let seed = match campaign.get("seed") {
        Some(v) => integer(v, "campaign.seed")?,
        None => defaults.seed,
    };
    let noise = match map.get("noise") {
        None | Some(Value::Null) => None,
        Some(v) => noise_from_json(v)?,
    };
    Ok(RunSettings { u, shots, trials, seed, noise })
}

/// `"none"`, `"ibm-like"` or an object with the four probabilities.
pub fn noise_from_json(v: &Value) -> Result<Option<NoiseModel>, CliError> {
    match v {
        Value::String(s) if s == "none" => Ok(None),
        Value::String(s) if s == "ibm-like" => Ok(Some(NoiseModel::ibm_like())),
        Value::Object(m) => {
            let get = |k: &str| match m.get(k) {
                Some(x) => number(x, k),
                None => Ok(0.0),
            };
            let model = NoiseModel::new(
                get("depol_1q")?,
                get("depol_ctrl")?,
                get("readout_p01")?,
                get("readout_p10")?,
            )
            .map_err(|e| CliError::Config(format!("noise: {e}")))?;
            Ok(Some(model))
        }
        other => Err(CliError::Config(format!("noise: unrecognized value {other}"))),
    }
}

/// JSON form of a noise model.
pub fn noise_to_json(noise: Option<&NoiseModel>) -> Value {
    match noise {
        None => Value::String("none".into()),
        Some(n) => json!({
            "depol_1q": n.depol_1q,
            "depol_ctrl": n.depol_ctrl,
            "readout_p01": n.readout_p01,
            "readout_p10": n.readout_p10,
        }),
    }
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    map.get(key).ok_or_else(|| CliError::Config(format!("missing field {key:?}")))
}

fn number(v: &Value, what: &str) -> Result<f64, CliError> {
    v.as_f64().ok_or_else(|| CliError::Config(format!("{what}: expected a number, got {v}")))
}

fn integer(v: &Value, what: &str) -> Result<u64, CliError> {
    v.as_u64()
        .ok_or_else(|| CliError::Config(format!("{what}: expected a non-negative integer, got {v}")))
}

fn entry(v: &Value, what: &str) -> Result<num_complex::Complex64, CliError> {
    match v {
        Value::Number(_) => Ok(c64(number(v, what)?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Ok(c64(number(&pair[0], what)?, number(&pair[1], what)?)),
        _ => Err(CliError::Config(format!("{what}: entry {v} is neither a number nor [re, im]"))),
    }
}

fn vectors_from_json(v: &Value, what: &str) -> Result<Vec<Vec<num_complex::Complex64>>, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::Config(format!("{what}: expected a list")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::Config(format!("{what}: expected a list of lists")))?
                .iter()
                .map(|x| entry(x, what))
                .collect()
        })
        .collect()
}

/// Parses a list-of-rows matrix.
pub fn matrix_from_json(v: &Value, what: &str) -> Result<ComplexMatrix, CliError> {
    let rows = vectors_from_json(v, what)?;
    ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn unitary_from_json(v: &Value) -> Result<ComplexMatrix, CliError> {
    match v {
        Value::Object(m) => {
            let k = matrix_from_json(field(m, "generator")?, "u.generator")?;
            let t = number(field(m, "time")?, "u.time")?;
            mat_fn_hermitian(&k, c64(0.0, -t)).map_err(|e| CliError::Config(format!("u.generator: {e}")))
        }
        _ => matrix_from_json(v, "u"),
    }
}

/// JSON form of a matrix, entries as `[re, im]`.
pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| Value::Array((0..m.dim()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

/// System fields of a spec, with the protocol as an explicit matrix.
pub fn spec_to_json(spec: &SystemSpec) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("beta".into(), json!(spec.beta()));
    map.insert("h0".into(), matrix_to_json(spec.h0()));
    map.insert("h_tau".into(), matrix_to_json(spec.h_tau()));
    map.insert("u".into(), matrix_to_json(spec.u_evol()));
    if let Some(b) = spec.initial_basis() {
        let cols = (0..b.dim())
            .map(|j| Value::Array(b.column(j).iter().map(|z| json!([z.re, z.im])).collect()))
            .collect();
        map.insert("initial_basis".into(), Value::Array(cols));
    }
    map
}

/// Self-contained document reproducing `resolved` exactly.
pub fn dump(resolved: &Resolved) -> Value {
    let mut map = spec_to_json(&resolved.spec);
    let r = &resolved.run;
    map.insert(
        "campaign".into(),
        json!({"u": r.u, "shots": r.shots, "trials": r.trials, "seed": r.seed}),
    );
    map.insert("noise".into(), noise_to_json(r.noise.as_ref()));
    Value::Object(map)
}
