//! Command implementations. Each returns the text it would write so that
//! callers decide where it goes.

use otm_core::{
    c64, conditional_hamiltonian, mat_fn_hermitian, pauli_decompose, symmetry_ratio, thermo_report,
    Campaign, Endpoint,
};
use serde_json::{json, Map, Value};

use crate::cli::{CommonArgs, Which};
use crate::config::{self, noise_to_json, Resolved};
use crate::error::CliError;
use crate::format::{campaign_csv, fmt_sig, report_json};
use crate::parallel::run_campaign_parallel;

/// Coefficients smaller than this are left out of `decompose` output.
pub const COEFF_THRESHOLD: f64 = 1e-12;

/// Builds the configuration document from `--config`/`--preset`, the
/// dedicated flags and then the `--set` overrides, in that order.
pub fn load(args: &CommonArgs) -> Result<Resolved, CliError> {
    let mut doc = match &args.config {
        Some(path) => config::read_document(path)?,
        None => Value::Object(Map::new()),
    };
    if let Some(name) = &args.preset {
        config::set_path(&mut doc, "preset", Value::String(name.clone()))?;
    }
    if args.config.is_none() && args.preset.is_none() {
        return Err(CliError::Config("no system given; use --preset or --config".into()));
    }
    let mut doc = config::expand_preset(doc)?;
    if let Some(u) = args.u {
        config::set_path(&mut doc, "campaign.u", json!(u))?;
    }
    if let Some(s) = args.shots {
        config::set_path(&mut doc, "campaign.shots", json!(s))?;
    }
    if let Some(t) = args.trials {
        config::set_path(&mut doc, "campaign.trials", json!(t))?;
    }
    if let Some(s) = args.seed {
        config::set_path(&mut doc, "campaign.seed", json!(s))?;
    }
    if let Some(n) = &args.noise {
        let value = match n.as_str() {
            "none" | "ibm-like" => Value::String(n.clone()),
            path => config::read_document(std::path::Path::new(path))?,
        };
        config::set_path(&mut doc, "noise", value)?;
    }
    for o in &args.overrides {
        let (key, value) = config::parse_override(o)?;
        config::set_path(&mut doc, &key, value)?;
    }
    config::resolve(doc)
}

/// Thermodynamic report plus the exact ratio at the configured `u`.
pub fn exact(r: &Resolved) -> Result<String, CliError> {
    let report = thermo_report(&r.spec)?;
    let ratio = symmetry_ratio(&r.spec, r.run.u)?;
    let v = json!({
        "u": r.run.u,
        "beta": r.spec.beta(),
        "dim": r.spec.dim(),
        "ratio": ratio.re,
        "ratio_im": ratio.im,
        "partition_ratio": report.partition_ratio(),
        "z0": report.z0,
        "z_tau": report.z_tau,
        "z_tilde_0": report.z_tilde_0,
        "z_tilde_tau": report.z_tilde_tau,
        "delta_f": report.delta_f,
        "rel_ent_tau": report.rel_ent_tau,
        "rel_ent_0": report.rel_ent_0,
        "avg_work": report.avg_work,
        "excess_work": report.excess_work,
        "kl_fb": report.kl_fb,
        "crossing_work": report.crossing_work,
    });
    Ok(report_json(v))
}

/// The resolved configuration at full precision.
pub fn dump_config(r: &Resolved) -> String {
    let mut s = serde_json::to_string_pretty(&config::dump(r)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Trial 0 of the configured campaign.
pub fn estimate(r: &Resolved) -> Result<String, CliError> {
    let campaign = Campaign::new(r.campaign_config())?;
    let (cf, cb) = campaign.trial_estimates(0)?;
    let ratio = campaign.run_trial(0)?;
    let v = json!({
        "u": r.run.u,
        "shots": r.run.shots,
        "seed": r.run.seed,
        "noise": noise_to_json(r.run.noise.as_ref()),
        "cf": [cf.re, cf.im],
        "cb": [cb.re, cb.im],
        "r": ratio,
        "r_true": campaign.r_true(),
        "error_pct": (1.0 - ratio / campaign.r_true()).abs() * 100.0,
    });
    Ok(report_json(v))
}

/// Per-trial CSV and summary JSON.
pub fn campaign(r: &Resolved, threads: usize) -> Result<(String, String), CliError> {
    let result = run_campaign_parallel(&r.campaign_config(), threads)?;
    let mean = result.final_mean();
    let half = result.final_ci99();
    let summary = json!({
        "r_true": result.r_true,
        "mean_R_N": mean,
        "ci99": [mean - half, mean + half],
        "e_N_pct": result.final_error_pct(),
        "trials": result.trials(),
        "shots": r.run.shots,
        "seed": r.run.seed,
        "u": r.run.u,
        "noise": noise_to_json(r.run.noise.as_ref()),
    });
    Ok((campaign_csv(&result), report_json(summary)))
}

/// Exact ratio on `points` evenly spaced values of `u`.
pub fn sweep_u(r: &Resolved, u_min: f64, u_max: f64, points: usize) -> Result<String, CliError> {
    if points == 0 || !u_min.is_finite() || !u_max.is_finite() {
        return Err(CliError::Config("sweep needs finite bounds and at least one point".into()));
    }
    let mut out = String::from("u,ratio_re,ratio_im,ratio_abs\n");
    for k in 0..points {
        let u = if points == 1 { u_min } else { u_min + (u_max - u_min) * k as f64 / (points - 1) as f64 };
        let z = symmetry_ratio(&r.spec, u)?;
        out.push_str(&format!("{},{},{},{}\n", fmt_sig(u), fmt_sig(z.re), fmt_sig(z.im), fmt_sig(z.norm())));
    }
    Ok(out)
}

/// Nonzero Pauli coefficients keyed by string label.
pub fn decompose(r: &Resolved, which: Which) -> Result<String, CliError> {
    let beta = r.spec.beta();
    let (endpoint, c) = match which {
        Which::H0 => (Endpoint::Initial, -beta),
        Which::Gtau => (Endpoint::Final, beta),
    };
    let g = conditional_hamiltonian(&r.spec, endpoint);
    let m = mat_fn_hermitian(&g, c64(c, 0.0))?;
    let dec = pauli_decompose(&m)?;
    let mut map = Map::new();
    for (s, a) in dec.nonzero(COEFF_THRESHOLD) {
        let v = if a.im.abs() < COEFF_THRESHOLD { json!(a.re) } else { json!([a.re, a.im]) };
        map.insert(s.label(), v);
    }
    Ok(report_json(Value::Object(map)))
}
