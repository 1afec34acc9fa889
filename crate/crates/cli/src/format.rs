//! Reproducible numeric output: every float is rounded to nine significant
//! digits before it is written, so reports diff cleanly across runs.

use std::fmt::Write as _;

use otm_core::CampaignResult;
use serde_json::Value;

/// Significant digits kept in reports.
pub const SIG_DIGITS: usize = 9;

/// `x` rounded to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("formatted float parses")
}

/// Shortest decimal form of the rounded value.
pub fn fmt_sig(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        // drops the sign of -0.0
        return "0".into();
    }
    format!("{r}")
}

/// Rounds every number in a JSON tree; integers are left alone.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(if x == 0.0 { 0.0 } else { x }).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn report_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_json(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Header of the per-trial CSV.
pub const CAMPAIGN_HEADER: &str = "trial_index,r_j,running_mean,ci99_low,ci99_high,error_rate_pct";

/// One row per trial.
pub fn campaign_csv(result: &CampaignResult) -> String {
    let mut out = String::with_capacity(64 * (result.trials() + 1));
    out.push_str(CAMPAIGN_HEADER);
    out.push('\n');
    for j in 0..result.trials() {
        let mean = result.running_mean[j];
        let half = result.ci99_halfwidth[j];
        writeln!(
            out,
            "{},{},{},{},{},{}",
            j,
            fmt_sig(result.per_trial_r[j]),
            fmt_sig(mean),
            fmt_sig(mean - half),
            fmt_sig(mean + half),
            fmt_sig(result.error_rate_pct[j]),
        )
        .expect("writing to a String cannot fail");
    }
    out
}
