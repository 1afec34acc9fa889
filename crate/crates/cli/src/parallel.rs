//! Thread-parallel campaigns.
//!
//! Every trial draws from its own derived seed, so running trials on a
//! thread pool and collecting them in index order gives exactly the
//! sequential result.

use otm_core::{Campaign, CampaignConfig, CampaignResult};
use rayon::prelude::*;

use crate::error::CliError;

/// Runs all trials on `threads` worker threads (`0` lets rayon decide).
pub fn run_campaign_parallel(config: &CampaignConfig, threads: usize) -> Result<CampaignResult, CliError> {
    let campaign = Campaign::new(config.clone())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let per_trial = pool.install(|| {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|j| campaign.run_trial(j))
            .collect::<Result<Vec<f64>, _>>()
    })?;
    Ok(CampaignResult::from_trials(per_trial, campaign.r_true()))
}
