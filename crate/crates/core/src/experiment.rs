//! Repeated shot-based estimation of `R = |C~_f(u) / C~_b(-u + i beta)|`.
//!
//! Each trial samples every forward and backward circuit once. Trial `j`
//! uses seed `derive_seed(config.seed, j)` and job `m` inside it uses
//! `derive_seed(trial_seed, m)`, forward jobs first; trials can therefore be
//! run in any order or in parallel and reassembled with
//! [`CampaignResult::from_trials`].

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use crate::characteristic::{divide, symmetry_ratio};
use crate::error::{Error, Result};
use crate::interferometry::{
    assemble_backward, assemble_forward, build_backward_jobs, build_forward_jobs,
    hadamard_test_exact, outcome_probabilities, sample_outcomes, BackwardJob, CircuitJob,
    NoiseModel, OutcomeProbabilities,
};
use crate::rng::derive_seed;
use crate::thermo::SystemSpec;

/// Two-sided 99% standard-normal quantile.
pub const Z_99: f64 = 2.5758;

/// Estimates of `|C~_b|` below this abort the trial.
pub const ESTIMATE_FLOOR: f64 = 1e-12;

/// Campaign parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    /// Physical instance.
    pub spec: SystemSpec,
    /// Characteristic-function argument.
    pub u: f64,
    /// Shots per circuit (per observable).
    pub shots: u64,
    /// Number of trials `N`.
    pub trials: usize,
    /// Device noise; `None` is ideal.
    pub noise: Option<NoiseModel>,
    /// Campaign seed.
    pub seed: u64,
}

impl CampaignConfig {
    /// Defaults: `u = 1`, 20000 shots, 100 trials, no noise, seed 0.
    pub fn new(spec: SystemSpec) -> Self {
        Self { spec, u: 1.0, shots: 20_000, trials: 100, noise: None, seed: 0 }
    }

    /// Checks counts and the noise model.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1"));
        }
        if self.shots == 0 {
            return Err(Error::InvalidConfig("shots must be at least 1"));
        }
        if !self.u.is_finite() {
            return Err(Error::InvalidConfig("u must be finite"));
        }
        if let Some(n) = &self.noise {
            n.validate()?;
        }
        Ok(())
    }
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self::new(SystemSpec::paper_preset())
    }
}

/// Prepared job sets and outcome probabilities for a configuration.
#[derive(Clone, Debug)]
pub struct Campaign {
    config: CampaignConfig,
    forward: Vec<CircuitJob>,
    backward: Vec<BackwardJob>,
    forward_probs: Vec<OutcomeProbabilities>,
    backward_probs: Vec<OutcomeProbabilities>,
    r_true: f64,
}

impl Campaign {
    /// Builds all circuits and simulates their outcome distributions once.
    pub fn new(config: CampaignConfig) -> Result<Self> {
        config.validate()?;
        let forward = build_forward_jobs(&config.spec, config.u)?;
        let backward = build_backward_jobs(&config.spec, config.u)?;
        let noise = config.noise.as_ref();
        let forward_probs =
            forward.iter().map(|j| outcome_probabilities(j, noise)).collect::<Result<Vec<_>>>()?;
        let backward_probs = backward
            .iter()
            .map(|j| outcome_probabilities(&j.job, noise))
            .collect::<Result<Vec<_>>>()?;
        let r_true = symmetry_ratio(&config.spec, config.u)?.norm();
        Ok(Self { config, forward, backward, forward_probs, backward_probs, r_true })
    }

    /// The configuration.
    pub fn config(&self) -> &CampaignConfig {
        &self.config
    }

    /// Forward circuits.
    pub fn forward_jobs(&self) -> &[CircuitJob] {
        &self.forward
    }

    /// Backward circuits.
    pub fn backward_jobs(&self) -> &[BackwardJob] {
        &self.backward
    }

    /// `|C~_f(u) / C~_b(-u + i beta)|` from the exact spectral/trace route.
    pub fn r_true(&self) -> f64 {
        self.r_true
    }

    /// Ratio of the exact (infinite-shot, noiseless) circuit sums.
    pub fn exact_ratio(&self) -> Result<f64> {
        let fv: Vec<Complex64> = self.forward.iter().map(hadamard_test_exact).collect();
        let bv: Vec<Complex64> = self.backward.iter().map(|j| hadamard_test_exact(&j.job)).collect();
        let cf = assemble_forward(&self.forward, &fv);
        let cb = assemble_backward(&self.backward, &bv);
        Ok(divide(cf, cb)?.norm())
    }

    /// Sampled `(C~_f, C~_b)` for trial `trial_index`.
    pub fn trial_estimates(&self, trial_index: u64) -> Result<(Complex64, Complex64)> {
        let trial_seed = derive_seed(self.config.seed, trial_index);
        let shots = self.config.shots;
        let nf = self.forward.len() as u64;
        let fv = self
            .forward_probs
            .iter()
            .enumerate()
            .map(|(m, p)| sample_outcomes(p, shots, derive_seed(trial_seed, m as u64)).map(|e| e.value()))
            .collect::<Result<Vec<_>>>()?;
        let bv = self
            .backward_probs
            .iter()
            .enumerate()
            .map(|(m, p)| {
                sample_outcomes(p, shots, derive_seed(trial_seed, nf + m as u64)).map(|e| e.value())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((assemble_forward(&self.forward, &fv), assemble_backward(&self.backward, &bv)))
    }

    /// `R_j` for trial `trial_index`.
    pub fn run_trial(&self, trial_index: u64) -> Result<f64> {
        let (cf, cb) = self.trial_estimates(trial_index)?;
        let modulus = cb.norm();
        if modulus < ESTIMATE_FLOOR {
            return Err(Error::DivisionNearZero { modulus });
        }
        Ok((cf / cb).norm())
    }

    /// Runs every trial in order.
    pub fn run(&self) -> Result<CampaignResult> {
        let per_trial = (0..self.config.trials as u64)
            .map(|j| self.run_trial(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(CampaignResult::from_trials(per_trial, self.r_true))
    }
}

/// Per-trial ratios and their running statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignResult {
    /// `R_j`.
    pub per_trial_r: Vec<f64>,
    /// `<R>_N` for `N = 1..=trials`.
    pub running_mean: Vec<f64>,
    /// `Z_99 s_N / sqrt(N)`; zero for `N = 1`.
    pub ci99_halfwidth: Vec<f64>,
    /// `|1 - <R>_N / r_true| * 100`.
    pub error_rate_pct: Vec<f64>,
    /// Exact ratio modulus.
    pub r_true: f64,
}

impl CampaignResult {
    /// Derives all running statistics from the per-trial ratios.
    pub fn from_trials(per_trial_r: Vec<f64>, r_true: f64) -> Self {
        let n = per_trial_r.len();
        let mut running_mean = Vec::with_capacity(n);
        let mut ci99_halfwidth = Vec::with_capacity(n);
        let mut error_rate_pct = Vec::with_capacity(n);
        let mut sum = 0.0;
        for (j, _) in per_trial_r.iter().enumerate() {
            sum += per_trial_r[j];
            let count = (j + 1) as f64;
            let mean = sum / count;
            let half = if j == 0 {
                0.0
            } else {
                let ss: f64 = per_trial_r[..=j].iter().map(|r| (r - mean) * (r - mean)).sum();
                Z_99 * (ss / (count - 1.0)).sqrt() / count.sqrt()
            };
            running_mean.push(mean);
            ci99_halfwidth.push(half);
            error_rate_pct.push((1.0 - mean / r_true).abs() * 100.0);
        }
        Self { per_trial_r, running_mean, ci99_halfwidth, error_rate_pct, r_true }
    }

    /// Number of trials.
    pub fn trials(&self) -> usize {
        self.per_trial_r.len()
    }

    /// Final `<R>_N`.
    pub fn final_mean(&self) -> f64 {
        *self.running_mean.last().expect("at least one trial")
    }

    /// Final `e_N` in percent.
    pub fn final_error_pct(&self) -> f64 {
        *self.error_rate_pct.last().expect("at least one trial")
    }

    /// Final 99% confidence half-width.
    pub fn final_ci99(&self) -> f64 {
        *self.ci99_halfwidth.last().expect("at least one trial")
    }
}

/// `R_j` for one trial of `config`.
pub fn run_trial(config: &CampaignConfig, trial_index: u64) -> Result<f64> {
    Campaign::new(config.clone())?.run_trial(trial_index)
}

/// Sequential campaign.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult> {
    Campaign::new(config.clone())?.run()
}
