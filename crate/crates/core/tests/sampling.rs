use otm_core::interferometry::{outcome_probabilities, sample_outcomes};
use otm_core::rng::derive_seed;
use otm_core::{
    build_backward_jobs, build_forward_jobs, hadamard_test_exact, run_campaign, sample_job, Campaign,
    CampaignConfig, NoiseModel, SystemSpec,
};

fn preset_forward() -> Vec<otm_core::CircuitJob> {
    build_forward_jobs(&SystemSpec::paper_preset(), 1.0).unwrap()
}

#[test]
fn shot_estimates_are_unbiased() {
    let jobs = preset_forward();
    let bwd = build_backward_jobs(&SystemSpec::paper_preset(), 1.0).unwrap();
    let shots = 500;
    for job in [&jobs[0], &jobs[2], &bwd[37].job] {
        let exact = hadamard_test_exact(job);
        let probs = outcome_probabilities(job, None).unwrap();
        let est: Vec<_> = (0..1000u64)
            .map(|s| sample_outcomes(&probs, shots, derive_seed(11, s)).unwrap().value() - exact)
            .collect();
        for part in [|z: num_complex::Complex64| z.re, |z: num_complex::Complex64| z.im] {
            let xs: Vec<f64> = est.iter().map(|&z| part(z)).collect();
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (xs.len() - 1) as f64;
            assert!(mean.abs() < 4.0 * (var / 1000.0).sqrt(), "mean {mean}, sd {}", var.sqrt());
        }
    }
}

#[test]
fn forward_job_at_full_shots_is_close() {
    let jobs = preset_forward();
    let mut within = 0;
    for s in 0..200u64 {
        let job = &jobs[(s % 4) as usize];
        let e = sample_job(job, 20_000, s, None).unwrap();
        if (e.value() - hadamard_test_exact(job)).norm() < 0.03 {
            within += 1;
        }
    }
    assert!(within >= 198, "{within}/200");
}

#[test]
fn estimates_stay_in_range() {
    let noise = NoiseModel::ibm_like();
    for job in preset_forward() {
        for s in 0..20 {
            let e = sample_job(&job, 7, s, Some(&noise)).unwrap();
            assert!(e.mean_x.abs() <= 1.0 && e.mean_y.abs() <= 1.0);
            assert_eq!(e.shots, 7);
        }
    }
}

#[test]
fn vanishing_noise_recovers_exact_probabilities() {
    let tiny = NoiseModel::new(1e-6, 1e-6, 1e-6, 1e-6).unwrap();
    let spec = SystemSpec::paper_preset();
    let bwd = build_backward_jobs(&spec, 1.0).unwrap();
    let jobs = preset_forward().into_iter().chain(bwd.into_iter().map(|j| j.job));
    for job in jobs {
        let clean = outcome_probabilities(&job, None).unwrap();
        let noisy = outcome_probabilities(&job, Some(&tiny)).unwrap();
        assert!((clean.x - noisy.x).abs() < 1e-5);
        assert!((clean.y - noisy.y).abs() < 1e-5);
        // same seed, nearly identical law: estimates agree within shot noise
        let a = sample_outcomes(&clean, 20_000, 3).unwrap().value();
        let b = sample_outcomes(&noisy, 20_000, 3).unwrap().value();
        assert!((a - b).norm() < 3.0 * 2.0 / (20_000f64).sqrt());
    }
}

#[test]
fn campaign_is_deterministic_and_order_free() {
    let cfg = CampaignConfig {
        trials: 8,
        shots: 2000,
        seed: 77,
        noise: Some(NoiseModel::ibm_like()),
        ..CampaignConfig::default()
    };
    let a = run_campaign(&cfg).unwrap();
    let b = run_campaign(&cfg).unwrap();
    assert_eq!(a, b);
    let c = Campaign::new(cfg).unwrap();
    let reversed: Vec<f64> = (0..8u64).rev().map(|j| c.run_trial(j).unwrap()).collect();
    let forward: Vec<f64> = reversed.into_iter().rev().collect();
    assert_eq!(forward, a.per_trial_r);
}

#[test]
fn error_shrinks_with_more_shots() {
    let median_error = |shots: u64| {
        let mut errs: Vec<f64> = (0..10u64)
            .map(|rep| {
                let cfg = CampaignConfig { shots, trials: 100, seed: 1000 + rep, ..CampaignConfig::default() };
                run_campaign(&cfg).unwrap().final_error_pct()
            })
            .collect();
        errs.sort_by(f64::total_cmp);
        (errs[4] + errs[5]) / 2.0
    };
    let coarse = median_error(20_000);
    let fine = median_error(80_000);
    assert!(fine < coarse, "median e_100: {coarse} at 20000 shots, {fine} at 80000 shots");
}

#[test]
fn noiseless_campaign_meets_target() {
    let r = run_campaign(&CampaignConfig { seed: 5, ..CampaignConfig::default() }).unwrap();
    assert_eq!(r.trials(), 100);
    assert!(r.final_error_pct() < 1.0);
    assert!((r.r_true - 0.4331670375540055).abs() < 1e-10);
    let lo = r.final_mean() - r.final_ci99();
    let hi = r.final_mean() + r.final_ci99();
    assert!(lo < hi && r.final_ci99() > 0.0);
}
