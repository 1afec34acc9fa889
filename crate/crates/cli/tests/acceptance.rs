//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use otm::cli::Which;
use otm::commands;
use otm::config::{expand_preset, resolve};
use otm_core::interferometry::{assemble_backward, assemble_forward, circuit_count, distinct_pairs};
use otm_core::random::random_spec;
use otm_core::{
    build_backward_jobs, build_forward_jobs, c64, cf_spectral, cf_trace, conditional_hamiltonian,
    conditional_thermal_state, hadamard_test_exact, herm_eig, run_campaign, symmetry_ratio,
    thermo_report, ttm_distribution, work_distribution, CampaignConfig, ComplexMatrix, Direction,
    Endpoint, NoiseModel, SystemSpec, TraceForm,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Exact ratio for the two-qubit preset.
const PRESET_RATIO: f64 = 0.433167;
const RATIO_TOL: f64 = 5e-6;
const RATIO_U: [f64; 6] = [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0];
const RATIO_BUDGET: Duration = Duration::from_secs(1);

const PAULI_TOL: f64 = 5e-5;
const PAULI_BUDGET: Duration = Duration::from_secs(1);

const IDENTITY_SPECS: usize = 200;
const IDENTITY_TOL: f64 = 1e-9;
const IDENTITY_BUDGET: Duration = Duration::from_secs(30);

const TRIPLE_SPECS: usize = 50;
const TRIPLE_U: [f64; 3] = [-1.0, 0.3, 1.0];
const TRIPLE_TOL: f64 = 1e-10;

const CAMPAIGNS: u64 = 100;
const CAMPAIGN_TARGET_PCT: f64 = 1.0;
const CAMPAIGNS_REQUIRED: usize = 95;
const CAMPAIGN_BUDGET: Duration = Duration::from_secs(300);

const NOISE_LEVELS: [f64; 4] = [0.0, 0.002, 0.01, 0.05];
const NOISE_SEEDS: u64 = 50;

const DIMS: [usize; 3] = [2, 4, 8];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn spec(seed: u64, dim: usize, custom: bool) -> SystemSpec {
    random_spec(&mut ChaCha8Rng::seed_from_u64(seed), dim, custom)
}

fn logm(m: &ComplexMatrix) -> ComplexMatrix {
    herm_eig(m).expect("Hermitian").map(|l| c64(l.ln(), 0.0))
}

fn rel_ent(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> f64 {
    (rho * &(&logm(rho) - &logm(sigma))).trace().re
}

fn gibbs(h: &ComplexMatrix, beta: f64) -> (ComplexMatrix, f64) {
    let eig = herm_eig(h).expect("Hermitian");
    let z: f64 = eig.eigenvalues.iter().map(|e| (-beta * e).exp()).sum();
    (eig.map(|e| c64((-beta * e).exp() / z, 0.0)), z)
}

fn c1_exact_ratio() -> Outcome {
    let start = Instant::now();
    let spec = SystemSpec::paper_preset();
    let mut worst = 0.0f64;
    for u in RATIO_U {
        let r = symmetry_ratio(&spec, u).expect("preset ratio");
        worst = worst.max((r - PRESET_RATIO).norm());
    }
    let t = start.elapsed();
    outcome(worst < RATIO_TOL && t < RATIO_BUDGET, format!("max |ratio - {PRESET_RATIO}| = {worst:.2e}, {t:?}"))
}

fn c2_pauli() -> Outcome {
    let start = Instant::now();
    let doc = expand_preset(json!({"preset": "paper-2qubit"})).expect("preset");
    let resolved = resolve(doc).expect("preset resolves");
    let expected: [(Which, &[(&str, f64)]); 2] = [
        (Which::H0, &[("II", 2.3811), ("IZ", -1.81343), ("ZI", -1.81343), ("ZZ", 1.3811)]),
        (
            Which::Gtau,
            &[("II", 1.03141), ("XX", 0.126306), ("XZ", -0.126306), ("ZX", -0.126306), ("ZZ", 0.126306)],
        ),
    ];
    let mut worst = 0.0f64;
    let mut labels_match = true;
    let mut count = 0;
    for (which, want) in expected {
        let out: Value = serde_json::from_str(&commands::decompose(&resolved, which).expect("decompose"))
            .expect("JSON output");
        let got = out.as_object().expect("object");
        labels_match &= got.len() == want.len();
        for (label, value) in want {
            count += 1;
            match got.get(*label).and_then(Value::as_f64) {
                Some(x) => worst = worst.max((x - value).abs()),
                None => labels_match = false,
            }
        }
    }
    let t = start.elapsed();
    outcome(
        labels_match && count == 9 && worst < PAULI_TOL && t < PAULI_BUDGET,
        format!("{count} coefficients, labels match: {labels_match}, max error {worst:.2e}, {t:?}"),
    )
}

fn c3_counts() -> Outcome {
    let spec = SystemSpec::paper_preset();
    let fwd = build_forward_jobs(&spec, 1.0).expect("forward jobs");
    let bwd = build_backward_jobs(&spec, 1.0).expect("backward jobs");
    let got = (fwd.len(), circuit_count(fwd.len()), distinct_pairs(&bwd), circuit_count(bwd.len()));
    outcome(
        got == (4, 8, 20, 160),
        format!("forward {} jobs / {} circuits, backward {} pairs / {} circuits", got.0, got.1, got.2, got.3),
    )
}

/// Worst relative violation of every thermodynamic identity on one spec.
fn identity_violation(spec: &SystemSpec) -> f64 {
    let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + b.abs());
    let beta = spec.beta();
    let u = spec.u_evol();
    let heis = &(&u.adjoint() * spec.h_tau()) * u;
    let d = spec.dim();
    let e: Vec<f64> = (0..d).map(|i| spec.h0().expectation(&spec.basis_vector(i))).collect();
    let g: Vec<f64> = (0..d).map(|i| heis.expectation(&spec.basis_vector(i))).collect();
    let zt0: f64 = e.iter().map(|x| (-beta * x).exp()).sum();
    let ztt: f64 = g.iter().map(|x| (-beta * x).exp()).sum();
    let (rho0, z0) = gibbs(spec.h0(), beta);
    let (rhot, zt) = gibbs(spec.h_tau(), beta);
    let r = thermo_report(spec).expect("report");
    let fwd = work_distribution(spec, Direction::Forward);
    let bwd = work_distribution(spec, Direction::Backward);
    let ratio = ztt / zt0;
    let mut v: Vec<f64> = vec![
        rel(r.z_tilde_0, zt0),
        rel(r.z_tilde_tau, ztt),
        rel(r.z0, z0),
        rel(r.z_tau, zt),
        (fwd.total() - 1.0).abs(),
        (bwd.total() - 1.0).abs(),
    ];

    // pointer states
    let gt = conditional_hamiltonian(spec, Endpoint::Final);
    for i in 0..d {
        let p = u.apply(&spec.basis_vector(i));
        let gp = gt.apply(&p);
        v.push(gp.iter().zip(&p).map(|(a, b)| (a - b * g[i]).norm()).fold(0.0, f64::max));
    }

    // detailed theorem per atom, Jarzynski, mean work
    for (a, b) in fwd.atoms().iter().zip(bwd.atoms()) {
        v.push(rel(a.probability / b.probability * (-beta * a.work).exp(), ratio));
        v.push((a.work - (g[a.index] - e[a.index])).abs());
    }
    v.push(rel(fwd.expectation(|w| (-beta * w).exp()), ratio));
    let (rho0_c, _) = conditional_thermal_state(spec, Endpoint::Initial);
    let (rhot_c, _) = conditional_thermal_state(spec, Endpoint::Final);
    v.push(rel(r.avg_work, (&(&heis - spec.h0()) * &rho0_c).trace().re));

    // entropy identities
    v.push(rel(r.rel_ent_tau, -(ztt / zt).ln()));
    v.push(rel(r.rel_ent_0, -(zt0 / z0).ln()));
    v.push(rel(r.rel_ent_tau, rel_ent(&rhot_c, &rhot)));
    v.push(rel(r.rel_ent_0, rel_ent(&rho0_c, &rho0)));

    // KL, distinguishability, triangle, excess work, crossing point
    let kl: f64 = fwd
        .atoms()
        .iter()
        .zip(bwd.atoms())
        .map(|(a, b)| a.probability * (a.probability / b.probability).ln())
        .sum();
    v.push(rel(r.kl_fb, kl));
    let evolved = u.conjugate_by(&rho0_c);
    v.push(rel(r.kl_fb, rel_ent(&evolved, &rhot_c)));
    v.push(rel(rel_ent(&evolved, &rhot_c) + rel_ent(&rhot_c, &rhot), rel_ent(&evolved, &rhot)));
    v.push(rel(beta * r.excess_work, r.kl_fb + r.rel_ent_tau - r.rel_ent_0));
    v.push(rel(r.atom_ratio(beta, r.crossing_work), 1.0));

    if spec.uses_default_basis() {
        let s0 = -(&rho0 * &logm(&rho0)).trace().re;
        let closed = -s0 + beta * (&u.conjugate_by(&rho0) * spec.h_tau()).trace().re + ztt.ln();
        v.push(rel(r.kl_fb, closed));
        v.push(rel(beta * r.excess_work, r.kl_fb + r.rel_ent_tau));
        v.push(rel(zt0, z0));
        let ttm = ttm_distribution(spec).expect("default basis");
        v.push((ttm.total() - 1.0).abs());
        v.push(rel(ttm.exp_average(beta), zt / z0));
    }
    v.into_iter().fold(0.0, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(x) })
}

fn c4_identities() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut custom_count = 0;
    for k in 0..IDENTITY_SPECS {
        let dim = DIMS[k % 3];
        let custom = (k / 3) % 2 == 1;
        custom_count += custom as usize;
        worst = worst.max(identity_violation(&spec(10_000 + k as u64, dim, custom)));
    }
    let t = start.elapsed();
    outcome(
        worst < IDENTITY_TOL && t < IDENTITY_BUDGET,
        format!("{IDENTITY_SPECS} specs ({custom_count} custom bases), worst violation {worst:.2e}, {t:?}"),
    )
}

fn c5_triple() -> Outcome {
    let mut worst = 0.0f64;
    let mut largest = 0.0f64;
    for k in 0..TRIPLE_SPECS {
        let s = spec(20_000 + k as u64, DIMS[k % 3], k % 2 == 1);
        let fwd = work_distribution(&s, Direction::Forward);
        let bwd = work_distribution(&s, Direction::Backward);
        for u in TRIPLE_U {
            let sf = cf_spectral(&fwd, c64(u, 0.0), Direction::Forward).expect("cf").value;
            let sb = cf_spectral(&bwd, c64(-u, s.beta()), Direction::Backward).expect("cf").value;
            let tf = cf_trace(&s, u, TraceForm::Forward).expect("cf").value;
            let tb = cf_trace(&s, u, TraceForm::BackwardShifted).expect("cf").value;
            let fj = build_forward_jobs(&s, u).expect("jobs");
            let bj = build_backward_jobs(&s, u).expect("jobs");
            let fv: Vec<Complex64> = fj.iter().map(hadamard_test_exact).collect();
            let bv: Vec<Complex64> = bj.iter().map(|j| hadamard_test_exact(&j.job)).collect();
            let cf = assemble_forward(&fj, &fv);
            let cb = assemble_backward(&bj, &bv);
            largest = largest.max(sb.norm());
            for (a, b) in [(sf, tf), (sf, cf), (tf, cf), (sb, tb), (sb, cb), (tb, cb)] {
                worst = worst.max((a - b).norm());
            }
        }
    }
    outcome(
        worst < TRIPLE_TOL,
        format!("{} evaluations, max absolute disagreement {worst:.2e} (largest |C_b| {largest:.3})", TRIPLE_SPECS * 3),
    )
}

fn c6_campaigns() -> Outcome {
    let start = Instant::now();
    let mut errors: Vec<f64> = (0..CAMPAIGNS)
        .map(|seed| {
            let cfg = CampaignConfig { seed, ..CampaignConfig::default() };
            assert_eq!((cfg.shots, cfg.trials, cfg.noise), (20_000, 100, None));
            run_campaign(&cfg).expect("campaign").final_error_pct()
        })
        .collect();
    let good = errors.iter().filter(|&&e| e < CAMPAIGN_TARGET_PCT).count();
    errors.sort_by(f64::total_cmp);
    let t = start.elapsed();
    outcome(
        good >= CAMPAIGNS_REQUIRED && t < CAMPAIGN_BUDGET,
        format!(
            "{good}/{CAMPAIGNS} campaigns with e_100 < {CAMPAIGN_TARGET_PCT}% (median {:.3}%, max {:.3}%), {t:?}",
            errors[errors.len() / 2],
            errors[errors.len() - 1]
        ),
    )
}

fn c7_noise() -> Outcome {
    let r_true = symmetry_ratio(&SystemSpec::paper_preset(), 1.0).expect("ratio").norm();
    let errors: Vec<f64> = NOISE_LEVELS
        .iter()
        .map(|&p| {
            let noise = NoiseModel::new(0.0, p, 0.0, 0.0).expect("valid noise");
            let total: f64 = (0..NOISE_SEEDS)
                .map(|seed| {
                    let cfg = CampaignConfig { seed, noise: Some(noise), ..CampaignConfig::default() };
                    (run_campaign(&cfg).expect("campaign").final_mean() - r_true).abs()
                })
                .sum();
            total / NOISE_SEEDS as f64
        })
        .collect();
    let monotone = errors.windows(2).all(|w| w[0] <= w[1]);
    let shown: Vec<String> = errors.iter().map(|e| format!("{e:.2e}")).collect();
    outcome(
        monotone,
        format!("mean |<R>_100 - R_true| over {NOISE_SEEDS} seeds at depol_ctrl {NOISE_LEVELS:?}: [{}]", shown.join(", ")),
    )
}

fn otm_bytes(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_otm")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "otm {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn c8_determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let base = ["--preset", "paper-2qubit", "--seed", "42"];
    let commands: [&[&str]; 5] = [
        &["exact", "--u", "0.7"],
        &["estimate", "--noise", "ibm-like"],
        &["sweep-u", "--points", "21"],
        &["decompose", "--which", "gtau"],
        &["campaign", "--trials", "40", "--noise", "ibm-like"],
    ];
    let mut identical = 0;
    let mut total = 0;
    for cmd in commands {
        let args: Vec<&str> = cmd.iter().chain(base.iter()).copied().collect();
        total += 1;
        identical += (otm_bytes(&args) == otm_bytes(&args)) as usize;
    }
    let mut files = Vec::new();
    for threads in ["1", "4", "0"] {
        for run in 0..2 {
            let csv = dir.path().join(format!("t{threads}_{run}.csv"));
            let summary = dir.path().join(format!("t{threads}_{run}.json"));
            let args = [
                "campaign", "--preset", "paper-2qubit", "--seed", "9", "--trials", "60",
                "--noise", "ibm-like", "--threads", threads,
                "--out", csv.to_str().expect("utf-8 path"),
                "--summary", summary.to_str().expect("utf-8 path"),
            ];
            otm_bytes(&args);
            files.push((std::fs::read(&csv).expect("csv"), std::fs::read(&summary).expect("summary")));
        }
    }
    total += 1;
    identical += files.iter().all(|f| *f == files[0]) as usize;
    outcome(identical == total, format!("{identical}/{total} output comparisons byte-identical (1, 4 and all-core thread pools)"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exact ratio reproduction", c1_exact_ratio),
        ("Pauli coefficients", c2_pauli),
        ("circuit accounting", c3_counts),
        ("identity suite", c4_identities),
        ("spectral/trace/circuit agreement", c5_triple),
        ("noiseless shot campaigns", c6_campaigns),
        ("noise monotonicity", c7_noise),
        ("determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += !o.pass as usize;
        println!("[{}] {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
