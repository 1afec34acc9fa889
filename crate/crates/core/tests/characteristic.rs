mod common;

use common::spec_from_seed;
use num_complex::Complex64;
use otm_core::interferometry::{assemble_backward, assemble_forward, circuit_count, distinct_pairs};
use otm_core::{
    build_backward_jobs, build_forward_jobs, c64, cf_spectral, cf_trace, conditional_hamiltonian,
    conditional_thermal_state, hadamard_test_exact, mat_fn_hermitian, symmetry_ratio,
    work_distribution, Direction, Endpoint, SystemSpec, TraceForm,
};
use proptest::prelude::*;

fn exact_sums(spec: &SystemSpec, u: f64) -> (Complex64, Complex64) {
    let fwd = build_forward_jobs(spec, u).unwrap();
    let bwd = build_backward_jobs(spec, u).unwrap();
    let fv: Vec<_> = fwd.iter().map(hadamard_test_exact).collect();
    let bv: Vec<_> = bwd.iter().map(|j| hadamard_test_exact(&j.job)).collect();
    (assemble_forward(&fwd, &fv), assemble_backward(&bwd, &bv))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectral_trace_and_circuits_agree(
        seed in any::<u64>(),
        n in 1u32..4,
        custom in any::<bool>(),
        u in -5.0f64..5.0,
    ) {
        let spec = spec_from_seed(seed, 1 << n, custom);
        let beta = spec.beta();
        let fwd = work_distribution(&spec, Direction::Forward);
        let bwd = work_distribution(&spec, Direction::Backward);
        let sf = cf_spectral(&fwd, c64(u, 0.0), Direction::Forward).unwrap().value;
        let sb = cf_spectral(&bwd, c64(-u, beta), Direction::Backward).unwrap().value;
        let tf = cf_trace(&spec, u, TraceForm::Forward).unwrap().value;
        let tb = cf_trace(&spec, u, TraceForm::BackwardShifted).unwrap().value;
        let scale = sb.norm().max(1.0);
        prop_assert!((sf - tf).norm() < 1e-10);
        prop_assert!((sb - tb).norm() < 1e-10 * scale);
        let (cf, cb) = exact_sums(&spec, u);
        prop_assert!((cf - tf).norm() < 1e-10);
        prop_assert!((cb - tb).norm() < 1e-10 * scale);
        let want = fwd.expectation(|w| (-beta * w).exp());
        prop_assert!((symmetry_ratio(&spec, u).unwrap() - want).norm() < 1e-10);
    }

    #[test]
    fn backward_terms_match_direct_evaluation(seed in any::<u64>(), custom in any::<bool>(), u in -2.0f64..2.0) {
        let spec = spec_from_seed(seed, 4, custom);
        let g0 = conditional_hamiltonian(&spec, Endpoint::Initial);
        let gt = conditional_hamiltonian(&spec, Endpoint::Final);
        let (rho_t, _) = conditional_thermal_state(&spec, Endpoint::Final);
        let uu = spec.u_evol();
        let ud = uu.adjoint();
        let back = mat_fn_hermitian(&g0, c64(0.0, -u)).unwrap();
        let fwd = mat_fn_hermitian(&gt, c64(0.0, u)).unwrap();
        let jobs = build_backward_jobs(&spec, u).unwrap();
        for chunk in jobs.chunks(spec.dim()) {
            let (k, l) = (chunk[0].k.to_matrix(), chunk[0].l.to_matrix());
            prop_assert!(chunk.iter().all(|j| j.k == chunk[0].k && j.l == chunk[0].l));
            let direct = (&(&(&(&(&(uu * &k) * &back) * &ud) * &l) * &fwd) * &rho_t).trace();
            let summed: Complex64 = chunk.iter().map(|j| hadamard_test_exact(&j.job) * j.job.weight()).sum();
            prop_assert!((summed - direct).norm() < 1e-10);
        }
    }
}

#[test]
fn preset_ratio_on_a_fine_grid() {
    let spec = SystemSpec::paper_preset();
    let reference = symmetry_ratio(&spec, 0.0).unwrap();
    assert!((reference.re - 0.433167).abs() < 5e-6);
    assert!(reference.im.abs() < 1e-12);
    for k in 0..61 {
        let u = -3.0 + 0.1 * k as f64;
        let r = symmetry_ratio(&spec, u).unwrap();
        assert!((r - reference).norm() < 1e-10, "u = {u}");
    }
}

#[test]
fn preset_circuit_counts() {
    let spec = SystemSpec::paper_preset();
    let fwd = build_forward_jobs(&spec, 1.0).unwrap();
    let bwd = build_backward_jobs(&spec, 1.0).unwrap();
    assert_eq!((fwd.len(), circuit_count(fwd.len())), (4, 8));
    assert_eq!((distinct_pairs(&bwd), circuit_count(bwd.len())), (20, 160));
}

#[test]
fn preset_forward_component_terms() {
    let spec = SystemSpec::paper_preset();
    let fwd = work_distribution(&spec, Direction::Forward);
    let jobs = build_forward_jobs(&spec, 1.0).unwrap();
    for (job, atom) in jobs.iter().zip(fwd.atoms()) {
        let term = c64(0.0, atom.work).exp() * atom.probability;
        assert!((hadamard_test_exact(job) * job.weight() - term).norm() < 1e-12);
    }
}

#[test]
fn identity_terms_at_zero_give_one() {
    let spec = SystemSpec::paper_preset();
    let jobs = build_backward_jobs(&spec, 0.0).unwrap();
    let chunk: Vec<_> = jobs.iter().filter(|j| j.k.is_identity() && j.l.is_identity()).collect();
    assert_eq!(chunk.len(), spec.dim());
    let f: Complex64 = chunk.iter().map(|j| hadamard_test_exact(&j.job) * j.job.weight()).sum();
    assert!((f - 1.0).norm() < 1e-12);
}
