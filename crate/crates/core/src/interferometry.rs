//! Single-ancilla interferometry (generalized Hadamard test).
//!
//! A [`CircuitJob`] is a sequence of [`Block`]s acting on the target register
//! while the ancilla sits in `(|0> + |1>)/sqrt2`. A block applies `on_zero`
//! when the ancilla is `|0>` and `on_one` when it is `|1>`; an uncontrolled
//! gate has both equal, a controlled gate has `on_zero = I`. The products of
//! the blocks are the two branch operators `A0` and `A1`, and the ideal
//! circuit reads out `<X> + i<Y> = tr[A1 rho A0^dagger]`.
//!
//! Noisy runs simulate the ancilla + target density matrix: a depolarizing
//! channel on the ancilla after each ancilla Hadamard, a joint depolarizing
//! channel after each controlled block, and classical bit flips on readout.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;
use rand_distr::{Binomial, Distribution};

use crate::eigen::{herm_eig, EigenSystem};
use crate::error::{Error, Result};
use crate::matrix::{c64, inner, ComplexMatrix};
use crate::pauli::{pauli_decompose, PauliString, PRUNE_THRESHOLD};
use crate::rng::stream_rng;
use crate::thermo::{boltzmann_weights, conditional_hamiltonian, Endpoint, SystemSpec};

/// Ancilla observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Observable {
    /// Real part.
    X,
    /// Imaginary part.
    Y,
}

impl Observable {
    /// Both observables, in stream order.
    pub const ALL: [Observable; 2] = [Observable::X, Observable::Y];

    fn stream(self) -> u64 {
        match self {
            Observable::X => 0,
            Observable::Y => 1,
        }
    }
}

/// One step of a Hadamard-test circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    on_zero: ComplexMatrix,
    on_one: ComplexMatrix,
    controlled: bool,
}

impl Block {
    /// Gate applied only when the ancilla is `|1>`.
    pub fn controlled(gate: ComplexMatrix) -> Self {
        Self { on_zero: ComplexMatrix::identity(gate.dim()), on_one: gate, controlled: true }
    }

    /// Gate applied on both branches.
    pub fn uncontrolled(gate: ComplexMatrix) -> Self {
        Self { on_zero: gate.clone(), on_one: gate, controlled: false }
    }

    /// General branch pair; treated as controlled for noise purposes.
    pub fn branch_pair(on_zero: ComplexMatrix, on_one: ComplexMatrix) -> Self {
        Self { on_zero, on_one, controlled: true }
    }

    /// Whether the block is conditioned on the ancilla.
    pub fn is_controlled(&self) -> bool {
        self.controlled
    }
}

/// A branch-operator Hadamard-test instance on one pure input component.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitJob {
    blocks: Vec<Block>,
    branch0: ComplexMatrix,
    branch1: ComplexMatrix,
    input_state: Vec<Complex64>,
    weight: f64,
    component: usize,
}

impl CircuitJob {
    /// Builds a job from its gate sequence (first block acts first).
    pub fn new(blocks: Vec<Block>, input_state: Vec<Complex64>, weight: f64) -> Result<Self> {
        let d = input_state.len();
        if blocks.is_empty() {
            return Err(Error::DimensionMismatch { expected: d, found: 0 });
        }
        let mut branch0 = ComplexMatrix::identity(d);
        let mut branch1 = ComplexMatrix::identity(d);
        for b in &blocks {
            for m in [&b.on_zero, &b.on_one] {
                if m.dim() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: m.dim() });
                }
            }
            branch0 = &b.on_zero * &branch0;
            branch1 = &b.on_one * &branch1;
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::InvalidDistribution);
        }
        Ok(Self { blocks, branch0, branch1, input_state, weight, component: 0 })
    }

    /// Single-block job with the given branch operators.
    pub fn from_branches(
        branch0: ComplexMatrix,
        branch1: ComplexMatrix,
        input_state: Vec<Complex64>,
        weight: f64,
    ) -> Result<Self> {
        Self::new(vec![Block::branch_pair(branch0, branch1)], input_state, weight)
    }

    fn with_input(&self, input_state: Vec<Complex64>, weight: f64) -> Self {
        Self { input_state, weight, ..self.clone() }
    }

    fn with_component(mut self, component: usize) -> Self {
        self.component = component;
        self
    }

    /// Operator applied when the ancilla is `|0>`.
    pub fn branch0(&self) -> &ComplexMatrix {
        &self.branch0
    }

    /// Operator applied when the ancilla is `|1>`.
    pub fn branch1(&self) -> &ComplexMatrix {
        &self.branch1
    }

    /// Target input state.
    pub fn input_state(&self) -> &[Complex64] {
        &self.input_state
    }

    /// Mixture weight of the input component.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Index of the input component within its mixture.
    pub fn component(&self) -> usize {
        self.component
    }

    /// Gate sequence.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of controlled blocks.
    pub fn controlled_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.controlled).count()
    }
}

/// `tr[A1 rho A0^dagger] = <psi| A0^dagger A1 |psi>`.
pub fn hadamard_test_exact(job: &CircuitJob) -> Complex64 {
    let a0 = job.branch0.apply(&job.input_state);
    let a1 = job.branch1.apply(&job.input_state);
    inner(&a0, &a1)
}

/// Number of circuits (one per observable) needed for a job list.
pub fn circuit_count(jobs: usize) -> usize {
    jobs * Observable::ALL.len()
}

/// `sum_j w_j v_j`.
pub fn assemble_forward(jobs: &[CircuitJob], values: &[Complex64]) -> Complex64 {
    jobs.iter().zip(values).map(|(j, v)| v * j.weight).sum()
}

/// `sum alpha_k alpha_l w_j v_j`.
pub fn assemble_backward(jobs: &[BackwardJob], values: &[Complex64]) -> Complex64 {
    jobs.iter().zip(values).map(|(j, v)| v * j.coefficient * j.job.weight).sum()
}

struct Frames {
    g0: EigenSystem,
    gt: EigenSystem,
}

fn frames(spec: &SystemSpec) -> Result<Frames> {
    Ok(Frames {
        g0: herm_eig(&conditional_hamiltonian(spec, Endpoint::Initial))?,
        gt: herm_eig(&conditional_hamiltonian(spec, Endpoint::Final))?,
    })
}

/// Forward circuits: controlled `e^{-iuG_0}`, then `U`, then controlled
/// `e^{iuG_tau}`, one job per initial component `|psi_i>` weighted by
/// `exp(-beta e_i) / Z~_0`.
pub fn build_forward_jobs(spec: &SystemSpec, u: f64) -> Result<Vec<CircuitJob>> {
    let f = frames(spec)?;
    let back_phase = f.g0.map(|l| c64(0.0, -u * l).exp());
    let fwd_phase = f.gt.map(|l| c64(0.0, u * l).exp());
    let weights = boltzmann_weights(spec.beta(), &spec.initial_energies());
    (0..spec.dim())
        .map(|i| {
            let blocks = vec![
                Block::controlled(back_phase.clone()),
                Block::uncontrolled(spec.u_evol().clone()),
                Block::controlled(fwd_phase.clone()),
            ];
            CircuitJob::new(blocks, spec.basis_vector(i), weights[i]).map(|j| j.with_component(i))
        })
        .collect()
}

/// A backward circuit for the term `F_kl` on one component of `rho~_tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct BackwardJob {
    /// String from the decomposition of `exp(-beta G_0)`.
    pub k: PauliString,
    /// String from the decomposition of `exp(beta G_tau)`.
    pub l: PauliString,
    /// `alpha_k^(0) alpha_l^(tau)`.
    pub coefficient: Complex64,
    /// The circuit.
    pub job: CircuitJob,
}

/// Backward circuits for every `(k, l)` with a nonzero coefficient product.
///
/// Gate order: controlled `e^{iuG_tau}`, controlled `sigma_l`, `U^dagger`,
/// controlled `e^{-iuG_0}`, controlled `sigma_k`; inputs are the pointer
/// states `U|psi_i>` weighted by `exp(-beta g_i) / Z~_tau`. Controlled
/// identity strings are omitted from the gate list.
pub fn build_backward_jobs(spec: &SystemSpec, u: f64) -> Result<Vec<BackwardJob>> {
    let beta = spec.beta();
    let f = frames(spec)?;
    let alpha0 = pauli_decompose(&f.g0.map(|l| c64((-beta * l).exp(), 0.0)))?;
    let alphat = pauli_decompose(&f.gt.map(|l| c64((beta * l).exp(), 0.0)))?;
    let back_phase = f.g0.map(|l| c64(0.0, -u * l).exp());
    let fwd_phase = f.gt.map(|l| c64(0.0, u * l).exp());
    let u_dag = spec.u_evol().adjoint();
    let weights = boltzmann_weights(beta, &spec.final_energies());
    let inputs: Vec<_> = (0..spec.dim()).map(|i| spec.pointer_state(i)).collect();

    let mut jobs = Vec::new();
    for (k, ak) in alpha0.nonzero(0.0) {
        for (l, al) in alphat.nonzero(0.0) {
            let coefficient = ak * al;
            if coefficient.norm() <= PRUNE_THRESHOLD {
                continue;
            }
            let mut blocks = vec![Block::controlled(fwd_phase.clone())];
            if !l.is_identity() {
                blocks.push(Block::controlled(l.to_matrix()));
            }
            blocks.push(Block::uncontrolled(u_dag.clone()));
            blocks.push(Block::controlled(back_phase.clone()));
            if !k.is_identity() {
                blocks.push(Block::controlled(k.to_matrix()));
            }
            let template = CircuitJob::new(blocks, inputs[0].clone(), weights[0])?;
            for (i, input) in inputs.iter().enumerate() {
                let job = template.with_input(input.clone(), weights[i]).with_component(i);
                jobs.push(BackwardJob { k, l, coefficient, job });
            }
        }
    }
    Ok(jobs)
}

/// Number of distinct `(k, l)` pairs in a backward job list.
pub fn distinct_pairs(jobs: &[BackwardJob]) -> usize {
    let mut pairs: Vec<(usize, usize)> = jobs.iter().map(|j| (j.k.index(), j.l.index())).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.len()
}

/// Gate- and readout-error magnitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    /// Ancilla depolarizing probability after each ancilla Hadamard.
    pub depol_1q: f64,
    /// Joint depolarizing probability after each controlled block.
    pub depol_ctrl: f64,
    /// P(read 0 | prepared 1).
    pub readout_p01: f64,
    /// P(read 1 | prepared 0).
    pub readout_p10: f64,
}

impl NoiseModel {
    /// Validated constructor.
    pub fn new(depol_1q: f64, depol_ctrl: f64, readout_p01: f64, readout_p10: f64) -> Result<Self> {
        let m = Self { depol_1q, depol_ctrl, readout_p01, readout_p10 };
        m.validate()?;
        Ok(m)
    }

    /// No errors at all.
    pub fn ideal() -> Self {
        Self { depol_1q: 0.0, depol_ctrl: 0.0, readout_p01: 0.0, readout_p10: 0.0 }
    }

    /// Representative superconducting-device magnitudes.
    pub fn ibm_like() -> Self {
        Self { depol_1q: 3e-4, depol_ctrl: 1e-2, readout_p01: 3e-2, readout_p10: 1.5e-2 }
    }

    /// Errors unless every probability lies in `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        if !ok(self.depol_1q) {
            return Err(Error::InvalidNoise("depol_1q must lie in [0, 1]"));
        }
        if !ok(self.depol_ctrl) {
            return Err(Error::InvalidNoise("depol_ctrl must lie in [0, 1]"));
        }
        if !ok(self.readout_p01) {
            return Err(Error::InvalidNoise("readout_p01 must lie in [0, 1]"));
        }
        if !ok(self.readout_p10) {
            return Err(Error::InvalidNoise("readout_p10 must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Shot-averaged ancilla readout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShotEstimate {
    /// Mean of the +-1 X outcomes.
    pub mean_x: f64,
    /// Mean of the +-1 Y outcomes.
    pub mean_y: f64,
    /// Shots per observable.
    pub shots: u64,
}

impl ShotEstimate {
    /// `mean_x + i mean_y`.
    pub fn value(&self) -> Complex64 {
        c64(self.mean_x, self.mean_y)
    }
}

/// Probability of reading outcome `0` for the X and Y circuits of a job.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeProbabilities {
    /// X-basis circuit.
    pub x: f64,
    /// Y-basis circuit.
    pub y: f64,
}

impl OutcomeProbabilities {
    fn get(&self, obs: Observable) -> f64 {
        match obs {
            Observable::X => self.x,
            Observable::Y => self.y,
        }
    }
}

/// Density-matrix simulation of a job's two circuits up to the readout.
pub fn outcome_probabilities(job: &CircuitJob, noise: Option<&NoiseModel>) -> Result<OutcomeProbabilities> {
    let noise = noise.copied().unwrap_or_else(NoiseModel::ideal);
    noise.validate()?;
    let d = job.input_state.len();
    let n = 2 * d;

    // ancilla |0> (x) |psi>, then H on the ancilla
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut psi = vec![c64(0.0, 0.0); n];
    for (t, &a) in job.input_state.iter().enumerate() {
        psi[t] = a * h;
        psi[d + t] = a * h;
    }
    let mut rho = ComplexMatrix::outer(&psi);
    depolarize_ancilla(&mut rho, d, noise.depol_1q);

    for block in &job.blocks {
        let mut full = ComplexMatrix::zeros(n);
        for i in 0..d {
            for j in 0..d {
                full[(i, j)] = block.on_zero[(i, j)];
                full[(d + i, d + j)] = block.on_one[(i, j)];
            }
        }
        rho = full.conjugate_by(&rho);
        if block.controlled {
            depolarize_all(&mut rho, noise.depol_ctrl);
        }
    }

    // ancilla reduced state
    let mut anc = ComplexMatrix::zeros(2);
    for a in 0..2 {
        for b in 0..2 {
            anc[(a, b)] = (0..d).map(|t| rho[(a * d + t, b * d + t)]).sum();
        }
    }

    let hadamard = ComplexMatrix::hadamard();
    let mut s_dag = ComplexMatrix::identity(2);
    s_dag[(1, 1)] = c64(0.0, -1.0);
    let basis_change = |obs: Observable| match obs {
        Observable::X => hadamard.clone(),
        Observable::Y => &hadamard * &s_dag,
    };
    let read0 = |obs: Observable| {
        let m = basis_change(obs);
        let mut r = m.conjugate_by(&anc);
        depolarize_all(&mut r, noise.depol_1q);
        let p0 = r[(0, 0)].re.clamp(0.0, 1.0);
        (p0 * (1.0 - noise.readout_p10) + (1.0 - p0) * noise.readout_p01).clamp(0.0, 1.0)
    };
    Ok(OutcomeProbabilities { x: read0(Observable::X), y: read0(Observable::Y) })
}

fn depolarize_all(rho: &mut ComplexMatrix, p: f64) {
    if p == 0.0 {
        return;
    }
    let n = rho.dim();
    *rho = rho.scale(c64(1.0 - p, 0.0));
    for i in 0..n {
        rho[(i, i)] += c64(p / n as f64, 0.0);
    }
}

/// `rho -> (1 - p) rho + p (I/2 (x) tr_ancilla rho)` with the ancilla as the
/// high index bit.
fn depolarize_ancilla(rho: &mut ComplexMatrix, d: usize, p: f64) {
    if p == 0.0 {
        return;
    }
    let mut reduced = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            reduced[(i, j)] = rho[(i, j)] + rho[(d + i, d + j)];
        }
    }
    *rho = rho.scale(c64(1.0 - p, 0.0));
    for i in 0..d {
        for j in 0..d {
            let v = reduced[(i, j)] * (p / 2.0);
            rho[(i, j)] += v;
            rho[(d + i, d + j)] += v;
        }
    }
}

/// Draws `shots` outcomes per observable from precomputed probabilities.
///
/// The number of `0` outcomes is drawn from `Binomial(shots, p0)`, which has
/// the same law as summing `shots` independent Bernoulli trials.
pub fn sample_outcomes(probs: &OutcomeProbabilities, shots: u64, seed: u64) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(Error::InvalidConfig("shots must be at least 1"));
    }
    let mut means = [0.0; 2];
    for (slot, obs) in means.iter_mut().zip(Observable::ALL) {
        let mut rng = stream_rng(seed, obs.stream());
        let dist = Binomial::new(shots, probs.get(obs))
            .map_err(|_| Error::InvalidNoise("outcome probability outside [0, 1]"))?;
        let zeros = dist.sample(&mut rng);
        *slot = (2.0 * zeros as f64 - shots as f64) / shots as f64;
    }
    Ok(ShotEstimate { mean_x: means[0], mean_y: means[1], shots })
}

/// Simulates and samples both circuits of a job.
pub fn sample_job(
    job: &CircuitJob,
    shots: u64,
    seed: u64,
    noise: Option<&NoiseModel>,
) -> Result<ShotEstimate> {
    let probs = outcome_probabilities(job, noise)?;
    sample_outcomes(&probs, shots, seed)
}
