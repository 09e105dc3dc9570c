//! Ground-truth simulators for the noisy Grover iteration.
//!
//! Three independent evaluation routes live here:
//!
//! * [`StateVector`] — dense 2^n-amplitude pure states with the W, R₀ and
//!   σ_z^(i) primitives; the oracle for every closed-form kernel.
//! * [`DensityOperator`] / [`evolve_density`] — exact mixed-state evolution
//!   through the per-qubit dephasing channel ρ → (1−p)ρ + p σ_z ρ σ_z.
//! * [`monte_carlo`] — quantum-trajectory sampling with stochastic σ_z
//!   insertions, deterministic for a fixed seed under any parallel schedule.
//!
//! Plus [`brute_force_t`], the error-pattern enumerator that evaluates the
//! unnormalized h-error operators by summing |amplitude|² over every way of
//! placing h σ_z errors into distinct (half-step, qubit) slots.
//!
//! Qubit convention: qubit i ∈ {1..n} is bit (n − i) of the basis index, so
//! qubit 1 is the most significant digit of the binary label.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::MIN_QUBITS;

/// Hard cap for pure-state simulation (2^24 amplitudes ≈ 256 MiB).
pub const MAX_STATE_QUBITS: usize = 24;

/// Hard cap for density-operator simulation (4096² matrix).
pub const MAX_DENSITY_QUBITS: usize = 12;

/// Run parameters for the exact and Monte Carlo simulators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Qubit count, 2 ≤ n ≤ 12.
    pub n: usize,
    /// Number of Grover iterations M (two half-steps each).
    pub iterations: usize,
    /// Per-qubit, per-half-step σ_z probability.
    pub error_probability: f64,
    /// Monte Carlo trial count.
    pub trials: usize,
    /// RNG seed; trial t draws from stream t of a counter-based generator.
    pub seed: u64,
}

impl SimConfig {
    pub fn new(
        n: usize,
        iterations: usize,
        error_probability: f64,
        trials: usize,
        seed: u64,
    ) -> Result<Self> {
        if !(MIN_QUBITS..=MAX_DENSITY_QUBITS).contains(&n) {
            return Err(Error::invalid(format!(
                "qubit count must be in {MIN_QUBITS}..={MAX_DENSITY_QUBITS}, got {n}"
            )));
        }
        if !(0.0..=1.0).contains(&error_probability) {
            return Err(Error::invalid(format!(
                "error probability must be in [0, 1], got {error_probability}"
            )));
        }
        if trials == 0 {
            return Err(Error::invalid("trial count must be ≥ 1"));
        }
        Ok(SimConfig {
            n,
            iterations,
            error_probability,
            trials,
            seed,
        })
    }
}

/// Dense pure state on n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn check_n(n: usize) -> Result<()> {
        if !(MIN_QUBITS..=MAX_STATE_QUBITS).contains(&n) {
            return Err(Error::invalid(format!(
                "qubit count must be in {MIN_QUBITS}..={MAX_STATE_QUBITS}, got {n}"
            )));
        }
        Ok(())
    }

    /// |0⋯0⟩.
    pub fn zero_state(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[0] = Complex64::ONE;
        Ok(StateVector { n, amps })
    }

    /// The uniform superposition W|0⟩.
    pub fn uniform(n: usize) -> Result<Self> {
        let mut s = Self::zero_state(n)?;
        s.apply_w();
        Ok(s)
    }

    pub fn from_amps(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        Self::check_n(n)?;
        if amps.len() != 1 << n {
            return Err(Error::invalid("amplitude vector has wrong dimension"));
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// |⟨0⋯0|ψ⟩|².
    pub fn prob_zero(&self) -> f64 {
        self.amps[0].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// n-fold Hadamard W = H^⊗n.
    pub fn apply_w(&mut self) {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for q in 0..self.n {
            let stride = 1usize << q;
            let mut base = 0;
            while base < self.amps.len() {
                for i in base..base + stride {
                    let a = self.amps[i];
                    let b = self.amps[i + stride];
                    self.amps[i] = (a + b) * inv_sqrt2;
                    self.amps[i + stride] = (a - b) * inv_sqrt2;
                }
                base += stride << 1;
            }
        }
    }

    /// Selective phase flip of |0⋯0⟩.
    pub fn apply_r0(&mut self) {
        self.amps[0] = -self.amps[0];
    }

    /// σ_z on qubit i ∈ {1..n}: negates amplitudes whose i-th binary digit
    /// (from the most significant end) is 1.
    pub fn apply_sigma_z(&mut self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.n {
            return Err(Error::invalid(format!(
                "qubit index must be in 1..={}, got {qubit}",
                self.n
            )));
        }
        let bit = self.n - qubit;
        let mask = 1usize << bit;
        for (idx, a) in self.amps.iter_mut().enumerate() {
            if idx & mask != 0 {
                *a = -*a;
            }
        }
        Ok(())
    }

    /// Applies (WR₀)^count.
    pub fn apply_grover_halfsteps(&mut self, count: usize) {
        for _ in 0..count {
            self.apply_r0();
            self.apply_w();
        }
    }
}

/// |η_i⟩ = 2^(−(n−1)/2) Σ_{x_i = 1} |x⟩.
pub fn construct_eta(n: usize, qubit: usize) -> Result<StateVector> {
    let mut s = StateVector::zero_state(n)?;
    if qubit == 0 || qubit > n {
        return Err(Error::invalid(format!(
            "qubit index must be in 1..={n}, got {qubit}"
        )));
    }
    let bit = n - qubit;
    let mask = 1usize << bit;
    let amp = Complex64::new(1.0 / ((1u64 << (n - 1)) as f64).sqrt(), 0.0);
    for idx in 0..s.amps.len() {
        s.amps[idx] = if idx & mask != 0 { amp } else { Complex64::ZERO };
    }
    Ok(s)
}

/// The basis state |ī⟩ with 1 exactly at the qubit positions in `qubits`.
pub fn construct_overline(n: usize, qubits: &[usize]) -> Result<StateVector> {
    let mut idx = 0usize;
    for &q in qubits {
        if q == 0 || q > n {
            return Err(Error::invalid(format!(
                "qubit index must be in 1..={n}, got {q}"
            )));
        }
        idx |= 1 << (n - q);
    }
    let mut s = StateVector::zero_state(n)?;
    s.amps[0] = Complex64::ZERO;
    s.amps[idx] = Complex64::ONE;
    Ok(s)
}

/// Dense 2^n × 2^n density matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    n: usize,
    rho: Vec<Complex64>,
}

impl DensityOperator {
    fn check_n(n: usize) -> Result<()> {
        if !(MIN_QUBITS..=MAX_DENSITY_QUBITS).contains(&n) {
            return Err(Error::invalid(format!(
                "qubit count must be in {MIN_QUBITS}..={MAX_DENSITY_QUBITS}, got {n}"
            )));
        }
        Ok(())
    }

    /// |ψ⟩⟨ψ| for a pure state.
    pub fn pure(state: &StateVector) -> Result<Self> {
        Self::check_n(state.n)?;
        let dim = state.amps.len();
        let mut rho = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                rho[r * dim + c] = state.amps[r] * state.amps[c].conj();
            }
        }
        Ok(DensityOperator { n: state.n, rho })
    }

    /// W|0⟩⟨0|W, the initial state of the algorithm.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::pure(&StateVector::uniform(n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.rho[row * self.dim() + col]
    }

    /// ⟨0⋯0|ρ|0⋯0⟩.
    pub fn prob_zero(&self) -> f64 {
        self.rho[0].re
    }

    pub fn trace(&self) -> Complex64 {
        let dim = self.dim();
        (0..dim).map(|i| self.rho[i * dim + i]).sum()
    }

    /// max |ρ − ρ†| over entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                let d = (self.rho[r * dim + c] - self.rho[c * dim + r].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// One-qubit dephasing ρ → (1−p)ρ + p σ_z^(i) ρ σ_z^(i).
    ///
    /// Entrywise this scales ρ_(r,c) by (1 − 2p) wherever bit i of r and c
    /// differ, and leaves the rest untouched.
    pub fn dephase_qubit(&mut self, qubit: usize, p: f64) -> Result<()> {
        if qubit == 0 || qubit > self.n {
            return Err(Error::invalid(format!(
                "qubit index must be in 1..={}, got {qubit}",
                self.n
            )));
        }
        let dim = self.dim();
        let mask = 1usize << (self.n - qubit);
        let damp = 1.0 - 2.0 * p;
        for r in 0..dim {
            for c in 0..dim {
                if (r ^ c) & mask != 0 {
                    self.rho[r * dim + c] *= damp;
                }
            }
        }
        Ok(())
    }

    /// Applies the channel to every qubit in turn.
    pub fn dephase_all(&mut self, p: f64) {
        for q in 1..=self.n {
            self.dephase_qubit(q, p).expect("qubit index in range");
        }
    }

    /// ρ → R₀ ρ R₀.
    pub fn conjugate_r0(&mut self) {
        let dim = self.dim();
        for c in 1..dim {
            self.rho[c] = -self.rho[c];
        }
        for r in 1..dim {
            self.rho[r * dim] = -self.rho[r * dim];
        }
    }

    /// ρ → W ρ W.
    pub fn conjugate_w(&mut self) {
        let dim = self.dim();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        // Left multiplication by W: Hadamard butterflies over row indices.
        for q in 0..self.n {
            let stride = 1usize << q;
            let mut base = 0;
            while base < dim {
                for r in base..base + stride {
                    for c in 0..dim {
                        let a = self.rho[r * dim + c];
                        let b = self.rho[(r + stride) * dim + c];
                        self.rho[r * dim + c] = (a + b) * inv_sqrt2;
                        self.rho[(r + stride) * dim + c] = (a - b) * inv_sqrt2;
                    }
                }
                base += stride << 1;
            }
        }
        // Right multiplication by W: butterflies over column indices.
        for q in 0..self.n {
            let stride = 1usize << q;
            for row in 0..dim {
                let line = &mut self.rho[row * dim..(row + 1) * dim];
                let mut base = 0;
                while base < dim {
                    for c in base..base + stride {
                        let a = line[c];
                        let b = line[c + stride];
                        line[c] = (a + b) * inv_sqrt2;
                        line[c + stride] = (a - b) * inv_sqrt2;
                    }
                    base += stride << 1;
                }
            }
        }
    }

    /// One half-step: dephasing on every qubit, then R₀, then W.
    pub fn half_step(&mut self, p: f64) {
        self.dephase_all(p);
        self.conjugate_r0();
        self.conjugate_w();
    }
}

/// Exact channel evolution; returns ⟨0|ρ|0⟩ after every full Grover
/// iteration, starting with the error-free initial state (length M + 1).
pub fn evolve_density(config: &SimConfig) -> Result<Vec<f64>> {
    let mut rho = DensityOperator::uniform(config.n)?;
    let mut probs = Vec::with_capacity(config.iterations + 1);
    probs.push(rho.prob_zero());
    for _ in 0..config.iterations {
        rho.half_step(config.error_probability);
        rho.half_step(config.error_probability);
        probs.push(rho.prob_zero());
    }
    Ok(probs)
}

/// Sample mean and standard error of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

fn run_trial(n: usize, iterations: usize, p: f64, seed: u64, trial: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut psi = StateVector::uniform(n).expect("validated config");
    for _ in 0..2 * iterations {
        for q in 1..=n {
            if rng.random::<f64>() < p {
                psi.apply_sigma_z(q).expect("qubit index in range");
            }
        }
        psi.apply_r0();
        psi.apply_w();
    }
    psi.prob_zero()
}

/// Quantum-trajectory estimate of ⟨0|ρ^(M)|0⟩.
///
/// Each trial evolves a pure state, drawing an independent σ_z decision per
/// (half-step, qubit) slot. Trial t uses stream t of a ChaCha generator keyed
/// by the seed, so the result is bit-identical under any parallel schedule.
pub fn monte_carlo(config: &SimConfig) -> Result<MonteCarloEstimate> {
    let SimConfig {
        n,
        iterations,
        error_probability: p,
        trials,
        seed,
    } = *config;
    SimConfig::new(n, iterations, p, trials, seed)?;
    let results: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(n, iterations, p, seed, t))
        .collect();
    let mean = results.iter().sum::<f64>() / trials as f64;
    let stderr = if trials > 1 {
        let var = results.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / (trials as f64 - 1.0);
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        stderr,
        trials,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Budget cap on the number of enumerated error patterns.
const BRUTE_FORCE_PATTERN_BUDGET: u128 = 2_000_000;

/// ⟨0|T_h^(M)|0⟩ by exhaustive enumeration of error patterns.
///
/// Every way of placing h σ_z errors into distinct (half-step, qubit) slots is
/// simulated with a state vector; the returned value is Σ |⟨0|U_pattern W|0⟩|².
/// Slots at the same half-step necessarily use distinct qubits.
pub fn brute_force_t(n: usize, iterations: usize, h: usize) -> Result<f64> {
    if !(MIN_QUBITS..=8).contains(&n) {
        return Err(Error::invalid(format!(
            "enumeration oracle supports 2..=8 qubits, got {n}"
        )));
    }
    let slots = 2 * iterations * n;
    if binomial(slots as u64, h as u64) > BRUTE_FORCE_PATTERN_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "C({slots}, {h}) error patterns exceed the enumeration budget"
        )));
    }
    use itertools::Itertools;
    let mut total = 0.0;
    for combo in (0..slots).combinations(h) {
        let mut psi = StateVector::uniform(n)?;
        let mut it = combo.iter().peekable();
        for step in 0..2 * iterations {
            while let Some(&&slot) = it.peek() {
                if slot / n != step {
                    break;
                }
                let qubit = slot % n + 1;
                psi.apply_sigma_z(qubit)?;
                it.next();
            }
            psi.apply_r0();
            psi.apply_w();
        }
        total += psi.prob_zero();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{boyer_theta, state_after_even, state_after_odd};

    #[test]
    fn apply_w_gives_uniform_amplitudes() {
        let s = StateVector::uniform(4).unwrap();
        let expected = 0.25;
        for a in s.amps() {
            assert!((a.re - expected).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn apply_r0_negates_only_zero() {
        let mut s = StateVector::uniform(3).unwrap();
        let before = s.amps().to_vec();
        s.apply_r0();
        assert_eq!(s.amp(0), -before[0]);
        for i in 1..8 {
            assert_eq!(s.amp(i), before[i]);
        }
    }

    #[test]
    fn sigma_z_is_an_involution() {
        let mut s = StateVector::uniform(3).unwrap();
        let before = s.clone();
        for q in 1..=3 {
            s.apply_sigma_z(q).unwrap();
            s.apply_sigma_z(q).unwrap();
        }
        assert_eq!(s, before);
        assert!(s.apply_sigma_z(0).is_err());
        assert!(s.apply_sigma_z(4).is_err());
    }

    #[test]
    fn sigma_z_flips_msb_for_qubit_one() {
        let mut s = StateVector::uniform(2).unwrap();
        s.apply_sigma_z(1).unwrap();
        // Qubit 1 is the most significant bit: indices 2 and 3 flip sign.
        assert!(s.amp(0).re > 0.0 && s.amp(1).re > 0.0);
        assert!(s.amp(2).re < 0.0 && s.amp(3).re < 0.0);
    }

    #[test]
    fn grover_halfsteps_match_closed_forms() {
        for n in [2usize, 5, 8] {
            for k in 0..=12 {
                let mut s = StateVector::uniform(n).unwrap();
                s.apply_grover_halfsteps(k);
                let two = if k % 2 == 0 {
                    state_after_even(k / 2, n).unwrap()
                } else {
                    state_after_odd(k / 2, n).unwrap()
                };
                assert!((s.amp(0).re - two.a0).abs() < 1e-12, "n={n} k={k}");
                for x in 1..1usize << n {
                    assert!((s.amp(x).re - two.a1).abs() < 1e-12);
                    assert!(s.amp(x).im.abs() < 1e-15);
                }
                assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eta_and_overline_basics() {
        let n = 3;
        for i in 1..=n {
            let eta = construct_eta(n, i).unwrap();
            assert!((eta.norm_sqr() - 1.0).abs() < 1e-14);
            assert_eq!(eta.amp(0), Complex64::ZERO);
        }
        let ov = construct_overline(n, &[2]).unwrap();
        assert_eq!(ov.amp(0b010), Complex64::ONE);
        assert!(construct_overline(n, &[4]).is_err());
        assert!(construct_eta(n, 0).is_err());
    }

    #[test]
    fn wr0_maps_eta_to_zero_minus_overline() {
        // WR₀|η_i⟩ = (1/√2)(|0⟩ − |ī⟩)
        let n = 3;
        for i in 1..=n {
            let mut eta = construct_eta(n, i).unwrap();
            eta.apply_r0();
            eta.apply_w();
            let ov = construct_overline(n, &[i]).unwrap();
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            for idx in 0..1usize << n {
                let expected = if idx == 0 {
                    inv_sqrt2
                } else if ov.amp(idx) == Complex64::ONE {
                    -inv_sqrt2
                } else {
                    0.0
                };
                assert!((eta.amp(idx).re - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn density_noiseless_follows_closed_form() {
        let cfg = SimConfig::new(8, 12, 0.0, 1, 0).unwrap();
        let probs = evolve_density(&cfg).unwrap();
        let th = boyer_theta(8).unwrap().theta();
        assert_eq!(probs.len(), 13);
        for (m, p) in probs.iter().enumerate() {
            let expected = ((2 * m + 1) as f64 * th).sin().powi(2);
            assert!((p - expected).abs() < 1e-12, "m={m}");
        }
        assert!((probs[12] - 0.99995).abs() < 5e-5);
    }

    #[test]
    fn density_p_one_is_pure_state_evolution() {
        // p = 1 applies σ_z deterministically to every qubit each half-step.
        let n = 3;
        let m = 4;
        let cfg = SimConfig::new(n, m, 1.0, 1, 0).unwrap();
        let probs = evolve_density(&cfg).unwrap();

        let mut psi = StateVector::uniform(n).unwrap();
        let mut expected = vec![psi.prob_zero()];
        for step in 0..2 * m {
            for q in 1..=n {
                psi.apply_sigma_z(q).unwrap();
            }
            psi.apply_r0();
            psi.apply_w();
            if step % 2 == 1 {
                expected.push(psi.prob_zero());
            }
        }
        for (a, b) in probs.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn density_channel_preserves_trace_and_hermiticity() {
        let mut rho = DensityOperator::uniform(3).unwrap();
        for _ in 0..6 {
            rho.half_step(0.2);
            assert!((rho.trace().re - 1.0).abs() < 1e-10);
            assert!(rho.trace().im.abs() < 1e-12);
            assert!(rho.hermiticity_residual() < 1e-12);
        }
    }

    #[test]
    fn monte_carlo_noiseless_is_exact_with_zero_stderr() {
        let cfg = SimConfig::new(4, 3, 0.0, 50, 7).unwrap();
        let est = monte_carlo(&cfg).unwrap();
        let th = boyer_theta(4).unwrap().theta();
        assert!((est.mean - (7.0 * th).sin().powi(2)).abs() < 1e-12);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn monte_carlo_is_seed_deterministic() {
        let cfg = SimConfig::new(3, 4, 0.05, 500, 42).unwrap();
        let a = monte_carlo(&cfg).unwrap();
        let b = monte_carlo(&cfg).unwrap();
        assert_eq!(a, b);
        let other = SimConfig { seed: 43, ..cfg };
        assert_ne!(monte_carlo(&other).unwrap().mean, a.mean);
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::new(1, 1, 0.0, 1, 0).is_err());
        assert!(SimConfig::new(13, 1, 0.0, 1, 0).is_err());
        assert!(SimConfig::new(4, 1, -0.1, 1, 0).is_err());
        assert!(SimConfig::new(4, 1, 1.1, 1, 0).is_err());
        assert!(SimConfig::new(4, 1, 0.5, 0, 0).is_err());
    }

    #[test]
    fn brute_force_base_cases() {
        // h = 0 is the noiseless amplitude.
        for (n, m) in [(2, 1), (2, 2), (3, 2)] {
            let th = boyer_theta(n).unwrap().theta();
            let expected = ((2 * m + 1) as f64 * th).sin().powi(2);
            assert!((brute_force_t(n, m, 0).unwrap() - expected).abs() < 1e-13);
        }
        // Both single-error kernels vanish at θ = π/6.
        assert!(brute_force_t(2, 1, 1).unwrap().abs() < 1e-13);
    }

    #[test]
    fn brute_force_budget_guard() {
        assert!(matches!(
            brute_force_t(8, 8, 6),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
