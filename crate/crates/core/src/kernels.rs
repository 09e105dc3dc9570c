//! Closed-form scalar building blocks of the noisy Grover iteration.
//!
//! Everything here is an explicit trigonometric formula in the rotation angle
//! θ defined by sin θ = 2^(−n/2): the two-component form of `(WR₀)^k W|0⟩` and
//! `(R₀W)^k|0⟩`, the four alternating trigonometric sums used to collapse
//! mode expansions, the four single-error kernels
//! `⟨0|(WR₀)^l σ_z^(i) (WR₀)^k W|0⟩`, and the matrix elements against the
//! error modes `|η_i⟩` and `|0⟩ − |ī⟩`.
//!
//! All functions are pure; the `exact-sim` state vectors are the oracle they
//! are tested against.

use crate::error::{Error, Result};

/// Smallest qubit count the formulas are defined for.
pub const MIN_QUBITS: usize = 2;

/// Parity selector for half-step counts.
///
/// The single-error kernels and mode overlaps come in four explicit cases
/// depending on whether the half-step counts before/after the error are even
/// or odd; keeping the parity explicit makes that case structure auditable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of an integer half-step count.
    pub fn of(steps: usize) -> Self {
        if steps % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// The rotation angle θ with sin θ = 2^(−n/2), n ≥ 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoyerAngle {
    n: usize,
    theta: f64,
}

impl BoyerAngle {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_QUBITS {
            return Err(Error::invalid(format!("qubit count must be ≥ {MIN_QUBITS}, got {n}")));
        }
        let theta = (0.5f64.powi(n as i32 / 2) * if n % 2 == 1 { 0.5f64.sqrt() } else { 1.0 }).asin();
        Ok(BoyerAngle { n, theta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// sin θ = 2^(−n/2), exactly representable up to rounding.
    pub fn sin(&self) -> f64 {
        self.theta.sin()
    }

    /// cos θ = √((2^n − 1)/2^n).
    pub fn cos(&self) -> f64 {
        self.theta.cos()
    }
}

/// Returns the rotation angle arcsin(2^(−n/2)).
pub fn boyer_theta(n: usize) -> Result<BoyerAngle> {
    BoyerAngle::new(n)
}

/// A state of the form a₀|0⟩ + a₁ Σ_{x≠0} |x⟩.
///
/// The noiseless Grover dynamics never leaves this two-dimensional real
/// subspace, so all closed forms are real-valued.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoComponentState {
    /// Amplitude of |0⋯0⟩.
    pub a0: f64,
    /// Common amplitude of every basis state x ≠ 0.
    pub a1: f64,
    /// Qubit count fixing the dimension 2^n.
    pub n: usize,
}

impl TwoComponentState {
    /// |a₀|² + (2^n − 1)|a₁|² − 1; vanishes for a normalized state.
    pub fn norm_residual(&self) -> f64 {
        let dim = (1u64 << self.n) as f64;
        self.a0 * self.a0 + (dim - 1.0) * self.a1 * self.a1 - 1.0
    }
}

/// `(WR₀)^{2k} W|0⟩` as a two-component state.
///
/// a₀ = (−1)^k sin((2k+1)θ), a₁ = (−1)^k cos((2k+1)θ)/√(2^n − 1).
pub fn state_after_even(k: usize, n: usize) -> Result<TwoComponentState> {
    let angle = boyer_theta(n)?;
    let th = angle.theta();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let m = (2 * k + 1) as f64;
    let root = ((1u64 << n) as f64 - 1.0).sqrt();
    Ok(TwoComponentState {
        a0: sign * (m * th).sin(),
        a1: sign * (m * th).cos() / root,
        n,
    })
}

/// `(WR₀)^{2k+1} W|0⟩` as a two-component state.
///
/// a₀ = (−1)^k cos(2(k+1)θ), a₁ = −(−1)^k sin(2(k+1)θ)/√(2^n − 1).
pub fn state_after_odd(k: usize, n: usize) -> Result<TwoComponentState> {
    let angle = boyer_theta(n)?;
    let th = angle.theta();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let m = (2 * (k + 1)) as f64;
    let root = ((1u64 << n) as f64 - 1.0).sqrt();
    Ok(TwoComponentState {
        a0: sign * (m * th).cos(),
        a1: -sign * (m * th).sin() / root,
        n,
    })
}

/// `(R₀W)^{2k} |0⟩`: a₀ = (−1)^k cos(2kθ), a₁ = (−1)^k sin(2kθ)/√(2^n − 1).
pub fn state_r0w_even(k: usize, n: usize) -> Result<TwoComponentState> {
    let angle = boyer_theta(n)?;
    let th = angle.theta();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let m = (2 * k) as f64;
    let root = ((1u64 << n) as f64 - 1.0).sqrt();
    Ok(TwoComponentState {
        a0: sign * (m * th).cos(),
        a1: sign * (m * th).sin() / root,
        n,
    })
}

/// `(R₀W)^{2k+1} |0⟩`: a₀ = −(−1)^k sin((2k+1)θ), a₁ = (−1)^k cos((2k+1)θ)/√(2^n − 1).
pub fn state_r0w_odd(k: usize, n: usize) -> Result<TwoComponentState> {
    let angle = boyer_theta(n)?;
    let th = angle.theta();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let m = (2 * k + 1) as f64;
    let root = ((1u64 << n) as f64 - 1.0).sqrt();
    Ok(TwoComponentState {
        a0: -sign * (m * th).sin(),
        a1: sign * (m * th).cos() / root,
        n,
    })
}

/// Selector for the four alternating trigonometric sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigSumKind {
    /// Σ_{l=0}^{N} (−1)^l sin((2l+1)θ)
    SinOddMultiple,
    /// Σ_{l=0}^{N} (−1)^l sin(2(l+1)θ)
    SinEvenMultiple,
    /// Σ_{l=0}^{N} (−1)^l cos((2l+1)θ)
    CosOddMultiple,
    /// Σ_{l=0}^{N} (−1)^l cos(2(l+1)θ)
    CosEvenMultiple,
}

/// Closed form of the alternating sums Σ_{l=0}^{n_upper} (−1)^l f(l, θ).
///
/// cos θ = 0 is a pole of every closed form, so θ near ±π/2 (mod π) is
/// rejected.
pub fn trig_sum(kind: TrigSumKind, n_upper: usize, theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::invalid("theta must be finite"));
    }
    let c = theta.cos();
    if c.abs() < 1e-12 {
        return Err(Error::invalid(format!(
            "theta = {theta} is a pole of the closed form (cos theta = 0)"
        )));
    }
    let nn = n_upper as f64;
    let sign = if n_upper % 2 == 0 { 1.0 } else { -1.0 };
    Ok(match kind {
        TrigSumKind::SinOddMultiple => sign / 2.0 * (2.0 * (nn + 1.0) * theta).sin() / c,
        TrigSumKind::SinEvenMultiple => {
            theta.sin() / (2.0 * c) + sign / (2.0 * c) * ((2.0 * nn + 3.0) * theta).sin()
        }
        TrigSumKind::CosOddMultiple => (1.0 + sign * (2.0 * (nn + 1.0) * theta).cos()) / (2.0 * c),
        TrigSumKind::CosEvenMultiple => 0.5 + sign / (2.0 * c) * ((2.0 * nn + 3.0) * theta).cos(),
    })
}

/// Direct summation counterpart of [`trig_sum`], kept for cross-checking.
pub fn trig_sum_direct(kind: TrigSumKind, n_upper: usize, theta: f64) -> f64 {
    (0..=n_upper)
        .map(|l| {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let ll = l as f64;
            sign * match kind {
                TrigSumKind::SinOddMultiple => ((2.0 * ll + 1.0) * theta).sin(),
                TrigSumKind::SinEvenMultiple => (2.0 * (ll + 1.0) * theta).sin(),
                TrigSumKind::CosOddMultiple => ((2.0 * ll + 1.0) * theta).cos(),
                TrigSumKind::CosEvenMultiple => (2.0 * (ll + 1.0) * theta).cos(),
            }
        })
        .sum()
}

/// Single-error kernel `⟨0|(WR₀)^{l'} σ_z^(i) (WR₀)^{k'} W|0⟩` where
/// k' = 2k + parity_k and l' = 2l + parity_l.
///
/// `k` and `l` are the indices appearing in the four per-parity formulas, not
/// raw half-step counts. The value does not depend on which qubit i the error
/// hits. The even-`l` cases require l ≥ 1.
pub fn g1_kernel(k: usize, l: usize, parity_k: Parity, parity_l: Parity, n: usize) -> Result<f64> {
    if parity_l == Parity::Even && l == 0 {
        return Err(Error::invalid("even-l kernels require l ≥ 1"));
    }
    let angle = boyer_theta(n)?;
    let th = angle.theta();
    let c = (1u64 << n) as f64 - 1.0;
    let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
    let kk = k as f64;
    let ll = l as f64;
    Ok(match (parity_k, parity_l) {
        (Parity::Even, Parity::Even) => {
            sign * ((2.0 * ll * th).cos() * ((2.0 * kk + 1.0) * th).sin()
                - (2.0 * ll * th).sin() * ((2.0 * kk + 1.0) * th).cos() / c)
        }
        (Parity::Even, Parity::Odd) => {
            sign * (-((2.0 * ll + 1.0) * th).sin() * ((2.0 * kk + 1.0) * th).sin()
                - ((2.0 * ll + 1.0) * th).cos() * ((2.0 * kk + 1.0) * th).cos() / c)
        }
        (Parity::Odd, Parity::Even) => {
            sign * ((2.0 * ll * th).cos() * (2.0 * (kk + 1.0) * th).cos()
                + (2.0 * ll * th).sin() * (2.0 * (kk + 1.0) * th).sin() / c)
        }
        (Parity::Odd, Parity::Odd) => {
            sign * (-((2.0 * ll + 1.0) * th).sin() * (2.0 * (kk + 1.0) * th).cos()
                + ((2.0 * ll + 1.0) * th).cos() * (2.0 * (kk + 1.0) * th).sin() / c)
        }
    })
}

/// [`g1_kernel`] addressed by raw half-step counts before/after the error.
pub fn g1_kernel_halfsteps(before: usize, after: usize, n: usize) -> Result<f64> {
    let pk = Parity::of(before);
    let pl = Parity::of(after);
    g1_kernel(before / 2, after / 2, pk, pl, n)
}

/// Which error-mode matrix element to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaKind {
    /// `⟨0|(WR₀)^step σ_z^(i) |η_j⟩`
    Eta,
    /// `(1/√2) ⟨0|(WR₀)^step σ_z^(i) (|0⟩ − |j̄⟩)`
    ZeroMinusOverline,
}

/// Matrix elements of the error modes |η_j⟩ and (|0⟩ − |j̄⟩).
///
/// `step` is the raw number of WR₀ applications; `parity` must agree with it.
/// `same_qubit` is the Kronecker delta δ_ij between the σ_z qubit and the mode
/// qubit. The η overlaps vanish identically for i ≠ j.
pub fn eta_overlap(
    kind: EtaKind,
    step: usize,
    parity: Parity,
    same_qubit: bool,
    n: usize,
) -> Result<f64> {
    if Parity::of(step) != parity {
        return Err(Error::invalid(format!(
            "step {step} does not have the stated parity"
        )));
    }
    let angle = boyer_theta(n)?;
    let th = angle.theta();
    let k = (step / 2) as f64;
    let sign = if (step / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let root = ((1u64 << n) as f64 - 1.0).sqrt();
    let delta_sign = if same_qubit { -1.0 } else { 1.0 };
    Ok(match (kind, parity) {
        (EtaKind::Eta, Parity::Even) => {
            if !same_qubit {
                0.0
            } else {
                -sign * inv_sqrt2 * (2.0 * k * th).sin() / angle.cos()
            }
        }
        (EtaKind::Eta, Parity::Odd) => {
            if !same_qubit {
                0.0
            } else {
                -sign * inv_sqrt2 * ((2.0 * k + 1.0) * th).cos() / angle.cos()
            }
        }
        (EtaKind::ZeroMinusOverline, Parity::Even) => {
            sign * inv_sqrt2 * ((2.0 * k * th).cos() - delta_sign * (2.0 * k * th).sin() / root)
        }
        (EtaKind::ZeroMinusOverline, Parity::Odd) => {
            -sign
                * inv_sqrt2
                * (((2.0 * k + 1.0) * th).sin() + delta_sign * ((2.0 * k + 1.0) * th).cos() / root)
        }
    })
}
