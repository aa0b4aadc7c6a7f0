//! Amplitude correlation function by quantum regression.
//!
//! G(τ) = Tr[ε⁺ e^{Lτ}(ε⁻ ρ_ss)] with ε⁺ = Σ_{k>j} x_jk |j⟩⟨k|. The seed
//! ε⁻ρ_ss is a sum of lower-triangular matrix units, each of which is an
//! exact eigenvector of the generator, so G(τ) is a finite sum of decaying
//! complex exponentials Σ A e^{(−iω − γ)τ} with A = |x_jk|² p_j ≥ 0 and
//! ω = (E_k − E_j)/ħ > 0. An RK4 propagator is provided as the independent
//! cross-check (and as the fallback path for generators without this exact
//! eigenstructure).

use super::liouvillian::Liouvillian;
use super::model::QuantumModel;
use super::{CMatrix, C64};
use crate::constants::HBAR;
use crate::error::{Error, Result};

/// One decaying line of the correlation function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMode {
    /// Weight |x_jk|² p_j (m²).
    pub amplitude: f64,
    /// Transition frequency (E_k − E_j)/ħ (rad/s).
    pub omega: f64,
    /// Coherence decay rate γ_kj (rad/s).
    pub decay: f64,
    /// Lower and upper level of the transition.
    pub levels: (usize, usize),
}

/// Exact exponential decomposition of G(τ) from the steady state.
///
/// Modes carrying less than 1e-14 of the total weight are dropped. Growing
/// modes (negative decay beyond rounding) are rejected.
pub fn correlation_modes(
    model: &QuantumModel,
    liouvillian: &Liouvillian,
    rho_ss: &CMatrix,
) -> Result<Vec<CorrelationMode>> {
    let m = liouvillian.dim();
    if rho_ss.nrows() != m || model.x_elements.nrows() != m {
        return Err(Error::domain("correlation_modes: dimension mismatch"));
    }
    let mut modes = Vec::new();
    let mut total = 0.0;
    for k in 1..m {
        for j in 0..k {
            let x_jk = model.x_elements[(j, k)];
            let population = rho_ss[(j, j)].re.max(0.0);
            let amplitude = x_jk * x_jk * population;
            total += amplitude;
            if amplitude == 0.0 {
                continue;
            }
            let decay = liouvillian.coherence_decay(k, j);
            if decay < -1e-10 * model.gamma {
                return Err(Error::internal(format!(
                    "correlation_modes: growing mode between levels {j} and {k}"
                )));
            }
            modes.push(CorrelationMode {
                amplitude,
                omega: (model.eigenvalues[k] - model.eigenvalues[j]) / HBAR,
                decay: decay.max(0.0),
                levels: (j, k),
            });
        }
    }
    modes.retain(|mode| mode.amplitude > 1e-14 * total);
    modes.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(modes)
}

/// Evaluate G on a grid of delays; negative delays use G(−τ) = G(τ)*.
pub fn correlation(modes: &[CorrelationMode], taus: &[f64]) -> Vec<C64> {
    taus.iter()
        .map(|&tau| {
            let t = tau.abs();
            let mut g = C64::new(0.0, 0.0);
            for mode in modes {
                let envelope = (-mode.decay * t).exp() * mode.amplitude;
                let phase = -mode.omega * t;
                g += C64::new(envelope * phase.cos(), envelope * phase.sin());
            }
            if tau < 0.0 {
                g.conj()
            } else {
                g
            }
        })
        .collect()
}

/// Fixed-step RK4 propagation of σ̇ = L σ to time `t`.
pub fn evolve(liouvillian: &Liouvillian, sigma0: &CMatrix, t: f64, steps: usize) -> CMatrix {
    let h = t / steps as f64;
    let mut sigma = sigma0.clone();
    for _ in 0..steps {
        let k1 = liouvillian.apply(&sigma);
        let k2 = liouvillian.apply(&(&sigma + &k1 * C64::from(0.5 * h)));
        let k3 = liouvillian.apply(&(&sigma + &k2 * C64::from(0.5 * h)));
        let k4 = liouvillian.apply(&(&sigma + &k3 * C64::from(h)));
        sigma += (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(h / 6.0);
    }
    sigma
}

/// Trace of ε⁺σ, with ε⁺ built from the model's position elements.
pub fn amplitude_trace(model: &QuantumModel, sigma: &CMatrix) -> C64 {
    let m = model.x_elements.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for k in 1..m {
        for j in 0..k {
            // Tr[|j><k| sigma] = sigma_kj.
            acc += C64::from(model.x_elements[(j, k)]) * sigma[(k, j)];
        }
    }
    acc
}

/// Seed operator ε⁻ ρ_ss of the regression evolution.
pub fn regression_seed(model: &QuantumModel, rho_ss: &CMatrix) -> CMatrix {
    let m = model.x_elements.nrows();
    let mut eps_minus = CMatrix::zeros(m, m);
    for k in 1..m {
        for j in 0..k {
            eps_minus[(k, j)] = C64::from(model.x_elements[(j, k)]);
        }
    }
    eps_minus * rho_ss
}
