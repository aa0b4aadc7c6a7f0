//! Closed-form perturbative spectrum of the anharmonic oscillator.
//!
//! Energy levels through second order in the quartic term and the matching
//! order in the cubic term (the cubic enters only through its square, so the
//! two corrections co-occur):
//!
//! E_n = ħΩ(n+½) + (3x⁴α/2)(n²+n+½)
//!       − (x⁶β²/9ħΩ)(30n²+30n+11) − (x⁸α²/8ħΩ)(34n³+51n²+59n+21)

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::springs::{OscillatorParams, SpringSet};

/// Small expansion parameters of the perturbation series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallParams {
    /// β x_zpf³ / ħΩ_m.
    pub beta_term: f64,
    /// α x_zpf⁴ / ħΩ_m.
    pub alpha_term: f64,
}

impl SmallParams {
    pub fn new(params: &OscillatorParams, spring: &SpringSet) -> SmallParams {
        let scale = HBAR * params.omega_m;
        SmallParams {
            beta_term: spring.beta * params.x_zpf.powi(3) / scale,
            alpha_term: spring.alpha * params.x_zpf.powi(4) / scale,
        }
    }

    /// Largest parameter magnitude; second-order perturbation theory degrades
    /// visibly above ~1e-2.
    pub fn magnitude(&self) -> f64 {
        self.beta_term.abs().max(self.alpha_term.abs())
    }
}

/// Perturbative levels and transition frequencies of one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbativeSpectrum {
    /// E_n in joules for n = 0..=n_max.
    pub levels: Vec<f64>,
    /// (E_{n+1} − E_n)/ħ in rad/s for n = 0..n_max.
    pub transitions: Vec<f64>,
    pub small_params: SmallParams,
}

impl PerturbativeSpectrum {
    /// Advisory warning when the expansion parameters leave the trusted range.
    pub fn validity_warning(&self) -> Option<String> {
        let m = self.small_params.magnitude();
        (m >= 1e-2).then(|| {
            format!("perturbative expansion parameter {m:.2e} exceeds 1e-2; levels are unreliable")
        })
    }
}

/// Energy levels E_0..E_n_max of the anharmonic oscillator.
pub fn perturbative_levels(
    params: &OscillatorParams,
    spring: &SpringSet,
    n_max: usize,
) -> Result<PerturbativeSpectrum> {
    if n_max < 1 {
        return Err(Error::domain("perturbative_levels: n_max must be >= 1"));
    }
    let scale = HBAR * params.omega_m;
    let x = params.x_zpf;
    let quartic = 1.5 * x.powi(4) * spring.alpha;
    let cubic_sq = x.powi(6) * spring.beta * spring.beta / (9.0 * scale);
    let quartic_sq = x.powi(8) * spring.alpha * spring.alpha / (8.0 * scale);

    let levels: Vec<f64> = (0..=n_max)
        .map(|n| {
            let n = n as f64;
            scale * (n + 0.5) + quartic * (n * n + n + 0.5)
                - cubic_sq * (30.0 * n * n + 30.0 * n + 11.0)
                - quartic_sq * (34.0 * n * n * n + 51.0 * n * n + 59.0 * n + 21.0)
        })
        .collect();
    let transitions = levels.windows(2).map(|w| (w[1] - w[0]) / HBAR).collect();

    Ok(PerturbativeSpectrum {
        levels,
        transitions,
        small_params: SmallParams::new(params, spring),
    })
}

/// First-order transition ladder `Ω[n] = Ω_m + (n+1) δΩ` for n = 0..n_max.
pub fn transition_frequencies(params: &OscillatorParams, n_max: usize) -> Vec<f64> {
    (0..n_max)
        .map(|n| params.omega_m + (n as f64 + 1.0) * params.delta_omega)
        .collect()
}
