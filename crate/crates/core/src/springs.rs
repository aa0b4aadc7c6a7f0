//! The confined-film resonator model.
//!
//! Maps a film geometry and mode choice onto the anharmonic oscillator
//! U = ½kx² + ⅓βx³ + ¼αx⁴ written in the reference coordinate
//! x := η(R, 0), the surface displacement at the rim. All spring constants
//! follow from the overlap coefficients of [`crate::specfun`]; the
//! oscillator parameters, single-phonon shift, blockade figures of merit,
//! critical-velocity ratios and areal energy density are derived here.

use std::f64::consts::PI;

use crate::constants::{A_VDW_SILICA, A_VDW_SILICON, HBAR, K_B, RHO_SUPERFLUID};
use crate::error::{Error, Result};
use crate::specfun::{integrate, mode_shape, phi, ModeIndex};

/// Substrate/film material: van der Waals coefficient and densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// Van der Waals coefficient (m⁵·s⁻²).
    pub a_vdw: f64,
    /// Superfluid density ρ (kg·m⁻³).
    pub rho: f64,
    /// Total helium density ρ_He (kg·m⁻³).
    pub rho_he: f64,
}

impl Material {
    /// Silica substrate with ρ/ρ_He → 1.
    pub fn silica() -> Self {
        Material {
            a_vdw: A_VDW_SILICA,
            rho: RHO_SUPERFLUID,
            rho_he: RHO_SUPERFLUID,
        }
    }

    /// Silicon substrate with ρ/ρ_He → 1.
    pub fn silicon() -> Self {
        Material {
            a_vdw: A_VDW_SILICON,
            rho: RHO_SUPERFLUID,
            rho_he: RHO_SUPERFLUID,
        }
    }
}

/// A confined superfluid film: geometry plus material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Film {
    /// Confinement radius R (m).
    pub radius: f64,
    /// Mean film thickness d (m).
    pub thickness: f64,
    /// Van der Waals coefficient (m⁵·s⁻²).
    pub a_vdw: f64,
    /// Superfluid density ρ (kg·m⁻³).
    pub rho: f64,
    /// Total helium density ρ_He (kg·m⁻³).
    pub rho_he: f64,
}

impl Film {
    /// Validated film; densities must satisfy 0 < ρ ≤ ρ_He.
    pub fn new(radius: f64, thickness: f64, material: Material) -> Result<Self> {
        let film = Film {
            radius,
            thickness,
            a_vdw: material.a_vdw,
            rho: material.rho,
            rho_he: material.rho_he,
        };
        film.validate()?;
        Ok(film)
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::domain("film radius must be positive"));
        }
        if !(self.thickness > 0.0 && self.thickness.is_finite()) {
            return Err(Error::domain("film thickness must be positive"));
        }
        if !(self.a_vdw > 0.0 && self.a_vdw.is_finite()) {
            return Err(Error::domain("van der Waals coefficient must be positive"));
        }
        if !(self.rho > 0.0 && self.rho <= self.rho_he) {
            return Err(Error::domain("densities must satisfy 0 < rho <= rho_He"));
        }
        Ok(())
    }

    /// ρ/ρ_He.
    pub fn density_ratio(&self) -> f64 {
        self.rho / self.rho_he
    }

    /// Model-validity warnings. These are advisory: sweeps deliberately probe
    /// the boundary, so violations never abort a computation.
    pub fn validity_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        if self.thickness >= self.radius {
            warnings.push(format!(
                "thin-film model invalid: d = {:.3e} m >= R = {:.3e} m",
                self.thickness, self.radius
            ));
        }
        if self.thickness < 1e-9 || self.thickness > 30e-9 {
            warnings.push(format!(
                "thickness d = {:.3e} m outside the modeled 1-30 nm range",
                self.thickness
            ));
        }
        warnings
    }
}

/// Spring constants of one confined mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringSet {
    /// Linear spring constant k (N·m⁻¹).
    pub k: f64,
    /// Cubic spring constant β (N·m⁻²); zero unless μ = 0. Its sign tracks
    /// −φ³ and alternates with ν because the reference coordinate sits at the
    /// rim; only β² enters observable quantities.
    pub beta: f64,
    /// Quartic (Duffing) spring constant α (N·m⁻³).
    pub alpha: f64,
    /// Effective Duffing constant α − (10/9)β²/k.
    pub alpha_eff: f64,
}

impl SpringSet {
    /// Spring set with the cubic term dropped and the quartic replaced, used
    /// for the reduced Duffing models of the spectrum comparison.
    pub fn pure_duffing(&self, alpha: f64) -> SpringSet {
        SpringSet {
            k: self.k,
            beta: 0.0,
            alpha,
            alpha_eff: alpha,
        }
    }
}

/// Mode-level oscillator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Mechanical resonance frequency Ω_m = ζ c₃ / R (rad·s⁻¹).
    pub omega_m: f64,
    /// Effective mass k/Ω_m² (kg).
    pub m_eff: f64,
    /// Zero-point fluctuation amplitude (m).
    pub x_zpf: f64,
    /// Single-phonon shift δΩ = 3 x_zpf⁴ α_eff / ħ (rad·s⁻¹).
    pub delta_omega: f64,
    /// Single-phonon shift computed with the bare quartic constant (rad·s⁻¹).
    pub delta_omega_bare: f64,
    /// Third-sound speed (m·s⁻¹).
    pub c3: f64,
}

/// Phonon-blockade report for a mode at damping rate Γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockadeReport {
    /// Γ < δΩ: a single phonon shifts the resonance out of its own linewidth.
    pub single_phonon_resolved: bool,
    /// Duffing bistability amplitude x_crit = sqrt(2 m_eff Γ Ω_m / 3α) (m).
    pub x_crit: f64,
    /// Quality factor Ω_m/δΩ needed to resolve the shift.
    pub required_q: f64,
    /// required_q · Ω_m/2π (Hz).
    pub qf_product: f64,
    /// Same criterion expressed through amplitudes, using the bare α in
    /// x_crit: x_zpf > x_crit. Differs from the linewidth form by the
    /// α_eff/α factor.
    pub resolved_by_amplitude: bool,
    /// Zero-point amplitude used for the amplitude form (m).
    pub x_zpf: f64,
    /// Damping rate the report was evaluated at (rad·s⁻¹).
    pub gamma: f64,
}

/// Superfluid-velocity safety margins v/v_c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityRatios {
    /// Ground-state ratio (ρ/ρ_He)·x_zpf/d.
    pub zpf_ratio: f64,
    /// Thermal-state ratio zpf_ratio · sqrt(1 + 2 n_th).
    pub thermal_ratio: f64,
}

/// Third-sound speed c₃ = sqrt(3 a_vdw (ρ/ρ_He) / d³).
pub fn speed_of_sound(film: &Film) -> f64 {
    (3.0 * film.a_vdw * film.density_ratio() / film.thickness.powi(3)).sqrt()
}

/// Spring constants of `mode` from the closed forms
/// k = (1+δ)(3π/2) ρ a (1−μ²/ζ²) R²/d⁴,
/// β = −δ 12π ρ a φ³ R²/d⁵,
/// α = (3+5δ)(5π/2) ρ a φ⁴ R²/d⁶.
pub fn spring_constants(film: &Film, mode: ModeIndex) -> Result<SpringSet> {
    // The reference coordinate x = eta(R, 0) sits at the rim, where
    // fixed-boundary modes have a node; the closed forms below also use
    // J'(zeta) = 0.
    if mode.boundary() == crate::specfun::Boundary::Fixed {
        return Err(Error::domain(
            "spring model requires free boundary conditions (rim amplitude reference)",
        ));
    }
    let delta = mode.delta_mu0();
    let zeta = mode.zeta()?;
    let r2 = film.radius * film.radius;
    let d = film.thickness;
    let rho_a = film.rho * film.a_vdw;

    let k = (1.0 + delta) * 1.5 * PI * rho_a * (1.0 - (mode.mu() as f64 / zeta).powi(2)) * r2
        / d.powi(4);
    let beta = if mode.mu() == 0 {
        -12.0 * PI * rho_a * phi(3, mode)?.value * r2 / d.powi(5)
    } else {
        0.0
    };
    let alpha = (3.0 + 5.0 * delta) * 2.5 * PI * rho_a * phi(4, mode)?.value * r2 / d.powi(6);
    let alpha_eff = alpha - (10.0 / 9.0) * beta * beta / k;
    Ok(SpringSet {
        k,
        beta,
        alpha,
        alpha_eff,
    })
}

/// Cross-check path: the same spring constants from the defining surface
/// integrals of the mode shape, evaluated by nested adaptive quadrature.
pub fn spring_constants_by_quadrature(film: &Film, mode: ModeIndex) -> Result<SpringSet> {
    let d = film.thickness;
    let r2 = film.radius * film.radius;
    let rim = mode_shape(mode, 1.0, 0.0)?;
    if rim == 0.0 {
        return Err(Error::numerical(
            "mode amplitude vanishes at the reference point (R, 0)".to_string(),
        ));
    }

    // ∫∫ (η/η(R,0))^p r dr dθ over the unit disk, scaled by R².
    let surface_integral = |p: i32| -> Result<f64> {
        let outer = |u: f64| {
            let inner =
                |theta: f64| (mode_shape(mode, u, theta).expect("u in [0,1]") / rim).powi(p);
            integrate(&inner, 0.0, 2.0 * PI, 1e-9, 1e-14)
                .map(|q| q.value * u)
                .unwrap_or(f64::NAN)
        };
        let q = integrate(&outer, 0.0, 1.0, 1e-8, 1e-14)?;
        if !q.value.is_finite() {
            return Err(Error::numerical("surface integral failed".to_string()));
        }
        Ok(q.value * r2)
    };

    let rho_a = film.rho * film.a_vdw;
    let k = 3.0 * rho_a / d.powi(4) * surface_integral(2)?;
    let beta = -6.0 * rho_a / d.powi(5) * surface_integral(3)?;
    let alpha = 10.0 * rho_a / d.powi(6) * surface_integral(4)?;
    let alpha_eff = alpha - (10.0 / 9.0) * beta * beta / k;
    Ok(SpringSet {
        k,
        beta,
        alpha,
        alpha_eff,
    })
}

/// α_eff/α = 1 − δ_{μ0} (8/3) (φ³)²/φ⁴; depends only on the mode numbers.
pub fn effective_duffing_ratio(mode: ModeIndex) -> Result<f64> {
    if mode.mu() != 0 {
        return Ok(1.0);
    }
    let p3 = phi(3, mode)?.value;
    let p4 = phi(4, mode)?.value;
    Ok(1.0 - (8.0 / 3.0) * p3 * p3 / p4)
}

/// Oscillator parameters of `mode` on `film`.
///
/// The zero-point amplitude is evaluated both as sqrt(ħ/2 m_eff Ω_m) and
/// through its closed form in (R, d, ζ), and the single-phonon shift both as
/// 3 x_zpf⁴ α_eff/ħ and through its closed form; the two routes must agree to
/// 1e-9 relative or an internal error is raised.
pub fn oscillator_params(film: &Film, mode: ModeIndex) -> Result<OscillatorParams> {
    let spring = spring_constants(film, mode)?;
    let zeta = mode.zeta()?;
    let c3 = speed_of_sound(film);
    let omega_m = zeta * c3 / film.radius;
    let m_eff = spring.k / (omega_m * omega_m);
    let x_zpf = (HBAR / (2.0 * m_eff * omega_m)).sqrt();

    // Closed form in the adjustable parameters.
    let delta = mode.delta_mu0();
    let mu2_term = 1.0 - (mode.mu() as f64 / zeta).powi(2);
    let x_zpf_closed = (HBAR
        / ((1.0 + delta)
            * PI
            * (3.0 * film.a_vdw).sqrt()
            * (film.rho * film.rho_he).sqrt()
            * mu2_term))
        .sqrt()
        * zeta.sqrt()
        * film.thickness.powf(1.25)
        / film.radius.powf(1.5);
    check_agreement("x_zpf", x_zpf, x_zpf_closed, 1e-9)?;

    let delta_omega = 3.0 * x_zpf.powi(4) * spring.alpha_eff / HBAR;
    let delta_omega_bare = 3.0 * x_zpf.powi(4) * spring.alpha / HBAR;

    let p3 = phi(3, mode)?.value;
    let p4 = phi(4, mode)?.value;
    let delta_omega_closed = 15.0 * HBAR / ((2.0 + delta) * PI * film.rho_he)
        * (p4 - delta * (8.0 / 3.0) * p3 * p3)
        / (mu2_term * mu2_term)
        * zeta
        * zeta
        / (film.radius.powi(4) * film.thickness);
    // The closed form carries ρ/ρ_He → 1; fold the actual ratio back in.
    let delta_omega_closed = delta_omega_closed * film.density_ratio();
    check_agreement("delta_omega", delta_omega, delta_omega_closed, 1e-9)?;

    Ok(OscillatorParams {
        omega_m,
        m_eff,
        x_zpf,
        delta_omega,
        delta_omega_bare,
        c3,
    })
}

fn check_agreement(label: &str, a: f64, b: f64, rel: f64) -> Result<()> {
    if (a - b).abs() > rel * a.abs().max(b.abs()) {
        return Err(Error::internal(format!(
            "{label}: dual evaluation routes disagree ({a:.15e} vs {b:.15e})"
        )));
    }
    Ok(())
}

/// Phonon-blockade report at damping rate `gamma` (rad/s).
pub fn blockade_report(
    params: &OscillatorParams,
    spring: &SpringSet,
    gamma: f64,
) -> Result<BlockadeReport> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain("blockade_report: gamma must be positive"));
    }
    let x_crit = (2.0 / 3.0 * params.m_eff * gamma * params.omega_m / spring.alpha).sqrt();
    Ok(BlockadeReport {
        single_phonon_resolved: gamma < params.delta_omega,
        x_crit,
        required_q: params.omega_m / params.delta_omega,
        qf_product: params.omega_m / params.delta_omega * params.omega_m / (2.0 * PI),
        resolved_by_amplitude: params.x_zpf > x_crit,
        x_zpf: params.x_zpf,
        gamma,
    })
}

/// Ratios of the superfluid particle velocity to the critical velocity for
/// the ground state and for a mode thermalized at temperature `t` (K).
pub fn critical_velocity_ratios(film: &Film, mode: ModeIndex, t: f64) -> Result<VelocityRatios> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain("critical_velocity_ratios: T must be >= 0"));
    }
    let params = oscillator_params(film, mode)?;
    let zpf_ratio = film.density_ratio() * params.x_zpf / film.thickness;
    let n_th = if t == 0.0 {
        0.0
    } else {
        1.0 / ((HBAR * params.omega_m / (K_B * t)).exp_m1())
    };
    Ok(VelocityRatios {
        zpf_ratio,
        thermal_ratio: zpf_ratio * (1.0 + 2.0 * n_th).sqrt(),
    })
}

/// Areal energy density u = ρ a_vdw (−η/d³ + 3η²/2d⁴) of a surface
/// displaced by `eta` (m). Valid only for |η| < d.
pub fn areal_energy_density(film: &Film, eta: f64) -> Result<f64> {
    if eta.abs() >= film.thickness {
        return Err(Error::domain(format!(
            "areal_energy_density: |eta| = {:.3e} m must stay below d = {:.3e} m",
            eta.abs(),
            film.thickness
        )));
    }
    let d = film.thickness;
    Ok(film.rho * film.a_vdw * (-eta / d.powi(3) + 1.5 * eta * eta / d.powi(4)))
}
