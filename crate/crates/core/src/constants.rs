//! Physical constants and material presets.

/// Reduced Planck constant (J·s), 2019 SI exact value.
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant (J/K), 2019 SI exact value.
pub const K_B: f64 = 1.380649e-23;

/// Mass of a helium-4 atom (kg).
pub const M_HE4: f64 = 6.6464731e-27;

/// Van der Waals coefficient of a silica substrate (m⁵·s⁻²).
pub const A_VDW_SILICA: f64 = 2.65e-24;

/// Van der Waals coefficient of a silicon substrate (m⁵·s⁻²).
pub const A_VDW_SILICON: f64 = 3.5e-24;

/// Superfluid density used for helium films well below the lambda point
/// (kg·m⁻³).
pub const RHO_SUPERFLUID: f64 = 145.0;
