//! Thermal dissipation of third sound.
//!
//! Evaporation and recondensation between the warm troughs and cold crests
//! of the wave carry heat irreversibly, making the third-sound speed complex:
//!
//! c₃² = (ρ/ρ_He) · [ f d C + S T ((S − β/ρ_He) − i K f/(ρ_He Ω)) ]
//!                 / (C − i K L/(ρ_He Ω d))
//!
//! with f = 3 a_vdw/d⁴ the van der Waals acceleration at the film surface.
//! The quality factor is Q = Re(c₃)/(2|Im(c₃)|). Both damping terms scale as
//! 1/Ω, so high-frequency modes are less damped, and K carries the vapour
//! density's exponential temperature dependence, which produces the steep
//! rise of Q toward low temperature. With K = S = 0 the expression reduces
//! exactly to the lossless speed sqrt(3 a_vdw (ρ/ρ_He)/d³).
//!
//! Property values come from a bundled, versioned table (see
//! `data/helium-properties-v1.csv` for provenance); quantitative results are
//! conditional on that data.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::springs::Film;

type C64 = Complex<f64>;

/// Temperature-indexed thermodynamic properties of the film.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeliumProperties {
    /// Temperature (K).
    pub temperature: f64,
    /// Superfluid fraction ρ/ρ_He.
    pub rho_ratio: f64,
    /// Specific entropy S (J·kg⁻¹·K⁻¹).
    pub entropy: f64,
    /// Specific heat C (J·kg⁻¹·K⁻¹).
    pub specific_heat: f64,
    /// Latent heat of evaporation L (J·kg⁻¹).
    pub latent_heat: f64,
    /// Vapour-pressure slope β (Pa·K⁻¹).
    pub vapor_pressure_slope: f64,
    /// Evaporation mass-flow coefficient K (kg·s·m⁻⁴).
    pub evaporation_coefficient: f64,
    /// Normal-fluid viscosity (Pa·s).
    pub viscosity: f64,
}

/// Result of a thermal-dissipation evaluation at one (T, Ω) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalResult {
    /// Complex third-sound speed, principal root with positive real part
    /// (m·s⁻¹); Im ≤ 0 for a damped wave.
    pub c3: C64,
    /// Quality factor Re(c₃)/(2|Im(c₃)|).
    pub quality: f64,
    /// Normal-fluid viscous penetration depth sqrt(2 η/(Ω ρ_n)) (m).
    pub penetration_depth: f64,
    /// Whether the normal component is viscously clamped (penetration depth
    /// exceeds the film thickness); the model assumes it is.
    pub clamped: bool,
}

/// Q surface over a (temperature, frequency) grid.
#[derive(Debug, Clone)]
pub struct QSurface {
    pub temperatures: Vec<f64>,
    pub omegas: Vec<f64>,
    /// Row-major: `results[i_t * omegas.len() + i_w]`.
    pub results: Vec<ThermalResult>,
}

/// Sorted property table with linear interpolation in temperature.
#[derive(Debug, Clone)]
pub struct PropertyTable {
    rows: Vec<HeliumProperties>,
}

const HEADER: &str = "# helium-properties v1";
const BUNDLED: &str = include_str!("../data/helium-properties-v1.csv");

impl PropertyTable {
    /// The table shipped with the crate (0.1-1.0 K).
    pub fn bundled() -> PropertyTable {
        PropertyTable::parse(BUNDLED).expect("bundled property table must parse")
    }

    /// Load a table from a file in the `# helium-properties v1` format.
    pub fn load(path: &std::path::Path) -> Result<PropertyTable> {
        PropertyTable::parse(&std::fs::read_to_string(path)?)
    }

    /// Parse the plain-text format: a version header, `#` comments, and
    /// comma-separated rows T, ρ/ρ_He, S, C, L, β_vap, K, η.
    pub fn parse(text: &str) -> Result<PropertyTable> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim() == HEADER => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header line `{HEADER}`"),
                })
            }
        }

        let mut rows = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if fields.len() != 8 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 8 columns, found {}", fields.len()),
                });
            }
            let mut values = [0.0_f64; 8];
            for (slot, field) in values.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("not a number: `{field}`"),
                })?;
            }
            let row = HeliumProperties {
                temperature: values[0],
                rho_ratio: values[1],
                entropy: values[2],
                specific_heat: values[3],
                latent_heat: values[4],
                vapor_pressure_slope: values[5],
                evaporation_coefficient: values[6],
                viscosity: values[7],
            };
            if !(row.temperature > 0.0
                && row.rho_ratio > 0.0
                && row.rho_ratio <= 1.0
                && row.entropy > 0.0
                && row.specific_heat > 0.0
                && row.latent_heat > 0.0
                && row.vapor_pressure_slope > 0.0
                && row.evaporation_coefficient > 0.0
                && row.viscosity > 0.0)
            {
                return Err(Error::Parse {
                    line: line_no,
                    message: "all property values must be positive (rho_ratio <= 1)".to_string(),
                });
            }
            if let Some(prev) = rows.last() {
                let prev: &HeliumProperties = prev;
                if row.temperature <= prev.temperature {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "temperatures must be strictly increasing".to_string(),
                    });
                }
            }
            rows.push(row);
        }
        if rows.len() < 2 {
            return Err(Error::Parse {
                line: 0,
                message: "table needs at least two rows".to_string(),
            });
        }
        Ok(PropertyTable { rows })
    }

    /// Temperature range covered by the table.
    pub fn range(&self) -> (f64, f64) {
        (
            self.rows[0].temperature,
            self.rows[self.rows.len() - 1].temperature,
        )
    }

    /// Properties at temperature `t`, linearly interpolated. Queries outside
    /// the tabulated range are errors.
    pub fn at(&self, t: f64) -> Result<HeliumProperties> {
        let (lo, hi) = self.range();
        if !(t >= lo && t <= hi) {
            return Err(Error::range(format!(
                "temperature {t} K outside table range [{lo}, {hi}] K"
            )));
        }
        let idx = match self
            .rows
            .binary_search_by(|row| row.temperature.total_cmp(&t))
        {
            Ok(exact) => return Ok(self.rows[exact]),
            Err(idx) => idx,
        };
        let a = &self.rows[idx - 1];
        let b = &self.rows[idx];
        let w = (t - a.temperature) / (b.temperature - a.temperature);
        let lerp = |x: f64, y: f64| x + w * (y - x);
        Ok(HeliumProperties {
            temperature: t,
            rho_ratio: lerp(a.rho_ratio, b.rho_ratio),
            entropy: lerp(a.entropy, b.entropy),
            specific_heat: lerp(a.specific_heat, b.specific_heat),
            latent_heat: lerp(a.latent_heat, b.latent_heat),
            vapor_pressure_slope: lerp(a.vapor_pressure_slope, b.vapor_pressure_slope),
            evaporation_coefficient: lerp(a.evaporation_coefficient, b.evaporation_coefficient),
            viscosity: lerp(a.viscosity, b.viscosity),
        })
    }
}

/// Complex third-sound speed at angular frequency `omega` (rad/s).
///
/// Principal square root with positive real part; the damped branch has
/// Im(c₃) ≤ 0.
pub fn complex_third_sound_speed(props: &HeliumProperties, film: &Film, omega: f64) -> Result<C64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(
            "complex_third_sound_speed: omega must be positive",
        ));
    }
    let d = film.thickness;
    let f_vdw = 3.0 * film.a_vdw / d.powi(4);
    let rho_he = film.rho_he;
    let s = props.entropy;
    let c = props.specific_heat;
    let k_evap = props.evaporation_coefficient;
    let t = props.temperature;

    let numerator = C64::from(props.rho_ratio)
        * (C64::from(f_vdw * d * c)
            + C64::from(s * t)
                * C64::new(
                    s - props.vapor_pressure_slope / rho_he,
                    -k_evap * f_vdw / (rho_he * omega),
                ));
    let denominator = C64::new(c, -k_evap * props.latent_heat / (rho_he * omega * d));
    let mut c3 = (numerator / denominator).sqrt();
    if c3.re < 0.0 {
        c3 = -c3;
    }
    // Damped-wave sign convention: the time-convention choice only flips the
    // sign of Im(c3), so pin the decaying branch.
    if c3.im > 0.0 {
        c3 = c3.conj();
    }
    Ok(c3)
}

/// Quality factor, penetration depth and clamping flag at one point.
pub fn thermal_quality_factor(
    props: &HeliumProperties,
    film: &Film,
    omega: f64,
) -> Result<ThermalResult> {
    let c3 = complex_third_sound_speed(props, film, omega)?;
    let quality = if c3.im == 0.0 {
        f64::INFINITY
    } else {
        c3.re / (2.0 * c3.im.abs())
    };
    let rho_n = (film.rho_he * (1.0 - props.rho_ratio)).max(f64::MIN_POSITIVE);
    let penetration_depth = (2.0 * props.viscosity / (omega * rho_n)).sqrt();
    Ok(ThermalResult {
        c3,
        quality,
        penetration_depth,
        clamped: penetration_depth > film.thickness,
    })
}

/// Q evaluated on the Cartesian (T, Ω) grid.
pub fn thermal_q_surface(
    table: &PropertyTable,
    film: &Film,
    temperatures: &[f64],
    omegas: &[f64],
) -> Result<QSurface> {
    let mut results = Vec::with_capacity(temperatures.len() * omegas.len());
    for &t in temperatures {
        let props = table.at(t)?;
        for &omega in omegas {
            results.push(thermal_quality_factor(&props, film, omega)?);
        }
    }
    Ok(QSurface {
        temperatures: temperatures.to_vec(),
        omegas: omegas.to_vec(),
        results,
    })
}
