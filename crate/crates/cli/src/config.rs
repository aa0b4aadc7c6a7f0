//! Run configuration: a plain-text `key = value` format with bracketed
//! section headers. Lengths are nanometres, temperatures kelvin and
//! frequencies hertz at this boundary; everything is converted to SI and
//! angular units internally.

use thirdsound::springs::Material;
use thirdsound::{Boundary, Error, Film, ModeIndex, Result};

/// Sweep axis spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// One sweep axis: `axis = <name> <lin|log> <min> <max> <count>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub name: String,
    pub scale: Scale,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl SweepAxis {
    /// Grid values, linearly or geometrically spaced.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        (0..self.count)
            .map(|i| {
                let t = i as f64 / (self.count - 1) as f64;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

/// Damping specification: exactly one of the two forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Damping {
    Quality(f64),
    /// Linewidth Γ/2π in hertz.
    GammaHz(f64),
}

impl Damping {
    /// Γ in rad/s for a mode of angular frequency `omega_m`.
    pub fn gamma(&self, omega_m: f64) -> f64 {
        match self {
            Damping::Quality(q) => omega_m / q,
            Damping::GammaHz(hz) => 2.0 * std::f64::consts::PI * hz,
        }
    }
}

/// Parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Material preset name, when one was selected.
    pub preset: Option<String>,
    pub a_vdw: f64,
    pub rho: f64,
    pub rho_he: f64,
    /// Confinement radius (nm).
    pub radius_nm: f64,
    /// Film thickness (nm).
    pub thickness_nm: f64,
    pub mu: u32,
    pub nu: u32,
    pub boundary: Boundary,
    /// Temperature (K).
    pub temperature: f64,
    pub damping: Damping,
    /// Number-basis size N for spectrum solves.
    pub basis_size: usize,
    /// Retained eigenstates M for spectrum solves.
    pub kept: usize,
    /// Zero the nonlinear spring constants (harmonic reference runs).
    pub harmonic: bool,
    /// Grow the basis until the kept levels converge.
    pub auto_converge: bool,
    /// Relative eigenvalue stability demanded by the convergence check.
    pub convergence: f64,
    /// Optional helium property table path; bundled data when absent.
    pub property_table: Option<String>,
    pub sweep: Vec<SweepAxis>,
    /// Output path from the `[output]` section (overridden by `--out`).
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let silica = Material::silica();
        RunConfig {
            preset: Some("silica".to_string()),
            a_vdw: silica.a_vdw,
            rho: silica.rho,
            rho_he: silica.rho_he,
            radius_nm: 100.0,
            thickness_nm: 5.0,
            mu: 0,
            nu: 1,
            boundary: Boundary::Free,
            temperature: 0.05,
            damping: Damping::Quality(1e8),
            basis_size: 120,
            kept: 15,
            harmonic: false,
            auto_converge: true,
            convergence: 1e-8,
            property_table: None,
            sweep: Vec::new(),
            output: None,
        }
    }
}

/// Axis names understood by the sweep machinery.
pub const AXIS_NAMES: [&str; 5] = ["R", "d", "T", "Q", "f"];

fn usage(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl RunConfig {
    /// Parse the sectioned `key = value` text format.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut config = RunConfig {
            sweep: Vec::new(),
            ..RunConfig::default()
        };
        let mut section = String::new();
        let mut explicit_material = false;
        let mut damping_keys = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                if !line.ends_with(']') {
                    return Err(usage(line_no, "unterminated section header"));
                }
                section = line[1..line.len() - 1].trim().to_lowercase();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(line_no, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            if value.is_empty() {
                return Err(usage(line_no, format!("empty value for `{key}`")));
            }

            let parse_f64 = |v: &str| -> Result<f64> {
                v.parse()
                    .map_err(|_| usage(line_no, format!("`{v}` is not a number")))
            };
            let parse_usize = |v: &str| -> Result<usize> {
                v.parse()
                    .map_err(|_| usage(line_no, format!("`{v}` is not an integer")))
            };

            match (section.as_str(), key) {
                ("material", "preset") => {
                    config
                        .apply_preset(value)
                        .map_err(|e| usage(line_no, e.to_string()))?;
                }
                ("material", "a_vdw") => {
                    config.a_vdw = parse_f64(value)?;
                    config.preset = None;
                    explicit_material = true;
                }
                ("material", "rho") => {
                    config.rho = parse_f64(value)?;
                    explicit_material = true;
                }
                ("material", "rho_he") => {
                    config.rho_he = parse_f64(value)?;
                    explicit_material = true;
                }
                ("film", "R") => config.radius_nm = parse_f64(value)?,
                ("film", "d") => config.thickness_nm = parse_f64(value)?,
                ("mode", "mu") => {
                    config.mu = parse_usize(value)? as u32;
                }
                ("mode", "nu") => {
                    config.nu = parse_usize(value)? as u32;
                }
                ("mode", "boundary") => {
                    config.boundary = match value.to_lowercase().as_str() {
                        "free" => Boundary::Free,
                        "fixed" => Boundary::Fixed,
                        other => {
                            return Err(usage(
                                line_no,
                                format!("boundary must be free or fixed, got `{other}`"),
                            ))
                        }
                    };
                }
                ("environment", "T") => config.temperature = parse_f64(value)?,
                ("environment", "Q") => {
                    config.damping = Damping::Quality(parse_f64(value)?);
                    damping_keys += 1;
                }
                ("environment", "gamma_hz") => {
                    config.damping = Damping::GammaHz(parse_f64(value)?);
                    damping_keys += 1;
                }
                ("solver", "N") => config.basis_size = parse_usize(value)?,
                ("solver", "M") => config.kept = parse_usize(value)?,
                ("solver", "harmonic") => {
                    config.harmonic = value
                        .parse()
                        .map_err(|_| usage(line_no, "harmonic must be true or false"))?;
                }
                ("solver", "convergence") => config.convergence = parse_f64(value)?,
                ("solver", "auto_converge") => {
                    config.auto_converge = value
                        .parse()
                        .map_err(|_| usage(line_no, "auto_converge must be true or false"))?;
                }
                ("thermal", "table") => config.property_table = Some(value.to_string()),
                ("sweep", "axis") => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    if parts.len() != 5 {
                        return Err(usage(
                            line_no,
                            "axis needs `<name> <lin|log> <min> <max> <count>`",
                        ));
                    }
                    let scale = match parts[1] {
                        "lin" | "linear" => Scale::Linear,
                        "log" => Scale::Log,
                        other => return Err(usage(line_no, format!("unknown scale `{other}`"))),
                    };
                    config.sweep.push(SweepAxis {
                        name: parts[0].to_string(),
                        scale,
                        min: parse_f64(parts[2])?,
                        max: parse_f64(parts[3])?,
                        count: parse_usize(parts[4])?,
                    });
                }
                ("output", "path") => config.output = Some(value.to_string()),
                (section, key) => {
                    return Err(usage(
                        line_no,
                        format!("unknown key `{key}` in section `[{section}]`"),
                    ));
                }
            }
        }

        if damping_keys > 1 {
            return Err(usage(0, "give exactly one of Q or gamma_hz"));
        }
        if explicit_material && config.preset.is_some() {
            config.preset = None;
        }
        config.validate()?;
        Ok(config)
    }

    /// Replace the material by a named preset.
    pub fn apply_preset(&mut self, name: &str) -> Result<()> {
        let material = match name.to_lowercase().as_str() {
            "silica" => Material::silica(),
            "silicon" => Material::silicon(),
            other => {
                return Err(Error::Domain(format!(
                    "unknown preset `{other}` (expected silica or silicon)"
                )))
            }
        };
        self.preset = Some(name.to_lowercase());
        self.a_vdw = material.a_vdw;
        self.rho = material.rho;
        self.rho_he = material.rho_he;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu < 1 {
            return Err(Error::Domain("mode: nu must be >= 1".to_string()));
        }
        if !(self.radius_nm > 0.0 && self.thickness_nm > 0.0) {
            return Err(Error::Domain("film: R and d must be positive".to_string()));
        }
        if self.temperature < 0.0 {
            return Err(Error::Domain("environment: T must be >= 0".to_string()));
        }
        match self.damping {
            Damping::Quality(q) if q > 0.0 => {}
            Damping::GammaHz(g) if g > 0.0 => {}
            _ => {
                return Err(Error::Domain(
                    "environment: Q or gamma_hz must be positive".to_string(),
                ))
            }
        }
        for axis in &self.sweep {
            if !AXIS_NAMES.contains(&axis.name.as_str()) {
                return Err(Error::Domain(format!(
                    "sweep: unknown axis `{}` (expected one of {:?})",
                    axis.name, AXIS_NAMES
                )));
            }
            if axis.count < 1 {
                return Err(Error::Domain("sweep: axis count must be >= 1".to_string()));
            }
            if !(axis.min.is_finite() && axis.max.is_finite() && axis.min <= axis.max) {
                return Err(Error::Domain(format!(
                    "sweep: axis `{}` needs min <= max",
                    axis.name
                )));
            }
            if axis.scale == Scale::Log && axis.min <= 0.0 {
                return Err(Error::Domain(format!(
                    "sweep: log axis `{}` needs positive bounds",
                    axis.name
                )));
            }
        }
        Ok(())
    }

    /// Canonical serialization; `parse` of the result reproduces the config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[material]\n");
        if let Some(preset) = &self.preset {
            out.push_str(&format!("preset = {preset}\n"));
        } else {
            out.push_str(&format!("a_vdw = {:e}\n", self.a_vdw));
            out.push_str(&format!("rho = {:e}\n", self.rho));
            out.push_str(&format!("rho_he = {:e}\n", self.rho_he));
        }
        out.push_str("\n[film]\n");
        out.push_str(&format!("R = {:e}\n", self.radius_nm));
        out.push_str(&format!("d = {:e}\n", self.thickness_nm));
        out.push_str("\n[mode]\n");
        out.push_str(&format!("mu = {}\n", self.mu));
        out.push_str(&format!("nu = {}\n", self.nu));
        out.push_str(&format!("boundary = {}\n", self.boundary));
        out.push_str("\n[environment]\n");
        out.push_str(&format!("T = {:e}\n", self.temperature));
        match self.damping {
            Damping::Quality(q) => out.push_str(&format!("Q = {q:e}\n")),
            Damping::GammaHz(g) => out.push_str(&format!("gamma_hz = {g:e}\n")),
        }
        out.push_str("\n[solver]\n");
        out.push_str(&format!("N = {}\n", self.basis_size));
        out.push_str(&format!("M = {}\n", self.kept));
        out.push_str(&format!("harmonic = {}\n", self.harmonic));
        out.push_str(&format!("auto_converge = {}\n", self.auto_converge));
        out.push_str(&format!("convergence = {:e}\n", self.convergence));
        if let Some(table) = &self.property_table {
            out.push_str("\n[thermal]\n");
            out.push_str(&format!("table = {table}\n"));
        }
        if !self.sweep.is_empty() {
            out.push_str("\n[sweep]\n");
            for axis in &self.sweep {
                let scale = match axis.scale {
                    Scale::Linear => "lin",
                    Scale::Log => "log",
                };
                out.push_str(&format!(
                    "axis = {} {} {:e} {:e} {}\n",
                    axis.name, scale, axis.min, axis.max, axis.count
                ));
            }
        }
        if let Some(path) = &self.output {
            out.push_str("\n[output]\n");
            out.push_str(&format!("path = {path}\n"));
        }
        out
    }

    /// Hex digest of the canonical serialization, for CSV provenance lines.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Film in SI units.
    pub fn film(&self) -> Result<Film> {
        Film::new(
            self.radius_nm * 1e-9,
            self.thickness_nm * 1e-9,
            Material {
                a_vdw: self.a_vdw,
                rho: self.rho,
                rho_he: self.rho_he,
            },
        )
    }

    pub fn mode(&self) -> Result<ModeIndex> {
        ModeIndex::with_boundary(self.mu, self.nu, self.boundary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let mut config = RunConfig::default();
        config.sweep.push(SweepAxis {
            name: "R".to_string(),
            scale: Scale::Log,
            min: 100.0,
            max: 10000.0,
            count: 25,
        });
        config.damping = Damping::GammaHz(3.25);
        config.output = Some("rows.csv".to_string());
        let text = config.to_text();
        let reparsed = RunConfig::parse(&text).unwrap();
        assert_eq!(config, reparsed);
        assert_eq!(config.hash(), reparsed.hash());
    }

    #[test]
    fn parses_comments_and_sections() {
        let text = "\
# a comment
[material]
preset = silicon

[film]
R = 56   # nm
d = 11

[mode]
mu = 0
nu = 1

[environment]
T = 0.1
Q = 1e6
";
        let config = RunConfig::parse(text).unwrap();
        assert_eq!(config.preset.as_deref(), Some("silicon"));
        assert_eq!(config.radius_nm, 56.0);
        assert_eq!(config.thickness_nm, 11.0);
        assert_eq!(config.damping, Damping::Quality(1e6));
    }

    #[test]
    fn rejects_unknown_keys_with_line_numbers() {
        let err = RunConfig::parse("[film]\nbogus = 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_double_damping() {
        let err = RunConfig::parse("[environment]\nQ = 1e6\ngamma_hz = 2\n").unwrap_err();
        assert!(err.to_string().contains("exactly one"));
    }

    #[test]
    fn rejects_bad_axis() {
        assert!(RunConfig::parse("[sweep]\naxis = bogus lin 1 2 3\n").is_err());
        assert!(RunConfig::parse("[sweep]\naxis = R log 0 2 3\n").is_err());
        assert!(RunConfig::parse("[sweep]\naxis = R lin 1 2\n").is_err());
    }

    #[test]
    fn axis_values_cover_the_range() {
        let axis = SweepAxis {
            name: "R".to_string(),
            scale: Scale::Log,
            min: 1.0,
            max: 100.0,
            count: 3,
        };
        let values = axis.values();
        assert_eq!(values.len(), 3);
        assert!((values[0] - 1.0).abs() < 1e-12);
        assert!((values[1] - 10.0).abs() < 1e-9);
        assert!((values[2] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn explicit_material_clears_preset() {
        let config = RunConfig::parse("[material]\na_vdw = 3e-24\n").unwrap();
        assert!(config.preset.is_none());
        assert_eq!(config.a_vdw, 3e-24);
    }
}
