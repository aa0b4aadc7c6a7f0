//! Subcommand implementations.

use std::f64::consts::PI;

use crate::config::{Damping, RunConfig};
use crate::csvout::{format_float, render, Cell};
use crate::sweep::{self, Point};
use thirdsound::lindblad::{fig4_comparison, SolverOptions, SpectrumResult};
use thirdsound::spectra::{perturbative_levels, SmallParams};
use thirdsound::springs::{
    blockade_report, critical_velocity_ratios, oscillator_params, spring_constants, Film, Material,
};
use thirdsound::thermal::{thermal_quality_factor, PropertyTable};
use thirdsound::{Error, Result};

fn film_for(config: &RunConfig, point: &Point) -> Result<Film> {
    Film::new(
        point.radius_nm * 1e-9,
        point.thickness_nm * 1e-9,
        Material {
            a_vdw: config.a_vdw,
            rho: config.rho,
            rho_he: config.rho_he,
        },
    )
}

fn warnings_cell(warnings: &[String]) -> Cell {
    Cell::Text(warnings.join("; "))
}

/// `springs`: spring constants and oscillator parameters per sweep point.
pub fn cmd_springs(config: &RunConfig, jobs: Option<usize>) -> Result<String> {
    for axis in &config.sweep {
        if axis.name == "f" {
            return Err(Error::Domain(
                "springs: the `f` axis only applies to `thermal`".to_string(),
            ));
        }
    }
    let mode = config.mode()?;
    let points = sweep::points(config);
    let rows = sweep::run(jobs, &points, |point| {
        let film = film_for(config, point)?;
        let spring = spring_constants(&film, mode)?;
        let params = oscillator_params(&film, mode)?;
        let mut warnings = film.validity_warnings();
        let pert = perturbative_levels(&params, &spring, 1)?;
        if let Some(w) = pert.validity_warning() {
            warnings.push(w);
        }
        Ok(vec![
            Cell::Float(point.radius_nm),
            Cell::Float(point.thickness_nm),
            Cell::Int(config.mu as i64),
            Cell::Int(config.nu as i64),
            Cell::Float(point.temperature),
            Cell::Float(spring.k),
            Cell::Float(spring.beta),
            Cell::Float(spring.alpha),
            Cell::Float(spring.alpha_eff),
            Cell::Float(params.omega_m / (2.0 * PI)),
            Cell::Float(params.m_eff),
            Cell::Float(params.x_zpf),
            Cell::Float(params.delta_omega / (2.0 * PI)),
            Cell::Float(params.delta_omega_bare / (2.0 * PI)),
            Cell::Float(params.omega_m / params.delta_omega),
            warnings_cell(&warnings),
        ])
    })?;
    Ok(render(
        &config.hash(),
        &[
            "R_nm",
            "d_nm",
            "mu",
            "nu",
            "T_K",
            "k_N_per_m",
            "beta_N_per_m2",
            "alpha_N_per_m3",
            "alpha_eff_N_per_m3",
            "omega_m_hz",
            "m_eff_kg",
            "x_zpf_m",
            "delta_omega_hz",
            "delta_omega_bare_hz",
            "required_q",
            "warnings",
        ],
        &rows,
    ))
}

/// Output bundle of `spectrum`: the main grid CSV plus the peaks sidecar.
pub struct SpectrumOutput {
    pub table: String,
    pub peaks: String,
}

/// `spectrum`: the three-model comparison on one aligned frequency grid.
pub fn cmd_spectrum(config: &RunConfig) -> Result<SpectrumOutput> {
    if !config.sweep.is_empty() {
        return Err(Error::Domain(
            "spectrum: sweeps are not supported; remove the [sweep] section".to_string(),
        ));
    }
    let film = config.film()?;
    let mode = config.mode()?;
    let params = oscillator_params(&film, mode)?;
    let quality = match config.damping {
        Damping::Quality(q) => q,
        Damping::GammaHz(hz) => params.omega_m / (2.0 * PI * hz),
    };
    let opts = SolverOptions {
        basis_size: config.basis_size,
        kept: config.kept,
        auto_converge: config.auto_converge,
        convergence_rel: config.convergence,
    };
    if config.temperature > 0.0 {
        let n_th = thirdsound::lindblad::thermal_occupation(
            thirdsound::constants::HBAR * params.omega_m,
            config.temperature,
        )?;
        let recommended = thirdsound::lindblad::QuantumModel::recommended_kept(n_th);
        if config.kept < recommended {
            eprintln!(
                "warning: M = {} retained levels is small for n_th = {n_th:.1}; \
                 line weights will be truncated (recommend M >= {recommended})",
                config.kept
            );
        }
    }

    let comparison = if config.harmonic {
        // Harmonic reference run: zero the nonlinear constants everywhere.
        let spring = spring_constants(&film, mode)?.pure_duffing(0.0);
        let gamma = params.omega_m / quality;
        let lo = params.omega_m - 10.0 * gamma;
        let hi = params.omega_m + 10.0 * gamma;
        let n = 4000;
        let grid: Vec<f64> = (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .collect();
        let run = |s: &thirdsound::SpringSet| -> Result<SpectrumResult> {
            let model = thirdsound::lindblad::QuantumModel::build(
                &params,
                s,
                gamma,
                config.temperature,
                opts,
            )?;
            let liou = thirdsound::lindblad::Liouvillian::new(&model)?;
            let rho = thirdsound::lindblad::steady_state(&liou)?;
            let modes = thirdsound::lindblad::correlation_modes(&model, &liou, &rho)?;
            Ok(thirdsound::lindblad::spectrum_from_modes(&modes, &grid))
        };
        let spec = run(&spring)?;
        thirdsound::lindblad::Fig4Comparison {
            full: spec.clone(),
            effective: spec.clone(),
            duffing: spec,
            delta_omega_eff: 0.0,
            delta_omega_bare: 0.0,
            omega_m: params.omega_m,
            gamma,
        }
    } else {
        fig4_comparison(&film, mode, config.temperature, quality, opts)?
    };

    let hash = config.hash();
    let mut rows = Vec::with_capacity(comparison.full.frequencies.len());
    for i in 0..comparison.full.frequencies.len() {
        rows.push(vec![
            Cell::Float(comparison.full.frequencies[i] / (2.0 * PI)),
            Cell::Float(comparison.full.s_xx[i]),
            Cell::Float(comparison.effective.s_xx[i]),
            Cell::Float(comparison.duffing.s_xx[i]),
        ]);
    }
    let table = render(
        &hash,
        &["omega_hz", "s_xx_full", "s_xx_eff", "s_xx_duffing"],
        &rows,
    );

    let mut peak_rows = Vec::new();
    for (kind, spec) in [
        ("full", &comparison.full),
        ("effective", &comparison.effective),
        ("duffing", &comparison.duffing),
    ] {
        for (i, peak) in spec.peak_locations.iter().enumerate() {
            peak_rows.push(vec![
                Cell::Text(kind.to_string()),
                Cell::Int(i as i64),
                Cell::Float(peak / (2.0 * PI)),
            ]);
        }
    }
    // Analytic markers Ω_m + (n+1) δΩ for both quartic strengths.
    for n in 0..6i64 {
        let ladder = |d: f64| (comparison.omega_m + (n as f64 + 1.0) * d) / (2.0 * PI);
        peak_rows.push(vec![
            Cell::Text("marker_eff".to_string()),
            Cell::Int(n),
            Cell::Float(ladder(comparison.delta_omega_eff)),
        ]);
        peak_rows.push(vec![
            Cell::Text("marker_bare".to_string()),
            Cell::Int(n),
            Cell::Float(ladder(comparison.delta_omega_bare)),
        ]);
    }
    let peaks = render(&hash, &["kind", "index", "omega_hz"], &peak_rows);
    Ok(SpectrumOutput { table, peaks })
}

/// `thermal`: quality-factor surface over T and f axes.
pub fn cmd_thermal(config: &RunConfig, jobs: Option<usize>) -> Result<String> {
    for axis in &config.sweep {
        if !matches!(axis.name.as_str(), "T" | "f" | "d") {
            return Err(Error::Domain(format!(
                "thermal: axis `{}` not supported (use T, f or d)",
                axis.name
            )));
        }
    }
    let table = match &config.property_table {
        Some(path) => PropertyTable::load(std::path::Path::new(path))?,
        None => PropertyTable::bundled(),
    };
    let mode = config.mode()?;
    let points = sweep::points(config);
    let rows = sweep::run(jobs, &points, |point| {
        let film = film_for(config, point)?;
        let omega = match point.frequency_hz {
            Some(f) => 2.0 * PI * f,
            None => oscillator_params(&film, mode)?.omega_m,
        };
        let props = table.at(point.temperature)?;
        let result = thermal_quality_factor(&props, &film, omega)?;
        let warnings = if result.clamped {
            String::new()
        } else {
            "normal fluid not viscously clamped; model out of validity".to_string()
        };
        Ok(vec![
            Cell::Float(point.temperature),
            Cell::Float(omega / (2.0 * PI)),
            Cell::Float(point.thickness_nm),
            Cell::Float(result.quality),
            Cell::Bool(result.clamped),
            Cell::Float(result.penetration_depth),
            Cell::Float(result.c3.re),
            Cell::Float(result.c3.im),
            Cell::Text(warnings),
        ])
    })?;
    Ok(render(
        &config.hash(),
        &[
            "T_K",
            "f_hz",
            "d_nm",
            "Q",
            "clamped",
            "penetration_depth_m",
            "c3_re_m_per_s",
            "c3_im_m_per_s",
            "warnings",
        ],
        &rows,
    ))
}

/// Output bundle of `checks`: human-readable report plus a CSV row.
pub struct ChecksOutput {
    pub report: String,
    pub table: String,
}

/// `checks`: validity flags, critical-velocity ratios and blockade verdict.
pub fn cmd_checks(config: &RunConfig) -> Result<ChecksOutput> {
    if !config.sweep.is_empty() {
        return Err(Error::Domain(
            "checks: sweeps are not supported; remove the [sweep] section".to_string(),
        ));
    }
    let film = config.film()?;
    let mode = config.mode()?;
    let spring = spring_constants(&film, mode)?;
    let params = oscillator_params(&film, mode)?;
    let gamma = config.damping.gamma(params.omega_m);
    let blockade = blockade_report(&params, &spring, gamma)?;
    let velocity = critical_velocity_ratios(&film, mode, config.temperature)?;
    let small = SmallParams::new(&params, &spring);
    let warnings = film.validity_warnings();

    let mut report = String::new();
    report.push_str(&format!(
        "mode ({}, {}) on R = {} nm, d = {} nm at T = {} K\n",
        config.mu, config.nu, config.radius_nm, config.thickness_nm, config.temperature
    ));
    report.push_str(&format!(
        "  omega_m/2pi        = {} Hz\n",
        format_float(params.omega_m / (2.0 * PI))
    ));
    report.push_str(&format!(
        "  delta_omega/2pi    = {} Hz (bare alpha: {} Hz)\n",
        format_float(params.delta_omega / (2.0 * PI)),
        format_float(params.delta_omega_bare / (2.0 * PI))
    ));
    report.push_str(&format!(
        "  gamma/2pi          = {} Hz\n",
        format_float(gamma / (2.0 * PI))
    ));
    report.push_str(&format!(
        "  single-phonon resolved: {} (required Q = {}, Qf = {} Hz)\n",
        blockade.single_phonon_resolved,
        format_float(blockade.required_q),
        format_float(blockade.qf_product)
    ));
    report.push_str(&format!(
        "  x_zpf = {} m, x_crit = {} m (amplitude criterion: {})\n",
        format_float(params.x_zpf),
        format_float(blockade.x_crit),
        blockade.resolved_by_amplitude
    ));
    report.push_str(&format!(
        "  v_zpf/v_c = {}, v_th/v_c = {}\n",
        format_float(velocity.zpf_ratio),
        format_float(velocity.thermal_ratio)
    ));
    report.push_str(&format!(
        "  perturbative small parameters: beta {} / alpha {}\n",
        format_float(small.beta_term),
        format_float(small.alpha_term)
    ));
    if warnings.is_empty() {
        report.push_str("  validity: ok\n");
    } else {
        for w in &warnings {
            report.push_str(&format!("  warning: {w}\n"));
        }
    }

    let row = vec![
        Cell::Float(config.radius_nm),
        Cell::Float(config.thickness_nm),
        Cell::Int(config.mu as i64),
        Cell::Int(config.nu as i64),
        Cell::Float(config.temperature),
        Cell::Float(gamma / (2.0 * PI)),
        Cell::Float(params.delta_omega / (2.0 * PI)),
        Cell::Bool(blockade.single_phonon_resolved),
        Cell::Float(blockade.required_q),
        Cell::Float(blockade.qf_product),
        Cell::Float(blockade.x_crit),
        Cell::Float(params.x_zpf),
        Cell::Float(velocity.zpf_ratio),
        Cell::Float(velocity.thermal_ratio),
        warnings_cell(&warnings),
    ];
    let table = render(
        &config.hash(),
        &[
            "R_nm",
            "d_nm",
            "mu",
            "nu",
            "T_K",
            "gamma_hz",
            "delta_omega_hz",
            "single_phonon_resolved",
            "required_q",
            "qf_product_hz",
            "x_crit_m",
            "x_zpf_m",
            "v_zpf_over_vc",
            "v_th_over_vc",
            "warnings",
        ],
        &[row],
    );
    Ok(ChecksOutput { report, table })
}
