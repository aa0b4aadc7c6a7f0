//! Truncated-basis quantum model with convergence control.

use super::hamiltonian::{build_hamiltonian, diagonalize};
use super::RMatrix;
use crate::error::{Error, Result};
use crate::springs::{OscillatorParams, SpringSet};

/// Basis-size and retention choices for a solve.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Number-basis dimension N.
    pub basis_size: usize,
    /// Eigenstates M retained for the open-system dynamics. Thermal runs
    /// should keep `M >= 5 + 4 n_th[ħΩ_m]` so the occupied ladder fits.
    pub kept: usize,
    /// Grow N by 25% until the kept eigenvalues are stable.
    pub auto_converge: bool,
    /// Relative stability demanded of every kept eigenvalue under N → N + N/4.
    pub convergence_rel: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            basis_size: 120,
            kept: 15,
            auto_converge: true,
            convergence_rel: 1e-8,
        }
    }
}

/// Diagonalized mode coupled to a thermal bath: the inputs of the Lindblad
/// stage.
#[derive(Debug, Clone)]
pub struct QuantumModel {
    /// Number-basis dimension the eigenpairs were converged at.
    pub basis_size: usize,
    /// Retained eigenstates.
    pub kept: usize,
    /// Lowest eigenvalues (J), ascending.
    pub eigenvalues: Vec<f64>,
    /// Position matrix elements x_jk = <j|x|k> (m) in the retained eigenbasis.
    pub x_elements: RMatrix,
    /// Zero-point amplitude used to normalize the dissipator weights (m).
    pub x_zpf: f64,
    /// Energy decay rate Γ (rad/s).
    pub gamma: f64,
    /// Bath temperature (K).
    pub temperature: f64,
}

impl QuantumModel {
    /// Diagonalize the anharmonic Hamiltonian and retain the lowest levels.
    ///
    /// With `auto_converge` the basis grows by 25% steps until every retained
    /// eigenvalue moves by less than `convergence_rel` under a further growth
    /// step; the returned model uses the larger basis of the final pair.
    pub fn build(
        params: &OscillatorParams,
        spring: &SpringSet,
        gamma: f64,
        temperature: f64,
        opts: SolverOptions,
    ) -> Result<QuantumModel> {
        if gamma.is_nan() || gamma <= 0.0 || gamma.is_infinite() {
            return Err(Error::domain("QuantumModel: gamma must be positive"));
        }
        if temperature.is_nan() || temperature < 0.0 {
            return Err(Error::domain("QuantumModel: temperature must be >= 0"));
        }
        if opts.kept > opts.basis_size {
            return Err(Error::domain("QuantumModel: kept levels exceed basis size"));
        }
        const MAX_BASIS: usize = 4096;

        let mut n = opts.basis_size.max(8);
        let mut current = diagonalize(&build_hamiltonian(params, spring, n)?, opts.kept)?;
        loop {
            if !opts.auto_converge {
                break;
            }
            let bigger_n = n + (n / 4).max(2);
            let bigger = diagonalize(&build_hamiltonian(params, spring, bigger_n)?, opts.kept)?;
            let converged = current
                .values
                .iter()
                .zip(&bigger.values)
                .all(|(a, b)| (a - b).abs() <= opts.convergence_rel * b.abs());
            if converged {
                n = bigger_n;
                current = bigger;
                break;
            }
            if bigger_n > MAX_BASIS {
                return Err(Error::numerical(format!(
                    "basis did not converge below N = {MAX_BASIS}; \
                     last relative change at N = {bigger_n}"
                )));
            }
            n = bigger_n;
            current = bigger;
        }

        // Project the position operator into the retained eigenbasis.
        let x_full = super::hamiltonian::position_matrix(params.x_zpf, n);
        let mut x_elements = current.vectors.transpose() * x_full * &current.vectors;
        let xt = x_elements.transpose();
        x_elements = (x_elements + xt) * 0.5;

        Ok(QuantumModel {
            basis_size: n,
            kept: opts.kept,
            eigenvalues: current.values,
            x_elements,
            x_zpf: params.x_zpf,
            gamma,
            temperature,
        })
    }

    /// Recommended minimum retained levels for a thermal occupation.
    pub fn recommended_kept(n_th: f64) -> usize {
        (5.0 + 4.0 * n_th).ceil() as usize
    }

    /// Construct a model directly from eigenvalues and position elements.
    /// Intended for tests and synthetic systems in natural units.
    pub fn from_parts(
        eigenvalues: Vec<f64>,
        x_elements: RMatrix,
        x_zpf: f64,
        gamma: f64,
        temperature: f64,
    ) -> Result<QuantumModel> {
        let m = eigenvalues.len();
        if x_elements.nrows() != m || x_elements.ncols() != m {
            return Err(Error::domain("from_parts: dimension mismatch"));
        }
        if temperature.is_nan() || temperature < 0.0 {
            return Err(Error::domain("from_parts: temperature must be >= 0"));
        }
        Ok(QuantumModel {
            basis_size: m,
            kept: m,
            eigenvalues,
            x_elements,
            x_zpf,
            gamma,
            temperature,
        })
    }
}
