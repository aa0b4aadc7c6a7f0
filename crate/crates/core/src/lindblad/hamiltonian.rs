//! Number-basis Hamiltonian assembly and dense symmetric diagonalization.

use nalgebra::SymmetricEigen;

use super::RMatrix;
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::springs::{OscillatorParams, SpringSet};

/// Position operator x = x_zpf (a + a†) in the n-dimensional number basis.
pub fn position_matrix(x_zpf: f64, n: usize) -> RMatrix {
    let mut x = RMatrix::zeros(n, n);
    for i in 0..n - 1 {
        let v = x_zpf * ((i + 1) as f64).sqrt();
        x[(i, i + 1)] = v;
        x[(i + 1, i)] = v;
    }
    x
}

/// H = ħΩ(n+½) + (β/3)x³ + (α/4)x⁴ as a real symmetric n×n matrix (joules).
pub fn build_hamiltonian(
    params: &OscillatorParams,
    spring: &SpringSet,
    n: usize,
) -> Result<RMatrix> {
    if n < 8 {
        return Err(Error::domain("build_hamiltonian: basis size must be >= 8"));
    }
    let x = position_matrix(params.x_zpf, n);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let x4 = &x2 * &x2;

    let mut h = x3 * (spring.beta / 3.0) + x4 * (spring.alpha / 4.0);
    for i in 0..n {
        h[(i, i)] += HBAR * params.omega_m * (i as f64 + 0.5);
    }
    // Matrix products of symmetric factors round asymmetrically at the last bit.
    let ht = h.transpose();
    h = (h + ht) * 0.5;
    Ok(h)
}

/// Lowest eigenpairs of a symmetric matrix, ascending.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    /// Eigenvalues, ascending, length `kept`.
    pub values: Vec<f64>,
    /// Matching eigenvectors as columns (dim × kept), orthonormal.
    pub vectors: RMatrix,
}

/// Diagonalize a symmetric matrix and keep the lowest `kept` eigenpairs.
///
/// The residual ‖Hv − Ev‖ of every retained pair is checked against
/// 1e-10·‖H‖.
pub fn diagonalize(h: &RMatrix, kept: usize) -> Result<Eigenpairs> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::domain("diagonalize: matrix must be square"));
    }
    if kept == 0 || kept > n {
        return Err(Error::domain(format!(
            "diagonalize: kept = {kept} outside 1..={n}"
        )));
    }
    let scale = h.amax();
    for i in 0..n {
        for j in 0..i {
            if (h[(i, j)] - h[(j, i)]).abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::domain("diagonalize: matrix is not symmetric"));
            }
        }
    }

    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values: Vec<f64> = order
        .iter()
        .take(kept)
        .map(|&i| eig.eigenvalues[i])
        .collect();
    let mut vectors = RMatrix::zeros(n, kept);
    for (col, &i) in order.iter().take(kept).enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }

    let norm = eig.eigenvalues.amax().max(f64::MIN_POSITIVE);
    for (col, &value) in values.iter().enumerate() {
        let v = vectors.column(col);
        let residual = (h * v - v * value).norm();
        if residual > 1e-10 * norm {
            return Err(Error::internal(format!(
                "diagonalize: eigenpair {col} residual {residual:.3e} exceeds 1e-10 * {norm:.3e}"
            )));
        }
    }
    Ok(Eigenpairs { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn harmonic_params(omega_m: f64, m_eff: f64) -> OscillatorParams {
        OscillatorParams {
            omega_m,
            m_eff,
            x_zpf: (HBAR / (2.0 * m_eff * omega_m)).sqrt(),
            delta_omega: 0.0,
            delta_omega_bare: 0.0,
            c3: 0.0,
        }
    }

    fn no_springs() -> SpringSet {
        SpringSet {
            k: 0.0,
            beta: 0.0,
            alpha: 0.0,
            alpha_eff: 0.0,
        }
    }

    /// Operator-algebra oracle: apply (a + a†)^power to |0⟩ by expanding in
    /// the Fock basis, then project back onto |0⟩.
    fn vacuum_moment(power: usize, dim: usize) -> f64 {
        let mut v = vec![0.0_f64; dim];
        v[0] = 1.0;
        for _ in 0..power {
            let mut next = vec![0.0_f64; dim];
            for (n, &c) in v.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                if n > 0 {
                    next[n - 1] += c * (n as f64).sqrt(); // a
                }
                if n + 1 < dim {
                    next[n + 1] += c * ((n + 1) as f64).sqrt(); // a†
                }
            }
            v = next;
        }
        v[0]
    }

    #[test]
    fn harmonic_hamiltonian_is_diagonal() {
        let p = harmonic_params(1e9, 1e-19);
        let h = build_hamiltonian(&p, &no_springs(), 12).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                if i == j {
                    assert_relative_eq!(
                        h[(i, j)],
                        HBAR * p.omega_m * (i as f64 + 0.5),
                        epsilon = 1e-12 * HBAR * p.omega_m
                    );
                } else {
                    assert_eq!(h[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn position_matrix_elements() {
        let x = position_matrix(2.5e-13, 6);
        assert_relative_eq!(x[(0, 1)], 2.5e-13, epsilon = 1e-25);
        assert_relative_eq!(x[(2, 3)], 2.5e-13 * 3f64.sqrt(), epsilon = 1e-25);
        assert_eq!(x[(0, 2)], 0.0);
    }

    #[test]
    fn quartic_vacuum_expectation_matches_operator_algebra() {
        // <0|(a+a†)^4|0> = 3, so <0|x^4|0> = 3 x_zpf^4; the matrix-power path
        // reproduces the symbolic expansion.
        assert_abs_diff_eq!(vacuum_moment(4, 10), 3.0, epsilon = 1e-12);
        let x_zpf = 3e-13;
        let x = position_matrix(x_zpf, 30);
        let x4 = (&x * &x) * (&x * &x);
        assert_relative_eq!(x4[(0, 0)], 3.0 * x_zpf.powi(4), epsilon = 1e-10);
        // And the corresponding first-order level shift for n = 0 is
        // (alpha/4) * 3 x_zpf^4.
        let p = harmonic_params(1e9, 1e-19);
        let alpha = 1e10;
        let spring = SpringSet {
            k: 0.0,
            beta: 0.0,
            alpha,
            alpha_eff: alpha,
        };
        let h = build_hamiltonian(&p, &spring, 40).unwrap();
        let shift = h[(0, 0)] - 0.5 * HBAR * p.omega_m;
        assert_relative_eq!(shift, 0.25 * alpha * 3.0 * p.x_zpf.powi(4), epsilon = 1e-10);
    }

    #[test]
    fn harmonic_eigenvalues() {
        let p = harmonic_params(2.3e8, 5e-20);
        let h = build_hamiltonian(&p, &no_springs(), 24).unwrap();
        let eig = diagonalize(&h, 8).unwrap();
        for (n, value) in eig.values.iter().enumerate() {
            assert_relative_eq!(
                *value,
                HBAR * p.omega_m * (n as f64 + 0.5),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn two_by_two_exchange_matrix() {
        let h = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let eig = diagonalize(&h, 2).unwrap();
        assert_abs_diff_eq!(eig.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let p = harmonic_params(1e9, 1e-19);
        let spring = SpringSet {
            k: 0.0,
            beta: -4e4,
            alpha: 1e10,
            alpha_eff: 1e10,
        };
        let h = build_hamiltonian(&p, &spring, 40).unwrap();
        let eig = diagonalize(&h, 10).unwrap();
        let gram = eig.vectors.transpose() * &eig.vectors;
        for i in 0..10 {
            for j in 0..10 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(gram[(i, j)], expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn small_duffing_matches_perturbation_theory() {
        // Cross-module oracle: level shifts agree with the closed-form series
        // within the dropped third-order term.
        use crate::spectra::perturbative_levels;
        let p = harmonic_params(1e9, 1e-19);
        let alpha = 5e9; // alpha_term ~ 1.3e-5
        let spring = SpringSet {
            k: p.m_eff * p.omega_m * p.omega_m,
            beta: 0.0,
            alpha,
            alpha_eff: alpha,
        };
        let h = build_hamiltonian(&p, &spring, 80).unwrap();
        let eig = diagonalize(&h, 6).unwrap();
        let pert = perturbative_levels(&p, &spring, 5).unwrap();
        let a = pert.small_params.alpha_term;
        for n in 0..6 {
            let bound = 100.0 * (n as f64 + 2.0).powi(6) * a.powi(3) * HBAR * p.omega_m
                + 1e-13 * HBAR * p.omega_m;
            assert!(
                (eig.values[n] - pert.levels[n]).abs() < bound,
                "level {n}: |{:.6e} - {:.6e}| >= {bound:.3e}",
                eig.values[n],
                pert.levels[n]
            );
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = harmonic_params(1e9, 1e-19);
        assert!(build_hamiltonian(&p, &no_springs(), 7).is_err());
        let asym = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(diagonalize(&asym, 1).is_err());
        let h = RMatrix::identity(4, 4);
        assert!(diagonalize(&h, 0).is_err());
        assert!(diagonalize(&h, 5).is_err());
    }
}
