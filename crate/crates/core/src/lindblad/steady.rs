//! Steady state by null-space extraction.

use nalgebra::SymmetricEigen;

use super::liouvillian::Liouvillian;
use super::{CMatrix, C64};
use crate::error::{Error, Result};

/// Stationary density matrix of the Lindblad generator.
///
/// The M²×M² matrix representation is decomposed by SVD; the right singular
/// vector of the vanishing singular value is reshaped, Hermitized and
/// trace-normalized. A second near-zero singular value means the stationary
/// state is not unique and is reported as an error.
pub fn steady_state(liouvillian: &Liouvillian) -> Result<CMatrix> {
    let m = liouvillian.dim();
    let mat = liouvillian.matrix();
    let svd = mat.clone().svd(true, true);
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::internal("steady_state: SVD did not return V^T"))?;

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let sigma_min = svd.singular_values[order[0]];
    let sigma_next = svd.singular_values[order[1]];
    let sigma_max = svd.singular_values[order[order.len() - 1]];

    if sigma_min > 1e-10 * sigma_max {
        return Err(Error::numerical(format!(
            "steady_state: no null vector (smallest singular value {:.3e} of {:.3e})",
            sigma_min, sigma_max
        )));
    }
    if sigma_next <= 1e-10 * sigma_max {
        return Err(Error::numerical(format!(
            "steady_state: degenerate null space (singular values {:.3e} and {:.3e} \
             against largest {:.3e})",
            sigma_min, sigma_next, sigma_max
        )));
    }

    let null = v_t.row(order[0]).adjoint();
    let mut rho = CMatrix::from_fn(m, m, |a, b| null[a * m + b]);
    let rho_adj = rho.adjoint();
    rho = (rho + rho_adj) * C64::from(0.5);

    let trace: C64 = (0..m).map(|i| rho[(i, i)]).sum();
    if trace.norm() < 1e-9 * rho.norm() {
        return Err(Error::numerical(
            "steady_state: null vector carries no trace".to_string(),
        ));
    }
    rho /= trace;
    // Division by a complex trace can leave a residual anti-Hermitian part.
    let rho_adj = rho.adjoint();
    rho = (rho + rho_adj) * C64::from(0.5);

    let residual = matrix_norm(&liouvillian.apply(&rho));
    if residual > 1e-10 * sigma_max * rho.norm().max(1.0) {
        return Err(Error::numerical(format!(
            "steady_state: residual |L rho| = {:.3e} exceeds 1e-10 |L| = {:.3e}",
            residual,
            1e-10 * sigma_max
        )));
    }

    let eig = SymmetricEigen::new(rho.clone());
    for value in eig.eigenvalues.iter() {
        if *value < -1e-12 {
            return Err(Error::numerical(format!(
                "steady_state: negative population {value:.3e}"
            )));
        }
    }
    Ok(rho)
}

fn matrix_norm(m: &CMatrix) -> f64 {
    m.norm()
}
