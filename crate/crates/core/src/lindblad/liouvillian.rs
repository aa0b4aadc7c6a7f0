//! Eigenbasis Lindblad superoperator.

use super::model::QuantumModel;
use super::{CMatrix, RMatrix, C64};
use crate::constants::{HBAR, K_B};
use crate::error::{Error, Result};

/// Bose-Einstein occupation at energy splitting `delta_e` (J) and
/// temperature `temperature` (K); zero temperature gives zero.
pub fn thermal_occupation(delta_e: f64, temperature: f64) -> Result<f64> {
    if temperature < 0.0 {
        return Err(Error::domain(
            "thermal_occupation: temperature must be >= 0",
        ));
    }
    if delta_e <= 0.0 {
        return Err(Error::domain(
            "thermal_occupation: energy splitting must be positive",
        ));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (delta_e / (K_B * temperature)).exp_m1())
}

/// The Lindblad generator in the energy eigenbasis.
///
/// Populations obey a classical rate equation dp/dt = Q p whose rates are
/// W_{j←k} = Γ |x̃_jk|² (n_th+1) downward and W_{k←j} = Γ |x̃_jk|² n_th
/// upward for each pair k > j; every coherence ρ_ab relaxes independently at
/// γ_ab = (out(a) + out(b))/2 while rotating at ω_ab = (E_a − E_b)/ħ.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    dim: usize,
    /// ω_ab (rad/s), antisymmetric.
    bohr: RMatrix,
    /// γ_ab (rad/s), symmetric, zero diagonal.
    coherence_decay: RMatrix,
    /// Population rate matrix Q (rad/s); columns sum to zero.
    rate_matrix: RMatrix,
}

impl Liouvillian {
    pub fn new(model: &QuantumModel) -> Result<Liouvillian> {
        if model.temperature < 0.0 {
            return Err(Error::domain("liouvillian: temperature must be >= 0"));
        }
        let m = model.eigenvalues.len();
        if m < 2 {
            return Err(Error::domain("liouvillian: need at least two levels"));
        }
        for w in model.eigenvalues.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::internal(
                    "liouvillian: eigenvalues must be strictly ascending",
                ));
            }
        }

        let mut rate_matrix = RMatrix::zeros(m, m);
        for k in 1..m {
            for j in 0..k {
                let x_scaled = model.x_elements[(j, k)] / model.x_zpf;
                let weight = model.gamma * x_scaled * x_scaled;
                if weight == 0.0 {
                    continue;
                }
                let delta_e = model.eigenvalues[k] - model.eigenvalues[j];
                let n_th = if model.temperature == 0.0 {
                    0.0
                } else {
                    thermal_occupation(delta_e, model.temperature)?
                };
                let down = weight * (n_th + 1.0);
                let up = weight * n_th;
                rate_matrix[(j, k)] += down;
                rate_matrix[(k, k)] -= down;
                rate_matrix[(k, j)] += up;
                rate_matrix[(j, j)] -= up;
            }
        }

        let mut bohr = RMatrix::zeros(m, m);
        let mut coherence_decay = RMatrix::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                bohr[(a, b)] = (model.eigenvalues[a] - model.eigenvalues[b]) / HBAR;
                coherence_decay[(a, b)] = 0.5 * (-rate_matrix[(a, a)] - rate_matrix[(b, b)]);
            }
        }

        Ok(Liouvillian {
            dim: m,
            bohr,
            coherence_decay,
            rate_matrix,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total outflow rate of level `a` (rad/s).
    pub fn outflow(&self, a: usize) -> f64 {
        -self.rate_matrix[(a, a)]
    }

    /// Coherence relaxation rate γ_ab.
    pub fn coherence_decay(&self, a: usize, b: usize) -> f64 {
        self.coherence_decay[(a, b)]
    }

    /// Bohr frequency ω_ab.
    pub fn bohr_frequency(&self, a: usize, b: usize) -> f64 {
        self.bohr[(a, b)]
    }

    /// Population rate matrix Q.
    pub fn rate_matrix(&self) -> &RMatrix {
        &self.rate_matrix
    }

    /// Apply the generator to an arbitrary operator.
    pub fn apply(&self, sigma: &CMatrix) -> CMatrix {
        let m = self.dim;
        debug_assert_eq!(sigma.nrows(), m);
        let mut out = CMatrix::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    let mut acc = C64::new(0.0, 0.0);
                    for c in 0..m {
                        acc += C64::from(self.rate_matrix[(a, c)]) * sigma[(c, c)];
                    }
                    out[(a, a)] = acc;
                } else {
                    let lambda = C64::new(-self.coherence_decay[(a, b)], -self.bohr[(a, b)]);
                    out[(a, b)] = lambda * sigma[(a, b)];
                }
            }
        }
        out
    }

    /// Dense M²×M² matrix representation, row-major over (a, b) pairs.
    pub fn matrix(&self) -> CMatrix {
        let m = self.dim;
        let mut mat = CMatrix::zeros(m * m, m * m);
        for a in 0..m {
            for b in 0..m {
                let row = a * m + b;
                if a == b {
                    for c in 0..m {
                        mat[(row, c * m + c)] += C64::from(self.rate_matrix[(a, c)]);
                    }
                } else {
                    mat[(row, row)] = C64::new(-self.coherence_decay[(a, b)], -self.bohr[(a, b)]);
                }
            }
        }
        mat
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Harmonic model in natural units: unit x_zpf, unit decay scale.
    fn harmonic_model(levels: usize, omega: f64, gamma: f64, temperature: f64) -> QuantumModel {
        let eigenvalues: Vec<f64> = (0..levels)
            .map(|n| HBAR * omega * (n as f64 + 0.5))
            .collect();
        let mut x = RMatrix::zeros(levels, levels);
        for n in 0..levels - 1 {
            let v = ((n + 1) as f64).sqrt();
            x[(n, n + 1)] = v;
            x[(n + 1, n)] = v;
        }
        QuantumModel::from_parts(eigenvalues, x, 1.0, gamma, temperature).unwrap()
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, m: usize) -> CMatrix {
        let mut rho = CMatrix::zeros(m, m);
        for a in 0..m {
            rho[(a, a)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for b in 0..a {
                let v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                rho[(b, a)] = v;
                rho[(a, b)] = v.conj();
            }
        }
        rho
    }

    #[test]
    fn trace_preserving_on_random_states() {
        let model = harmonic_model(6, 1e3, 1.0, 0.7e3 * HBAR / K_B);
        let liou = Liouvillian::new(&model).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let rho = random_hermitian(&mut rng, 6);
            let drho = liou.apply(&rho);
            let trace: C64 = (0..6).map(|i| drho[(i, i)]).sum();
            assert_abs_diff_eq!(trace.norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn maps_hermitian_to_hermitian() {
        let model = harmonic_model(6, 1e3, 1.0, 1e3 * HBAR / K_B);
        let liou = Liouvillian::new(&model).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let rho = random_hermitian(&mut rng, 6);
            let drho = liou.apply(&rho);
            for a in 0..6 {
                for b in 0..6 {
                    let anti = drho[(a, b)] - drho[(b, a)].conj();
                    assert_abs_diff_eq!(anti.norm(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn excited_state_decays_at_gamma() {
        let gamma = 2.5;
        let model = harmonic_model(5, 1e3, gamma, 0.0);
        let liou = Liouvillian::new(&model).unwrap();
        let mut rho = CMatrix::zeros(5, 5);
        rho[(1, 1)] = C64::from(1.0);
        let drho = liou.apply(&rho);
        assert_relative_eq!(drho[(1, 1)].re, -gamma, epsilon = 1e-12);
        assert_relative_eq!(drho[(0, 0)].re, gamma, epsilon = 1e-12);
    }

    #[test]
    fn fundamental_coherence_decays_at_half_gamma() {
        let gamma = 2.5;
        let model = harmonic_model(5, 1e3, gamma, 0.0);
        let liou = Liouvillian::new(&model).unwrap();
        assert_relative_eq!(liou.coherence_decay(0, 1), gamma / 2.0, epsilon = 1e-12);
        assert_relative_eq!(liou.bohr_frequency(1, 0), 1e3, epsilon = 1e-9);
    }

    #[test]
    fn matches_hand_assembled_dissipator() {
        // Generic superoperator assembly from explicit jump operators on a
        // small anharmonic system, compared against the rate-structure path.
        let m = 4;
        let mut x = RMatrix::zeros(m, m);
        // Slightly anharmonic position elements, including a weak 0-2 element.
        x[(0, 1)] = 1.0;
        x[(1, 0)] = 1.0;
        x[(1, 2)] = 1.45;
        x[(2, 1)] = 1.45;
        x[(2, 3)] = 1.8;
        x[(3, 2)] = 1.8;
        x[(0, 2)] = 0.12;
        x[(2, 0)] = 0.12;
        let omega = 1e3;
        let eigenvalues: Vec<f64> = (0..m)
            .map(|n| HBAR * omega * (n as f64 + 0.5 + 0.03 * (n * n) as f64))
            .collect();
        let gamma = 1.3;
        let temperature = 1.1e3 * HBAR / K_B;
        let model =
            QuantumModel::from_parts(eigenvalues.clone(), x.clone(), 1.0, gamma, temperature)
                .unwrap();
        let liou = Liouvillian::new(&model).unwrap();

        let oracle = |rho: &CMatrix| -> CMatrix {
            let mut h = CMatrix::zeros(m, m);
            for i in 0..m {
                h[(i, i)] = C64::from(eigenvalues[i]);
            }
            let commutator = (&h * rho - rho * &h) * C64::new(0.0, -1.0 / HBAR);
            let mut diss = CMatrix::zeros(m, m);
            for k in 1..m {
                for j in 0..k {
                    let w = gamma / 2.0 * (x[(j, k)] / 1.0).powi(2);
                    if w == 0.0 {
                        continue;
                    }
                    let n_th =
                        thermal_occupation(eigenvalues[k] - eigenvalues[j], temperature).unwrap();
                    // D_jk with jump |j><k| and D_kj with jump |k><j|.
                    for (amp, (from, to)) in [(w * (n_th + 1.0), (k, j)), (w * n_th, (j, k))] {
                        let mut jump = CMatrix::zeros(m, m);
                        jump[(to, from)] = C64::from(1.0);
                        let jd = jump.adjoint();
                        let term = (&jump * rho * &jd) * C64::from(2.0)
                            - (&jd * &jump * rho)
                            - (rho * &jd * &jump);
                        diss += term * C64::from(amp);
                    }
                }
            }
            commutator + diss
        };

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rho = random_hermitian(&mut rng, m);
            let ours = liou.apply(&rho);
            let reference = oracle(&rho);
            for a in 0..m {
                for b in 0..m {
                    assert_abs_diff_eq!(
                        (ours[(a, b)] - reference[(a, b)]).norm(),
                        0.0,
                        epsilon = 1e-9
                    );
                }
            }
        }
    }

    #[test]
    fn matrix_representation_agrees_with_apply() {
        let model = harmonic_model(4, 1e3, 0.8, 0.9e3 * HBAR / K_B);
        let liou = Liouvillian::new(&model).unwrap();
        let mat = liou.matrix();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_hermitian(&mut rng, 4);
        let vec_rho = CMatrix::from_fn(16, 1, |i, _| rho[(i / 4, i % 4)]);
        let via_matrix = &mat * &vec_rho;
        let direct = liou.apply(&rho);
        for a in 0..4 {
            for b in 0..4 {
                assert_abs_diff_eq!(
                    (via_matrix[(a * 4 + b, 0)] - direct[(a, b)]).norm(),
                    0.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn occupation_limits() {
        assert_eq!(thermal_occupation(1e-25, 0.0).unwrap(), 0.0);
        assert!(thermal_occupation(1e-25, -1.0).is_err());
        assert!(thermal_occupation(0.0, 1.0).is_err());
        // kT >> dE: classical equipartition n ~ kT/dE.
        let n = thermal_occupation(1e-27, 1.0).unwrap();
        assert_relative_eq!(n, K_B / 1e-27, max_relative = 1e-3);
    }
}
