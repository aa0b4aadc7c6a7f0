//! Open-quantum-system solver for the damped anharmonic mode.
//!
//! The Hamiltonian H = ħΩ(n+½) + (β/3)x³ + (α/4)x⁴ is built in a truncated
//! harmonic number basis and diagonalized. Damping enters through the
//! eigenbasis Lindblad equation
//!
//! `dρ/dt = −(i/ħ)[H, ρ]
//!        + (Γ/2) Σ_{k>j} |x̃_jk|² [ (n_th[δE_kj]+1) D_jk + n_th[δE_kj] D_kj ] ρ`
//!
//! with `D_jk ρ = 2|j⟩⟨k|ρ|k⟩⟨j| − |k⟩⟨k|ρ − ρ|k⟩⟨k|` and x̃_jk = x_jk/x_zpf.
//! The x_zpf normalization makes the harmonic limit a textbook damped
//! oscillator with energy decay rate Γ.
//!
//! Because every jump operator is a matrix unit in the energy eigenbasis, the
//! Liouvillian splits exactly into a classical rate equation for the
//! populations and one decoupled complex rate per coherence. The steady state
//! is still extracted from the full M²×M² matrix representation (null-space
//! via SVD), which doubles as a degeneracy diagnostic; the correlation
//! function and spectrum use the exact eigenstructure.
//!
//! Conventions: the amplitude operators are ε⁺ = Σ_{k>j} x_jk |j⟩⟨k| and
//! ε⁻ = (ε⁺)†. The correlation is G(τ) = Tr[ε⁺ e^{Lτ}(ε⁻ ρ_ss)], which in
//! the harmonic limit at T = 0 reduces to the damped-oscillator coherence
//! x_zpf² e^{(−iΩ_m − Γ/2)τ}, and the spectrum is its Fourier transform with
//! peaks at the positive transition frequencies (E_k − E_j)/ħ.

mod correlation;
mod hamiltonian;
mod liouvillian;
mod model;
mod spectrum;
mod steady;

pub use correlation::{
    amplitude_trace, correlation, correlation_modes, evolve, regression_seed, CorrelationMode,
};
pub use hamiltonian::{build_hamiltonian, diagonalize, position_matrix, Eigenpairs};
pub use liouvillian::{thermal_occupation, Liouvillian};
pub use model::{QuantumModel, SolverOptions};
pub use spectrum::{
    fig4_comparison, find_peaks, spectrum_by_dft, spectrum_from_modes, Fig4Comparison,
    SpectrumResult,
};
pub use steady::steady_state;

/// Complex scalar used throughout the solver.
pub type C64 = nalgebra::Complex<f64>;
/// Dense complex matrix (density matrices, superoperators).
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense real matrix (Hamiltonians, position operators).
pub type RMatrix = nalgebra::DMatrix<f64>;
