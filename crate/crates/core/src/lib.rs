//! Nonlinear mechanics of circularly confined superfluid-helium third-sound
//! resonators.
//!
//! A thin superfluid film confined to a disk of radius `R` supports third-sound
//! surface waves whose restoring force comes from the van der Waals attraction
//! to the substrate. The attraction is anharmonic, so each confined Bessel mode
//! behaves as an oscillator with cubic and quartic (Duffing) spring corrections.
//! This crate computes, from the film geometry and material alone:
//!
//! * the mode spring constants `k`, `beta`, `alpha` and the effective Duffing
//!   constant `alpha_eff` ([`springs`]),
//! * the single-phonon frequency shift and phonon-blockade figures of merit
//!   ([`springs`]),
//! * perturbative energy levels and transition frequencies ([`spectra`]),
//! * displacement spectra of the damped resonator from the eigenbasis Lindblad
//!   master equation ([`lindblad`]),
//! * thermal-dissipation quality factors from the complex third-sound speed
//!   ([`thermal`]),
//! * superfluid critical-velocity safety margins ([`springs`]).
//!
//! The special-function layer (Bessel functions, zeros of their derivatives,
//! and the mode overlap coefficients) lives in [`specfun`].

pub mod constants;
pub mod error;
pub mod lindblad;
pub mod specfun;
pub mod spectra;
pub mod springs;
pub mod thermal;

pub use error::{Error, Result};
pub use specfun::{Boundary, ModeIndex};
pub use springs::{Film, Material, OscillatorParams, SpringSet};
