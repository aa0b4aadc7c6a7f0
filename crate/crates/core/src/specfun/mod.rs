//! Special functions and quadrature for circular drum modes.
//!
//! Provides Bessel functions of the first kind for integer order, the roots
//! that select confined Bessel modes, Gauss-Kronrod quadrature, and the
//! radial overlap coefficients that enter every spring constant.

mod bessel;
mod overlap;
mod quad;
mod zeros;

pub use bessel::{bessel_j, bessel_j_prime, MAX_ORDER};
pub use overlap::{angular_factor, mode_shape, phi, OverlapCoefficient};
pub use quad::{gauss_kronrod_15, integrate, Quadrature};
pub use zeros::zeta;

use crate::error::{Error, Result};

/// Boundary condition selecting the mode root family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Boundary {
    /// Volume-conserving modes: roots of J'μ (extremum of amplitude at the rim).
    #[default]
    Free,
    /// Pinned-rim modes: roots of Jμ.
    Fixed,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Boundary::Free => write!(f, "free"),
            Boundary::Fixed => write!(f, "fixed"),
        }
    }
}

/// Azimuthal and radial mode numbers of a confined drum mode.
///
/// `mu` counts nodal diameters, `nu ≥ 1` counts radial nodes. For free
/// boundary conditions the trivial stationary point of J₀' at the origin is
/// excluded, so `(0, 1)` maps to the root 3.8317.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    mu: u32,
    nu: u32,
    boundary: Boundary,
}

impl ModeIndex {
    /// Mode with the given symmetry numbers and boundary condition.
    pub fn with_boundary(mu: u32, nu: u32, boundary: Boundary) -> Result<Self> {
        if nu < 1 {
            return Err(Error::domain("radial mode number nu must be >= 1"));
        }
        if u64::from(mu) > MAX_ORDER as u64 {
            return Err(Error::domain(format!(
                "azimuthal order mu = {mu} exceeds supported maximum {MAX_ORDER}"
            )));
        }
        Ok(ModeIndex { mu, nu, boundary })
    }

    /// Free-boundary mode `(mu, nu)`.
    pub fn new(mu: u32, nu: u32) -> Result<Self> {
        Self::with_boundary(mu, nu, Boundary::Free)
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// 1 for rotationally invariant modes (mu = 0), else 0.
    pub fn delta_mu0(&self) -> f64 {
        if self.mu == 0 {
            1.0
        } else {
            0.0
        }
    }

    /// The root ζ selecting this mode.
    pub fn zeta(&self) -> Result<f64> {
        zeta(*self)
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.mu, self.nu)?;
        if self.boundary == Boundary::Fixed {
            write!(f, "[fixed]")?;
        }
        Ok(())
    }
}
