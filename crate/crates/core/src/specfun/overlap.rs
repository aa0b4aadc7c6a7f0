//! Mode overlap coefficients and angular factors.
//!
//! The spring constants of a confined mode reduce to radial integrals
//! φ⁽ᵖ⁾ = ∫₀^ζ Jμᵖ(q) q dq / (ζ² Jμᵖ(ζ)) for p = 2, 3, 4 together with the
//! closed-form angular integrals of cosᵖ(μθ). φ values are memoized per
//! (p, mode) because parameter sweeps reuse them heavily.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;
use std::sync::OnceLock;

use super::bessel::bessel_j;
use super::quad::integrate;
use super::zeros::zeta;
use super::{Boundary, ModeIndex};
use crate::error::{Error, Result};

/// Relative tolerance of the radial quadrature.
const QUAD_REL_TOL: f64 = 1e-10;
/// Required agreement between the p = 2 closed form and its quadrature.
const P2_CROSS_CHECK_TOL: f64 = 1e-8;

/// A computed overlap coefficient φ⁽ᵖ⁾ for one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapCoefficient {
    pub p: u8,
    pub mode: ModeIndex,
    pub value: f64,
}

/// ∫₀^{2π} cosᵖ(μθ) dθ for p ∈ {2, 3, 4}: π(1+δ_{μ0}), 2π δ_{μ0},
/// π(3+5δ_{μ0})/4.
pub fn angular_factor(p: u8, mu: u32) -> Result<f64> {
    let delta = if mu == 0 { 1.0 } else { 0.0 };
    match p {
        2 => Ok(PI * (1.0 + delta)),
        3 => Ok(2.0 * PI * delta),
        4 => Ok(PI * (3.0 + 5.0 * delta) / 4.0),
        _ => Err(Error::domain(format!(
            "angular_factor: power p = {p} outside {{2, 3, 4}}"
        ))),
    }
}

/// Normalized mode profile Jμ(ζ r/R) cos(μθ); equals Jμ(ζ) at the rim
/// reference point (r/R = 1, θ = 0).
pub fn mode_shape(mode: ModeIndex, r_over_radius: f64, theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r_over_radius) {
        return Err(Error::domain(format!(
            "mode_shape: r/R = {r_over_radius} outside [0, 1]"
        )));
    }
    let z = zeta(mode)?;
    Ok(bessel_j(mode.mu(), z * r_over_radius)? * (mode.mu() as f64 * theta).cos())
}

fn cache() -> &'static Mutex<HashMap<(u8, ModeIndex), f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, ModeIndex), f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// φ⁽ᵖ⁾ for the given mode.
///
/// For p = 2 the closed form ½(1 − μ²/ζ²) is returned after verifying the
/// quadrature agrees to 1e-8 (the closed form uses J'μ(ζ) = 0, so it only
/// applies to free boundary conditions; fixed modes always use quadrature).
pub fn phi(p: u8, mode: ModeIndex) -> Result<OverlapCoefficient> {
    if !(2..=4).contains(&p) {
        return Err(Error::domain(format!(
            "phi: power p = {p} outside {{2, 3, 4}}"
        )));
    }
    if let Some(&value) = cache().lock().unwrap().get(&(p, mode)) {
        return Ok(OverlapCoefficient { p, mode, value });
    }

    let quadrature = phi_by_quadrature(p, mode)?;
    let value = if p == 2 && mode.boundary() == Boundary::Free {
        let z = zeta(mode)?;
        let closed = 0.5 * (1.0 - (mode.mu() as f64 / z).powi(2));
        if (closed - quadrature).abs() > P2_CROSS_CHECK_TOL * closed.abs().max(1.0) {
            return Err(Error::internal(format!(
                "phi(2, {mode}): closed form {closed} and quadrature {quadrature} disagree"
            )));
        }
        closed
    } else {
        quadrature
    };

    cache().lock().unwrap().insert((p, mode), value);
    Ok(OverlapCoefficient { p, mode, value })
}

/// Radial integral ∫₀^ζ Jμᵖ q dq / (ζ² Jμᵖ(ζ)) by adaptive quadrature.
///
/// For p = 3 the integrand is signed; the interval is split at the interior
/// zeros of Jμ so each panel has one sign.
pub fn phi_by_quadrature(p: u8, mode: ModeIndex) -> Result<f64> {
    if !(2..=4).contains(&p) {
        return Err(Error::domain(format!(
            "phi: power p = {p} outside {{2, 3, 4}}"
        )));
    }
    let mu = mode.mu();
    let z = zeta(mode)?;
    let f = |q: f64| {
        bessel_j(mu, q)
            .map(|j| j.powi(i32::from(p)) * q)
            .unwrap_or(f64::NAN)
    };

    let mut breakpoints = vec![0.0];
    if p == 3 {
        breakpoints.extend(interior_bessel_zeros(mu, z)?);
    }
    breakpoints.push(z);

    let mut total = 0.0;
    let mut scale = 0.0_f64;
    for pair in breakpoints.windows(2) {
        let q = integrate(&f, pair[0], pair[1], QUAD_REL_TOL, 0.0)?;
        total += q.value;
        scale = scale.max(q.value.abs());
    }
    if !total.is_finite() {
        return Err(Error::numerical(format!(
            "phi({p}, {mode}): integrand evaluation failed"
        )));
    }
    // Signed panels may cancel; make sure the sum is still meaningful.
    if p == 3 && scale > 0.0 && total.abs() < 1e-13 * scale {
        return Err(Error::numerical(format!(
            "phi(3, {mode}): cancellation leaves no significant digits"
        )));
    }
    let denom = bessel_j(mu, z)?.powi(i32::from(p));
    if denom == 0.0 {
        return Err(Error::numerical(format!(
            "phi({p}, {mode}): rim amplitude vanishes (fixed-boundary node)"
        )));
    }
    Ok(total / (z * z * denom))
}

/// Zeros of Jμ strictly inside (0, limit).
fn interior_bessel_zeros(mu: u32, limit: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for k in 1..=200u32 {
        let root = zeta(ModeIndex::with_boundary(mu, k, Boundary::Fixed)?)?;
        if root >= limit {
            break;
        }
        out.push(root);
    }
    Ok(out)
}
