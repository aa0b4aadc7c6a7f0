//! Roots of Jμ and J'μ selecting the confined modes.
//!
//! Roots are bracketed by scanning the target function on a π/8 grid
//! starting just above μ (consecutive roots are separated by more than
//! that everywhere in the supported range), then polished by bisection
//! with a final secant refinement. Results are memoized.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;
use std::sync::OnceLock;

use super::bessel::{bessel_j, bessel_j_prime};
use super::{Boundary, ModeIndex};
use crate::error::{Error, Result};

const SCAN_STEP: f64 = PI / 8.0;
const MAX_SCAN_STEPS: usize = 40_000;

fn cache() -> &'static Mutex<HashMap<ModeIndex, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<ModeIndex, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ζ_{μ,ν}: the ν-th positive root of J'μ (free boundary) or Jμ (fixed).
///
/// For μ = 0 with free boundary the stationary point at the origin is not
/// counted, so ζ_{0,1} = 3.8317.
pub fn zeta(mode: ModeIndex) -> Result<f64> {
    if let Some(&z) = cache().lock().unwrap().get(&mode) {
        return Ok(z);
    }
    let z = find_root(mode)?;
    cache().lock().unwrap().insert(mode, z);
    Ok(z)
}

fn target(mode: ModeIndex, x: f64) -> Result<f64> {
    match mode.boundary() {
        Boundary::Free => bessel_j_prime(mode.mu(), x),
        Boundary::Fixed => bessel_j(mode.mu(), x),
    }
}

fn find_root(mode: ModeIndex) -> Result<f64> {
    // All roots of both families lie above μ; starting slightly above zero
    // (or above μ) the scan meets them in order.
    let start = (mode.mu() as f64).max(1e-3);
    let mut x0 = start;
    let mut f0 = target(mode, x0)?;
    let mut found = 0u32;

    for _ in 0..MAX_SCAN_STEPS {
        let x1 = x0 + SCAN_STEP;
        let f1 = target(mode, x1)?;
        if f0 == 0.0 {
            // Landed exactly on a root, step past it.
            found += 1;
            if found == mode.nu() {
                return Ok(x0);
            }
        } else if f0.signum() != f1.signum() {
            found += 1;
            if found == mode.nu() {
                let z = refine(mode, x0, x1)?;
                if z <= mode.mu() as f64 {
                    return Err(Error::internal(format!(
                        "root {z} of mode {mode} does not exceed its order"
                    )));
                }
                return Ok(z);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::internal(format!(
        "failed to bracket root nu = {} of mode {} within the scan window",
        mode.nu(),
        mode
    )))
}

fn refine(mode: ModeIndex, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = target(mode, a)?;
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = target(mode, m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fa.signum() == fm.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    // Secant polish inside the final bracket.
    let (mut x0, mut x1) = (a, b);
    let (mut f0, mut f1) = (target(mode, x0)?, target(mode, x1)?);
    for _ in 0..4 {
        let denom = f1 - f0;
        if denom == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if !x2.is_finite() {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = target(mode, x1)?;
    }
    Ok(x1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn free(mu: u32, nu: u32) -> f64 {
        zeta(ModeIndex::new(mu, nu).unwrap()).unwrap()
    }

    fn fixed(mu: u32, nu: u32) -> f64 {
        zeta(ModeIndex::with_boundary(mu, nu, Boundary::Fixed).unwrap()).unwrap()
    }

    #[test]
    fn tabulated_free_roots_to_three_figures() {
        let table: [(u32, [f64; 3]); 3] = [
            (0, [3.83, 7.02, 10.2]),
            (1, [1.84, 5.33, 8.54]),
            (2, [3.05, 6.71, 9.97]),
        ];
        for (mu, roots) in table {
            for (i, expected) in roots.into_iter().enumerate() {
                let z = free(mu, (i + 1) as u32);
                let scale = 10f64.powf(2.0 - expected.log10().floor());
                assert_abs_diff_eq!((z * scale).round() / scale, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fixed_roots_are_bessel_zeros() {
        assert_abs_diff_eq!(fixed(0, 1), 2.404825557695773, epsilon = 1e-10);
        assert_abs_diff_eq!(fixed(0, 2), 5.520078110286311, epsilon = 1e-10);
        assert_abs_diff_eq!(fixed(1, 1), 3.831705970207512, epsilon = 1e-10);
    }

    #[test]
    fn roots_annihilate_their_function() {
        for mu in 0..=5u32 {
            for nu in 1..=5u32 {
                let zf = free(mu, nu);
                assert!(
                    bessel_j_prime(mu, zf).unwrap().abs() < 1e-9,
                    "J'_{mu}({zf}) not small"
                );
                let zx = fixed(mu, nu);
                assert!(
                    bessel_j(mu, zx).unwrap().abs() < 1e-9,
                    "J_{mu}({zx}) not small"
                );
            }
        }
    }

    #[test]
    fn roots_increase_in_nu_and_exceed_mu() {
        for mu in 0..=6u32 {
            let mut prev = mu as f64;
            for nu in 1..=8u32 {
                let z = free(mu, nu);
                assert!(z > prev, "zeta({mu},{nu}) = {z} not increasing");
                prev = z;
            }
        }
    }

    #[test]
    fn high_radial_root() {
        // ζ_{0,10} is the tenth positive zero of J1.
        assert_abs_diff_eq!(free(0, 10), 32.189679910974405, epsilon = 1e-9);
    }

    #[test]
    fn invalid_mode_is_rejected() {
        assert!(ModeIndex::new(0, 0).is_err());
        assert!(ModeIndex::new(65, 1).is_err());
    }
}
