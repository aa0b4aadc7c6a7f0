//! Cartesian sweeps dispatched to a worker pool.
//!
//! Points are enumerated row-major over the axes in configuration order and
//! the results are reassembled in that order no matter which worker finishes
//! first.

use rayon::prelude::*;

use crate::config::{Damping, RunConfig, SweepAxis};
use thirdsound::{Error, Result};

/// Per-point inputs after applying the sweep values onto the base config.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub radius_nm: f64,
    pub thickness_nm: f64,
    pub temperature: f64,
    pub damping: Damping,
    /// Explicit frequency override (Hz) from an `f` axis, used by `thermal`.
    pub frequency_hz: Option<f64>,
}

impl Point {
    fn from_config(config: &RunConfig) -> Point {
        Point {
            radius_nm: config.radius_nm,
            thickness_nm: config.thickness_nm,
            temperature: config.temperature,
            damping: config.damping,
            frequency_hz: None,
        }
    }

    fn apply(&mut self, name: &str, value: f64) {
        match name {
            "R" => self.radius_nm = value,
            "d" => self.thickness_nm = value,
            "T" => self.temperature = value,
            "Q" => self.damping = Damping::Quality(value),
            "f" => self.frequency_hz = Some(value),
            other => unreachable!("axis `{other}` passed validation"),
        }
    }
}

/// Row-major Cartesian product of the sweep axes applied to the base config.
/// No axes means the single configured point.
pub fn points(config: &RunConfig) -> Vec<Point> {
    let grids: Vec<Vec<f64>> = config.sweep.iter().map(SweepAxis::values).collect();
    let total: usize = grids.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut point = Point::from_config(config);
        let mut rem = flat;
        for (axis, grid) in config.sweep.iter().zip(&grids).rev() {
            let idx = rem % grid.len();
            rem /= grid.len();
            point.apply(&axis.name, grid[idx]);
        }
        out.push(point);
    }
    out
}

/// Evaluate `f` over the points on a pool of `jobs` threads (all processors
/// when `None`), preserving point order in the output.
pub fn run<T: Send, F>(jobs: Option<usize>, points: &[Point], f: F) -> Result<Vec<T>>
where
    F: Fn(&Point) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
    pool.install(|| points.par_iter().map(&f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scale;

    fn config_with_axes(axes: Vec<SweepAxis>) -> RunConfig {
        RunConfig {
            sweep: axes,
            ..RunConfig::default()
        }
    }

    #[test]
    fn row_major_ordering() {
        let config = config_with_axes(vec![
            SweepAxis {
                name: "R".into(),
                scale: Scale::Linear,
                min: 1.0,
                max: 2.0,
                count: 2,
            },
            SweepAxis {
                name: "d".into(),
                scale: Scale::Linear,
                min: 10.0,
                max: 12.0,
                count: 3,
            },
        ]);
        let pts = points(&config);
        assert_eq!(pts.len(), 6);
        // First axis outermost, second axis fastest.
        assert_eq!((pts[0].radius_nm, pts[0].thickness_nm), (1.0, 10.0));
        assert_eq!((pts[1].radius_nm, pts[1].thickness_nm), (1.0, 11.0));
        assert_eq!((pts[3].radius_nm, pts[3].thickness_nm), (2.0, 10.0));
    }

    #[test]
    fn no_axes_is_single_point() {
        let config = config_with_axes(Vec::new());
        let pts = points(&config);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].radius_nm, config.radius_nm);
    }

    #[test]
    fn parallel_run_preserves_order() {
        let config = config_with_axes(vec![SweepAxis {
            name: "R".into(),
            scale: Scale::Linear,
            min: 1.0,
            max: 100.0,
            count: 100,
        }]);
        let pts = points(&config);
        let out = run(Some(4), &pts, |p| Ok(p.radius_nm)).unwrap();
        for (a, p) in out.iter().zip(&pts) {
            assert_eq!(*a, p.radius_nm);
        }
    }
}
