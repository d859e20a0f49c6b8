//! Ridge points: per-time amplitude peaks of a transform.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::grid::AxisScale;
use crate::tfr::TfrMatrix;

/// One candidate ridge point: angular frequency ν (rad/s) and amplitude Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgePoint {
    pub freq: f64,
    pub amp: f64,
}

/// Candidate ridge points for every time step.
///
/// Each column is non-empty, amplitudes are positive and frequencies strictly
/// increase within a column.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgePointSet {
    columns: Vec<Vec<RidgePoint>>,
    axis: AxisScale,
}

impl RidgePointSet {
    pub fn new(columns: Vec<Vec<RidgePoint>>, axis: AxisScale) -> Result<Self> {
        for (n, col) in columns.iter().enumerate() {
            if col.is_empty() {
                bail!(Contract, "no ridge points at time index {n}");
            }
            for (m, p) in col.iter().enumerate() {
                if !(p.amp > 0.0 && p.amp.is_finite()) {
                    bail!(Domain, "ridge point ({n}, {m}) has non-positive amplitude {}", p.amp);
                }
                if !p.freq.is_finite() || (axis == AxisScale::Logarithmic && p.freq <= 0.0) {
                    bail!(Domain, "ridge point ({n}, {m}) has invalid frequency {}", p.freq);
                }
            }
            if col.windows(2).any(|w| !(w[1].freq > w[0].freq)) {
                bail!(Contract, "ridge frequencies not strictly increasing at time index {n}");
            }
        }
        Ok(Self { columns, axis })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn axis(&self) -> AxisScale {
        self.axis
    }

    pub fn column(&self, n: usize) -> &[RidgePoint] {
        &self.columns[n]
    }

    pub fn columns(&self) -> &[Vec<RidgePoint>] {
        &self.columns
    }

    pub fn counts(&self) -> Vec<usize> {
        self.columns.iter().map(Vec::len).collect()
    }

    /// M_p, the largest number of points at any time.
    pub fn max_points(&self) -> usize {
        self.columns.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Drops the point `remove[n]` at each time where it is `Some` and the
    /// column would keep at least one point.
    pub fn without(&self, remove: &[Option<usize>]) -> RidgePointSet {
        let columns = self
            .columns
            .iter()
            .zip(remove)
            .map(|(col, r)| match *r {
                Some(m) if col.len() > 1 && m < col.len() => {
                    let mut c = col.clone();
                    c.remove(m);
                    c
                }
                _ => col.clone(),
            })
            .collect();
        RidgePointSet { columns, axis: self.axis }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeakOptions {
    /// Refine position and amplitude with the parabola through the peak bin
    /// and its two neighbours.
    pub interpolate: bool,
    /// Fit the parabola to log-amplitude instead of amplitude.
    pub log_amplitude: bool,
}

impl Default for PeakOptions {
    fn default() -> Self {
        Self { interpolate: true, log_amplitude: false }
    }
}

/// Vertex of the parabola through `(−1, a), (0, b), (1, c)`: offset δ in bins
/// and interpolated height.
#[inline]
pub fn parabolic_vertex(a: f64, b: f64, c: f64) -> (f64, f64) {
    let denom = a - 2.0 * b + c;
    if denom == 0.0 {
        return (0.0, b);
    }
    let delta = 0.5 * (a - c) / denom;
    (delta, b - 0.25 * (a - c) * delta)
}

/// Peaks of one amplitude column on a uniform axis (`coords[k]` in axis
/// coordinates, spacing `step`).
///
/// Strict interior local maxima; if there are none, the higher of the two
/// boundary bins is returned uninterpolated. Zero amplitudes of such
/// pseudo-peaks are lifted to the smallest positive float.
pub fn column_peaks(
    amps: &[f64],
    coords: &[f64],
    step: f64,
    axis: AxisScale,
    opts: PeakOptions,
    out: &mut Vec<RidgePoint>,
) {
    out.clear();
    let nf = amps.len();
    for k in 1..nf - 1 {
        let (a, b, c) = (amps[k - 1], amps[k], amps[k + 1]);
        if !(b > a && b > c) {
            continue;
        }
        let (delta, amp) = if !opts.interpolate {
            (0.0, b)
        } else if opts.log_amplitude && a > 0.0 && c > 0.0 {
            let (d, h) = parabolic_vertex(libm::log(a), libm::log(b), libm::log(c));
            (d, libm::exp(h))
        } else {
            parabolic_vertex(a, b, c)
        };
        out.push(RidgePoint { freq: axis.from_coord(coords[k] + delta * step), amp });
    }
    if out.is_empty() {
        let k = if amps[nf - 1] > amps[0] { nf - 1 } else { 0 };
        out.push(RidgePoint { freq: axis.from_coord(coords[k]), amp: amps[k].max(f64::MIN_POSITIVE) });
    }
}

pub fn detect_peaks(tfr: &TfrMatrix) -> Result<RidgePointSet> {
    detect_peaks_with(tfr, PeakOptions::default())
}

pub fn detect_peaks_with(tfr: &TfrMatrix, opts: PeakOptions) -> Result<RidgePointSet> {
    if tfr.n_freqs() < 3 {
        bail!(InvalidInput, "peak detection needs at least 3 frequency bins, got {}", tfr.n_freqs());
    }
    let grid = tfr.grid();
    let coords = grid.coords();
    let step = grid.coord_step();
    let axis = grid.axis();
    let mut amps = Vec::with_capacity(tfr.n_freqs());
    let mut col = Vec::new();
    let columns = (0..tfr.n_times())
        .map(|n| {
            tfr.column_amplitudes(n, &mut amps);
            column_peaks(&amps, &coords, step, axis, opts, &mut col);
            col.clone()
        })
        .collect();
    RidgePointSet::new(columns, axis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn peaks_of(amps: &[f64]) -> Vec<RidgePoint> {
        let coords: Vec<f64> = (0..amps.len()).map(|k| 10.0 + 0.5 * k as f64).collect();
        let mut out = Vec::new();
        column_peaks(amps, &coords, 0.5, AxisScale::Linear, PeakOptions::default(), &mut out);
        out
    }

    #[test]
    fn asymmetric_triple() {
        let p = peaks_of(&[1.0, 3.0, 2.0]);
        assert_eq!(p.len(), 1);
        assert!((p[0].freq - (10.5 + 0.5 / 6.0)).abs() < 1e-14);
        assert!((p[0].amp - (3.0 + 1.0 / 24.0)).abs() < 1e-14);
    }

    #[test]
    fn vertex_matches_dense_sampling() {
        // the parabola through (-1,1),(0,3),(1,2) is y = 3 + 0.5x - 1.5x²
        let (d, h) = parabolic_vertex(1.0, 3.0, 2.0);
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=200_000 {
            let x = -1.0 + i as f64 * 1e-5;
            let y = 3.0 + 0.5 * x - 1.5 * x * x;
            if y > best.1 {
                best = (x, y);
            }
        }
        assert!((d - best.0).abs() < 1e-5);
        assert!((h - best.1).abs() < 1e-9);
    }

    #[test]
    fn symmetric_triple() {
        let p = peaks_of(&[2.0, 3.0, 2.0]);
        assert_eq!(p, vec![RidgePoint { freq: 10.5, amp: 3.0 }]);
    }

    #[test]
    fn monotone_column_gives_boundary_pseudo_peak() {
        let p = peaks_of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p, vec![RidgePoint { freq: 11.5, amp: 4.0 }]);
        let p = peaks_of(&[0.0, 0.0, 0.0]);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].freq, 10.0);
        assert!(p[0].amp > 0.0);
    }

    #[test]
    fn multiple_peaks_increase() {
        let p = peaks_of(&[0.0, 1.0, 0.5, 0.7, 2.0, 0.1, 0.3, 0.2]);
        assert_eq!(p.len(), 3);
        assert!(p.windows(2).all(|w| w[1].freq > w[0].freq));
    }

    #[test]
    fn log_axis_interpolates_in_log_frequency() {
        let step = 0.1f64.ln_1p();
        let coords: Vec<f64> = (0..3).map(|k| k as f64 * step).collect();
        let mut out = Vec::new();
        column_peaks(&[1.0, 3.0, 2.0], &coords, step, AxisScale::Logarithmic, PeakOptions::default(), &mut out);
        assert!((out[0].freq.ln() - (step + step / 6.0)).abs() < 1e-14);
    }

    #[test]
    fn point_set_validation() {
        let ok = RidgePointSet::new(vec![vec![RidgePoint { freq: 1.0, amp: 1.0 }]], AxisScale::Linear);
        assert!(ok.is_ok());
        assert!(RidgePointSet::new(vec![vec![]], AxisScale::Linear).is_err());
        let bad = vec![vec![RidgePoint { freq: 2.0, amp: 1.0 }, RidgePoint { freq: 1.0, amp: 1.0 }]];
        assert!(RidgePointSet::new(bad, AxisScale::Linear).is_err());
        let zero = vec![vec![RidgePoint { freq: 1.0, amp: 0.0 }]];
        assert!(RidgePointSet::new(zero, AxisScale::Linear).is_err());
    }
}
