//! Path functionals scored along candidate ridge curves.
//!
//! A functional assigns each selected ridge point a score from its amplitude,
//! its position, and the position of the point selected at the previous time.
//! Positions are axis coordinates: ω on linear axes, log ω on logarithmic ones.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::grid::{AxisScale, FrequencyGrid};

/// Score of a ridge point, split into the first-time term and the transition term.
pub trait PathFunctional {
    /// Score of a point with no predecessor (first time step).
    fn initial(&self, log_amp: f64, coord: f64) -> f64;
    /// Score of a point given the coordinate of the previously selected one.
    fn transition(&self, log_amp: f64, coord: f64, prev_coord: f64) -> f64;
    fn axis(&self) -> AxisScale;

    /// Evaluates the functional on a frequency (rad/s) and amplitude.
    fn evaluate(&self, amp: f64, freq: f64, prev_freq: Option<f64>) -> Result<f64> {
        if !(amp > 0.0) {
            bail!(Domain, "amplitude must be positive to take its logarithm, got {amp}");
        }
        let axis = self.axis();
        let lq = libm::log(amp);
        Ok(match prev_freq {
            None => self.initial(lq, axis.coord(freq)),
            Some(p) => self.transition(lq, axis.coord(freq), axis.coord(p)),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeIParams {
    pub alpha: f64,
    /// Δξ/Δτ of the kernel (rad/s² for windows, 1/s in log frequency for wavelets).
    pub resolution_ratio: f64,
    pub fs: f64,
}

/// `log Q − α f_s |Δ| / (Δξ/Δτ)`: penalizes jumps between consecutive ridge points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeIFunctional {
    params: SchemeIParams,
    axis: AxisScale,
    slope: f64,
}

impl SchemeIFunctional {
    pub fn new(params: SchemeIParams, axis: AxisScale) -> Result<Self> {
        if !(params.alpha >= 0.0 && params.alpha.is_finite()) {
            bail!(InvalidInput, "alpha must be a non-negative number, got {}", params.alpha);
        }
        if !(params.resolution_ratio > 0.0) {
            bail!(InvalidInput, "resolution ratio must be positive, got {}", params.resolution_ratio);
        }
        if !(params.fs > 0.0) {
            bail!(InvalidInput, "sampling frequency must be positive");
        }
        let slope = params.alpha * params.fs / params.resolution_ratio;
        Ok(Self { params, axis, slope })
    }

    pub fn params(&self) -> SchemeIParams {
        self.params
    }

    /// w(Δ) for a jump of `delta` axis units.
    #[inline]
    pub fn penalty(&self, delta: f64) -> f64 {
        if self.slope == 0.0 {
            0.0
        } else {
            -self.slope * libm::fabs(delta)
        }
    }
}

impl PathFunctional for SchemeIFunctional {
    #[inline]
    fn initial(&self, log_amp: f64, _coord: f64) -> f64 {
        log_amp
    }

    #[inline]
    fn transition(&self, log_amp: f64, coord: f64, prev_coord: f64) -> f64 {
        log_amp + self.penalty(coord - prev_coord)
    }

    fn axis(&self) -> AxisScale {
        self.axis
    }
}

/// Median 𝔪 and 50% range 𝔰 of a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustStats {
    pub median: f64,
    pub range: f64,
}

impl RobustStats {
    pub fn floored(self, floor: f64) -> Self {
        Self { median: self.median, range: self.range.max(floor) }
    }
}

/// Quantile of sorted data, linearly interpolating the order statistics at
/// 1-based position `p (n − 1) + 1`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let pos = p * (n - 1) as f64;
    let lo = libm::floor(pos) as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

pub fn robust_stats(series: &[f64]) -> Result<RobustStats> {
    if series.is_empty() {
        bail!(InvalidInput, "robust statistics of an empty series");
    }
    if series.iter().any(|x| x.is_nan()) {
        bail!(InvalidInput, "series contains NaN");
    }
    let mut s: Vec<f64> = series.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    Ok(RobustStats { median: quantile_sorted(&s, 0.5), range: quantile_sorted(&s, 0.75) - quantile_sorted(&s, 0.25) })
}

/// Robust statistics of a curve's positions and of their increments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveStats {
    pub level: RobustStats,
    pub increment: RobustStats,
}

impl CurveStats {
    /// Statistics of a curve given in axis coordinates, with both ranges floored.
    pub fn from_coords(coords: &[f64], floor: f64) -> Result<Self> {
        let level = robust_stats(coords)?.floored(floor);
        let increment = if coords.len() < 2 {
            RobustStats { median: 0.0, range: floor }
        } else {
            let diffs: Vec<f64> = coords.windows(2).map(|w| w[1] - w[0]).collect();
            robust_stats(&diffs)?.floored(floor)
        };
        Ok(Self { level, increment })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeIIParams {
    /// Weight on deviations of the increment from its median.
    pub alpha: f64,
    /// Weight on deviations of the position from its median.
    pub beta: f64,
    pub max_iterations: usize,
    /// Smallest allowed 50% range, in axis units.
    pub range_floor: f64,
}

impl SchemeIIParams {
    pub const DEFAULT_MAX_ITERATIONS: usize = 20;

    pub fn new(alpha: f64, beta: f64, max_iterations: usize, range_floor: f64) -> Result<Self> {
        let p = Self { alpha, beta, max_iterations, range_floor };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with the default iteration cap and a range floor of 1e-6 bin widths.
    pub fn for_grid(alpha: f64, beta: f64, grid: &FrequencyGrid) -> Result<Self> {
        Self::new(alpha, beta, Self::DEFAULT_MAX_ITERATIONS, 1e-6 * grid.coord_step())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.alpha.is_finite() && self.beta >= 0.0 && self.beta.is_finite()) {
            bail!(InvalidInput, "alpha and beta must be non-negative, got ({}, {})", self.alpha, self.beta);
        }
        if self.max_iterations == 0 {
            bail!(InvalidInput, "max_iterations must be at least 1");
        }
        if !(self.range_floor > 0.0) {
            bail!(InvalidInput, "range floor must be positive, got {}", self.range_floor);
        }
        Ok(())
    }
}

/// `log Q − β|(x − 𝔪[x])/𝔰[x]| − α|((x − x_prev) − 𝔪[Δx])/𝔰[Δx]|` with frozen statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeIIFunctional {
    alpha: f64,
    beta: f64,
    stats: CurveStats,
    axis: AxisScale,
}

impl SchemeIIFunctional {
    pub fn new(alpha: f64, beta: f64, stats: CurveStats, axis: AxisScale) -> Result<Self> {
        if !(stats.level.range > 0.0 && stats.increment.range > 0.0) {
            bail!(InvalidInput, "statistics must be floored to positive ranges");
        }
        if !(alpha >= 0.0 && beta >= 0.0) {
            bail!(InvalidInput, "alpha and beta must be non-negative");
        }
        Ok(Self { alpha, beta, stats, axis })
    }

    pub fn stats(&self) -> CurveStats {
        self.stats
    }

    #[inline]
    fn level_term(&self, coord: f64) -> f64 {
        if self.beta == 0.0 {
            return 0.0;
        }
        -self.beta * libm::fabs((coord - self.stats.level.median) / self.stats.level.range)
    }
}

impl PathFunctional for SchemeIIFunctional {
    #[inline]
    fn initial(&self, log_amp: f64, coord: f64) -> f64 {
        log_amp + self.level_term(coord)
    }

    #[inline]
    fn transition(&self, log_amp: f64, coord: f64, prev_coord: f64) -> f64 {
        let inc = &self.stats.increment;
        let jump = if self.alpha == 0.0 {
            0.0
        } else {
            -self.alpha * libm::fabs(((coord - prev_coord) - inc.median) / inc.range)
        };
        log_amp + self.level_term(coord) + jump
    }

    fn axis(&self) -> AxisScale {
        self.axis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn scheme1(alpha: f64) -> SchemeIFunctional {
        SchemeIFunctional::new(SchemeIParams { alpha, resolution_ratio: 1.0, fs: 20.0 }, AxisScale::Linear).unwrap()
    }

    #[test]
    fn scheme1_alpha_zero_is_log_amplitude() {
        let f = scheme1(0.0);
        for d in [-3.0, 0.0, 5.0] {
            assert_eq!(f.evaluate(2.0, 10.0 + d, Some(10.0)).unwrap(), 2f64.ln());
        }
    }

    #[test]
    fn scheme1_zero_jump_has_no_penalty() {
        let f = scheme1(3.0);
        assert_eq!(f.evaluate(1.5, 4.0, Some(4.0)).unwrap(), 1.5f64.ln());
        assert_eq!(f.evaluate(1.5, 4.0, None).unwrap(), 1.5f64.ln());
    }

    #[test]
    fn scheme1_penalty_value() {
        let f = scheme1(1.0);
        let w = f.penalty(2.0 * PI * 0.1);
        assert!((w - (-20.0 * 0.2 * PI)).abs() < 1e-12);
        assert!((w + 12.566).abs() < 1e-3);
    }

    #[test]
    fn nonpositive_amplitude_is_domain_error() {
        let f = scheme1(1.0);
        assert!(matches!(f.evaluate(0.0, 1.0, None), Err(crate::Error::Domain(_))));
        assert!(matches!(f.evaluate(-1.0, 1.0, Some(1.0)), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn quantile_conventions() {
        let s = robust_stats(&[5.0, 1.0, 4.0, 2.0, 3.0]).unwrap();
        assert_eq!(s, RobustStats { median: 3.0, range: 2.0 });
        let s = robust_stats(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.median, 2.5);
        assert!((s.range - 1.5).abs() < 1e-15);
        let s = robust_stats(&[7.0; 6]).unwrap();
        assert_eq!(s, RobustStats { median: 7.0, range: 0.0 });
        assert_eq!(s.floored(1e-6).range, 1e-6);
        assert!(robust_stats(&[]).is_err());
    }

    fn scheme2(alpha: f64, beta: f64) -> SchemeIIFunctional {
        let stats = CurveStats {
            level: RobustStats { median: 6.0, range: 0.5 },
            increment: RobustStats { median: 0.01, range: 0.02 },
        };
        SchemeIIFunctional::new(alpha, beta, stats, AxisScale::Linear).unwrap()
    }

    #[test]
    fn scheme2_centered_point_has_no_penalty() {
        let f = scheme2(1.0, 1.0);
        let v = f.evaluate(0.7, 6.0, Some(5.99)).unwrap();
        assert!((v - 0.7f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn scheme2_degenerates_without_weights() {
        let f = scheme2(0.0, 0.0);
        assert_eq!(f.evaluate(0.7, 9.0, Some(1.0)).unwrap(), 0.7f64.ln());
    }

    #[test]
    fn scheme2_unit_deviations() {
        let f = scheme2(1.0, 1.0);
        // one range above the median in both terms
        let nu = 6.5;
        let prev = nu - (0.01 + 0.02);
        let v = f.evaluate(2.0, nu, Some(prev)).unwrap();
        assert!((v - (2f64.ln() - 2.0)).abs() < 1e-9);
    }

    #[test]
    fn curve_stats_increments() {
        let c = CurveStats::from_coords(&[1.0, 2.0, 4.0, 7.0], 1e-9).unwrap();
        // increments 1, 2, 3
        assert_eq!(c.increment.median, 2.0);
        assert_eq!(c.increment.range, 1.0);
        let c = CurveStats::from_coords(&[3.0; 5], 1e-6).unwrap();
        assert_eq!(c.level.range, 1e-6);
        assert_eq!(c.increment.range, 1e-6);
    }
}
