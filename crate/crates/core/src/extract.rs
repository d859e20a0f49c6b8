//! Ridge-curve extraction: one-step and path optimization, scheme I and the
//! adaptive fixed-point scheme II.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::functional::{
    CurveStats, PathFunctional, SchemeIFunctional, SchemeIIFunctional, SchemeIIParams, SchemeIParams,
};
use crate::grid::AxisScale;
use crate::path::{greedy_path, optimal_path, score_of};
use crate::peaks::{detect_peaks, RidgePointSet};
use crate::resolution::resolution_measures;
use crate::tfr::TfrMatrix;

/// One selected ridge point per time step.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeCurve {
    /// ω_p(t_n), rad/s.
    pub freqs: Vec<f64>,
    /// Selected point index m_c(t_n) within each column.
    pub indices: Vec<usize>,
    /// Amplitude Q of each selected point.
    pub amps: Vec<f64>,
    /// Path functional summed along the curve.
    pub score: f64,
}

impl RidgeCurve {
    pub fn from_indices(points: &RidgePointSet, indices: Vec<usize>, score: f64) -> Result<Self> {
        if indices.len() != points.len() {
            bail!(InvalidInput, "{} indices for {} time steps", indices.len(), points.len());
        }
        let mut freqs = Vec::with_capacity(indices.len());
        let mut amps = Vec::with_capacity(indices.len());
        for (n, &m) in indices.iter().enumerate() {
            let Some(p) = points.column(n).get(m) else {
                bail!(InvalidInput, "index {m} out of range at time {n}");
            };
            freqs.push(p.freq);
            amps.push(p.amp);
        }
        Ok(Self { freqs, indices, amps, score })
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn coords(&self, axis: AxisScale) -> Vec<f64> {
        self.freqs.iter().map(|&f| axis.coord(f)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Optimization {
    /// Exact maximization of the summed functional over all point sequences.
    #[default]
    Path,
    /// Greedy forward/backward continuation from the best starting point.
    OneStep,
}

/// Log-amplitudes and axis coordinates of every point, column by column.
struct Prepared {
    counts: Vec<usize>,
    offsets: Vec<usize>,
    log_amp: Vec<f64>,
    coord: Vec<f64>,
}

impl Prepared {
    fn new(points: &RidgePointSet, axis: AxisScale) -> Self {
        let counts = points.counts();
        let mut offsets = Vec::with_capacity(counts.len());
        let mut log_amp = Vec::new();
        let mut coord = Vec::new();
        for col in points.columns() {
            offsets.push(log_amp.len());
            for p in col {
                log_amp.push(libm::log(p.amp));
                coord.push(axis.coord(p.freq));
            }
        }
        Self { counts, offsets, log_amp, coord }
    }

    #[inline]
    fn score<F: PathFunctional>(&self, f: &F, n: usize, m: usize, prev: Option<usize>) -> f64 {
        let i = self.offsets[n] + m;
        match prev {
            None => f.initial(self.log_amp[i], self.coord[i]),
            Some(k) => f.transition(self.log_amp[i], self.coord[i], self.coord[self.offsets[n - 1] + k]),
        }
    }
}

fn check_axis<F: PathFunctional>(points: &RidgePointSet, f: &F) -> Result<()> {
    if points.axis() != f.axis() {
        bail!(Config, "functional axis {:?} does not match ridge points on {:?} axis", f.axis(), points.axis());
    }
    Ok(())
}

/// Summed functional along an index sequence.
pub fn path_score<F: PathFunctional>(points: &RidgePointSet, f: &F, indices: &[usize]) -> f64 {
    let prep = Prepared::new(points, f.axis());
    score_of(indices, |n, m, k| prep.score(f, n, m, k))
}

/// Curve maximizing the summed functional, found by dynamic programming.
pub fn dp_path_optimize<F: PathFunctional>(points: &RidgePointSet, f: &F) -> Result<RidgeCurve> {
    check_axis(points, f)?;
    let prep = Prepared::new(points, f.axis());
    let best = optimal_path(&prep.counts, |n, m, k| prep.score(f, n, m, k))?;
    RidgeCurve::from_indices(points, best.indices, best.score)
}

/// Greedy extraction starting from the highest-amplitude point over all times.
///
/// The zero-step functional of both schemes reduces to log Q, since their
/// penalties peak at zero deviation. Backward steps use the same transition
/// term with the later point as the neighbour.
pub fn one_step_extract<F: PathFunctional>(points: &RidgePointSet, f: &F) -> Result<RidgeCurve> {
    check_axis(points, f)?;
    let prep = Prepared::new(points, f.axis());
    let indices = greedy_path(
        &prep.counts,
        |n, m| prep.log_amp[prep.offsets[n] + m],
        |n, m, nb_n, nb_m| {
            let i = prep.offsets[n] + m;
            f.transition(prep.log_amp[i], prep.coord[i], prep.coord[prep.offsets[nb_n] + nb_m])
        },
    )?;
    let score = score_of(&indices, |n, m, k| prep.score(f, n, m, k));
    RidgeCurve::from_indices(points, indices, score)
}

/// Per-time global maximum of the ridge-point amplitudes.
pub fn extract_global_max(points: &RidgePointSet) -> Result<RidgeCurve> {
    let f = SchemeIFunctional::new(SchemeIParams { alpha: 0.0, resolution_ratio: 1.0, fs: 1.0 }, points.axis())?;
    dp_path_optimize(points, &f)
}

/// Scheme I on precomputed ridge points.
pub fn extract_scheme1(points: &RidgePointSet, params: SchemeIParams, opt: Optimization) -> Result<RidgeCurve> {
    let f = SchemeIFunctional::new(params, points.axis())?;
    match opt {
        Optimization::Path => dp_path_optimize(points, &f),
        Optimization::OneStep => one_step_extract(points, &f),
    }
}

/// Scheme I parameters for a transform: the kernel's resolution ratio and the TFR's sampling rate.
pub fn scheme1_params(tfr: &TfrMatrix, alpha: f64) -> Result<SchemeIParams> {
    let res = resolution_measures(tfr.kernel(), 0.5)?;
    Ok(SchemeIParams { alpha, resolution_ratio: res.ratio(), fs: tfr.fs() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme2Outcome {
    pub curve: RidgeCurve,
    /// Number of path optimizations performed.
    pub iterations: usize,
    /// Two consecutive iterations produced identical curves before the cap.
    pub converged: bool,
    pub stats: CurveStats,
}

/// Scheme II on a transform, starting from its per-time amplitude maximum.
pub fn extract_scheme2(tfr: &TfrMatrix, params: SchemeIIParams) -> Result<Scheme2Outcome> {
    let points = detect_peaks(tfr)?;
    let axis = tfr.grid().axis();
    let grid = tfr.grid();
    let initial: Vec<f64> = tfr.argmax_bins().into_iter().map(|k| axis.coord(grid.freq(k))).collect();
    extract_scheme2_points(&points, &initial, params)
}

/// Fixed-point iteration of scheme II from an initial curve (axis coordinates).
///
/// Each iteration freezes the median/range statistics of the current curve in
/// the functional and reruns the path optimization; it stops once two
/// consecutive curves select the same points at every time, or at the cap.
pub fn extract_scheme2_points(
    points: &RidgePointSet,
    initial: &[f64],
    params: SchemeIIParams,
) -> Result<Scheme2Outcome> {
    params.validate()?;
    if initial.len() != points.len() {
        bail!(InvalidInput, "initial curve has {} steps, ridge points {}", initial.len(), points.len());
    }
    let axis = points.axis();
    let mut stats = CurveStats::from_coords(initial, params.range_floor)?;
    let mut previous: Option<RidgeCurve> = None;
    for it in 1..=params.max_iterations {
        let f = SchemeIIFunctional::new(params.alpha, params.beta, stats, axis)?;
        let curve = dp_path_optimize(points, &f)?;
        if previous.as_ref().is_some_and(|p| p.indices == curve.indices) {
            return Ok(Scheme2Outcome { curve, iterations: it, converged: true, stats });
        }
        stats = CurveStats::from_coords(&curve.coords(axis), params.range_floor)?;
        previous = Some(curve);
    }
    let curve = previous.expect("max_iterations >= 1");
    Ok(Scheme2Outcome { curve, iterations: params.max_iterations, converged: false, stats })
}
