//! Synchrosqueezing: reassignment of transform coefficients along frequency to
//! their phase velocities, and ridge points of the squeezed transform.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::grid::{AxisScale, FrequencyGrid};
use crate::peaks::{RidgePoint, RidgePointSet};
use crate::tfr::{TfrKind, TfrMatrix};

/// Coefficients below this fraction of their column's largest amplitude get no
/// phase velocity.
pub const UNDEFINED_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezedKind {
    Swft,
    Swt,
}

/// Instantaneous phase velocity ν(ω_k, t_n) of every coefficient, row-major
/// like the transform. Undefined entries are NaN.
///
/// Uses phase increments between neighbouring samples, averaged over the two
/// sides in the interior and one-sided at the ends, so each increment must
/// stay below π (|ν| < π f_s).
pub fn phase_velocity(tfr: &TfrMatrix) -> Result<Vec<f64>> {
    let nt = tfr.n_times();
    if nt < 3 {
        bail!(InvalidInput, "phase velocity needs at least 3 time samples, got {nt}");
    }
    let nf = tfr.n_freqs();
    let col_max: Vec<f64> = (0..nt).map(|n| (0..nf).map(|k| tfr.coeff(k, n).norm()).fold(0.0, f64::max)).collect();
    let fs = tfr.fs();
    let mut out = vec![f64::NAN; nf * nt];
    for k in 0..nf {
        let row = tfr.row(k);
        let defined = |n: usize| {
            let a = row[n].norm();
            a > 0.0 && a >= UNDEFINED_THRESHOLD * col_max[n]
        };
        // phase increment from n to n + 1, None if either end is undefined
        let step = |n: usize| {
            if defined(n) && defined(n + 1) {
                let p = row[n + 1] * row[n].conj();
                Some(libm::atan2(p.im, p.re))
            } else {
                None
            }
        };
        let out_row = &mut out[k * nt..(k + 1) * nt];
        let mut prev = None;
        for n in 0..nt {
            let next = if n + 1 < nt { step(n) } else { None };
            if !defined(n) {
                prev = next;
                continue;
            }
            let nu = match (prev, next) {
                (Some(a), Some(b)) => 0.5 * (a + b) * fs,
                (Some(a), None) | (None, Some(a)) => a * fs,
                (None, None) => f64::NAN,
            };
            out_row[n] = nu;
            prev = next;
        }
    }
    Ok(out)
}

/// Bin-integrated synchrosqueezed transform (SWFT or SWT).
#[derive(Debug, Clone, PartialEq)]
pub struct SynchroTfr {
    mass: Vec<Complex64>,
    occupied: Vec<bool>,
    n_times: usize,
    grid: FrequencyGrid,
    normalizer: f64,
    kind: SqueezedKind,
    fs: f64,
    t0: f64,
    dropped_count: usize,
    dropped_fraction: f64,
}

impl SynchroTfr {
    pub fn n_freqs(&self) -> usize {
        self.grid.len()
    }

    pub fn n_times(&self) -> usize {
        self.n_times
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// C_g or C_ψ of the source kernel.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn kind(&self) -> SqueezedKind {
        self.kind
    }

    pub fn fs(&self) -> f64 {
        self.fs
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn time(&self, n: usize) -> f64 {
        self.t0 + n as f64 / self.fs
    }

    #[inline]
    pub fn mass(&self, k: usize, n: usize) -> Complex64 {
        self.mass[k * self.n_times + n]
    }

    /// Whether bin `k` received at least one deposit at time `n`.
    #[inline]
    pub fn is_occupied(&self, k: usize, n: usize) -> bool {
        self.occupied[k * self.n_times + n]
    }

    pub fn masses(&self) -> &[Complex64] {
        &self.mass
    }

    /// Number of defined source coefficients whose phase velocity fell outside the grid.
    pub fn dropped_count(&self) -> usize {
        self.dropped_count
    }

    /// Dropped share of the total weighted source amplitude Σ|coeff·weight|.
    pub fn dropped_fraction(&self) -> f64 {
        self.dropped_fraction
    }

    pub fn column_total(&self, n: usize) -> Complex64 {
        (0..self.n_freqs()).map(|k| self.mass(k, n)).sum()
    }
}

/// Integration weight of a source bin: dω on linear grids, dω/ω on log grids.
pub fn source_weight(grid: &FrequencyGrid) -> f64 {
    grid.coord_step()
}

/// Deposits of one time column.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ColumnDeposits {
    pub mass: Vec<Complex64>,
    pub occupied: Vec<bool>,
    pub dropped_count: usize,
    pub dropped_abs: f64,
    pub total_abs: f64,
}

/// Reassigns column `n` given the phase velocities from [`phase_velocity`].
/// Deposits are accumulated in ascending source-bin order.
pub fn squeeze_column(tfr: &TfrMatrix, nu: &[f64], n: usize) -> ColumnDeposits {
    let nf = tfr.n_freqs();
    let nt = tfr.n_times();
    let grid = tfr.grid();
    let scale = source_weight(grid) / tfr.kernel().normalizer();
    let mut d =
        ColumnDeposits { mass: vec![Complex64::new(0.0, 0.0); nf], occupied: vec![false; nf], ..Default::default() };
    for j in 0..nf {
        let v = nu[j * nt + n];
        if v.is_nan() {
            continue;
        }
        let c = tfr.coeff(j, n) * scale;
        let a = c.norm();
        d.total_abs += a;
        match grid.locate(v) {
            Some(k) => {
                d.mass[k] += c;
                d.occupied[k] = true;
            }
            None => {
                d.dropped_count += 1;
                d.dropped_abs += a;
            }
        }
    }
    d
}

/// Assembles a squeezed transform from per-column deposits (in time order).
pub fn assemble(tfr: &TfrMatrix, columns: Vec<ColumnDeposits>) -> Result<SynchroTfr> {
    let nt = tfr.n_times();
    let nf = tfr.n_freqs();
    if columns.len() != nt || columns.iter().any(|c| c.mass.len() != nf || c.occupied.len() != nf) {
        bail!(InvalidInput, "column deposits do not match the {nf} x {nt} transform");
    }
    let mut mass = vec![Complex64::new(0.0, 0.0); nf * nt];
    let mut occupied = vec![false; nf * nt];
    let (mut dropped_count, mut dropped_abs, mut total_abs) = (0, 0.0, 0.0);
    for (n, c) in columns.into_iter().enumerate() {
        for k in 0..nf {
            mass[k * nt + n] = c.mass[k];
            occupied[k * nt + n] = c.occupied[k];
        }
        dropped_count += c.dropped_count;
        dropped_abs += c.dropped_abs;
        total_abs += c.total_abs;
    }
    let kind = match tfr.kind() {
        TfrKind::Wft => SqueezedKind::Swft,
        TfrKind::Wt => SqueezedKind::Swt,
    };
    Ok(SynchroTfr {
        mass,
        occupied,
        n_times: nt,
        grid: *tfr.grid(),
        normalizer: tfr.kernel().normalizer(),
        kind,
        fs: tfr.fs(),
        t0: tfr.t0(),
        dropped_count,
        dropped_fraction: if total_abs > 0.0 { dropped_abs / total_abs } else { 0.0 },
    })
}

/// Synchrosqueezes a WFT into an SWFT, or a WT into an SWT, on the source grid.
///
/// Each coefficient with a defined phase velocity ν is weighted by its bin's
/// integration measure and 1/C, then added to the bin whose centre is nearest
/// to ν. Coefficients whose ν falls outside the grid are dropped.
pub fn synchrosqueeze(tfr: &TfrMatrix) -> Result<SynchroTfr> {
    let nu = phase_velocity(tfr)?;
    let columns = (0..tfr.n_times()).map(|n| squeeze_column(tfr, &nu, n)).collect();
    assemble(tfr, columns)
}

/// One maximal run of occupied bins at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratedRidge {
    pub first_bin: usize,
    pub last_bin: usize,
    /// Centre frequencies of the first and last bin, rad/s.
    pub lower: f64,
    pub upper: f64,
    /// Summed mass over the run.
    pub mass: Complex64,
    /// |mass|.
    pub amp: f64,
    /// Mass-weighted mean frequency, clamped to `[lower, upper]`.
    pub freq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratedRidgeSet {
    columns: Vec<Vec<IntegratedRidge>>,
    axis: AxisScale,
}

impl IntegratedRidgeSet {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, n: usize) -> &[IntegratedRidge] {
        &self.columns[n]
    }

    pub fn columns(&self) -> &[Vec<IntegratedRidge>] {
        &self.columns
    }

    /// Ridge points for curve extraction. Times without any region get a
    /// single placeholder point at the lowest grid frequency with the smallest
    /// positive amplitude, mirroring the pseudo-peak rule for flat columns.
    pub fn to_point_set(&self, grid: &FrequencyGrid) -> Result<RidgePointSet> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                if col.is_empty() {
                    vec![RidgePoint { freq: grid.freq(0), amp: f64::MIN_POSITIVE }]
                } else {
                    col.iter().map(|r| RidgePoint { freq: r.freq, amp: r.amp }).collect()
                }
            })
            .collect();
        RidgePointSet::new(columns, self.axis)
    }
}

/// Splits every time column into maximal runs of occupied bins and integrates
/// the mass over each. Runs whose mass cancels to exactly zero are skipped.
pub fn integrated_ridges(sq: &SynchroTfr) -> IntegratedRidgeSet {
    let nf = sq.n_freqs();
    let grid = sq.grid();
    let columns = (0..sq.n_times())
        .map(|n| {
            let mut out = Vec::new();
            let mut k = 0;
            while k < nf {
                if !sq.is_occupied(k, n) {
                    k += 1;
                    continue;
                }
                let first = k;
                let mut x = Complex64::new(0.0, 0.0);
                let mut wx = Complex64::new(0.0, 0.0);
                while k < nf && sq.is_occupied(k, n) {
                    let m = sq.mass(k, n);
                    x += m;
                    wx += m * grid.freq(k);
                    k += 1;
                }
                let last = k - 1;
                let amp = x.norm();
                if amp > 0.0 {
                    let (lower, upper) = (grid.freq(first), grid.freq(last));
                    let freq = (wx / x).re.clamp(lower, upper);
                    out.push(IntegratedRidge { first_bin: first, last_bin: last, lower, upper, mass: x, amp, freq });
                }
            }
            out
        })
        .collect();
    IntegratedRidgeSet { columns, axis: grid.axis() }
}

/// Peaks of the squeezed amplitude density |mass|/bin width at bin centres,
/// without interpolation; flat columns get the boundary pseudo-peak.
pub fn peak_ridges(sq: &SynchroTfr) -> Result<RidgePointSet> {
    let nf = sq.n_freqs();
    if nf < 3 {
        bail!(InvalidInput, "peak detection needs at least 3 frequency bins, got {nf}");
    }
    let grid = sq.grid();
    let width = grid.coord_step();
    let freqs = grid.frequencies();
    let mut amps = vec![0.0; nf];
    let columns = (0..sq.n_times())
        .map(|n| {
            for k in 0..nf {
                amps[k] = sq.mass(k, n).norm() / width;
            }
            let mut col = Vec::new();
            for k in 1..nf - 1 {
                if amps[k] > amps[k - 1] && amps[k] > amps[k + 1] {
                    col.push(RidgePoint { freq: freqs[k], amp: amps[k] });
                }
            }
            if col.is_empty() {
                let k = if amps[nf - 1] > amps[0] { nf - 1 } else { 0 };
                col.push(RidgePoint { freq: freqs[k], amp: amps[k].max(f64::MIN_POSITIVE) });
            }
            col
        })
        .collect();
    RidgePointSet::new(columns, grid.axis())
}
