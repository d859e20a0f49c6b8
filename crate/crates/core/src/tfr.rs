use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::grid::FrequencyGrid;
use crate::kernel::AnalysisKernel;
use crate::signal::TrimWindow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfrKind {
    /// Windowed Fourier transform.
    Wft,
    /// Wavelet transform.
    Wt,
}

/// Complex time-frequency coefficients on a frequency grid.
///
/// Stored row-major: one row of `n_times` coefficients per frequency bin.
#[derive(Debug, Clone, PartialEq)]
pub struct TfrMatrix {
    coeffs: Vec<Complex64>,
    n_times: usize,
    grid: FrequencyGrid,
    kernel: AnalysisKernel,
    fs: f64,
    t0: f64,
    kind: TfrKind,
}

impl TfrMatrix {
    pub fn from_parts(
        coeffs: Vec<Complex64>,
        n_times: usize,
        grid: FrequencyGrid,
        kernel: AnalysisKernel,
        fs: f64,
        t0: f64,
    ) -> Result<Self> {
        let kind = if kernel.is_wavelet() { TfrKind::Wt } else { TfrKind::Wft };
        match (kind, grid) {
            (TfrKind::Wft, FrequencyGrid::Linear { .. }) | (TfrKind::Wt, FrequencyGrid::Logarithmic { .. }) => {}
            _ => {
                bail!(Config, "{kind:?} requires a {} grid", if kernel.is_wavelet() { "logarithmic" } else { "linear" })
            }
        }
        if coeffs.len() != grid.len() * n_times {
            bail!(InvalidInput, "coefficient count {} != {} bins x {} times", coeffs.len(), grid.len(), n_times);
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            bail!(Numerical, "transform contains non-finite coefficients");
        }
        if !(fs > 0.0) {
            bail!(InvalidInput, "sampling frequency must be positive");
        }
        Ok(Self { coeffs, n_times, grid, kernel, fs, t0, kind })
    }

    pub fn n_freqs(&self) -> usize {
        self.grid.len()
    }

    pub fn n_times(&self) -> usize {
        self.n_times
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn kernel(&self) -> &AnalysisKernel {
        &self.kernel
    }

    pub fn fs(&self) -> f64 {
        self.fs
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn kind(&self) -> TfrKind {
        self.kind
    }

    pub fn time(&self, n: usize) -> f64 {
        self.t0 + n as f64 / self.fs
    }

    #[inline]
    pub fn coeff(&self, k: usize, n: usize) -> Complex64 {
        self.coeffs[k * self.n_times + n]
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.coeffs[k * self.n_times..(k + 1) * self.n_times]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// |H(ω_k, t_n)| for every bin at time `n`.
    pub fn column_amplitudes(&self, n: usize, out: &mut Vec<f64>) {
        out.clear();
        out.extend((0..self.n_freqs()).map(|k| self.coeff(k, n).norm()));
    }

    pub fn column(&self, n: usize) -> Vec<Complex64> {
        (0..self.n_freqs()).map(|k| self.coeff(k, n)).collect()
    }

    /// Keeps only the time columns in `window`.
    pub fn trimmed(&self, window: TrimWindow) -> Result<TfrMatrix> {
        if window.end > self.n_times || window.is_empty() {
            bail!(InvalidInput, "trim window {:?} outside {} columns", window, self.n_times);
        }
        let mut coeffs = Vec::with_capacity(self.n_freqs() * window.len());
        for k in 0..self.n_freqs() {
            coeffs.extend_from_slice(&self.row(k)[window.range()]);
        }
        Ok(TfrMatrix {
            coeffs,
            n_times: window.len(),
            grid: self.grid,
            kernel: self.kernel,
            fs: self.fs,
            t0: self.time(window.start),
            kind: self.kind,
        })
    }

    /// Per-time index of the bin with the largest amplitude (lowest index on ties).
    pub fn argmax_bins(&self) -> Vec<usize> {
        (0..self.n_times)
            .map(|n| {
                let mut best = 0;
                let mut best_amp = f64::NEG_INFINITY;
                for k in 0..self.n_freqs() {
                    let a = self.coeff(k, n).norm();
                    if a > best_amp {
                        best_amp = a;
                        best = k;
                    }
                }
                best
            })
            .collect()
    }
}
