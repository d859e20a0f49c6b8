//! Windowed Fourier and wavelet transforms evaluated in the frequency domain.
//!
//! Row `k` of a transform is the inverse DFT of `ŝ(ξ)·K_k(ξ)` over the
//! non-negative DFT frequencies, where `K_k(ξ) = ĝ(ω_k − ξ)` for the window
//! and `ψ̂(ξ/ω_k)` for the wavelet. The DC and Nyquist bins are halved, which
//! makes a tone `A cos(ω₀t)` map to `(A/2)·K_k(ω₀)·e^{iω₀t}`.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use ridgeline_core::resolution_measures;
use ridgeline_core::{
    pad_and_trim, AnalysisKernel, AnalyticSignal, Complex64, DiscreteSignal, FrequencyGrid, PadPolicy, TfrMatrix,
    TrimWindow,
};
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Default density: this many bins per resolution width.
pub const BINS_PER_RESOLUTION: f64 = 25.0;

/// DFT of a real signal.
pub fn spectrum(samples: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Weight of DFT bin `j` in the positive-frequency part of a length-`len` signal.
fn positive_weight(j: usize, len: usize) -> f64 {
    if j == 0 || (len.is_multiple_of(2) && j == len / 2) {
        0.5
    } else {
        1.0
    }
}

/// Positive-frequency part s⁺: negative bins zeroed, DC and Nyquist halved.
pub fn analytic_part(s: &DiscreteSignal) -> AnalyticSignal {
    let len = s.len();
    let mut buf = spectrum(s.samples());
    for (j, c) in buf.iter_mut().enumerate() {
        *c = if j <= len / 2 { *c * positive_weight(j, len) / len as f64 } else { Complex64::new(0.0, 0.0) };
    }
    FftPlanner::new().plan_fft_inverse(len).process(&mut buf);
    AnalyticSignal { samples: buf, fs: s.fs(), t0: s.t0() }
}

fn check_pairing(kernel: &AnalysisKernel, grid: &FrequencyGrid) -> Result<()> {
    match (kernel.is_wavelet(), grid) {
        (false, FrequencyGrid::Linear { .. }) | (true, FrequencyGrid::Logarithmic { .. }) => Ok(()),
        (false, _) => Err(Error::Config("the windowed Fourier transform needs a linear frequency grid".into())),
        (true, _) => Err(Error::Config("the wavelet transform needs a logarithmic frequency grid".into())),
    }
}

/// Transform of `s` keeping only the time samples in `window`.
pub fn compute_tfr_window(
    s: &DiscreteSignal,
    kernel: &AnalysisKernel,
    grid: &FrequencyGrid,
    window: TrimWindow,
) -> Result<TfrMatrix> {
    check_pairing(kernel, grid)?;
    let len = s.len();
    if window.is_empty() || window.end > len {
        return Err(Error::InvalidInput(format!("time window {window:?} outside {len} samples")));
    }
    let spec = spectrum(s.samples());
    let half = len / 2;
    let dxi = 2.0 * PI * s.fs() / len as f64;
    let weighted: Vec<Complex64> = (0..=half).map(|j| spec[j] * (positive_weight(j, len) / len as f64)).collect();
    let ifft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(len);
    let scratch_len = ifft.get_inplace_scratch_len();
    let nt = window.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len() * nt];
    coeffs.par_chunks_mut(nt).enumerate().for_each_init(
        || (vec![Complex64::new(0.0, 0.0); len], vec![Complex64::new(0.0, 0.0); scratch_len]),
        |(buf, scratch), (k, row)| {
            let wk = grid.freq(k);
            buf.fill(Complex64::new(0.0, 0.0));
            for (j, w) in weighted.iter().enumerate() {
                let xi = j as f64 * dxi;
                let kk = if kernel.is_wavelet() { kernel.spectrum(xi / wk) } else { kernel.spectrum(wk - xi) };
                if kk != 0.0 {
                    buf[j] = w * kk;
                }
            }
            ifft.process_with_scratch(buf, scratch);
            row.copy_from_slice(&buf[window.range()]);
        },
    );
    Ok(TfrMatrix::from_parts(coeffs, nt, *grid, *kernel, s.fs(), s.time(window.start))?)
}

/// Windowed Fourier transform over the whole record.
pub fn compute_wft(s: &DiscreteSignal, kernel: &AnalysisKernel, grid: &FrequencyGrid) -> Result<TfrMatrix> {
    if kernel.is_wavelet() {
        return Err(Error::Config("compute_wft needs the Gaussian window".into()));
    }
    compute_tfr_window(s, kernel, grid, TrimWindow::full(s.len()))
}

/// Wavelet transform over the whole record.
pub fn compute_wt(s: &DiscreteSignal, kernel: &AnalysisKernel, grid: &FrequencyGrid) -> Result<TfrMatrix> {
    if !kernel.is_wavelet() {
        return Err(Error::Config("compute_wt needs the lognormal wavelet".into()));
    }
    compute_tfr_window(s, kernel, grid, TrimWindow::full(s.len()))
}

/// Pads, transforms and trims back to the requested central part.
pub fn compute_tfr(
    s: &DiscreteSignal,
    kernel: &AnalysisKernel,
    grid: &FrequencyGrid,
    pad: PadPolicy,
    trim_fraction: f64,
) -> Result<TfrMatrix> {
    let (padded, window) = pad_and_trim(s, pad, trim_fraction)?;
    compute_tfr_window(&padded, kernel, grid, window)
}

/// Linear grid over `[fmin_hz, fmax_hz]`; `dfreq_hz` defaults to Δξ_g/25.
pub fn wft_grid(kernel: &AnalysisKernel, fmin_hz: f64, fmax_hz: f64, dfreq_hz: Option<f64>) -> Result<FrequencyGrid> {
    let step = match dfreq_hz {
        Some(d) => 2.0 * PI * d,
        None => resolution_measures(kernel, 0.5)?.freq_width / BINS_PER_RESOLUTION,
    };
    Ok(FrequencyGrid::linear_span(2.0 * PI * fmin_hz, 2.0 * PI * fmax_hz, step)?)
}

/// Logarithmic grid over `[fmin_hz, fmax_hz]`; `voices` defaults to
/// `ceil(log 2 / (Δlog ξ_ψ / 25))`.
pub fn wt_grid(kernel: &AnalysisKernel, fmin_hz: f64, fmax_hz: f64, voices: Option<f64>) -> Result<FrequencyGrid> {
    let nv = match voices {
        Some(v) => v,
        None => default_voices(kernel)?,
    };
    Ok(FrequencyGrid::log_span(2.0 * PI * fmin_hz, 2.0 * PI * fmax_hz, nv)?)
}

pub fn default_voices(kernel: &AnalysisKernel) -> Result<f64> {
    let w = resolution_measures(kernel, 0.5)?.freq_width;
    Ok((std::f64::consts::LN_2 / (w / BINS_PER_RESOLUTION)).ceil())
}

/// Grid matching the kernel: linear for the window, logarithmic for the
/// wavelet. `density` is Δω/2π in Hz or voices per octave respectively.
pub fn default_grid(
    kernel: &AnalysisKernel,
    fmin_hz: f64,
    fmax_hz: f64,
    density: Option<f64>,
) -> Result<FrequencyGrid> {
    if kernel.is_wavelet() {
        wt_grid(kernel, fmin_hz, fmax_hz, density)
    } else {
        wft_grid(kernel, fmin_hz, fmax_hz, density)
    }
}
