//! Frequency axes of time-frequency representations.

use alloc::vec::Vec;

use crate::error::{bail, Result};

/// Coordinate in which frequencies are compared: ω itself for the windowed
/// Fourier transform, log ω for the wavelet transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Logarithmic,
}

impl AxisScale {
    #[inline]
    pub fn coord(self, omega: f64) -> f64 {
        match self {
            AxisScale::Linear => omega,
            AxisScale::Logarithmic => libm::log(omega),
        }
    }

    #[inline]
    pub fn from_coord(self, x: f64) -> f64 {
        match self {
            AxisScale::Linear => x,
            AxisScale::Logarithmic => libm::exp(x),
        }
    }
}

/// Discrete frequency axis (angular frequencies, rad/s).
///
/// `Linear`: ω_k = ω_min + k Δω. `Logarithmic`: ω_k = 2^{k/n_v} ω_min.
/// Indices are zero based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrequencyGrid {
    Linear { omega_min: f64, step: f64, len: usize },
    Logarithmic { omega_min: f64, voices: f64, len: usize },
}

impl FrequencyGrid {
    pub fn linear(omega_min: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) || !omega_min.is_finite() {
            bail!(InvalidInput, "linear grid needs finite ω_min and Δω > 0");
        }
        if len == 0 {
            bail!(InvalidInput, "grid needs at least one bin");
        }
        Ok(FrequencyGrid::Linear { omega_min, step, len })
    }

    pub fn logarithmic(omega_min: f64, voices: f64, len: usize) -> Result<Self> {
        if !(omega_min > 0.0 && omega_min.is_finite()) {
            bail!(InvalidInput, "logarithmic grid needs ω_min > 0, got {omega_min}");
        }
        if !(voices > 0.0 && voices.is_finite()) {
            bail!(InvalidInput, "voices per octave must be positive, got {voices}");
        }
        if len == 0 {
            bail!(InvalidInput, "grid needs at least one bin");
        }
        Ok(FrequencyGrid::Logarithmic { omega_min, voices, len })
    }

    /// Linear grid from `omega_min` with step `step`, as many bins as fit up to `omega_max`.
    pub fn linear_span(omega_min: f64, omega_max: f64, step: f64) -> Result<Self> {
        if !(omega_max >= omega_min) {
            bail!(InvalidInput, "ω_max must not be below ω_min");
        }
        if !(step > 0.0) {
            bail!(InvalidInput, "Δω must be positive");
        }
        let len = libm::floor((omega_max - omega_min) / step + 1e-9) as usize + 1;
        Self::linear(omega_min, step, len)
    }

    /// Logarithmic grid from `omega_min` up to `omega_max` with `voices` bins per octave.
    pub fn log_span(omega_min: f64, omega_max: f64, voices: f64) -> Result<Self> {
        if !(omega_min > 0.0) {
            bail!(InvalidInput, "logarithmic grid needs ω_min > 0, got {omega_min}");
        }
        if !(omega_max >= omega_min) {
            bail!(InvalidInput, "ω_max must not be below ω_min");
        }
        if !(voices > 0.0) {
            bail!(InvalidInput, "voices per octave must be positive");
        }
        let octaves = libm::log2(omega_max / omega_min);
        let len = libm::floor(octaves * voices + 1e-9) as usize + 1;
        Self::logarithmic(omega_min, voices, len)
    }

    pub fn len(&self) -> usize {
        match *self {
            FrequencyGrid::Linear { len, .. } | FrequencyGrid::Logarithmic { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn omega_min(&self) -> f64 {
        match *self {
            FrequencyGrid::Linear { omega_min, .. } | FrequencyGrid::Logarithmic { omega_min, .. } => omega_min,
        }
    }

    pub fn omega_max(&self) -> f64 {
        self.freq(self.len() - 1)
    }

    pub fn axis(&self) -> AxisScale {
        match self {
            FrequencyGrid::Linear { .. } => AxisScale::Linear,
            FrequencyGrid::Logarithmic { .. } => AxisScale::Logarithmic,
        }
    }

    #[inline]
    pub fn freq(&self, k: usize) -> f64 {
        match *self {
            FrequencyGrid::Linear { omega_min, step, .. } => omega_min + k as f64 * step,
            FrequencyGrid::Logarithmic { omega_min, voices, .. } => omega_min * libm::exp2(k as f64 / voices),
        }
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.freq(k)).collect()
    }

    /// Bin positions in axis coordinates (ω or log ω).
    pub fn coords(&self) -> Vec<f64> {
        let axis = self.axis();
        (0..self.len()).map(|k| axis.coord(self.freq(k))).collect()
    }

    /// Spacing of the bins in axis coordinates: Δω, or log(2)/n_v.
    pub fn coord_step(&self) -> f64 {
        match *self {
            FrequencyGrid::Linear { step, .. } => step,
            FrequencyGrid::Logarithmic { voices, .. } => core::f64::consts::LN_2 / voices,
        }
    }

    /// Bin holding `omega` (bins are centred on the grid frequencies and one
    /// axis step wide). `None` outside the grid span.
    pub fn locate(&self, omega: f64) -> Option<usize> {
        let pos = match *self {
            FrequencyGrid::Linear { omega_min, step, .. } => (omega - omega_min) / step,
            FrequencyGrid::Logarithmic { omega_min, voices, .. } => {
                if !(omega > 0.0) {
                    return None;
                }
                libm::log2(omega / omega_min) * voices
            }
        };
        if !pos.is_finite() {
            return None;
        }
        let k = libm::floor(pos + 0.5);
        if k < 0.0 || k >= self.len() as f64 {
            None
        } else {
            Some(k as usize)
        }
    }

    pub fn contains(&self, omega: f64) -> bool {
        omega >= self.freq(0) && omega <= self.omega_max()
    }
}
