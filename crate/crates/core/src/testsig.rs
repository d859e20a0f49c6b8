//! Two-component AM/FM test signal used by the benchmark.
//!
//! s₁(t) = (1 + ⅓cos(2πt/9))·cos(2πt + 6 sin(2πt/30) + cos(2πt/12))
//!       + 0.8·cos(2π·1.75t + 0.5 sin(2πt/5))

use core::f64::consts::PI;

use libm::{cos, sin};

use crate::error::{bail, Result};
use crate::signal::DiscreteSignal;

pub fn s1(t: f64) -> f64 {
    s1_dominant(t) + s1_weak(t)
}

/// The dominant component (around 1 Hz).
pub fn s1_dominant(t: f64) -> f64 {
    let amp = 1.0 + cos(2.0 * PI * t / 9.0) / 3.0;
    amp * cos(2.0 * PI * t + 6.0 * sin(2.0 * PI * t / 30.0) + cos(2.0 * PI * t / 12.0))
}

/// The weaker component (around 1.75 Hz).
pub fn s1_weak(t: f64) -> f64 {
    0.8 * cos(2.0 * PI * 1.75 * t + 0.5 * sin(2.0 * PI * t / 5.0))
}

/// Amplitude envelope of the dominant component.
pub fn s1_dominant_amplitude(t: f64) -> f64 {
    1.0 + cos(2.0 * PI * t / 9.0) / 3.0
}

/// Instantaneous frequency of the dominant component, Hz.
pub fn s1_dominant_if_hz(t: f64) -> f64 {
    1.0 + 0.2 * cos(2.0 * PI * t / 30.0) - sin(2.0 * PI * t / 12.0) / 12.0
}

/// Instantaneous frequency of the weaker component, Hz.
pub fn s1_weak_if_hz(t: f64) -> f64 {
    1.75 + 0.1 * cos(2.0 * PI * t / 5.0)
}

/// s₁ sampled at `fs` from t = 0 for `duration` seconds (`round(duration·fs)` samples).
pub fn s1_signal(duration: f64, fs: f64) -> Result<DiscreteSignal> {
    if !(duration > 0.0 && duration.is_finite()) {
        bail!(InvalidInput, "duration must be positive, got {duration}");
    }
    if !(fs > 0.0 && fs.is_finite()) {
        bail!(InvalidInput, "sampling frequency must be positive, got {fs}");
    }
    let n = libm::round(duration * fs) as usize;
    if n == 0 {
        bail!(InvalidInput, "duration {duration} s at {fs} Hz gives no samples");
    }
    DiscreteSignal::from_fn(n, fs, 0.0, s1)
}
