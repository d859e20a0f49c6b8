//! Uniformly sampled signals and boundary padding.

use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;

use crate::error::{bail, Result};

/// A uniformly sampled real signal.
///
/// Sample `n` (zero based) sits at time `t0 + n / fs`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignal {
    samples: Vec<f64>,
    fs: f64,
    t0: f64,
}

impl DiscreteSignal {
    pub fn new(samples: Vec<f64>, fs: f64) -> Result<Self> {
        Self::with_start(samples, fs, 0.0)
    }

    pub fn with_start(samples: Vec<f64>, fs: f64, t0: f64) -> Result<Self> {
        if !(fs > 0.0 && fs.is_finite()) {
            bail!(InvalidInput, "sampling frequency must be positive and finite, got {fs}");
        }
        if samples.len() < 2 {
            bail!(InvalidInput, "signal needs at least 2 samples, got {}", samples.len());
        }
        if !t0.is_finite() {
            bail!(InvalidInput, "start time must be finite");
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            bail!(InvalidInput, "sample {i} is not finite");
        }
        Ok(Self { samples, fs, t0 })
    }

    /// Samples `f(t)` at `n` points starting from `t0`.
    pub fn from_fn(n: usize, fs: f64, t0: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = (0..n).map(|i| f(t0 + i as f64 / fs)).collect();
        Self::with_start(samples, fs, t0)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn fs(&self) -> f64 {
        self.fs
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.fs
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, n: usize) -> f64 {
        self.t0 + n as f64 / self.fs
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.fs
    }

    /// Sample-wise `self + scale * other`.
    pub fn add_scaled(&self, other: &DiscreteSignal, scale: f64) -> Result<DiscreteSignal> {
        if other.len() != self.len() {
            bail!(InvalidInput, "length mismatch: {} vs {}", self.len(), other.len());
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| a + scale * b).collect();
        Ok(DiscreteSignal { samples, fs: self.fs, t0: self.t0 })
    }

    pub fn subsignal(&self, range: Range<usize>) -> Result<DiscreteSignal> {
        if range.end > self.len() || range.start >= range.end {
            bail!(InvalidInput, "range {range:?} outside signal of length {}", self.len());
        }
        let t0 = self.time(range.start);
        DiscreteSignal::with_start(self.samples[range].to_vec(), self.fs, t0)
    }
}

/// Complex positive-frequency part of a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSignal {
    pub samples: Vec<Complex64>,
    pub fs: f64,
    pub t0: f64,
}

/// Boundary extension applied before transforming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PadPolicy {
    #[default]
    Zero,
    Reflect,
    None,
}

/// Half-open sample window `[start, end)` to keep after transforming.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrimWindow {
    pub start: usize,
    pub end: usize,
}

impl TrimWindow {
    pub fn full(len: usize) -> Self {
        Self { start: 0, end: len }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

/// Pads `s` on both sides and computes the window of original samples to keep.
///
/// Each side is extended by `ceil(N / 2)` samples (none for [`PadPolicy::None`]).
/// `trim_fraction` of the original length is dropped from each end; the
/// returned window is expressed in indices of the padded signal.
pub fn pad_and_trim(s: &DiscreteSignal, policy: PadPolicy, trim_fraction: f64) -> Result<(DiscreteSignal, TrimWindow)> {
    if !(0.0..0.5).contains(&trim_fraction) {
        bail!(InvalidInput, "trim fraction must lie in [0, 0.5), got {trim_fraction}");
    }
    let n = s.len();
    let pad = match policy {
        PadPolicy::None => 0,
        PadPolicy::Zero | PadPolicy::Reflect => n.div_ceil(2).min(n - 1),
    };
    let cut = libm::floor(trim_fraction * n as f64 + 1e-9) as usize;
    if 2 * cut >= n {
        bail!(InvalidInput, "trim fraction {trim_fraction} leaves no samples");
    }
    let x = s.samples();
    let mut out = Vec::with_capacity(n + 2 * pad);
    match policy {
        PadPolicy::None => {}
        PadPolicy::Zero => out.resize(pad, 0.0),
        // mirror about the edge sample without repeating it
        PadPolicy::Reflect => out.extend((1..=pad).rev().map(|i| x[i])),
    }
    out.extend_from_slice(x);
    match policy {
        PadPolicy::None => {}
        PadPolicy::Zero => out.resize(n + 2 * pad, 0.0),
        PadPolicy::Reflect => out.extend((1..=pad).map(|i| x[n - 1 - i])),
    }
    let padded = DiscreteSignal::with_start(out, s.fs(), s.t0() - pad as f64 / s.fs())?;
    let window = TrimWindow { start: pad + cut, end: pad + n - cut };
    Ok((padded, window))
}
