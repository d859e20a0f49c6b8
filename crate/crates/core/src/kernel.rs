//! The two analysis kernels: a Gaussian window and a lognormal wavelet.

use core::f64::consts::PI;

use crate::error::{bail, Result};
use crate::grid::AxisScale;

/// Window or wavelet used to build a transform.
///
/// Both are specified by their (real) Fourier spectra:
/// Gaussian window `ĝ(ξ) = exp(-(f0 ξ)²/2)`, peak at ξ = 0;
/// lognormal wavelet `ψ̂(ξ) = exp(-(2π f0 log ξ)²/2)` for ξ > 0, peak at ξ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalysisKernel {
    GaussianWindow { f0: f64 },
    LognormalWavelet { f0: f64 },
}

impl AnalysisKernel {
    pub fn gaussian(f0: f64) -> Result<Self> {
        Self::check_f0(f0)?;
        Ok(AnalysisKernel::GaussianWindow { f0 })
    }

    pub fn lognormal(f0: f64) -> Result<Self> {
        Self::check_f0(f0)?;
        Ok(AnalysisKernel::LognormalWavelet { f0 })
    }

    fn check_f0(f0: f64) -> Result<()> {
        if !(f0 > 0.0 && f0.is_finite()) {
            bail!(InvalidInput, "resolution parameter f0 must be positive, got {f0}");
        }
        Ok(())
    }

    pub fn f0(&self) -> f64 {
        match *self {
            AnalysisKernel::GaussianWindow { f0 } | AnalysisKernel::LognormalWavelet { f0 } => f0,
        }
    }

    pub fn is_wavelet(&self) -> bool {
        matches!(self, AnalysisKernel::LognormalWavelet { .. })
    }

    /// Frequency at which the spectrum peaks (0 for the window, ω_ψ = 1 for the wavelet).
    pub fn peak_frequency(&self) -> f64 {
        match self {
            AnalysisKernel::GaussianWindow { .. } => 0.0,
            AnalysisKernel::LognormalWavelet { .. } => 1.0,
        }
    }

    /// Axis on which ridges of this kernel's transform are compared.
    pub fn axis(&self) -> AxisScale {
        match self {
            AnalysisKernel::GaussianWindow { .. } => AxisScale::Linear,
            AnalysisKernel::LognormalWavelet { .. } => AxisScale::Logarithmic,
        }
    }

    #[inline]
    pub fn spectrum(&self, xi: f64) -> f64 {
        match *self {
            AnalysisKernel::GaussianWindow { f0 } => {
                let a = f0 * xi;
                libm::exp(-0.5 * a * a)
            }
            AnalysisKernel::LognormalWavelet { f0 } => {
                if xi <= 0.0 {
                    return 0.0;
                }
                let a = 2.0 * PI * f0 * libm::log(xi);
                libm::exp(-0.5 * a * a)
            }
        }
    }

    /// Time-domain Gaussian window `g(t) = exp(-(t/f0)²/2) / (√(2π) f0)`.
    /// `None` for the wavelet, which has no closed time form.
    pub fn window(&self, t: f64) -> Option<f64> {
        match *self {
            AnalysisKernel::GaussianWindow { f0 } => {
                let a = t / f0;
                Some(libm::exp(-0.5 * a * a) / (libm::sqrt(2.0 * PI) * f0))
            }
            AnalysisKernel::LognormalWavelet { .. } => None,
        }
    }

    /// Synchrosqueezing normalizer: `C_g = ½∫ĝ(ξ)dξ = πg(0)` for the window,
    /// `C_ψ = ½∫₀^∞ ψ̂(ξ)dξ/ξ` for the wavelet.
    pub fn normalizer(&self) -> f64 {
        match *self {
            AnalysisKernel::GaussianWindow { f0 } => libm::sqrt(PI / 2.0) / f0,
            AnalysisKernel::LognormalWavelet { f0 } => 1.0 / (2.0 * libm::sqrt(2.0 * PI) * f0),
        }
    }
}
