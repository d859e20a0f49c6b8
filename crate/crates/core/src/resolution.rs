//! Time and frequency resolution of the analysis kernels.
//!
//! The frequency (time) resolution is the width of the central region that
//! holds a fraction `level` of the kernel's spectrum (time profile): the
//! bounds are where the normalized cumulative integral reaches `level/2` and
//! `1 - level/2`. For the wavelet the frequency width is taken in log ξ and
//! the cumulative uses the measure dξ/ξ; its time profile is `ψ*(t)e^{iω_ψ t}`,
//! whose cumulative integral is complex, so its modulus is used.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::kernel::AnalysisKernel;
use crate::quad::{bisect, integrate};

const QUAD_TOL: f64 = 1e-12;
const ARG_TOL: f64 = 1e-10;
/// Kernels are integrated out to this many standard deviations.
const SPAN_SIGMAS: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolutionMeasures {
    /// Δξ (rad/s) for the window, Δlog ξ (dimensionless) for the wavelet.
    pub freq_width: f64,
    /// Δτ (s).
    pub time_width: f64,
    pub level: f64,
    /// Lower/upper frequency bounds (ξ for the window, log ξ for the wavelet).
    pub freq_bounds: (f64, f64),
    pub time_bounds: (f64, f64),
}

impl ResolutionMeasures {
    /// Δξ/Δτ (or Δlog ξ/Δτ), the characteristic rate used by scheme I.
    pub fn ratio(&self) -> f64 {
        self.freq_width / self.time_width
    }
}

pub fn resolution_measures(kernel: &AnalysisKernel, level: f64) -> Result<ResolutionMeasures> {
    if !(level > 0.0 && level < 1.0) {
        bail!(InvalidInput, "enclosed fraction must lie in (0, 1), got {level}");
    }
    let f0 = kernel.f0();
    let (freq_bounds, time_bounds) = match *kernel {
        AnalysisKernel::GaussianWindow { .. } => {
            let fspan = SPAN_SIGMAS / f0;
            let freq = real_crossings(|x| kernel.spectrum(x), -fspan, fspan, level)?;
            let tspan = SPAN_SIGMAS * f0;
            let time = real_crossings(|t| kernel.window(t).unwrap_or(0.0), -tspan, tspan, level)?;
            (freq, time)
        }
        AnalysisKernel::LognormalWavelet { .. } => {
            let uspan = SPAN_SIGMAS / (2.0 * PI * f0);
            let freq = real_crossings(|u| kernel.spectrum(libm::exp(u)), -uspan, uspan, level)?;
            let time = wavelet_time_crossings(kernel, level)?;
            (freq, time)
        }
    };
    let m = ResolutionMeasures {
        freq_width: freq_bounds.1 - freq_bounds.0,
        time_width: time_bounds.1 - time_bounds.0,
        level,
        freq_bounds,
        time_bounds,
    };
    if !(m.freq_width > 0.0 && m.time_width > 0.0) {
        bail!(Numerical, "degenerate resolution widths {:?}", m);
    }
    Ok(m)
}

/// Points where the normalized cumulative integral of a non-negative profile
/// on `[lo, hi]` reaches `level/2` and `1 - level/2`.
fn real_crossings(f: impl Fn(f64) -> f64, lo: f64, hi: f64, level: f64) -> Result<(f64, f64)> {
    let total = integrate(&f, lo, hi, QUAD_TOL)?;
    if !(total > 0.0) {
        bail!(Numerical, "kernel profile integrates to {total}");
    }
    let cdf = |x: f64| integrate(&f, lo, x, QUAD_TOL).map(|v| v / total);
    let x1 = bisect(|x| cdf(x).map(|c| c - 0.5 * level), lo, hi, ARG_TOL)?;
    let x2 = bisect(|x| cdf(x).map(|c| c - (1.0 - 0.5 * level)), lo, hi, ARG_TOL)?;
    Ok((x1, x2))
}

/// Normalized cumulative integral `∫_{-∞}^τ ψ*(t)e^{it}dt` of the wavelet's
/// demodulated time profile, evaluated in the frequency domain:
/// `ψ̂(1)/2 + (i/2π) PV∫ ψ̂(1+x) e^{-ixτ}/x dx`.
pub(crate) fn wavelet_cumulative(kernel: &AnalysisKernel, tau: f64) -> Result<Complex64> {
    let f0 = kernel.f0();
    let psi = |xi: f64| kernel.spectrum(xi);
    // support of ψ̂ in x = ξ - 1
    let x_hi = libm::exp(SPAN_SIGMAS / (2.0 * PI * f0)) - 1.0;
    let inner = x_hi.min(1.0);
    let sinc_part = |x: f64| {
        if x == 0.0 {
            return 2.0 * psi(1.0) * tau;
        }
        (psi(1.0 + x) + psi(1.0 - x)) * libm::sin(x * tau) / x
    };
    let cos_part = |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        (psi(1.0 + x) - psi(1.0 - x)) * libm::cos(x * tau) / x
    };
    // im_pv = -∫ (ψ̂(1+x) + ψ̂(1-x)) sin(xτ)/x, re_pv = ∫ (ψ̂(1+x) - ψ̂(1-x)) cos(xτ)/x
    let mut im_pv = -integrate(sinc_part, 0.0, inner, QUAD_TOL)?;
    let mut re_pv = integrate(cos_part, 0.0, inner, QUAD_TOL)?;
    if x_hi > 1.0 {
        im_pv -= integrate(|x| psi(1.0 + x) * libm::sin(x * tau) / x, 1.0, x_hi, QUAD_TOL)?;
        re_pv += integrate(|x| psi(1.0 + x) * libm::cos(x * tau) / x, 1.0, x_hi, QUAD_TOL)?;
    }
    let total = psi(kernel.peak_frequency());
    let p = Complex64::new(0.5 * total - im_pv / (2.0 * PI), re_pv / (2.0 * PI));
    Ok(p / total)
}

fn wavelet_time_crossings(kernel: &AnalysisKernel, level: f64) -> Result<(f64, f64)> {
    let lower = |tau: f64| wavelet_cumulative(kernel, tau).map(|p| p.norm() - 0.5 * level);
    let upper = |tau: f64| wavelet_cumulative(kernel, tau).map(|p| 0.5 * level - (Complex64::new(1.0, 0.0) - p).norm());
    let mut span = 2.0 * PI * kernel.f0();
    let mut bracketed = false;
    for _ in 0..30 {
        if lower(-span)? < 0.0 && lower(span)? > 0.0 && upper(-span)? < 0.0 && upper(span)? > 0.0 {
            bracketed = true;
            break;
        }
        span *= 2.0;
    }
    if !bracketed {
        bail!(Numerical, "could not bracket wavelet time bounds (last span {span})");
    }
    let t1 = bisect(lower, -span, span, ARG_TOL)?;
    let t2 = bisect(upper, -span, span, ARG_TOL)?;
    Ok((t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Φ⁻¹(0.75)
    const Z75: f64 = 0.674_489_750_196_081_7;

    #[test]
    fn gaussian_widths_match_normal_quantiles() {
        for f0 in [0.5, 1.0, 2.0] {
            let m = resolution_measures(&AnalysisKernel::gaussian(f0).unwrap(), 0.5).unwrap();
            assert!((m.freq_width - 2.0 * Z75 / f0).abs() < 1e-8, "{m:?}");
            assert!((m.time_width - 2.0 * Z75 * f0).abs() < 1e-8, "{m:?}");
            assert!((m.ratio() * f0 * f0 - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn doubling_f0_halves_frequency_width() {
        let a = resolution_measures(&AnalysisKernel::gaussian(1.0).unwrap(), 0.5).unwrap();
        let b = resolution_measures(&AnalysisKernel::gaussian(2.0).unwrap(), 0.5).unwrap();
        assert!((b.freq_width / a.freq_width - 0.5).abs() < 1e-6);
        assert!((b.time_width / a.time_width - 2.0).abs() < 1e-6);
        assert!((b.ratio() / a.ratio() - 0.25).abs() < 1e-6);
    }

    #[test]
    fn wavelet_log_width() {
        let m = resolution_measures(&AnalysisKernel::lognormal(1.0).unwrap(), 0.5).unwrap();
        assert!((m.freq_width - 2.0 * Z75 / (2.0 * PI)).abs() < 1e-8);
        assert!(m.time_width > 0.0);
    }

    #[test]
    fn wavelet_cumulative_limits() {
        let k = AnalysisKernel::lognormal(1.0).unwrap();
        assert!(wavelet_cumulative(&k, -200.0).unwrap().norm() < 1e-3);
        assert!((wavelet_cumulative(&k, 200.0).unwrap() - 1.0).norm() < 1e-3);
    }

    #[test]
    fn level_out_of_range() {
        let k = AnalysisKernel::gaussian(1.0).unwrap();
        assert!(resolution_measures(&k, 0.0).is_err());
        assert!(resolution_measures(&k, 1.0).is_err());
    }
}
