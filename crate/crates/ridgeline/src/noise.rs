//! Noise generators for the benchmark.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use ridgeline_core::{Complex64, DiscreteSignal};
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Colored noise with `|η̂(ξ)| ∝ 1/(4π² + ξ²)` (brown above 1 Hz).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Sample standard deviation of the output.
    pub sigma: f64,
    pub seed: u64,
}

/// Spectral magnitude at angular frequency ξ.
pub fn colored_magnitude(xi: f64) -> f64 {
    1.0 / (4.0 * PI * PI + xi * xi)
}

/// Half spectrum (bins 0..=n/2) with the prescribed magnitudes and uniform
/// random phases; DC is zero and an even-length Nyquist bin is real.
pub fn colored_half_spectrum(n: usize, fs: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dxi = 2.0 * PI * fs / n as f64;
    (0..=n / 2)
        .map(|j| {
            let phase = rng.random_range(0.0..2.0 * PI);
            if j == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let mag = colored_magnitude(j as f64 * dxi);
            if n.is_multiple_of(2) && j == n / 2 {
                Complex64::new(mag * phase.cos(), 0.0)
            } else {
                Complex64::from_polar(mag, phase)
            }
        })
        .collect()
}

/// Rescales to zero mean and sample standard deviation (divisor n − 1) `sigma`.
fn normalize(mut x: Vec<f64>, sigma: f64) -> Vec<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    x.iter_mut().for_each(|v| *v -= mean);
    let sd = (x.iter().map(|v| v * v).sum::<f64>() / (n - 1.0)).sqrt();
    let scale = if sd > 0.0 { sigma / sd } else { 0.0 };
    x.iter_mut().for_each(|v| *v *= scale);
    x
}

fn check(n: usize, fs: f64, sigma: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("noise needs at least 2 samples, got {n}")));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidInput(format!("noise standard deviation must be non-negative, got {sigma}")));
    }
    if !(fs > 0.0) {
        return Err(Error::InvalidInput("sampling frequency must be positive".into()));
    }
    Ok(())
}

pub fn colored_noise(n: usize, fs: f64, spec: NoiseSpec) -> Result<DiscreteSignal> {
    check(n, fs, spec.sigma)?;
    let half = colored_half_spectrum(n, fs, spec.seed);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[..half.len()].copy_from_slice(&half);
    for j in 1..half.len() {
        if n - j != j {
            buf[n - j] = half[j].conj();
        }
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let x = normalize(buf.into_iter().map(|c| c.re).collect(), spec.sigma);
    Ok(DiscreteSignal::new(x, fs)?)
}

/// Gaussian white noise, normalized like [`colored_noise`].
pub fn white_noise(n: usize, fs: f64, spec: NoiseSpec) -> Result<DiscreteSignal> {
    check(n, fs, spec.sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let x = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    Ok(DiscreteSignal::new(normalize(x, spec.sigma), fs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::spectrum;

    fn sample_std(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        let m = x.iter().sum::<f64>() / n;
        (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    }

    #[test]
    fn deterministic_and_normalized() {
        let spec = NoiseSpec { sigma: 0.6, seed: 42 };
        let a = colored_noise(4000, 20.0, spec).unwrap();
        let b = colored_noise(4000, 20.0, spec).unwrap();
        assert_eq!(a, b);
        assert!((sample_std(a.samples()) - 0.6).abs() < 1e-9 * 0.6);
        let c = colored_noise(4000, 20.0, NoiseSpec { sigma: 0.6, seed: 43 }).unwrap();
        assert_ne!(a, c);
        let w = white_noise(3001, 20.0, spec).unwrap();
        assert!((sample_std(w.samples()) - 0.6).abs() < 1e-9 * 0.6);
    }

    #[test]
    fn spectral_shape() {
        // 200 s at 20 Hz: bins every 0.005 Hz, so 0.5 and 1.5 Hz are exact bins
        let n = 4000;
        let x = colored_noise(n, 20.0, NoiseSpec { sigma: 1.0, seed: 7 }).unwrap();
        let s = spectrum(x.samples());
        let j = |hz: f64| (hz * n as f64 / 20.0).round() as usize;
        let ratio = s[j(0.5)].norm() / s[j(1.5)].norm();
        assert!((ratio - 2.6).abs() < 1e-9, "{ratio}");
        assert!(s[0].norm() < 1e-9);
    }

    #[test]
    fn odd_length_and_zero_sigma() {
        let x = colored_noise(1001, 20.0, NoiseSpec { sigma: 0.0, seed: 1 }).unwrap();
        assert!(x.samples().iter().all(|&v| v == 0.0));
        let x = colored_noise(1001, 20.0, NoiseSpec { sigma: 2.0, seed: 1 }).unwrap();
        assert!((sample_std(x.samples()) - 2.0).abs() < 1e-9 * 2.0);
        assert!(colored_noise(1, 20.0, NoiseSpec { sigma: 1.0, seed: 1 }).is_err());
    }
}
