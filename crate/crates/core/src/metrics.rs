//! Curve error and noise-tolerance measures.

use alloc::vec::Vec;

use crate::error::{bail, Result};

/// Relative RMS deviation of `curve` from `reference`:
/// `sqrt(⟨(ω − ω̃)²⟩ / ⟨(ω̃ − ⟨ω̃⟩)²⟩)`.
///
/// A constant reference gives 0 for an identical curve and +∞ otherwise.
pub fn error_ef(curve: &[f64], reference: &[f64]) -> Result<f64> {
    if curve.len() != reference.len() {
        bail!(InvalidInput, "curve has {} points, reference {}", curve.len(), reference.len());
    }
    if curve.is_empty() {
        bail!(InvalidInput, "empty curves");
    }
    let n = curve.len() as f64;
    let mse = curve.iter().zip(reference).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / n;
    let mean = reference.iter().sum::<f64>() / n;
    let var = reference.iter().map(|b| (b - mean) * (b - mean)).sum::<f64>() / n;
    Ok(if mse == 0.0 {
        0.0
    } else if var == 0.0 {
        f64::INFINITY
    } else {
        libm::sqrt(mse / var)
    })
}

/// Mean and sample standard deviation (divisor n − 1; 0 for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    (mean, libm::sqrt(ss / (n - 1) as f64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaMax {
    pub sigma: f64,
    /// The threshold was never reached; `sigma` is the largest swept value.
    pub beyond_range: bool,
}

/// Smallest noise level at which `mean + std` of the error reaches
/// `threshold`, interpolated linearly between consecutive swept levels.
/// If the first level already reaches it, that level is returned.
pub fn sigma_max(sigmas: &[f64], mean_plus_std: &[f64], threshold: f64) -> Result<SigmaMax> {
    if sigmas.len() != mean_plus_std.len() {
        bail!(InvalidInput, "{} noise levels but {} error values", sigmas.len(), mean_plus_std.len());
    }
    if sigmas.len() < 2 {
        bail!(InvalidInput, "need at least 2 noise levels, got {}", sigmas.len());
    }
    if sigmas.windows(2).any(|w| !(w[1] > w[0])) {
        bail!(InvalidInput, "noise levels must be strictly increasing");
    }
    if mean_plus_std[0] >= threshold {
        return Ok(SigmaMax { sigma: sigmas[0], beyond_range: false });
    }
    for i in 1..sigmas.len() {
        let (y0, y1) = (mean_plus_std[i - 1], mean_plus_std[i]);
        if y1 >= threshold {
            let sigma = if y1.is_infinite() || y1 == y0 {
                sigmas[i]
            } else {
                sigmas[i - 1] + (threshold - y0) / (y1 - y0) * (sigmas[i] - sigmas[i - 1])
            };
            return Ok(SigmaMax { sigma, beyond_range: false });
        }
    }
    Ok(SigmaMax { sigma: sigmas[sigmas.len() - 1], beyond_range: true })
}

/// Spearman rank correlation (average ranks for ties).
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        bail!(InvalidInput, "rank correlation needs two equal-length series of at least 2 values");
    }
    let rx = ranks(x);
    let ry = ranks(y);
    let (mx, sx) = mean_std(&rx);
    let (my, sy) = mean_std(&ry);
    if sx == 0.0 || sy == 0.0 {
        return Ok(f64::NAN);
    }
    let cov = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / (x.len() - 1) as f64;
    Ok(cov / (sx * sy))
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = alloc::vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}
