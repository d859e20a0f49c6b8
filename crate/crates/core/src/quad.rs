//! Adaptive Gauss–Kronrod quadrature and bracketing root search.

use alloc::vec::Vec;

use crate::error::{bail, Result};

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_INTERVALS: usize = 20_000;

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, libm::fabs((kron - gauss) * h))
}

/// Integrates `f` over `[a, b]` to a tolerance `tol` relative to an estimate of ∫|f|.
///
/// Intervals are bisected until each one's Kronrod–Gauss difference is below
/// its share of the tolerance.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if !(a.is_finite() && b.is_finite()) {
        bail!(InvalidInput, "integration limits must be finite");
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let total_len = hi - lo;
    // scale by ∫|f| so integrals that nearly cancel still terminate
    let (first, _) = gk15(&|x: f64| libm::fabs(f(x)), lo, hi);
    let scale = first.max(1e-300);
    let mut stack: Vec<(f64, f64)> = alloc::vec![(lo, hi)];
    let mut sum = 0.0;
    let mut evaluated = 0usize;
    while let Some((x0, x1)) = stack.pop() {
        evaluated += 1;
        if evaluated > MAX_INTERVALS {
            bail!(Numerical, "quadrature on [{a}, {b}] did not converge within {MAX_INTERVALS} intervals (tol {tol})");
        }
        let (val, err) = gk15(&f, x0, x1);
        if !val.is_finite() {
            bail!(Numerical, "non-finite integrand on [{x0}, {x1}]");
        }
        let allowed = tol * scale * (x1 - x0) / total_len;
        let mid = 0.5 * (x0 + x1);
        if err <= allowed || mid <= x0 || mid >= x1 {
            sum += val;
        } else {
            stack.push((mid, x1));
            stack.push((x0, mid));
        }
    }
    Ok(sign * sum)
}

/// Finds `x` in `[lo, hi]` with `f(x) = 0` by bisection, given a sign change.
pub fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64> {
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        bail!(Numerical, "no sign change on [{lo}, {hi}] (f = {flo}, {fhi})");
    }
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
