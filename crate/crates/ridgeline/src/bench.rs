//! Monte-Carlo comparison of extraction methods over noise intensities.
//!
//! Every method is scored by ε_f against its own noise-free extraction. For a
//! given noise level and realization all methods see the same noisy signal,
//! seeded by `master_seed ^ realization`.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::ValueEnum;
use rayon::prelude::*;
use ridgeline_core::extract::{extract_scheme2_points, RidgeCurve};
use ridgeline_core::metrics::{error_ef, mean_std, sigma_max, SigmaMax};
use ridgeline_core::testsig::s1_signal;
use ridgeline_core::{
    detect_peaks, extract_global_max, extract_scheme1, integrated_ridges, pad_and_trim, peak_ridges,
    resolution_measures, AnalysisKernel, DiscreteSignal, FrequencyGrid, Optimization, PadPolicy, RidgePointSet,
    SchemeIIParams, SchemeIParams, TfrMatrix,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{colored_noise, white_noise, NoiseSpec};
use crate::squeeze::synchrosqueeze_par;
use crate::transform::{compute_tfr_window, default_grid};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignalSource {
    /// The built-in two-component test signal.
    S1,
    /// One value per line, or `time,value` rows.
    Csv(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TfrChoice {
    Wft,
    Wt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    Colored,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Scheme {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[serde(rename = "global-max")]
    GlobalMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizationChoice {
    #[default]
    Path,
    OneStep,
}

/// Which ridge points a method extracts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RidgeSource {
    /// Interpolated amplitude peaks of the transform.
    #[default]
    Tfr,
    /// Bin-centre peaks of the synchrosqueezed transform.
    SqueezedPeaks,
    /// Integrated regions of the synchrosqueezed transform.
    SqueezedIntegrated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodSpec {
    pub label: String,
    pub scheme: Scheme,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub optimization: OptimizationChoice,
    #[serde(default)]
    pub ridges: RidgeSource,
}

impl MethodSpec {
    pub fn scheme1(alpha: f64, optimization: OptimizationChoice) -> Self {
        let label = match optimization {
            OptimizationChoice::Path => format!("I({alpha})"),
            OptimizationChoice::OneStep => format!("I({alpha})-one-step"),
        };
        Self { label, scheme: Scheme::I, alpha, beta: 0.0, optimization, ridges: RidgeSource::Tfr }
    }

    pub fn scheme2(alpha: f64, beta: f64) -> Self {
        Self {
            label: format!("II({alpha},{beta})"),
            scheme: Scheme::II,
            alpha,
            beta,
            optimization: OptimizationChoice::Path,
            ridges: RidgeSource::Tfr,
        }
    }

    pub fn with_ridges(mut self, ridges: RidgeSource) -> Self {
        let suffix = match ridges {
            RidgeSource::Tfr => "",
            RidgeSource::SqueezedPeaks => "-sq-peaks",
            RidgeSource::SqueezedIntegrated => "-sq-integrated",
        };
        self.label.push_str(suffix);
        self.ridges = ridges;
        self
    }
}

/// Discard-and-reextract: when a curve sits nearer a known secondary
/// component than the dominant one, its points near that component are
/// removed and the curve is extracted again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscardSpec {
    /// Frequency band of the secondary component, Hz. An empty band disables the rule.
    pub band_hz: [f64; 2],
    /// Frequency of the component of interest, Hz.
    pub dominant_hz: f64,
    #[serde(default = "default_rounds")]
    pub max_rounds: usize,
}

fn default_rounds() -> usize {
    3
}

impl DiscardSpec {
    fn center(&self) -> f64 {
        0.5 * (self.band_hz[0] + self.band_hz[1])
    }

    fn is_empty(&self) -> bool {
        !(self.band_hz[1] > self.band_hz[0])
    }

    /// Whether a frequency (Hz) lies nearer the secondary band's centre.
    fn nearer_band(&self, hz: f64) -> bool {
        (hz - self.center()).abs() < (hz - self.dominant_hz).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchmarkConfig {
    pub spec_version: u32,
    pub signal: SignalSource,
    /// Sampling rate, Hz (for CSV input without a time column, and for s1).
    pub fs: f64,
    /// Simulated length of the built-in signal, s.
    pub duration_s: f64,
    /// Central part kept after transforming, s.
    pub analyze_s: f64,
    pub f0: f64,
    pub tfr: TfrChoice,
    pub fmin_hz: f64,
    pub fmax_hz: f64,
    /// Δω/2π in Hz (WFT) or voices per octave (WT); default 25 bins per resolution width.
    pub density: Option<f64>,
    pub noise: NoiseKind,
    pub sigmas: Vec<f64>,
    pub realizations: usize,
    pub master_seed: u64,
    pub threshold: f64,
    pub methods: Vec<MethodSpec>,
    pub discard: Option<DiscardSpec>,
    /// Keep every extracted curve in the result (needed for per-run curve files).
    pub keep_curves: bool,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            spec_version: CONFIG_VERSION,
            signal: SignalSource::S1,
            fs: 20.0,
            duration_s: 1000.0,
            analyze_s: 200.0,
            f0: 1.0,
            tfr: TfrChoice::Wft,
            fmin_hz: 0.25,
            fmax_hz: 2.25,
            density: None,
            noise: NoiseKind::Colored,
            sigmas: (1..=12).map(|i| i as f64 / 10.0).collect(),
            realizations: 40,
            master_seed: 0,
            threshold: 0.5,
            methods: vec![
                MethodSpec::scheme1(0.0, OptimizationChoice::Path),
                MethodSpec::scheme1(1.0, OptimizationChoice::Path),
                MethodSpec::scheme1(1.0, OptimizationChoice::OneStep),
                MethodSpec::scheme2(1.0, 1.0),
            ],
            discard: Some(DiscardSpec { band_hz: [1.5, 2.0], dominant_hz: 1.0, max_rounds: 3 }),
            keep_curves: false,
        }
    }
}

impl BenchmarkConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.spec_version != CONFIG_VERSION {
            return bad(format!("unsupported spec_version {} (expected {CONFIG_VERSION})", self.spec_version));
        }
        if self.realizations < 1 {
            return bad("realizations must be at least 1".into());
        }
        if self.sigmas.iter().any(|s| !(*s >= 0.0 && s.is_finite())) {
            return bad("noise levels must be non-negative".into());
        }
        if self.sigmas.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("noise levels must be sorted and distinct".into());
        }
        if !(self.fs > 0.0 && self.f0 > 0.0 && self.duration_s > 0.0 && self.analyze_s > 0.0) {
            return bad("fs, f0, duration_s and analyze_s must be positive".into());
        }
        if !(self.fmin_hz > 0.0 && self.fmax_hz > self.fmin_hz) {
            return bad(format!("invalid frequency range [{}, {}] Hz", self.fmin_hz, self.fmax_hz));
        }
        if !(self.threshold > 0.0) {
            return bad("threshold must be positive".into());
        }
        for m in &self.methods {
            if m.scheme == Scheme::II && m.optimization == OptimizationChoice::OneStep {
                return bad(format!("method {}: scheme II supports path optimization only", m.label));
            }
            if !(m.alpha >= 0.0 && m.beta >= 0.0) {
                return bad(format!("method {}: alpha and beta must be non-negative", m.label));
            }
        }
        let mut labels: Vec<&str> = self.methods.iter().map(|m| m.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return bad("method labels must be unique".into());
        }
        if let Some(d) = &self.discard {
            if !d.is_empty() && !(d.band_hz[0] >= self.fmin_hz && d.band_hz[1] <= self.fmax_hz) {
                return bad("discard band must lie within the frequency range".into());
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Result<AnalysisKernel> {
        Ok(match self.tfr {
            TfrChoice::Wft => AnalysisKernel::gaussian(self.f0)?,
            TfrChoice::Wt => AnalysisKernel::lognormal(self.f0)?,
        })
    }

    pub fn grid(&self) -> Result<FrequencyGrid> {
        default_grid(&self.kernel()?, self.fmin_hz, self.fmax_hz, self.density)
    }

    /// Noise-free signal over the full simulated length.
    pub fn base_signal(&self) -> Result<DiscreteSignal> {
        match &self.signal {
            SignalSource::S1 => Ok(s1_signal(self.duration_s, self.fs)?),
            SignalSource::Csv(path) => crate::io::read_signal(path, Some(self.fs)),
        }
    }

    /// Fraction trimmed from each end so that `analyze_s` remains.
    pub fn trim_fraction(&self, signal: &DiscreteSignal) -> f64 {
        let total = signal.len() as f64 / signal.fs();
        if self.analyze_s >= total {
            0.0
        } else {
            0.5 * (total - self.analyze_s) / total
        }
    }
}

/// Precomputed inputs shared by all runs of a benchmark.
pub struct Setup {
    pub config: BenchmarkConfig,
    pub kernel: AnalysisKernel,
    pub grid: FrequencyGrid,
    pub signal: DiscreteSignal,
    pub window: ridgeline_core::TrimWindow,
    scheme1_ratio: f64,
}

impl Setup {
    pub fn new(config: BenchmarkConfig) -> Result<Self> {
        config.validate()?;
        let kernel = config.kernel()?;
        let grid = config.grid()?;
        let signal = config.base_signal()?;
        let (_, window) = pad_and_trim(&signal, PadPolicy::None, config.trim_fraction(&signal))?;
        let scheme1_ratio = resolution_measures(&kernel, 0.5)?.ratio();
        Ok(Self { config, kernel, grid, signal, window, scheme1_ratio })
    }

    /// Signal plus the noise of realization `r` scaled to `sigma`.
    pub fn noisy_signal(&self, sigma: f64, realization: usize) -> Result<DiscreteSignal> {
        if sigma == 0.0 {
            return Ok(self.signal.clone());
        }
        let spec = NoiseSpec { sigma, seed: self.config.master_seed ^ realization as u64 };
        let (n, fs) = (self.signal.len(), self.signal.fs());
        let noise = match self.config.noise {
            NoiseKind::Colored => colored_noise(n, fs, spec)?,
            NoiseKind::White => white_noise(n, fs, spec)?,
        };
        Ok(self.signal.add_scaled(&noise, 1.0)?)
    }

    /// Central part of the transform of `signal`. The long record itself is
    /// the boundary treatment, so there is no padding.
    pub fn transform(&self, signal: &DiscreteSignal) -> Result<TfrMatrix> {
        compute_tfr_window(signal, &self.kernel, &self.grid, self.window)
    }

    pub fn times(&self) -> Vec<f64> {
        self.window.range().map(|n| self.signal.time(n)).collect()
    }
}

/// Ridge points of one transform, squeezed variants computed on demand.
pub struct RidgeInputs {
    pub tfr: TfrMatrix,
    pub peaks: RidgePointSet,
    pub squeezed_peaks: Option<RidgePointSet>,
    pub squeezed_integrated: Option<RidgePointSet>,
}

impl RidgeInputs {
    pub fn new(tfr: TfrMatrix, methods: &[MethodSpec]) -> Result<Self> {
        let peaks = detect_peaks(&tfr)?;
        let need_peaks = methods.iter().any(|m| m.ridges == RidgeSource::SqueezedPeaks);
        let need_int = methods.iter().any(|m| m.ridges == RidgeSource::SqueezedIntegrated);
        let (mut squeezed_peaks, mut squeezed_integrated) = (None, None);
        if need_peaks || need_int {
            let sq = synchrosqueeze_par(&tfr)?;
            if need_peaks {
                squeezed_peaks = Some(peak_ridges(&sq)?);
            }
            if need_int {
                squeezed_integrated = Some(integrated_ridges(&sq).to_point_set(sq.grid())?);
            }
        }
        Ok(Self { tfr, peaks, squeezed_peaks, squeezed_integrated })
    }

    pub fn points(&self, source: RidgeSource) -> Result<&RidgePointSet> {
        let p = match source {
            RidgeSource::Tfr => Some(&self.peaks),
            RidgeSource::SqueezedPeaks => self.squeezed_peaks.as_ref(),
            RidgeSource::SqueezedIntegrated => self.squeezed_integrated.as_ref(),
        };
        p.ok_or_else(|| Error::Config(format!("ridge points {source:?} were not prepared")))
    }
}

/// A method's curve with its extraction diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub curve: RidgeCurve,
    /// Scheme II path optimizations in the last extraction.
    pub iterations: Option<usize>,
    pub converged: bool,
    pub discard_rounds: usize,
    /// The curve still sat nearer the secondary band after the last round.
    pub discard_exhausted: bool,
}

struct Extractor<'a> {
    method: &'a MethodSpec,
    /// Resolution ratio of the kernel, for scheme I.
    ratio: f64,
    discard: Option<&'a DiscardSpec>,
}

impl Extractor<'_> {
    /// Extraction from a point set; `initial` is the scheme II starting curve.
    fn run(
        &self,
        inputs: &RidgeInputs,
        points: &RidgePointSet,
        initial: Option<Vec<f64>>,
    ) -> Result<(RidgeCurve, Option<usize>, bool)> {
        let m = self.method;
        match m.scheme {
            Scheme::GlobalMax => Ok((extract_global_max(points)?, None, true)),
            Scheme::I => {
                let params = SchemeIParams { alpha: m.alpha, resolution_ratio: self.ratio, fs: inputs.tfr.fs() };
                let opt = match m.optimization {
                    OptimizationChoice::Path => Optimization::Path,
                    OptimizationChoice::OneStep => Optimization::OneStep,
                };
                Ok((extract_scheme1(points, params, opt)?, None, true))
            }
            Scheme::II => {
                if m.optimization == OptimizationChoice::OneStep {
                    return Err(Error::Config("scheme II supports path optimization only".into()));
                }
                let initial = match initial {
                    Some(c) => c,
                    None => extract_global_max(points)?.coords(points.axis()),
                };
                let params = SchemeIIParams::for_grid(m.alpha, m.beta, inputs.tfr.grid())?;
                let out = extract_scheme2_points(points, &initial, params)?;
                Ok((out.curve, Some(out.iterations), out.converged))
            }
        }
    }

    fn extract(&self, inputs: &RidgeInputs) -> Result<Extraction> {
        let points = inputs.points(self.method.ridges)?;
        // the first scheme II pass on the transform starts from its raw bin maxima
        let initial = match (self.method.scheme, self.method.ridges) {
            (Scheme::II, RidgeSource::Tfr) => {
                let grid = inputs.tfr.grid();
                let axis = grid.axis();
                Some(inputs.tfr.argmax_bins().into_iter().map(|k| axis.coord(grid.freq(k))).collect())
            }
            _ => None,
        };
        let (curve, iterations, converged) = self.run(inputs, points, initial)?;
        let mut ex = Extraction { curve, iterations, converged, discard_rounds: 0, discard_exhausted: false };
        if let Some(spec) = self.discard {
            discard_reextract(points, &mut ex, spec, |p| self.run(inputs, p, None))?;
        }
        Ok(ex)
    }
}

fn median_hz(curve: &RidgeCurve) -> f64 {
    let hz: Vec<f64> = curve.freqs.iter().map(|w| w / (2.0 * PI)).collect();
    ridgeline_core::robust_stats(&hz).map(|s| s.median).unwrap_or(f64::NAN)
}

/// Applies the discard-and-reextract rule to `ex` in place.
///
/// While the curve's median lies nearer the band centre than the dominant
/// frequency, the selected points that lie nearer the band are removed and
/// the curve is re-extracted, for at most `max_rounds` rounds. Columns
/// holding a single point keep it.
pub fn discard_reextract(
    points: &RidgePointSet,
    ex: &mut Extraction,
    spec: &DiscardSpec,
    mut extract: impl FnMut(&RidgePointSet) -> Result<(RidgeCurve, Option<usize>, bool)>,
) -> Result<()> {
    if spec.is_empty() {
        return Ok(());
    }
    let mut pts = points.clone();
    for _ in 0..spec.max_rounds {
        if !spec.nearer_band(median_hz(&ex.curve)) {
            return Ok(());
        }
        let remove: Vec<Option<usize>> = ex
            .curve
            .indices
            .iter()
            .zip(&ex.curve.freqs)
            .map(|(&m, &w)| spec.nearer_band(w / (2.0 * PI)).then_some(m))
            .collect();
        pts = pts.without(&remove);
        let (curve, iterations, converged) = extract(&pts)?;
        ex.curve = curve;
        ex.iterations = iterations;
        ex.converged = converged;
        ex.discard_rounds += 1;
    }
    ex.discard_exhausted = spec.nearer_band(median_hz(&ex.curve));
    Ok(())
}

/// Curve of one benchmark method on one transform.
pub fn extract_method(setup: &Setup, method: &MethodSpec, inputs: &RidgeInputs) -> Result<Extraction> {
    Extractor { method, ratio: setup.scheme1_ratio, discard: setup.config.discard.as_ref() }.extract(inputs)
}

/// Curve of `method` on `inputs`, outside a benchmark.
pub fn extract_with(method: &MethodSpec, inputs: &RidgeInputs, discard: Option<&DiscardSpec>) -> Result<Extraction> {
    let ratio = resolution_measures(inputs.tfr.kernel(), 0.5)?.ratio();
    Extractor { method, ratio, discard }.extract(inputs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: usize,
    pub sigma_index: usize,
    pub realization: usize,
    /// NaN when the run failed.
    pub ef: f64,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub discard_rounds: usize,
    pub flag: Option<String>,
    /// Extracted curve in Hz, when `keep_curves` is set.
    #[serde(skip)]
    pub curve_hz: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub method: usize,
    pub sigma: f64,
    pub mean: f64,
    pub std: f64,
    /// Realizations with a finite ε_f.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResult {
    pub config: BenchmarkConfig,
    pub labels: Vec<String>,
    pub sigmas: Vec<f64>,
    pub times: Vec<f64>,
    /// Noise-free curve of each method, Hz.
    pub references: Vec<Vec<f64>>,
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    /// Per method; `None` with fewer than two noise levels.
    pub sigma_max: Vec<Option<SigmaMax>>,
}

impl BenchmarkResult {
    pub fn row(&self, method: usize, sigma_index: usize) -> &SummaryRow {
        &self.summary[method * self.sigmas.len() + sigma_index]
    }

    pub fn method_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mean_ef(&self, label: &str, sigma_index: usize) -> Option<f64> {
        self.method_index(label).map(|m| self.row(m, sigma_index).mean)
    }
}

fn curve_hz(c: &RidgeCurve) -> Vec<f64> {
    c.freqs.iter().map(|w| w / (2.0 * PI)).collect()
}

fn run_unit(setup: &Setup, refs: &[Vec<f64>], sigma_index: usize, realization: usize) -> Vec<RunRecord> {
    let cfg = &setup.config;
    let sigma = cfg.sigmas[sigma_index];
    let fail = |method: usize, e: &Error| RunRecord {
        method,
        sigma_index,
        realization,
        ef: f64::NAN,
        iterations: None,
        converged: false,
        discard_rounds: 0,
        flag: Some(e.to_string()),
        curve_hz: None,
    };
    let inputs = setup
        .noisy_signal(sigma, realization)
        .and_then(|s| setup.transform(&s))
        .and_then(|t| RidgeInputs::new(t, &cfg.methods));
    let inputs = match inputs {
        Ok(i) => i,
        Err(e) => return (0..cfg.methods.len()).map(|m| fail(m, &e)).collect(),
    };
    cfg.methods
        .iter()
        .enumerate()
        .map(|(mi, method)| {
            let ex = match extract_method(setup, method, &inputs) {
                Ok(ex) => ex,
                Err(e) => return fail(mi, &e),
            };
            let hz = curve_hz(&ex.curve);
            let ef = error_ef(&hz, &refs[mi]).unwrap_or(f64::NAN);
            let mut flags = Vec::new();
            if !ex.converged {
                flags.push("iteration cap reached".to_string());
            }
            if ex.discard_exhausted {
                flags.push("discard rounds exhausted".to_string());
            }
            RunRecord {
                method: mi,
                sigma_index,
                realization,
                ef,
                iterations: ex.iterations,
                converged: ex.converged,
                discard_rounds: ex.discard_rounds,
                flag: (!flags.is_empty()).then(|| flags.join("; ")),
                curve_hz: cfg.keep_curves.then_some(hz),
            }
        })
        .collect()
}

/// Runs the full sweep. Deterministic for a given configuration, whatever
/// the thread count.
pub fn run_benchmark(config: BenchmarkConfig) -> Result<BenchmarkResult> {
    let setup = Setup::new(config)?;
    run_with_setup(&setup)
}

pub fn run_with_setup(setup: &Setup) -> Result<BenchmarkResult> {
    let cfg = &setup.config;
    let clean = RidgeInputs::new(setup.transform(&setup.signal)?, &cfg.methods)?;
    let references: Vec<Vec<f64>> = cfg
        .methods
        .iter()
        .map(|m| extract_method(setup, m, &clean).map(|ex| curve_hz(&ex.curve)))
        .collect::<Result<_>>()?;
    drop(clean);

    let units: Vec<(usize, usize)> =
        (0..cfg.sigmas.len()).flat_map(|s| (0..cfg.realizations).map(move |r| (s, r))).collect();
    let mut records: Vec<RunRecord> =
        units.par_iter().flat_map_iter(|&(s, r)| run_unit(setup, &references, s, r)).collect();
    records.sort_by_key(|r| (r.method, r.sigma_index, r.realization));

    let mut summary = Vec::new();
    for m in 0..cfg.methods.len() {
        for (si, &sigma) in cfg.sigmas.iter().enumerate() {
            let efs: Vec<f64> = records
                .iter()
                .filter(|r| r.method == m && r.sigma_index == si && !r.ef.is_nan())
                .map(|r| r.ef)
                .collect();
            let (mean, std) = mean_std(&efs);
            summary.push(SummaryRow { method: m, sigma, mean, std, count: efs.len() });
        }
    }
    let ns = cfg.sigmas.len();
    let sigma_max = (0..cfg.methods.len())
        .map(|m| {
            if ns < 2 {
                return None;
            }
            let y: Vec<f64> = summary[m * ns..(m + 1) * ns].iter().map(|r| r.mean + r.std).collect();
            sigma_max(&cfg.sigmas, &y, cfg.threshold).ok()
        })
        .collect();
    Ok(BenchmarkResult {
        config: cfg.clone(),
        labels: cfg.methods.iter().map(|m| m.label.clone()).collect(),
        sigmas: cfg.sigmas.clone(),
        times: setup.times(),
        references,
        records,
        summary,
        sigma_max,
    })
}
