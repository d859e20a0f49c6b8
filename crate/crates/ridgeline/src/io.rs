//! File formats: signal CSV input, transform and curve CSV output, JSON
//! sidecars, benchmark tables and manifests.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ridgeline_core::{
    Complex64, DiscreteSignal, FrequencyGrid, RidgeCurve, SqueezedKind, SynchroTfr, TfrKind, TfrMatrix,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bench::{BenchmarkConfig, BenchmarkResult};
use crate::error::{Error, Result};

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Reads a signal from CSV: one value per line, or `time,value` rows with
/// uniform spacing (to 1e-6 relative). A first line whose first field is not
/// a number is treated as a header. `fs` is required for single-column files;
/// two-column files take their rate from the time column.
pub fn read_signal(path: &Path, fs: Option<f64>) -> Result<DiscreteSignal> {
    parse_signal(&read_text(path)?, fs).map_err(|m| Error::parse(path, m))
}

pub fn parse_signal(text: &str, fs: Option<f64>) -> std::result::Result<DiscreteSignal, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut first = true;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if std::mem::take(&mut first) && fields[0].parse::<f64>().is_err() {
            continue;
        }
        let vals = fields
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| format!("line {}: '{f}' is not a number", i + 1)))
            .collect::<std::result::Result<Vec<f64>, String>>()?;
        if let Some(first) = rows.first() {
            if first.len() != vals.len() {
                return Err(format!("line {}: expected {} columns, found {}", i + 1, first.len(), vals.len()));
            }
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err("no samples".into());
    }
    match rows[0].len() {
        1 => {
            let fs = fs.ok_or("single-column signal needs a sampling frequency (--fs)")?;
            let x = rows.into_iter().map(|r| r[0]).collect();
            DiscreteSignal::new(x, fs).map_err(|e| e.to_string())
        }
        2 => {
            if rows.len() < 2 {
                return Err("signal needs at least 2 samples".into());
            }
            let t: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
            if !(dt > 0.0) {
                return Err("time column must increase".into());
            }
            for (i, w) in t.windows(2).enumerate() {
                if ((w[1] - w[0]) - dt).abs() > 1e-6 * dt {
                    return Err(format!("non-uniform time step after sample {}", i + 1));
                }
            }
            let x = rows.into_iter().map(|r| r[1]).collect();
            DiscreteSignal::with_start(x, 1.0 / dt, t[0]).map_err(|e| e.to_string())
        }
        n => Err(format!("expected 1 or 2 columns, found {n}")),
    }
}

/// `re+imj` literal, shortest round-trip decimal for both parts.
pub fn format_complex(c: Complex64) -> String {
    if c.im.is_sign_negative() {
        format!("{}-{}j", c.re, -c.im)
    } else {
        format!("{}+{}j", c.re, c.im)
    }
}

pub fn parse_complex(s: &str) -> Option<Complex64> {
    let body = s.trim().strip_suffix('j')?;
    // split at the sign that starts the imaginary part (not an exponent sign)
    let bytes = body.as_bytes();
    let pos = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
    let re = body[..pos].parse().ok()?;
    let im = body[pos..].parse().ok()?;
    Some(Complex64::new(re, im))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scale", rename_all = "lowercase")]
pub enum GridMeta {
    Linear { omega_min: f64, step: f64, len: usize },
    Logarithmic { omega_min: f64, voices: f64, len: usize },
}

impl From<&FrequencyGrid> for GridMeta {
    fn from(g: &FrequencyGrid) -> Self {
        match *g {
            FrequencyGrid::Linear { omega_min, step, len } => GridMeta::Linear { omega_min, step, len },
            FrequencyGrid::Logarithmic { omega_min, voices, len } => GridMeta::Logarithmic { omega_min, voices, len },
        }
    }
}

/// JSON sidecar of a transform or squeezed transform CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfrMeta {
    /// wft, wt, swft or swt.
    pub kind: String,
    pub kernel: String,
    pub f0: f64,
    pub grid: GridMeta,
    pub fmin_hz: f64,
    pub fmax_hz: f64,
    pub fs: f64,
    pub t0: f64,
    pub n_times: usize,
    /// Window of the analysed signal kept after transforming, `[start, end)`.
    pub trim_window: Option<[usize; 2]>,
    pub normalizer: Option<f64>,
    pub dropped_fraction: Option<f64>,
    pub dropped_count: Option<usize>,
}

fn matrix_csv(
    grid: &FrequencyGrid,
    n_times: usize,
    t0: f64,
    fs: f64,
    coeff: impl Fn(usize, usize) -> Complex64,
) -> String {
    let mut s = String::from("freq_hz");
    for n in 0..n_times {
        let _ = write!(s, ",{}", t0 + n as f64 / fs);
    }
    s.push('\n');
    for k in 0..grid.len() {
        let _ = write!(s, "{}", grid.freq(k) / (2.0 * PI));
        for n in 0..n_times {
            s.push(',');
            s.push_str(&format_complex(coeff(k, n)));
        }
        s.push('\n');
    }
    s
}

/// Transform coefficients as CSV: a header of times in s, then one row per
/// bin starting with its frequency in Hz.
pub fn tfr_csv(tfr: &TfrMatrix) -> String {
    matrix_csv(tfr.grid(), tfr.n_times(), tfr.t0(), tfr.fs(), |k, n| tfr.coeff(k, n))
}

/// Synchrosqueezed masses in the layout of [`tfr_csv`].
pub fn squeezed_csv(sq: &SynchroTfr) -> String {
    matrix_csv(sq.grid(), sq.n_times(), sq.t0(), sq.fs(), |k, n| sq.mass(k, n))
}

/// Sidecar path: `x.csv` → `x.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

fn kernel_name(is_wavelet: bool) -> &'static str {
    if is_wavelet {
        "lognormal-wavelet"
    } else {
        "gaussian-window"
    }
}

/// Writes [`tfr_csv`] plus the JSON sidecar.
pub fn write_tfr(path: &Path, tfr: &TfrMatrix, trim_window: Option<[usize; 2]>) -> Result<()> {
    write_text(path, &tfr_csv(tfr))?;
    let meta = TfrMeta {
        kind: match tfr.kind() {
            TfrKind::Wft => "wft",
            TfrKind::Wt => "wt",
        }
        .into(),
        kernel: kernel_name(tfr.kernel().is_wavelet()).into(),
        f0: tfr.kernel().f0(),
        grid: tfr.grid().into(),
        fmin_hz: tfr.grid().omega_min() / (2.0 * PI),
        fmax_hz: tfr.grid().omega_max() / (2.0 * PI),
        fs: tfr.fs(),
        t0: tfr.t0(),
        n_times: tfr.n_times(),
        trim_window,
        normalizer: None,
        dropped_fraction: None,
        dropped_count: None,
    };
    write_json(&sidecar_path(path), &meta)
}

pub fn write_squeezed(path: &Path, sq: &SynchroTfr, f0: f64) -> Result<()> {
    write_text(path, &squeezed_csv(sq))?;
    let swt = sq.kind() == SqueezedKind::Swt;
    let meta = TfrMeta {
        kind: if swt { "swt" } else { "swft" }.into(),
        kernel: kernel_name(swt).into(),
        f0,
        grid: sq.grid().into(),
        fmin_hz: sq.grid().omega_min() / (2.0 * PI),
        fmax_hz: sq.grid().omega_max() / (2.0 * PI),
        fs: sq.fs(),
        t0: sq.t0(),
        n_times: sq.n_times(),
        trim_window: None,
        normalizer: Some(sq.normalizer()),
        dropped_fraction: Some(sq.dropped_fraction()),
        dropped_count: Some(sq.dropped_count()),
    };
    write_json(&sidecar_path(path), &meta)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::parse(path, e.to_string()))?;
    s.push('\n');
    write_text(path, &s)
}

/// `time_s,freq_hz,peak_index,amplitude`.
pub fn curve_csv(curve: &RidgeCurve, times: &[f64]) -> String {
    let mut s = String::from("time_s,freq_hz,peak_index,amplitude\n");
    for (n, t) in times.iter().enumerate().take(curve.len()) {
        let _ = writeln!(s, "{t},{},{},{}", curve.freqs[n] / (2.0 * PI), curve.indices[n], curve.amps[n]);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub scheme: String,
    pub alpha: f64,
    pub beta: f64,
    pub ridges: String,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub score: f64,
    pub n_times: usize,
    pub median_freq_hz: f64,
}

/// Run manifest: everything needed to replay a command, plus output checksums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub arguments: serde_json::Value,
    pub config: Option<BenchmarkConfig>,
    /// File name → SHA-256 of its contents.
    pub outputs: std::collections::BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: &str, arguments: serde_json::Value, config: Option<BenchmarkConfig>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            arguments,
            config,
            outputs: Default::default(),
        }
    }

    pub fn record(&mut self, name: &str, contents: &str) {
        self.outputs.insert(name.into(), sha256_hex(contents.as_bytes()));
    }

    pub fn read(path: &Path) -> Result<Self> {
        serde_json::from_str(&read_text(path)?).map_err(|e| Error::parse(path, e.to_string()))
    }
}

/// Loads a benchmark configuration from TOML, or from the `config` field of
/// a JSON run manifest.
pub fn load_bench_config(path: &Path) -> Result<BenchmarkConfig> {
    let text = read_text(path)?;
    let cfg = if path.extension().is_some_and(|e| e == "json") {
        let m: Manifest = serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))?;
        m.config.ok_or_else(|| Error::parse(path, "manifest has no benchmark config"))?
    } else {
        toml::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))?
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn config_toml(cfg: &BenchmarkConfig) -> Result<String> {
    toml::to_string_pretty(cfg).map_err(|e| Error::Config(e.to_string()))
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn slug(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' }).collect()
}

/// Benchmark tables rendered as `(file name, contents)` pairs.
pub fn bench_tables(r: &BenchmarkResult) -> Vec<(String, String)> {
    let ns = r.sigmas.len();
    let mut summary = String::from("method,sigma,mean_ef,std_ef,count,sigma_max,sigma_max_beyond_range\n");
    let mut plot = String::from("method,sigma,mean,lower,upper\n");
    for (m, label) in r.labels.iter().enumerate() {
        let smax = r.sigma_max[m];
        for si in 0..ns {
            let row = r.row(m, si);
            let _ = writeln!(
                summary,
                "{label},{},{},{},{},{},{}",
                row.sigma,
                row.mean,
                row.std,
                row.count,
                opt(smax.map(|s| s.sigma)),
                opt(smax.map(|s| s.beyond_range))
            );
            let _ = writeln!(plot, "{label},{},{},{},{}", row.sigma, row.mean, row.mean - row.std, row.mean + row.std);
        }
    }
    let mut smax = String::from("method,sigma_max,beyond_range\n");
    for (m, label) in r.labels.iter().enumerate() {
        let s = r.sigma_max[m];
        let _ = writeln!(smax, "{label},{},{}", opt(s.map(|s| s.sigma)), opt(s.map(|s| s.beyond_range)));
    }
    let mut runs = String::from("method,sigma,realization,ef,iterations,converged,discard_rounds,flag\n");
    for rec in &r.records {
        let _ = writeln!(
            runs,
            "{},{},{},{},{},{},{},{}",
            r.labels[rec.method],
            r.sigmas[rec.sigma_index],
            rec.realization,
            rec.ef,
            opt(rec.iterations),
            rec.converged,
            rec.discard_rounds,
            rec.flag.as_deref().unwrap_or("").replace(',', ";")
        );
    }
    let mut refs = String::from("time_s");
    for label in &r.labels {
        let _ = write!(refs, ",{label}");
    }
    refs.push('\n');
    for (n, t) in r.times.iter().enumerate() {
        let _ = write!(refs, "{t}");
        for c in &r.references {
            let _ = write!(refs, ",{}", c[n]);
        }
        refs.push('\n');
    }
    let mut files = vec![
        ("summary.csv".to_string(), summary),
        ("sigma_max.csv".to_string(), smax),
        ("runs.csv".to_string(), runs),
        ("plot.csv".to_string(), plot),
        ("references.csv".to_string(), refs),
    ];
    for rec in &r.records {
        if let Some(c) = &rec.curve_hz {
            let mut s = String::from("time_s,freq_hz\n");
            for (t, f) in r.times.iter().zip(c) {
                let _ = writeln!(s, "{t},{f}");
            }
            let name = format!("curves/{}_s{}_r{}.csv", slug(&r.labels[rec.method]), rec.sigma_index, rec.realization);
            files.push((name, s));
        }
    }
    files
}

/// Writes the benchmark tables and a manifest into `dir`; returns the manifest.
pub fn export_results(r: &BenchmarkResult, dir: &Path, arguments: serde_json::Value) -> Result<Manifest> {
    let mut manifest = Manifest::new("bench", arguments, Some(r.config.clone()));
    for (name, contents) in bench_tables(r) {
        write_text(&dir.join(&name), &contents)?;
        manifest.record(&name, &contents);
    }
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}
