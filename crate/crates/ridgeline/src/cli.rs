//! Command-line front end: `transform`, `extract`, `squeeze`, `bench` and `describe`.
//!
//! Exit status is 0 on success, 1 on usage errors and 2 on runtime failures.
//! Flags take precedence over `RIDGELINE_*` environment variables, which take
//! precedence over `--config` and the built-in defaults.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ridgeline_core::{AnalysisKernel, DiscreteSignal, FrequencyGrid, PadPolicy, TfrMatrix};
use serde::Serialize;
use serde_json::json;

use crate::bench::{
    extract_with, run_benchmark, BenchmarkConfig, MethodSpec, NoiseKind, OptimizationChoice, RidgeInputs, RidgeSource,
    Scheme, TfrChoice,
};
use crate::error::Error;
use crate::io::{
    curve_csv, export_results, load_bench_config, read_signal, read_text, sha256_hex, write_json, write_squeezed,
    write_text, write_tfr, CurveReport, Manifest,
};
use crate::squeeze::synchrosqueeze_par;
use crate::transform::{compute_tfr, default_grid};

#[derive(Debug, Parser)]
#[command(name = "ridgeline", version, about = "Ridge-curve extraction from windowed Fourier and wavelet transforms")]
pub struct Cli {
    /// Worker threads; all cores by default.
    #[arg(long, global = true, env = "RIDGELINE_THREADS")]
    pub threads: Option<usize>,
    /// Progress and resolved parameters on standard error.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Windowed Fourier or wavelet transform of a signal.
    Transform(TransformArgs),
    /// Ridge curve of the dominant component.
    Extract(ExtractArgs),
    /// Synchrosqueezed transform.
    Squeeze(TransformArgs),
    /// Monte-Carlo comparison of extraction methods.
    Bench(BenchArgs),
    /// Parameter documentation and defaults of a subcommand.
    Describe(DescribeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PadChoice {
    Zero,
    Reflect,
    None,
}

impl From<PadChoice> for PadPolicy {
    fn from(p: PadChoice) -> Self {
        match p {
            PadChoice::Zero => PadPolicy::Zero,
            PadChoice::Reflect => PadPolicy::Reflect,
            PadChoice::None => PadPolicy::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SqueezeChoice {
    None,
    Peaks,
    Integrated,
}

#[derive(Debug, Clone, Serialize, Args)]
pub struct TransformArgs {
    /// Signal CSV: one value per line, or `time,value` rows.
    #[arg(long = "in", env = "RIDGELINE_IN")]
    pub input: PathBuf,
    /// Output CSV; standard output when omitted (no sidecar or manifest then).
    #[arg(long, env = "RIDGELINE_OUT")]
    pub out: Option<PathBuf>,
    /// Benchmark config (TOML or manifest) supplying fs, f0, tfr and grid defaults.
    #[arg(long, env = "RIDGELINE_CONFIG")]
    pub config: Option<PathBuf>,
    /// Sampling rate in Hz, for single-column input.
    #[arg(long, env = "RIDGELINE_FS")]
    pub fs: Option<f64>,
    #[arg(long, value_enum, env = "RIDGELINE_TFR")]
    pub tfr: Option<TfrChoice>,
    /// Kernel resolution parameter.
    #[arg(long, env = "RIDGELINE_F0")]
    pub f0: Option<f64>,
    /// Lowest grid frequency, Hz.
    #[arg(long, env = "RIDGELINE_FMIN")]
    pub fmin: Option<f64>,
    /// Highest grid frequency, Hz.
    #[arg(long, env = "RIDGELINE_FMAX")]
    pub fmax: Option<f64>,
    /// WFT bin spacing, Hz.
    #[arg(long, env = "RIDGELINE_DFREQ", conflicts_with = "voices")]
    pub dfreq: Option<f64>,
    /// WT voices per octave.
    #[arg(long, env = "RIDGELINE_VOICES")]
    pub voices: Option<f64>,
    #[arg(long, value_enum, default_value = "zero", env = "RIDGELINE_PAD")]
    pub pad: PadChoice,
    /// Fraction of the record discarded at each end after transforming.
    #[arg(long, default_value_t = 0.0, env = "RIDGELINE_TRIM")]
    pub trim: f64,
}

#[derive(Debug, Clone, Serialize, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub transform: TransformArgs,
    #[arg(long, value_enum, default_value = "II", ignore_case = true, env = "RIDGELINE_SCHEME")]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 1.0, env = "RIDGELINE_ALPHA")]
    pub alpha: f64,
    /// Scheme II only.
    #[arg(long, default_value_t = 1.0, env = "RIDGELINE_BETA")]
    pub beta: f64,
    /// Scheme I only.
    #[arg(long, value_enum, default_value = "path", env = "RIDGELINE_OPTIMIZATION")]
    pub optimization: OptimizationChoice,
    /// Extract from the synchrosqueezed transform instead.
    #[arg(long, value_enum, default_value = "none", env = "RIDGELINE_SQUEEZE")]
    pub squeeze: SqueezeChoice,
}

#[derive(Debug, Clone, Serialize, Args)]
pub struct BenchArgs {
    /// TOML config, or a bench manifest to replay.
    #[arg(long, env = "RIDGELINE_CONFIG")]
    pub config: Option<PathBuf>,
    /// Output directory for the tables and manifest.
    #[arg(long, default_value = "bench-out", env = "RIDGELINE_OUT")]
    pub out: PathBuf,
    /// Master seed; realization r uses seed ^ r.
    #[arg(long, env = "RIDGELINE_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "RIDGELINE_REALIZATIONS")]
    pub realizations: Option<usize>,
    /// Comma-separated noise levels.
    #[arg(long, value_delimiter = ',', env = "RIDGELINE_SIGMAS")]
    pub sigmas: Option<Vec<f64>>,
    /// Signal CSV replacing the built-in test signal.
    #[arg(long = "in", env = "RIDGELINE_IN")]
    pub input: Option<PathBuf>,
    #[arg(long, env = "RIDGELINE_FS")]
    pub fs: Option<f64>,
    #[arg(long, value_enum, env = "RIDGELINE_TFR")]
    pub tfr: Option<TfrChoice>,
    #[arg(long, env = "RIDGELINE_F0")]
    pub f0: Option<f64>,
    #[arg(long, env = "RIDGELINE_FMIN")]
    pub fmin: Option<f64>,
    #[arg(long, env = "RIDGELINE_FMAX")]
    pub fmax: Option<f64>,
    #[arg(long, env = "RIDGELINE_DFREQ", conflicts_with = "voices")]
    pub dfreq: Option<f64>,
    #[arg(long, env = "RIDGELINE_VOICES")]
    pub voices: Option<f64>,
    #[arg(long, value_enum, env = "RIDGELINE_NOISE")]
    pub noise: Option<NoiseKind>,
    #[arg(long, env = "RIDGELINE_THRESHOLD")]
    pub threshold: Option<f64>,
    /// Also write every extracted curve under `curves/`.
    #[arg(long)]
    pub keep_curves: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Topic {
    Transform,
    Extract,
    Squeeze,
    Bench,
}

#[derive(Debug, Clone, Args)]
pub struct DescribeArgs {
    #[arg(value_enum)]
    pub topic: Topic,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Runtime(e)
    }
}

impl From<ridgeline_core::Error> for CliError {
    fn from(e: ridgeline_core::Error) -> Self {
        Self::Runtime(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<String> = args.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if informational { 0 } else { 1 };
        }
    };
    match execute(&cli, &argv) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try 'ridgeline --help'.");
            1
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, argv: &[String]) -> CliResult<()> {
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            if n == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            b = b.num_threads(n);
        }
        b.build().map_err(|e| Error::Config(e.to_string()))?
    };
    let ctx = Context { argv, verbose: cli.verbose };
    pool.install(|| match &cli.command {
        Command::Transform(a) => ctx.transform(a),
        Command::Extract(a) => ctx.extract(a),
        Command::Squeeze(a) => ctx.squeeze(a),
        Command::Bench(a) => ctx.bench(a),
        Command::Describe(a) => {
            print!("{}", describe(a.topic));
            Ok(())
        }
    })
}

struct Context<'a> {
    argv: &'a [String],
    verbose: bool,
}

/// Kernel and grid resolved from flags, config and defaults.
#[derive(Debug, Serialize)]
struct Analysis {
    fs: Option<f64>,
    tfr: TfrChoice,
    f0: f64,
    fmin_hz: f64,
    fmax_hz: f64,
    density: Option<f64>,
    pad: PadChoice,
    trim: f64,
    #[serde(skip)]
    kernel: AnalysisKernel,
    #[serde(skip)]
    grid: FrequencyGrid,
}

fn density_flag(tfr: TfrChoice, dfreq: Option<f64>, voices: Option<f64>) -> CliResult<Option<f64>> {
    match (tfr, dfreq, voices) {
        (TfrChoice::Wt, Some(_), _) => {
            Err(CliError::Usage("--dfreq applies to the WFT; use --voices with --tfr wt".into()))
        }
        (TfrChoice::Wft, _, Some(_)) => {
            Err(CliError::Usage("--voices applies to the WT; use --dfreq with --tfr wft".into()))
        }
        (TfrChoice::Wft, d, _) => Ok(d),
        (TfrChoice::Wt, _, v) => Ok(v),
    }
}

impl TransformArgs {
    fn analysis(&self) -> CliResult<Analysis> {
        let cfg = match &self.config {
            Some(p) => load_bench_config(p)?,
            None => BenchmarkConfig::default(),
        };
        let tfr = self.tfr.unwrap_or(cfg.tfr);
        let flag_density = density_flag(tfr, self.dfreq, self.voices)?;
        // a config density only carries over when the transform type matches
        let density = flag_density.or(if tfr == cfg.tfr { cfg.density } else { None });
        let f0 = self.f0.unwrap_or(cfg.f0);
        let kernel = match tfr {
            TfrChoice::Wft => AnalysisKernel::gaussian(f0)?,
            TfrChoice::Wt => AnalysisKernel::lognormal(f0)?,
        };
        let (fmin_hz, fmax_hz) = (self.fmin.unwrap_or(cfg.fmin_hz), self.fmax.unwrap_or(cfg.fmax_hz));
        let grid = default_grid(&kernel, fmin_hz, fmax_hz, density)?;
        let fs = self.fs.or(self.config.as_ref().map(|_| cfg.fs));
        Ok(Analysis { fs, tfr, f0, fmin_hz, fmax_hz, density, pad: self.pad, trim: self.trim, kernel, grid })
    }
}

impl Analysis {
    fn transform(&self, s: &DiscreteSignal) -> CliResult<TfrMatrix> {
        Ok(compute_tfr(s, &self.kernel, &self.grid, self.pad.into(), self.trim)?)
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

impl Context<'_> {
    fn note(&self, msg: impl FnOnce() -> String) {
        if self.verbose {
            eprintln!("{}", msg());
        }
    }

    fn load(&self, a: &TransformArgs) -> CliResult<(Analysis, DiscreteSignal, String)> {
        let an = a.analysis()?;
        let input_hash = sha256_hex(read_text(&a.input)?.as_bytes());
        let signal = read_signal(&a.input, an.fs)?;
        self.note(|| {
            format!(
                "{} samples at {} Hz; {:?} f0={} grid {} bins over [{}, {}] Hz",
                signal.len(),
                signal.fs(),
                an.tfr,
                an.f0,
                an.grid.len(),
                an.fmin_hz,
                an.fmax_hz
            )
        });
        Ok((an, signal, input_hash))
    }

    fn manifest<T: Serialize>(&self, command: &str, args: &T, resolved: &Analysis, input_hash: &str) -> Manifest {
        let arguments = json!({
            "argv": self.argv,
            "flags": args,
            "resolved": resolved,
            "input_sha256": input_hash,
        });
        Manifest::new(command, arguments, None)
    }

    fn transform(&self, a: &TransformArgs) -> CliResult<()> {
        let (an, signal, input_hash) = self.load(a)?;
        let tfr = an.transform(&signal)?;
        let Some(out) = &a.out else {
            return stdout_csv(&crate::io::tfr_csv(&tfr));
        };
        write_tfr(out, &tfr, None)?;
        let mut m = self.manifest("transform", a, &an, &input_hash);
        m.record(&file_name(out), &read_text(out)?);
        let side = crate::io::sidecar_path(out);
        m.record(&file_name(&side), &read_text(&side)?);
        write_json(&manifest_path(out), &m)?;
        Ok(())
    }

    fn squeeze(&self, a: &TransformArgs) -> CliResult<()> {
        let (an, signal, input_hash) = self.load(a)?;
        let sq = synchrosqueeze_par(&an.transform(&signal)?)?;
        self.note(|| format!("dropped fraction {}", sq.dropped_fraction()));
        let Some(out) = &a.out else {
            return stdout_csv(&crate::io::squeezed_csv(&sq));
        };
        write_squeezed(out, &sq, an.f0)?;
        let mut m = self.manifest("squeeze", a, &an, &input_hash);
        m.record(&file_name(out), &read_text(out)?);
        let side = crate::io::sidecar_path(out);
        m.record(&file_name(&side), &read_text(&side)?);
        write_json(&manifest_path(out), &m)?;
        Ok(())
    }

    fn extract(&self, a: &ExtractArgs) -> CliResult<()> {
        if a.scheme == Scheme::II && a.optimization == OptimizationChoice::OneStep {
            return Err(CliError::Usage("scheme II supports --optimization path only".into()));
        }
        let (an, signal, input_hash) = self.load(&a.transform)?;
        let tfr = an.transform(&signal)?;
        let ridges = match a.squeeze {
            SqueezeChoice::None => RidgeSource::Tfr,
            SqueezeChoice::Peaks => RidgeSource::SqueezedPeaks,
            SqueezeChoice::Integrated => RidgeSource::SqueezedIntegrated,
        };
        let method = MethodSpec {
            label: "cli".into(),
            scheme: a.scheme,
            alpha: a.alpha,
            beta: a.beta,
            optimization: a.optimization,
            ridges,
        };
        let times: Vec<f64> = (0..tfr.n_times()).map(|n| tfr.time(n)).collect();
        let inputs = RidgeInputs::new(tfr, std::slice::from_ref(&method))?;
        let ex = extract_with(&method, &inputs, None)?;
        let csv = curve_csv(&ex.curve, &times);
        let hz: Vec<f64> = ex.curve.freqs.iter().map(|w| w / (2.0 * std::f64::consts::PI)).collect();
        let report = CurveReport {
            scheme: match a.scheme {
                Scheme::I => "I",
                Scheme::II => "II",
                Scheme::GlobalMax => "global-max",
            }
            .into(),
            alpha: a.alpha,
            beta: a.beta,
            ridges: format!("{:?}", a.squeeze).to_lowercase(),
            iterations: ex.iterations,
            converged: ex.converged,
            score: ex.curve.score,
            n_times: ex.curve.len(),
            median_freq_hz: ridgeline_core::robust_stats(&hz).map(|s| s.median).unwrap_or(f64::NAN),
        };
        self.note(|| format!("{report:?}"));
        let Some(out) = &a.transform.out else {
            return stdout_csv(&csv);
        };
        write_text(out, &csv)?;
        let report_path = crate::io::sidecar_path(out);
        write_json(&report_path, &report)?;
        let mut m = self.manifest("extract", a, &an, &input_hash);
        m.record(&file_name(out), &csv);
        m.record(&file_name(&report_path), &read_text(&report_path)?);
        write_json(&manifest_path(out), &m)?;
        Ok(())
    }

    fn bench(&self, a: &BenchArgs) -> CliResult<()> {
        let mut cfg = match &a.config {
            Some(p) => load_bench_config(p)?,
            None => BenchmarkConfig::default(),
        };
        if let Some(p) = &a.input {
            cfg.signal = crate::bench::SignalSource::Csv(p.clone());
        }
        if let Some(t) = a.tfr {
            if t != cfg.tfr {
                cfg.density = None;
            }
            cfg.tfr = t;
        }
        if let Some(d) = density_flag(cfg.tfr, a.dfreq, a.voices)? {
            cfg.density = Some(d);
        }
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => { $(if let Some(v) = a.$flag.clone() { cfg.$field = v; })* };
        }
        set!(seed => master_seed, realizations => realizations, sigmas => sigmas, fs => fs, f0 => f0,
             fmin => fmin_hz, fmax => fmax_hz, noise => noise, threshold => threshold);
        cfg.keep_curves |= a.keep_curves;
        cfg.validate()?;
        let started = Instant::now();
        let result = run_benchmark(cfg)?;
        self.note(|| format!("benchmark finished in {:.1} s", started.elapsed().as_secs_f64()));
        export_results(&result, &a.out, json!({ "argv": self.argv, "flags": a }))?;

        let mut stdout = std::io::stdout().lock();
        let mut line = |s: String| writeln!(stdout, "{s}").map_err(|e| Error::io("<stdout>", e));
        line("method,sigma_max,beyond_range".into())?;
        for (label, smax) in result.labels.iter().zip(&result.sigma_max) {
            match smax {
                Some(s) => line(format!("{label},{},{}", s.sigma, s.beyond_range))?,
                None => line(format!("{label},,"))?,
            }
        }
        Ok(())
    }
}

fn stdout_csv(s: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes()).and_then(|_| out.flush()).map_err(|e| Error::io("<stdout>", e))?;
    Ok(())
}

/// Parameter documentation for `describe`.
pub fn describe(topic: Topic) -> &'static str {
    match topic {
        Topic::Transform => TRANSFORM_DOC,
        Topic::Extract => EXTRACT_DOC,
        Topic::Squeeze => SQUEEZE_DOC,
        Topic::Bench => BENCH_DOC,
    }
}

const TRANSFORM_DOC: &str = "\
ridgeline transform --in SIGNAL.csv [--out TFR.csv] [options]

Windowed Fourier (Gaussian window) or wavelet (lognormal) transform.

  --in PATH        signal CSV: one value per line (needs --fs) or time,value rows
  --out PATH       CSV of complex coefficients, one row per bin; writes PATH.json
                   (grid and kernel metadata) and PATH.manifest.json
  --fs HZ          sampling rate for single-column input
  --tfr wft|wt     transform type (default wft)
  --f0 F           resolution parameter (default 1)
  --fmin/--fmax HZ grid range (default 0.25 to 2.25 Hz)
  --dfreq HZ       WFT bin spacing (default: Gaussian frequency resolution / 25)
  --voices N       WT voices per octave (default: ln 2 over a 25th of the
                   wavelet log-frequency resolution, 81 for f0 = 1)
  --pad zero|reflect|none  boundary padding (default zero)
  --trim FRACTION  discarded at each end after transforming (default 0)
  --config PATH    bench config whose fs, f0, tfr and grid act as defaults
";

const EXTRACT_DOC: &str = "\
ridgeline extract --in SIGNAL.csv [--out CURVE.csv] [options]

Ridge curve (one ridge point per time) of the dominant component.

  --scheme I|II|global-max  extraction scheme (default II, i.e. II(1,1))
  --alpha A        scheme I frequency-jump weight, scheme II deviation weight (default 1)
  --beta B         scheme II jump weight (default 1)
  --optimization path|one-step  scheme I only (default path)
  --squeeze none|peaks|integrated  ridge points from the synchrosqueezed
                   transform, as bin peaks or integrated regions (default none)

Scheme II is a fixed-point iteration: each pass freezes the median and
range of the previous curve and reoptimizes the whole path; it stops when
two consecutive curves coincide. The default II(1,1) needs no tuning.

All transform options apply (--tfr, --f0 = 1, --fmin, --fmax, --dfreq,
--voices, --pad, --trim, --fs, --config). Outputs: CURVE.csv with columns
time_s,freq_hz,peak_index,amplitude; CURVE.json with scheme, parameters,
iterations and score; CURVE.manifest.json.
";

const SQUEEZE_DOC: &str = "\
ridgeline squeeze --in SIGNAL.csv [--out SQ.csv] [options]

Synchrosqueezed transform (SWFT for --tfr wft, SWT for --tfr wt) on the
same grid as the transform. Coefficients move to the bin of their phase
velocity; those landing outside the grid are dropped and their fraction is
reported in SQ.json. All transform options apply.
";

const BENCH_DOC: &str = "\
ridgeline bench [--config CFG.toml | --config DIR/manifest.json] [--out DIR] [options]

Monte-Carlo comparison of extraction methods. Each method is scored by
the relative error eps_f against its own noise-free curve.

Defaults:
  signal           built-in two-component test signal, fs = 20 Hz,
                   1000 s simulated, central 200 s analyzed
  transform        WFT, f0 = 1, grid 0.25 to 2.25 Hz, dw = dxi_g/25
  noise            colored, sigma = 0.1 to 1.2 in steps of 0.1
  realizations     40 per noise level, seed master_seed ^ r (--seed sets master_seed)
  methods          I(0), I(1), I(1)-one-step, II(1,1) (alpha = beta = 1)
  threshold        0.5: sigma_max is where mean + std of eps_f crosses 0.5
  discard          curves nearer the 1.5 to 2.0 Hz band than 1 Hz lose those
                   points and are re-extracted, up to 3 rounds

Options: --seed, --realizations, --sigmas a,b,c, --noise colored|white,
--threshold, --in (custom signal), --fs, --tfr, --f0, --fmin, --fmax,
--dfreq, --voices, --keep-curves.

Outputs in DIR: summary.csv, sigma_max.csv, runs.csv, plot.csv,
references.csv and manifest.json. Passing the manifest back as --config
reproduces identical tables.
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_defaults() {
        let cli = Cli::try_parse_from(["ridgeline", "extract", "--in", "x.csv"]).unwrap();
        let Command::Extract(a) = cli.command else { panic!("wrong subcommand") };
        assert_eq!((a.scheme, a.alpha, a.beta), (Scheme::II, 1.0, 1.0));
        assert_eq!(a.squeeze, SqueezeChoice::None);
        assert_eq!(a.transform.pad, PadChoice::Zero);
    }

    #[test]
    fn scheme_names() {
        for (s, want) in [("I", Scheme::I), ("ii", Scheme::II), ("global-max", Scheme::GlobalMax)] {
            let cli = Cli::try_parse_from(["ridgeline", "extract", "--in", "x", "--scheme", s]).unwrap();
            let Command::Extract(a) = cli.command else { panic!() };
            assert_eq!(a.scheme, want);
        }
    }

    #[test]
    fn density_must_match_transform() {
        assert!(density_flag(TfrChoice::Wt, Some(0.01), None).is_err());
        assert!(density_flag(TfrChoice::Wft, None, Some(40.0)).is_err());
        assert_eq!(density_flag(TfrChoice::Wt, None, Some(40.0)).unwrap(), Some(40.0));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["ridgeline", "extract", "--in", "x", "--bogus"]), 1);
        assert_eq!(run(["ridgeline", "describe", "nothing"]), 1);
        assert_eq!(run(["ridgeline"]), 1);
    }

    #[test]
    fn missing_input_is_runtime_error() {
        assert_eq!(run(["ridgeline", "transform", "--in", "/nonexistent/sig.csv", "--fs", "20"]), 2);
    }
}
