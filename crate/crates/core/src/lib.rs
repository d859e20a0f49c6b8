//! Ridge-curve extraction from time-frequency representations.
//!
//! This crate holds the allocation-only algorithmic core: frequency grids and
//! analysis kernels, resolution measures, amplitude-peak detection, the
//! dynamic-programming path optimizer, the scheme I and adaptive scheme II
//! extractors, and synchrosqueezing of an already computed transform. It is
//! `no_std` and needs only `alloc`; computing transforms (which needs an FFT),
//! noise generation, file formats and the CLI live in the `ridgeline` crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

extern crate alloc;

pub mod error;
pub mod extract;
pub mod functional;
pub mod grid;
pub mod kernel;
pub mod metrics;
pub mod path;
pub mod peaks;
pub mod quad;
pub mod resolution;
pub mod signal;
pub mod squeeze;
pub mod testsig;
pub mod tfr;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use extract::{
    dp_path_optimize, extract_global_max, extract_scheme1, extract_scheme2, extract_scheme2_points, one_step_extract,
    path_score, Optimization, RidgeCurve, Scheme2Outcome,
};
pub use functional::{
    robust_stats, CurveStats, PathFunctional, RobustStats, SchemeIFunctional, SchemeIIFunctional, SchemeIIParams,
    SchemeIParams,
};
pub use grid::{AxisScale, FrequencyGrid};
pub use kernel::AnalysisKernel;
pub use peaks::{detect_peaks, detect_peaks_with, PeakOptions, RidgePoint, RidgePointSet};
pub use resolution::{resolution_measures, ResolutionMeasures};
pub use signal::{pad_and_trim, AnalyticSignal, DiscreteSignal, PadPolicy, TrimWindow};
pub use squeeze::{
    integrated_ridges, peak_ridges, phase_velocity, synchrosqueeze, IntegratedRidge, IntegratedRidgeSet, SqueezedKind,
    SynchroTfr,
};
pub use tfr::{TfrKind, TfrMatrix};
