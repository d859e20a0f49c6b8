//! Transforms, synchrosqueezing, the Monte-Carlo benchmark, file formats and
//! the command-line front end, built on `ridgeline-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod bench;
pub mod cli;
pub mod error;
pub mod io;
pub mod noise;
pub mod squeeze;
pub mod transform;

pub use error::{Error, Result};
pub use squeeze::synchrosqueeze_par;
pub use transform::{compute_tfr, compute_tfr_window, compute_wft, compute_wt, default_grid, wft_grid, wt_grid};
