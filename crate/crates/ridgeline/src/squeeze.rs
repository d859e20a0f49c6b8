//! Column-parallel synchrosqueezing.

use rayon::prelude::*;
use ridgeline_core::squeeze::{assemble, squeeze_column};
use ridgeline_core::{phase_velocity, SynchroTfr, TfrMatrix};

use crate::error::Result;

/// Same result as [`ridgeline_core::synchrosqueeze`], with time columns
/// reassigned in parallel.
pub fn synchrosqueeze_par(tfr: &TfrMatrix) -> Result<SynchroTfr> {
    let nu = phase_velocity(tfr)?;
    let columns = (0..tfr.n_times()).into_par_iter().map(|n| squeeze_column(tfr, &nu, n)).collect();
    Ok(assemble(tfr, columns)?)
}
