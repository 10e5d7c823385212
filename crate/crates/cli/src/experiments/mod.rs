use fermiwig::numerics::Seed;
use rand::RngCore;

use crate::config::{Experiment, ExperimentConfig};
use crate::error::CliError;
use crate::output::Table;
use crate::report::Check;

mod cumulant;
mod fermion;
mod phase_space;

#[derive(Debug, Clone, Default)]
pub struct ExperimentOutput {
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

/// Runs a resolved config in memory. Parameter problems surface as usage errors
/// before any heavy work starts.
pub fn execute(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    match cfg.experiment {
        Experiment::TraceIdentity => phase_space::trace_identity(cfg),
        Experiment::Wigner => phase_space::wigner(cfg),
        Experiment::Gwd => phase_space::gwd(cfg),
        Experiment::CumulantScan => cumulant::scan(cfg),
        Experiment::ClBound => fermion::cl_bound(cfg),
        Experiment::Eof => fermion::eof(cfg),
        Experiment::HfSeparability => fermion::hf_separability(cfg),
        Experiment::G2Separability => fermion::g2_separability(cfg),
    }
}

/// Independent seed for item `k` of a run: first word of ChaCha substream `k`.
pub(crate) fn sub_seed(seed: u64, k: u64) -> Seed {
    Seed(Seed(seed).substream(k).next_u64())
}

/// Maps a core error raised while validating params to a usage error.
pub(crate) fn usage<T>(what: &str, r: fermiwig::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg()))
    }
}
