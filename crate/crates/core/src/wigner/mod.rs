//! Phase-space representations: Wigner functions of one-particle density matrices
//! and the generalized Wigner distribution (GWD) of lesser Green functions.

pub mod density;
pub mod green;
pub mod gwd;
pub mod negativity;
pub mod overlap;
pub mod states;
pub mod transform;

pub use density::DensityMatrix1P;
pub use green::LesserGreenFunction;
pub use gwd::{gwd_transform, gwd_transform_with, Gwd, TimeBoundary};
pub use negativity::{negativity_report, NegativityReport, PhaseSpace};
pub use overlap::{overlap_trace, OverlapTrace, TraceOverlap};
pub use states::{
    hermite_function, oscillator_energy, oscillator_period_times, oscillator_state_factory,
    toy_g_lesser, wavefunction, StateSpec,
};
pub use transform::{momentum_values, wigner_transform, WignerFunction};
