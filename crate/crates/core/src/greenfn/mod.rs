//! Lesser Green functions in an orbital basis and the entanglement of the
//! two-particle function's equal-time slices.

pub mod entanglement;
pub mod io;
pub mod one_particle;
pub mod two_particle;

pub use entanglement::{certificate_ensemble, g2_entanglement_test, G2Report, CERTIFICATE_TOL};
pub use io::{green_from_json, green_to_json, GreenFunction, GreenJson, GreenKind};
pub use one_particle::{equal_time_density, uniform_times, OneParticleGLesser};
pub use two_particle::{hf_g2, separable_g2_construct, G2Component, TwoParticleGLesser};
