//! Two-fermion states on the antisymmetric space: Slater decomposition, reduced
//! density matrices, entanglement of formation, fermionic separability, witnesses
//! and the Hartree-Fock two-particle density matrix.

pub mod entropy;
pub mod eof;
pub mod hf;
pub mod io;
pub mod separability;
pub mod slater;
pub mod state;
pub mod witness;

pub use entropy::{one_particle_rdm, pure_state_entanglement, von_neumann_entropy};
pub use eof::{entanglement_of_formation, EnsembleDecomposition, EofOptions, EofResult};
pub use hf::{hf_two_rdm, wedge};
pub use io::{state_from_json, state_to_json, FermionState, StateJson};
pub use separability::{
    is_fermionic_separable, SeparabilityResult, Verdict, DEFAULT_SEPARABILITY_TOL,
};
pub use slater::{slater_decompose, slater_rank, SlaterDecomposition, SlaterPair};
pub use state::{pair_dim, pair_index, pairs, TwoFermionMixedState, TwoFermionPureState};
pub use witness::{slater_witness, slater_witness_with, Witness};
