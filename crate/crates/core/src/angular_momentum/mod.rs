//! Spin matrices, composite Hilbert spaces and the coupled `(J, M_J)` basis.

mod composite;
mod coupling;
mod spin;

pub use composite::{build_composite, build_composite_with_cap, CompositeSystem, Mode, DEFAULT_DIM_CAP};
pub use coupling::{
    cg_case_a_states, couple_basis, expand_initial, ferromagnetic_state, Amplitude, CoupledBasis,
    CoupledState, InitialState, EIGEN_TOL, J_ROUNDING_TOL,
};
pub use spin::{spin_matrices, SpinOperators};
