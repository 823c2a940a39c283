//! Dynamics of N identical spins coupled to one further spin through the
//! rotationally invariant interaction `H(t) = ω(t) S·I` (ħ = 1).
//!
//! Because the Larmor vector `J = S + I` is itself an operator, the
//! Heisenberg equation for `S` does not reduce to an ordinary gyroscopic
//! equation. This crate provides
//!
//! * [`angular_momentum`]: spin matrices, composite Hilbert spaces and the
//!   coupled `(J, M_J)` basis,
//! * [`pulse`]: coupling profiles `ω(t)` and the accumulated phase `φ(t)`,
//! * [`closed_form`]: the resummed expectation value `⟨S⟩(φ)`, its cosine
//!   series and the analytic special cases,
//! * [`oracle`]: independent brute-force engines (exact propagator,
//!   fixed-step integrator, truncated operator series, matrix identities).
//!
//! Scalar-only math (pulses, coefficients, s-functions, analytic formulas)
//! is generic over [`Real`]; the dense operator machinery works in `f64`.
//! The `*64` aliases below fix the scalar to `f64`.

pub mod angular_momentum;
pub mod closed_form;
pub mod error;
pub mod half_int;
pub mod operator;
pub mod oracle;
pub mod pulse;
pub mod scalar;

pub use angular_momentum::{
    build_composite, build_composite_with_cap, cg_case_a_states, couple_basis, expand_initial,
    ferromagnetic_state, spin_matrices, Amplitude, CompositeSystem, CoupledBasis, CoupledState,
    InitialState, Mode, SpinOperators, DEFAULT_DIM_CAP,
};
pub use closed_form::{
    analytic_case_a, analytic_case_b, closed_form_expansion, coefficients_explicit,
    coefficients_recursive, coefficients_recursive_exact, expectation_s, large_n_approx_a,
    lower_bound_b, s_functions, ClosedFormExpansion, ClosedFormSolver, CoefficientTriple,
    CosineTerm, SFunctions,
};
pub use error::{Error, Result};
pub use half_int::HalfInt;
pub use operator::{cross_product, dot, OperatorMatrix, StateVector, VectorOperator};
pub use oracle::{
    exact_propagate, expectation_via_oracle, series_truncated_sigma, step_integrator,
    verify_pn_identities, PnIdentityReport, PropagatorCache, SeriesSum, TimeSeries,
};
pub use pulse::PulseProfile;
pub use scalar::Real;

pub type PulseProfile64 = PulseProfile<f64>;
pub type SFunctions64 = SFunctions<f64>;
pub type CoefficientTriple64 = CoefficientTriple<f64>;
pub type ExactCoefficientTriple = CoefficientTriple<num_rational::BigRational>;
