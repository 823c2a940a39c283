//! Independent ground truth for the closed-form results.

mod identities;
mod integrator;
mod propagator;
mod series;

pub use identities::{pn_identity_deviations, verify_pn_identities, PnIdentityReport};
pub use integrator::{
    step_integrator, uniform_grid, TimeSeries, DEFAULT_GAUSSIAN_STEPS, MAX_STEP_DRIFT,
};
pub use propagator::{exact_propagate, expectation_via_oracle, PropagatorCache, HERMITIAN_TOL};
pub use series::{pn_moments, pn_operators, series_truncated_sigma, sum_moments, SeriesSum};
