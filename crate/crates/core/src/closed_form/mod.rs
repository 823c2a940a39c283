//! Resummed solution of the operator gyroscopic equation.

mod analytic;
mod coefficients;
mod expectation;
mod s_functions;

pub use analytic::{analytic_case_a, analytic_case_b, large_n_approx_a, lower_bound_b};
pub use coefficients::{
    coefficients_explicit, coefficients_recursive, coefficients_recursive_exact, exact_to_f64,
    iterate_recursion, relative_distance, CoefficientTriple,
};
pub use expectation::{
    closed_form_expansion, expectation_s, ClosedFormExpansion, ClosedFormSolver, CosineTerm,
    EXPANSION_SAMPLES, EXPANSION_TOL, IMAGINARY_RESIDUE_TOL,
};
pub use s_functions::{s0_at, s_functions, SFunctions};
