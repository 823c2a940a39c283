use opgyro::closed_form::{exact_to_f64, relative_distance};
use opgyro::{coefficients_explicit, coefficients_recursive_exact, HalfInt};

use crate::error::CliResult;
use crate::format::Table;

pub const COEFFICIENT_COLUMNS: [&str; 8] = [
    "n", "alpha_re", "alpha_im", "beta_re", "beta_im", "gamma_re", "gamma_im", "recursion_mismatch",
];
/// Relative disagreement with the exact recursion that raises the flag.
pub const RECURSION_TOL: f64 = 1e-9;

/// Explicit-formula coefficients for `n = 0..=n_max`, flagged where the
/// exact rational recursion disagrees.
pub fn coefficients(j: HalfInt, n_max: usize) -> CliResult<Table> {
    let j = j.magnitude()?;
    let exact = coefficients_recursive_exact(j, n_max);
    let mut table = Table::new(COEFFICIENT_COLUMNS);
    for (n, ex) in exact.iter().enumerate() {
        let c = coefficients_explicit::<f64>(j, n);
        let flag = relative_distance(&c, &exact_to_f64(ex)) > RECURSION_TOL;
        table.push(
            [
                n as f64,
                c.alpha.re,
                c.alpha.im,
                c.beta.re,
                c.beta.im,
                c.gamma.re,
                c.gamma.im,
                f64::from(u8::from(flag)),
            ]
            .map(Some)
            .to_vec(),
        );
    }
    Ok(table)
}
