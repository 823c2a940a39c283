use num_complex::Complex64;

use crate::angular_momentum::{CompositeSystem, InitialState};
use crate::error::{Error, Result};
use crate::operator::{cross_apply, cross_product, VectorOperator};

/// Partial sum of `e^{−iφ} Σ_{n ≤ n_max} φⁿ/n! ⟨P_n⟩`.
#[derive(Clone, Debug)]
pub struct SeriesSum {
    /// Complex `⟨S_u⟩`; real only once the series has converged.
    pub value: [Complex64; 3],
    /// Modulus of the last included term.
    pub last_term: f64,
}

/// `P_0 = S`, `P_{n+1} = J × P_n` for `n < n_max`.
pub fn pn_operators(system: &CompositeSystem, n_max: usize) -> Result<Vec<VectorOperator>> {
    let j = system.total();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(system.spin().clone());
    for n in 0..n_max {
        let next = cross_product(j, &out[n])?;
        out.push(next);
    }
    Ok(out)
}

/// `⟨Ψ|P_n|Ψ⟩` for `n = 0..=n_max`, built from `P_{n+1}|Ψ⟩ = J × P_n|Ψ⟩`
/// with matrix-vector products.
pub fn pn_moments(
    system: &CompositeSystem,
    initial: &InitialState,
    n_max: usize,
) -> Vec<[Complex64; 3]> {
    let j = system.total();
    let psi = initial.vector();
    let mut v = [0, 1, 2].map(|u| &system.spin()[u] * psi);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            v = cross_apply(j, &v);
        }
        out.push([0, 1, 2].map(|u| psi.dotc(&v[u])));
    }
    out
}

/// Sums precomputed moments at one phase.
pub fn sum_moments(moments: &[[Complex64; 3]], phi: f64) -> SeriesSum {
    let mut sum = [Complex64::new(0.0, 0.0); 3];
    let mut weight = 1.0;
    let mut last_term = 0.0;
    for (n, m) in moments.iter().enumerate() {
        if n > 0 {
            weight *= phi / n as f64;
        }
        let mut term_norm = 0.0f64;
        for u in 0..3 {
            let term = m[u] * weight;
            term_norm = term_norm.max(term.norm());
            sum[u] += term;
        }
        last_term = term_norm;
    }
    let phase = Complex64::from_polar(1.0, -phi);
    SeriesSum {
        value: sum.map(|z| z * phase),
        last_term,
    }
}

pub fn series_truncated_sigma(
    system: &CompositeSystem,
    initial: &InitialState,
    phi: f64,
    n_max: usize,
) -> Result<SeriesSum> {
    if initial.vector().len() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            found: initial.vector().len(),
        });
    }
    Ok(sum_moments(&pn_moments(system, initial, n_max), phi))
}
