//! Closed expressions of `⟨S_z⟩(φ)` for the fully polarised start.

use crate::scalar::Real;

fn real<T: Real>(n: u32) -> T {
    T::from_u32(n).expect("u32 representable")
}

/// N spin-1/2 and `I = 1`, start `|N/2, N/2; −1⟩`.
pub fn analytic_case_a<T: Real>(n: u32, phi: T) -> T {
    let nf = real::<T>(n);
    let one = T::one();
    let two = T::lit(2.0);
    let a = T::lit(4.0) * (nf - one) / (nf * (nf + one));
    let b = T::lit(8.0) * nf / ((nf + one) * (nf + two) * (nf + two));
    nf / two + a * ((nf * phi / two).cos() - one) + b * (((nf / two + one) * phi).cos() - one)
}

/// N spin-1/2 and `I = 1/2`, start `|N/2, N/2; −1/2⟩`.
pub fn analytic_case_b<T: Real>(n: u32, phi: T) -> T {
    let nf = real::<T>(n);
    let one = T::one();
    let two = T::lit(2.0);
    nf / two + two * nf / ((nf + one) * (nf + one)) * (((nf + one) / two * phi).cos() - one)
}

/// Value of [`analytic_case_a`] with both cosines at −1: a lower bound,
/// attained for odd N.
pub fn lower_bound_b<T: Real>(n: u32) -> T {
    let nf = real::<T>(n);
    let num = nf.powi(4) + T::lit(4.0) * nf.powi(3) - T::lit(12.0) * nf * nf - T::lit(64.0) * nf
        + T::lit(64.0);
    num / (T::lit(2.0) * nf * (nf + T::lit(2.0)).powi(2))
}

/// Large-N expansion of [`analytic_case_a`] through order `N⁻²`.
pub fn large_n_approx_a<T: Real>(n: u32, phi: T) -> T {
    let nf = real::<T>(n);
    let two = T::lit(2.0);
    let eight = T::lit(8.0);
    let s = (nf * phi / T::lit(4.0)).sin();
    nf / two - eight / nf * s * s
        - eight / (nf * nf) * ((nf * phi / two).cos() - ((nf / two + T::one()) * phi).cos())
}
