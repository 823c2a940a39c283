//! Scalar coefficients `(α_n, β_n, γ_n)` of
//! `P_n = α_n (J·S)J + β_n S + γ_n J×S` inside a sector of fixed `J`.

use std::ops::Neg;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Zero};

use crate::half_int::HalfInt;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTriple<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
}

impl<T: Clone + Num> CoefficientTriple<T> {
    pub fn initial() -> Self {
        Self {
            alpha: Complex::zero(),
            beta: Complex::new(T::one(), T::zero()),
            gamma: Complex::zero(),
        }
    }
}

/// Iterates `α' = iα + γ`, `β' = −j γ`, `γ' = β + iγ` from `(0, 1, 0)`,
/// where `j` is the eigenvalue of `J²`. Works over any field, including
/// exact rationals.
pub fn iterate_recursion<T>(casimir: T, n_max: usize) -> Vec<CoefficientTriple<T>>
where
    T: Clone + Num + Neg<Output = T>,
{
    let i = Complex::<T>::i();
    let neg_j = Complex::new(-casimir, T::zero());
    let mut out = Vec::with_capacity(n_max + 1);
    let mut cur = CoefficientTriple::initial();
    out.push(cur.clone());
    for _ in 0..n_max {
        let next = CoefficientTriple {
            alpha: i.clone() * cur.alpha.clone() + cur.gamma.clone(),
            beta: neg_j.clone() * cur.gamma.clone(),
            gamma: cur.beta.clone() + i.clone() * cur.gamma.clone(),
        };
        out.push(next.clone());
        cur = next;
    }
    out
}

pub fn coefficients_recursive<T: Real>(j: HalfInt, n_max: usize) -> Vec<CoefficientTriple<T>> {
    iterate_recursion(j.casimir::<T>(), n_max)
}

/// Exact Gaussian-rational coefficients.
pub fn coefficients_recursive_exact(
    j: HalfInt,
    n_max: usize,
) -> Vec<CoefficientTriple<BigRational>> {
    iterate_recursion(j.casimir_exact(), n_max)
}

/// Closed form from the eigen-decomposition of the recursion matrix,
/// eigenvalues `i`, `−iJ`, `i(J+1)`. At `J = 0` the `α` expression is 0/0
/// and is replaced by its limit `α_n = (1 − n) iⁿ` (n ≥ 1).
pub fn coefficients_explicit<T: Real>(j: HalfInt, n: usize) -> CoefficientTriple<T> {
    let one = T::one();
    let jv = j.to_real::<T>();
    let two_j1 = jv + jv + one;
    let nu = n as u32;
    let lam0 = Complex::<T>::i();
    let lam_minus = Complex::new(T::zero(), -jv);
    let lam_plus = Complex::new(T::zero(), jv + one);
    let p0 = lam0.powu(nu);
    let pm = lam_minus.powu(nu);
    let pp = lam_plus.powu(nu);

    let beta = (pm * (jv + one) + pp * jv) / two_j1;
    let gamma = Complex::<T>::i() * (pm - pp) / two_j1;
    let alpha = if n == 0 {
        Complex::zero()
    } else if j == HalfInt::ZERO {
        p0 * (one - T::from_usize_lossy(n))
    } else {
        (p0 * two_j1 - pm * jv - pp * (jv + one)) / (jv * (jv + one) * two_j1)
    };
    CoefficientTriple { alpha, beta, gamma }
}

/// Componentwise distance scaled by `max(1, |value|)`.
pub fn relative_distance(a: &CoefficientTriple<f64>, b: &CoefficientTriple<f64>) -> f64 {
    let d = |x: Complex<f64>, y: Complex<f64>| (x - y).norm() / y.norm().max(1.0);
    d(a.alpha, b.alpha)
        .max(d(a.beta, b.beta))
        .max(d(a.gamma, b.gamma))
}

pub fn rational_to_f64(z: &Complex<BigRational>) -> Complex<f64> {
    use num_traits::ToPrimitive;
    Complex::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn exact_to_f64(t: &CoefficientTriple<BigRational>) -> CoefficientTriple<f64> {
    CoefficientTriple {
        alpha: rational_to_f64(&t.alpha),
        beta: rational_to_f64(&t.beta),
        gamma: rational_to_f64(&t.gamma),
    }
}
