use num_complex::Complex;

use crate::half_int::HalfInt;
use crate::scalar::Real;

/// Amplitudes of `(J·S)J`, `S` and `i J×S` in the resummed `S_H(φ)`,
/// restricted to a sector of fixed `J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SFunctions<T> {
    pub s0: Complex<T>,
    pub s_par: Complex<T>,
    pub s_perp: Complex<T>,
}

fn cis<T: Real>(x: T) -> Complex<T> {
    Complex::new(x.cos(), x.sin())
}

/// `s₀` for a real `J`; singular at `J = 0` and `J = −1`.
pub fn s0_at<T: Real>(j: T, phi: T) -> Complex<T> {
    let one = T::one();
    let num = Complex::new(j + j + one, T::zero())
        - cis(-(j + one) * phi) * j
        - cis(j * phi) * (j + one);
    num / (j * (j + one))
}

pub fn s_functions<T: Real>(j: HalfInt, phi: T) -> SFunctions<T> {
    let one = T::one();
    let jv = j.to_real::<T>();
    let back = cis(-(jv + one) * phi);
    let fwd = cis(jv * phi);
    let s0 = if j == HalfInt::ZERO {
        // d/dJ of numerator and denominator at J = 0
        Complex::new(one, -phi) - back
    } else {
        s0_at(jv, phi)
    };
    SFunctions {
        s0,
        s_par: back * (jv + one) + fwd * jv,
        s_perp: back - fwd,
    }
}
