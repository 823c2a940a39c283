use num_complex::Complex64;

use crate::error::Result;
use crate::half_int::HalfInt;
use crate::operator::{zeros, OperatorMatrix, I};

/// Cartesian and ladder matrices of a single spin `s`, ħ = 1.
///
/// Basis index `k` holds the projection `m = s − k`, so `sz` is
/// `diag(s, s−1, …, −s)`.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub s: HalfInt,
    pub dim: usize,
    pub sx: OperatorMatrix,
    pub sy: OperatorMatrix,
    pub sz: OperatorMatrix,
    pub s_plus: OperatorMatrix,
    pub s_minus: OperatorMatrix,
}

impl SpinOperators {
    pub fn cartesian(&self) -> [OperatorMatrix; 3] {
        [self.sx.clone(), self.sy.clone(), self.sz.clone()]
    }
}

pub fn spin_matrices(s: HalfInt) -> Result<SpinOperators> {
    let s = s.magnitude()?;
    let dim = s.multiplicity();
    let sv = s.value();
    let casimir = sv * (sv + 1.0);

    let mut sz = zeros(dim);
    let mut s_plus = zeros(dim);
    for k in 0..dim {
        let m = sv - k as f64;
        sz[(k, k)] = Complex64::new(m, 0.0);
        if k > 0 {
            // ⟨m+1| s+ |m⟩
            s_plus[(k - 1, k)] = Complex64::new((casimir - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let s_minus = s_plus.adjoint();
    let sx = (&s_plus + &s_minus).map(|z| z * 0.5);
    let sy = (&s_plus - &s_minus).map(|z| z / (2.0 * I));

    Ok(SpinOperators {
        s,
        dim,
        sx,
        sy,
        sz,
        s_plus,
        s_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{commutator, identity, max_abs, max_abs_diff, scale};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn spin_half_is_pauli_over_two() {
        let ops = spin_matrices(HalfInt::HALF).unwrap();
        assert_eq!(ops.sz[(0, 0)], c(0.5));
        assert_eq!(ops.sz[(1, 1)], c(-0.5));
        assert_eq!(ops.sx[(0, 1)], c(0.5));
        assert_eq!(ops.sx[(1, 0)], c(0.5));
        assert_eq!(ops.sx[(0, 0)], c(0.0));
        assert_eq!(ops.sy[(0, 1)], Complex64::new(0.0, -0.5));
        assert_eq!(ops.sy[(1, 0)], Complex64::new(0.0, 0.5));
    }

    #[test]
    fn spin_zero_is_trivial() {
        let ops = spin_matrices(HalfInt::ZERO).unwrap();
        assert_eq!(ops.dim, 1);
        for m in [&ops.sx, &ops.sy, &ops.sz, &ops.s_plus, &ops.s_minus] {
            assert_eq!(m.shape(), (1, 1));
            assert_eq!(m[(0, 0)], c(0.0));
        }
    }

    #[test]
    fn spin_one_ladder() {
        let ops = spin_matrices(HalfInt::ONE).unwrap();
        let r2 = 2f64.sqrt();
        assert_eq!(ops.sz[(0, 0)], c(1.0));
        assert_eq!(ops.sz[(1, 1)], c(0.0));
        assert_eq!(ops.sz[(2, 2)], c(-1.0));
        assert!((ops.s_plus[(0, 1)] - c(r2)).norm() < 1e-15);
        assert!((ops.s_plus[(1, 2)] - c(r2)).norm() < 1e-15);
        assert_eq!(ops.s_plus[(1, 0)], c(0.0));
    }

    #[test]
    fn negative_spin_rejected() {
        assert!(spin_matrices(HalfInt::from_twice(-1)).is_err());
    }

    proptest! {
        #[test]
        fn su2_algebra_holds(twice in 0i32..12) {
            let ops = spin_matrices(HalfInt::from_twice(twice)).unwrap();
            let [sx, sy, sz] = ops.cartesian();
            prop_assert!(max_abs_diff(&commutator(&sx, &sy), &scale(&sz, I)) < 1e-12);
            prop_assert!(max_abs_diff(&commutator(&sy, &sz), &scale(&sx, I)) < 1e-12);
            prop_assert!(max_abs_diff(&commutator(&sz, &sx), &scale(&sy, I)) < 1e-12);
            let s = ops.s.value();
            let casimir = &sx * &sx + &sy * &sy + &sz * &sz;
            let expected = scale(&identity(ops.dim), c(s * (s + 1.0)));
            prop_assert!(max_abs_diff(&casimir, &expected) < 1e-12);
            let offdiag = sz.clone() - OperatorMatrix::from_diagonal(&sz.diagonal());
            prop_assert!(max_abs(&offdiag) == 0.0);
        }
    }
}
