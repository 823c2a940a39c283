//! Dense complex operators and the ordered vector-operator products.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex square matrix acting on a composite Hilbert space.
pub type OperatorMatrix = DMatrix<Complex64>;
pub type StateVector = DVector<Complex64>;
/// Cartesian components `(x, y, z)` of a vector operator.
pub type VectorOperator = [OperatorMatrix; 3];

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(dim: usize) -> OperatorMatrix {
    OperatorMatrix::identity(dim, dim)
}

pub fn zeros(dim: usize) -> OperatorMatrix {
    OperatorMatrix::zeros(dim, dim)
}

pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    a * b - b * a
}

/// Largest entry modulus.
pub fn max_abs(m: &OperatorMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn hermiticity_defect(m: &OperatorMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn scale(m: &OperatorMatrix, c: Complex64) -> OperatorMatrix {
    m.map(|z| z * c)
}

fn check_dims(a: &VectorOperator, b: &VectorOperator) -> Result<usize> {
    let dim = a[0].nrows();
    for m in a.iter().chain(b.iter()) {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.nrows().max(m.ncols()),
            });
        }
    }
    Ok(dim)
}

/// `(A×B)_x = A_y B_z − A_z B_y` and cyclic, products kept in order.
pub fn cross_product(a: &VectorOperator, b: &VectorOperator) -> Result<VectorOperator> {
    check_dims(a, b)?;
    Ok([
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// `A·B = Σ_u A_u B_u`.
pub fn dot(a: &VectorOperator, b: &VectorOperator) -> Result<OperatorMatrix> {
    check_dims(a, b)?;
    Ok(&a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2])
}

/// Left-multiplies every component by a scalar operator.
pub fn left_mul(s: &OperatorMatrix, v: &VectorOperator) -> VectorOperator {
    [s * &v[0], s * &v[1], s * &v[2]]
}

/// `(A×v)_u = A_y v_z − A_z v_y` and cyclic, where `v_u = B_u|ψ⟩`; gives
/// `(A×B)|ψ⟩` with matrix-vector products only.
pub fn cross_apply(a: &VectorOperator, v: &[StateVector; 3]) -> [StateVector; 3] {
    [
        &a[1] * &v[2] - &a[2] * &v[1],
        &a[2] * &v[0] - &a[0] * &v[2],
        &a[0] * &v[1] - &a[1] * &v[0],
    ]
}

/// `Σ_u A_u v_u`.
pub fn dot_apply(a: &VectorOperator, v: &[StateVector; 3]) -> StateVector {
    &a[0] * &v[0] + &a[1] * &v[1] + &a[2] * &v[2]
}

pub fn max_abs_diff_vec(a: &VectorOperator, b: &VectorOperator) -> f64 {
    (0..3).fold(0.0, |acc, u| acc.max(max_abs_diff(&a[u], &b[u])))
}

/// `⟨ψ|O|ψ⟩` without normalisation.
pub fn expectation(op: &OperatorMatrix, psi: &StateVector) -> Complex64 {
    psi.dotc(&(op * psi))
}
