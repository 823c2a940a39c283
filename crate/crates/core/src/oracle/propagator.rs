use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::angular_momentum::{CompositeSystem, InitialState};
use crate::error::{Error, Result};
use crate::operator::{hermiticity_defect, max_abs_diff, OperatorMatrix, StateVector};

/// Observables with a larger anti-Hermitian part are rejected.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigen-decomposition `K = V diag(k) V†` of the coupling operator.
///
/// `H(t) = ω(t) K` commutes with itself at all times, so the propagator is
/// `exp(−iφ(t) K)` and no time ordering is needed.
#[derive(Clone, Debug)]
pub struct PropagatorCache {
    eigenvalues: Vec<f64>,
    eigenvectors: OperatorMatrix,
}

impl PropagatorCache {
    pub fn new(system: &CompositeSystem) -> Self {
        let k = system.coupling();
        let herm = (k + k.adjoint()).unscale(2.0);
        let eig = SymmetricEigen::new(herm);
        Self {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &OperatorMatrix {
        &self.eigenvectors
    }

    /// `max |V diag(k) V† − K|`.
    pub fn reconstruction_error(&self, system: &CompositeSystem) -> f64 {
        let v = &self.eigenvectors;
        let diag = OperatorMatrix::from_diagonal(&StateVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|&k| Complex64::new(k, 0.0)),
        ));
        max_abs_diff(&(v * diag * v.adjoint()), system.coupling())
    }

    /// `max |V†V − 1|`.
    pub fn unitarity_error(&self) -> f64 {
        let v = &self.eigenvectors;
        max_abs_diff(&(v.adjoint() * v), &OperatorMatrix::identity(self.dim(), self.dim()))
    }

    /// `exp(−iφK)|ψ⟩` for an arbitrary vector.
    pub fn apply(&self, psi: &StateVector, phi: f64) -> Result<StateVector> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.len(),
            });
        }
        let v = &self.eigenvectors;
        let mut coords = v.ad_mul(psi);
        for (c, &k) in coords.iter_mut().zip(&self.eigenvalues) {
            *c *= Complex64::from_polar(1.0, -phi * k);
        }
        Ok(v * coords)
    }
}

pub fn exact_propagate(
    cache: &PropagatorCache,
    initial: &InitialState,
    phi: f64,
) -> Result<StateVector> {
    cache.apply(initial.vector(), phi)
}

pub fn expectation_via_oracle(
    cache: &PropagatorCache,
    initial: &InitialState,
    phi: f64,
    observable: &OperatorMatrix,
) -> Result<f64> {
    let defect = hermiticity_defect(observable);
    if defect > HERMITIAN_TOL {
        return Err(Error::NonHermitian(defect));
    }
    let psi = exact_propagate(cache, initial, phi)?;
    if observable.nrows() != psi.len() {
        return Err(Error::DimensionMismatch {
            expected: psi.len(),
            found: observable.nrows(),
        });
    }
    let value = psi.dotc(&(observable * &psi));
    if value.im.abs() > HERMITIAN_TOL * value.norm().max(1.0) {
        return Err(Error::ImaginaryResidue(value.im.abs()));
    }
    Ok(value.re)
}
