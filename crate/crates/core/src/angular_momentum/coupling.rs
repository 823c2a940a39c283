use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::composite::{CompositeSystem, Mode};
use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::operator::{OperatorMatrix, StateVector};

/// Distance allowed between a `J²` eigenvalue and the nearest `J(J+1)`.
pub const J_ROUNDING_TOL: f64 = 1e-6;
/// Tolerance on `J_z ψ = M_J ψ` and on unit norm.
pub const EIGEN_TOL: f64 = 1e-10;

/// Simultaneous eigenvector of `J²` and `J_z`.
#[derive(Clone, Debug)]
pub struct CoupledState {
    pub j: HalfInt,
    pub m_j: HalfInt,
    /// Distinguishes states sharing `(J, M_J)`.
    pub mult_index: usize,
    pub vector: StateVector,
}

/// All coupled states of one `J_z` sector, ordered by `J` then `mult_index`.
#[derive(Clone, Debug)]
pub struct CoupledBasis {
    pub m_j: HalfInt,
    pub states: Vec<CoupledState>,
}

impl CoupledBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Distinct `J` values present, ascending.
    pub fn j_values(&self) -> Vec<HalfInt> {
        let mut js: Vec<HalfInt> = self.states.iter().map(|s| s.j).collect();
        js.dedup();
        js
    }
}

/// Unit-norm `J_z` eigenvector used as the state at `t = −∞`.
#[derive(Clone, Debug)]
pub struct InitialState {
    vector: StateVector,
    m_j: HalfInt,
}

impl InitialState {
    /// Normalises `vector` and checks that it lies in a single `J_z` sector.
    pub fn new(system: &CompositeSystem, vector: StateVector) -> Result<Self> {
        if vector.len() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: vector.len(),
            });
        }
        let norm = vector.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let vector = vector.unscale(norm);

        // J_z is diagonal in the product basis with exact projections.
        let proj = system.projections();
        let weight = |m: HalfInt| -> f64 {
            vector
                .iter()
                .zip(proj)
                .filter(|(_, &p)| p == m)
                .map(|(z, _)| z.norm_sqr())
                .sum()
        };
        let (m_j, _) = proj
            .iter()
            .map(|&m| (m, weight(m)))
            .fold((HalfInt::ZERO, -1.0), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
        let jz = &system.total()[2];
        let residual = (jz * &vector - vector.scale(m_j.value())).norm();
        if residual > EIGEN_TOL {
            return Err(Error::NotJzEigenstate { residual });
        }
        Ok(Self { vector, m_j })
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn m_j(&self) -> HalfInt {
        self.m_j
    }
}

/// Expansion coefficient `c_{J,i} = ⟨ψ_{J,i}|Ψ⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude {
    pub j: HalfInt,
    pub mult_index: usize,
    pub c: Complex64,
}

fn hermitian_eigen(m: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

fn j_from_casimir(ev: f64) -> Result<HalfInt> {
    let j = (-1.0 + (1.0 + 4.0 * ev.max(0.0)).sqrt()) / 2.0;
    let twice = (2.0 * j).round().max(0.0) as i32;
    let candidate = HalfInt::from_twice(twice);
    let distance = (ev - candidate.casimir::<f64>()).abs();
    if distance > J_ROUNDING_TOL {
        return Err(Error::CouplingFailure {
            eigenvalue: ev,
            distance,
        });
    }
    Ok(candidate)
}

/// Rotates the global phase so the largest component is real positive.
fn fix_phase(v: &mut StateVector) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (k, z) in v.iter().enumerate() {
        if z.norm() > best_norm + 1e-12 {
            best = k;
            best_norm = z.norm();
        }
    }
    if best_norm > 0.0 {
        let phase = v[best].conj() / best_norm;
        v.apply(|z| *z *= phase);
    }
}

/// Diagonalises `J²` inside the `J_z = M_J` sector.
///
/// Degenerate `J` subspaces are labelled by the eigenvalues of `S²` in
/// full-tensor mode; in collective mode `S` is fixed and no degeneracy can
/// occur.
pub fn couple_basis(system: &CompositeSystem, m_j: HalfInt) -> Result<CoupledBasis> {
    let sector = system.sector_indices(m_j);
    if sector.is_empty() {
        return Err(Error::EmptySector(m_j));
    }
    let n = sector.len();
    let restrict = |op: &OperatorMatrix| DMatrix::from_fn(n, n, |r, c| op[(sector[r], sector[c])]);

    let (values, vectors) = hermitian_eigen(restrict(&system.j_squared()));
    let labels = values
        .iter()
        .map(|&ev| j_from_casimir(ev))
        .collect::<Result<Vec<_>>>()?;

    let s2_sector = match system.mode() {
        Mode::FullTensor => Some(restrict(&system.s_squared())),
        Mode::Collective { .. } => None,
    };

    let mut states = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let j = labels[start];
        let end = start + labels[start..].iter().take_while(|&&l| l == j).count();
        let mut group = vectors.columns(start, end - start).into_owned();
        if end - start > 1 {
            if let Some(s2) = &s2_sector {
                let local = group.adjoint() * s2 * &group;
                let local = (&local + local.adjoint()).unscale(2.0);
                let (_, rot) = hermitian_eigen(local);
                group *= rot;
            }
        }
        for (mult_index, col) in group.column_iter().enumerate() {
            let mut vector = StateVector::zeros(system.dim());
            for (r, &idx) in sector.iter().enumerate() {
                vector[idx] = col[r];
            }
            let norm = vector.norm();
            vector.unscale_mut(norm);
            fix_phase(&mut vector);
            states.push(CoupledState {
                j,
                m_j,
                mult_index,
                vector,
            });
        }
        start = end;
    }
    Ok(CoupledBasis { m_j, states })
}

pub fn expand_initial(state: &InitialState, basis: &CoupledBasis) -> Result<Vec<Amplitude>> {
    if state.m_j() != basis.m_j {
        return Err(Error::SectorMismatch {
            basis: basis.m_j,
            state: state.m_j(),
        });
    }
    Ok(basis
        .states
        .iter()
        .map(|s| Amplitude {
            j: s.j,
            mult_index: s.mult_index,
            c: s.vector.dotc(state.vector()),
        })
        .collect())
}

/// Every spin at its maximal projection, impurity at `m_i`.
pub fn ferromagnetic_state(system: &CompositeSystem, m_i: HalfInt) -> Result<InitialState> {
    if !m_i.is_projection_of(system.i_spin()) {
        return Err(Error::InvalidProjection {
            j: system.i_spin(),
            m: m_i,
        });
    }
    if let Mode::Collective { s_total } = system.mode() {
        let s_max = system.s_each().mul_count(system.n_spins());
        if s_total != s_max {
            return Err(Error::UnsupportedSystem(format!(
                "the fully polarised state needs S = {s_max}, collective mode has S = {s_total}"
            )));
        }
    }
    let mut v = StateVector::zeros(system.dim());
    v[system.top_state_index(m_i)] = Complex64::new(1.0, 0.0);
    InitialState::new(system, v)
}

/// The three coupled states with `M_J = N/2 − 1` for N spin-1/2 and
/// `I = 1`, written directly in the `|S M_S; m_I⟩` basis. Returned in the
/// order `J = N/2 − 1, N/2, N/2 + 1`.
pub fn cg_case_a_states(n: usize, system: &CompositeSystem) -> Result<[CoupledState; 3]> {
    let s_total = HalfInt::from_twice(n as i32);
    let shape_ok = system.n_spins() == n
        && system.s_each() == HalfInt::HALF
        && system.i_spin() == HalfInt::ONE
        && system.mode() == Mode::Collective { s_total }
        && n >= 2;
    if !shape_ok {
        return Err(Error::UnsupportedSystem(format!(
            "expected {n} spin-1/2 (N >= 2) with I = 1 in collective mode S = {s_total}"
        )));
    }
    let nf = n as f64;
    // |S, S−k; m_I⟩ sits at index 3k + (1 − m_I).
    let idx_down2_plus = 3 * 2;
    let idx_down1_zero = 3 + 1;
    let idx_top_minus = 2;

    let build = |coeffs: [f64; 3], norm: f64, j: HalfInt| {
        let mut v = StateVector::zeros(system.dim());
        v[idx_down2_plus] = Complex64::new(coeffs[0] / norm, 0.0);
        v[idx_down1_zero] = Complex64::new(coeffs[1] / norm, 0.0);
        v[idx_top_minus] = Complex64::new(coeffs[2] / norm, 0.0);
        CoupledState {
            j,
            m_j: s_total - HalfInt::ONE,
            mult_index: 0,
            vector: v,
        }
    };

    let upper = build(
        [
            (2.0 * nf * (nf - 1.0)).sqrt(),
            2.0 * (2.0 * nf).sqrt(),
            2.0,
        ],
        (2.0 * (nf + 1.0) * (nf + 2.0)).sqrt(),
        s_total + HalfInt::ONE,
    );
    let middle = build(
        [-2.0 * (nf - 1.0).sqrt(), nf - 2.0, (2.0 * nf).sqrt()],
        (nf * (nf + 2.0)).sqrt(),
        s_total,
    );
    let lower = build(
        [
            2f64.sqrt(),
            -(2.0 * (nf - 1.0)).sqrt(),
            (nf * (nf - 1.0)).sqrt(),
        ],
        (nf * (nf + 1.0)).sqrt(),
        s_total - HalfInt::ONE,
    );
    Ok([lower, middle, upper])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular_momentum::composite::build_composite;
    use crate::operator::I;
    use proptest::prelude::*;

    fn collective(n: usize, i: HalfInt) -> CompositeSystem {
        build_composite(
            n,
            HalfInt::HALF,
            i,
            Mode::Collective {
                s_total: HalfInt::from_twice(n as i32),
            },
        )
        .unwrap()
    }

    fn assert_basis_valid(sys: &CompositeSystem, basis: &CoupledBasis) {
        let j2 = sys.j_squared();
        let jz = &sys.total()[2];
        for st in &basis.states {
            let v = &st.vector;
            let r1 = (&j2 * v - v.scale(st.j.casimir::<f64>())).norm();
            let r2 = (jz * v - v.scale(st.m_j.value())).norm();
            assert!(r1 < 1e-10 && r2 < 1e-10, "residuals {r1:e} {r2:e}");
        }
        for (a, sa) in basis.states.iter().enumerate() {
            for (b, sb) in basis.states.iter().enumerate() {
                let ov = sa.vector.dotc(&sb.vector);
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((ov - Complex64::new(target, 0.0)).norm() < 1e-10);
            }
        }
        assert_eq!(basis.len(), sys.sector_indices(basis.m_j).len());
        for w in basis.states.windows(2) {
            assert!(
                (w[0].j, w[0].mult_index) < (w[1].j, w[1].mult_index),
                "ordering"
            );
        }
    }

    #[test]
    fn singlet_and_triplet() {
        let sys = build_composite(2, HalfInt::HALF, HalfInt::ZERO, Mode::FullTensor).unwrap();
        let basis = couple_basis(&sys, HalfInt::ZERO).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis.states[0].j, HalfInt::ZERO);
        assert_eq!(basis.states[1].j, HalfInt::ONE);
        assert_basis_valid(&sys, &basis);
    }

    // Product states of (↑/↓, ↑/↓, m_I) with projections summing to 0:
    // (↑↑,−1) (↑↓,0) (↓↑,0) (↓↓,+1).
    #[test]
    fn sector_count_full_tensor() {
        let sys = build_composite(2, HalfInt::HALF, HalfInt::ONE, Mode::FullTensor).unwrap();
        let basis = couple_basis(&sys, HalfInt::ZERO).unwrap();
        assert_eq!(basis.len(), 4);
        assert_basis_valid(&sys, &basis);
        let js: Vec<i32> = basis.states.iter().map(|s| s.j.twice()).collect();
        assert_eq!(js, vec![0, 2, 2, 4]);
        assert_eq!(basis.states[1].mult_index, 0);
        assert_eq!(basis.states[2].mult_index, 1);
    }

    #[test]
    fn stretched_state_is_alone() {
        for sys in [
            build_composite(3, HalfInt::HALF, HalfInt::ONE, Mode::FullTensor).unwrap(),
            collective(5, HalfInt::HALF),
        ] {
            let top = sys.s_each().mul_count(sys.n_spins()) + sys.i_spin();
            let basis = couple_basis(&sys, top).unwrap();
            assert_eq!(basis.len(), 1);
            assert_eq!(basis.states[0].j, top);
        }
    }

    #[test]
    fn empty_sector_rejected() {
        let sys = collective(2, HalfInt::ONE);
        assert_eq!(
            couple_basis(&sys, HalfInt::from_int(5)).unwrap_err(),
            Error::EmptySector(HalfInt::from_int(5))
        );
    }

    #[test]
    fn ferromagnetic_expansion_n2() {
        let sys = build_composite(2, HalfInt::HALF, HalfInt::ONE, Mode::FullTensor).unwrap();
        let psi = ferromagnetic_state(&sys, HalfInt::from_int(-1)).unwrap();
        assert_eq!(psi.m_j(), HalfInt::ZERO);
        let basis = couple_basis(&sys, psi.m_j()).unwrap();
        let amps = expand_initial(&psi, &basis).unwrap();
        let weight = |twice: i32| -> f64 {
            amps.iter()
                .filter(|a| a.j.twice() == twice)
                .map(|a| a.c.norm_sqr())
                .sum::<f64>()
                .sqrt()
        };
        assert!((weight(0) - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((weight(2) - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((weight(4) - (1.0f64 / 6.0).sqrt()).abs() < 1e-12);
        let total: f64 = amps.iter().map(|a| a.c.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn basis_vector_expands_to_itself() {
        let sys = collective(3, HalfInt::ONE);
        let basis = couple_basis(&sys, HalfInt::HALF).unwrap();
        let target = &basis.states[1];
        let psi = InitialState::new(&sys, target.vector.clone()).unwrap();
        let amps = expand_initial(&psi, &basis).unwrap();
        for a in &amps {
            let expected = if a.j == target.j { 1.0 } else { 0.0 };
            assert!((a.c.norm() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn ferromagnetic_projections() {
        let sys = build_composite(3, HalfInt::HALF, HalfInt::HALF, Mode::FullTensor).unwrap();
        let psi = ferromagnetic_state(&sys, HalfInt::from_twice(-1)).unwrap();
        assert_eq!(psi.m_j(), HalfInt::ONE);
        let sz = crate::operator::expectation(&sys.spin()[2], psi.vector());
        assert!((sz.re - 1.5).abs() < 1e-15);
        assert!(ferromagnetic_state(&sys, HalfInt::from_twice(3)).is_err());
        assert!(ferromagnetic_state(&sys, HalfInt::ZERO).is_err());
    }

    #[test]
    fn non_eigenstate_rejected() {
        let sys = collective(2, HalfInt::HALF);
        let mut v = StateVector::zeros(sys.dim());
        v[0] = Complex64::new(1.0, 0.0);
        v[1] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            InitialState::new(&sys, v),
            Err(Error::NotJzEigenstate { .. })
        ));
        assert!(InitialState::new(&sys, StateVector::zeros(sys.dim())).is_err());
    }

    #[test]
    fn sector_mismatch_rejected() {
        let sys = collective(2, HalfInt::ONE);
        let psi = ferromagnetic_state(&sys, HalfInt::from_int(-1)).unwrap();
        let basis = couple_basis(&sys, HalfInt::ONE).unwrap();
        assert!(matches!(
            expand_initial(&psi, &basis),
            Err(Error::SectorMismatch { .. })
        ));
    }

    #[test]
    fn case_a_decomposition_n2() {
        let sys = collective(2, HalfInt::ONE);
        let [_, _, upper] = cg_case_a_states(2, &sys).unwrap();
        let r24 = 24f64.sqrt();
        assert!((upper.vector[6].re - 2.0 / r24).abs() < 1e-15);
        assert!((upper.vector[4].re - 4.0 / r24).abs() < 1e-15);
        assert!((upper.vector[2].re - 2.0 / r24).abs() < 1e-15);
    }

    #[test]
    fn case_a_states_match_numerical_basis() {
        for n in 2..=8 {
            let sys = collective(n, HalfInt::ONE);
            let states = cg_case_a_states(n, &sys).unwrap();
            let basis = couple_basis(&sys, states[0].m_j).unwrap();
            assert_eq!(basis.len(), 3);
            for (analytic, numeric) in states.iter().zip(basis.states.iter()) {
                assert_eq!(analytic.j, numeric.j);
                assert!((analytic.vector.norm() - 1.0).abs() < 1e-14);
                let ov = analytic.vector.dotc(&numeric.vector).norm();
                assert!((ov - 1.0).abs() < 1e-9, "N={n} J={} overlap {ov}", analytic.j);
            }
            let psi = ferromagnetic_state(&sys, HalfInt::from_int(-1)).unwrap();
            let nf = n as f64;
            let expected = [
                ((nf - 1.0) / (nf + 1.0)).sqrt(),
                (2.0 / (nf + 2.0)).sqrt(),
                (2.0 / ((nf + 1.0) * (nf + 2.0))).sqrt(),
            ];
            for (st, want) in states.iter().zip(expected) {
                let c = st.vector.dotc(psi.vector());
                assert!((c.re - want).abs() < 1e-14 && c.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn case_a_rejects_wrong_shape() {
        let sys = collective(3, HalfInt::HALF);
        assert!(cg_case_a_states(3, &sys).is_err());
        let sys = collective(3, HalfInt::ONE);
        assert!(cg_case_a_states(4, &sys).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn random_sector_state_is_complete(n in 1usize..4, i2 in 0i32..3, seed in proptest::collection::vec(-1.0f64..1.0, 64)) {
            let sys = build_composite(n, HalfInt::HALF, HalfInt::from_twice(i2), Mode::FullTensor).unwrap();
            let projections = sys.projections().to_vec();
            let m_j = projections[projections.len() / 2];
            let basis = couple_basis(&sys, m_j).unwrap();
            assert_basis_valid(&sys, &basis);
            let mut v = StateVector::zeros(sys.dim());
            for (k, idx) in sys.sector_indices(m_j).into_iter().enumerate() {
                v[idx] = Complex64::new(seed[2 * k % 64], 0.0) + I * seed[(2 * k + 1) % 64];
            }
            prop_assume!(v.norm() > 1e-6);
            let psi = InitialState::new(&sys, v).unwrap();
            let amps = expand_initial(&psi, &basis).unwrap();
            let total: f64 = amps.iter().map(|a| a.c.norm_sqr()).sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
        }
    }
}
