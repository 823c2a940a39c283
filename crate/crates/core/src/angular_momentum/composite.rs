use num_complex::Complex64;

use super::spin::spin_matrices;
use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::operator::{dot, identity, scale, zeros, OperatorMatrix, VectorOperator};

pub const DEFAULT_DIM_CAP: usize = 4096;

/// How the N identical spins are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Full `(2s+1)^N` tensor product, every spin kept separately.
    FullTensor,
    /// The N spins replaced by a single spin of magnitude `s_total`.
    Collective { s_total: HalfInt },
}

/// N non-interacting spins `s_each` plus one spin `I`, with `S`, `I`, `J`
/// and `K = S·I` prebuilt.
///
/// Product basis ordering: the spin factors come first (most significant),
/// the impurity last; within every factor index `k` carries `m = j − k`.
#[derive(Clone, Debug)]
pub struct CompositeSystem {
    n_spins: usize,
    s_each: HalfInt,
    i_spin: HalfInt,
    mode: Mode,
    dim: usize,
    s: VectorOperator,
    i: VectorOperator,
    j: VectorOperator,
    k: OperatorMatrix,
    projections: Vec<HalfInt>,
}

pub fn build_composite(
    n_spins: usize,
    s_each: HalfInt,
    i_spin: HalfInt,
    mode: Mode,
) -> Result<CompositeSystem> {
    build_composite_with_cap(n_spins, s_each, i_spin, mode, DEFAULT_DIM_CAP)
}

pub fn build_composite_with_cap(
    n_spins: usize,
    s_each: HalfInt,
    i_spin: HalfInt,
    mode: Mode,
    cap: usize,
) -> Result<CompositeSystem> {
    let s_each = s_each.magnitude()?;
    let i_spin = i_spin.magnitude()?;
    if n_spins == 0 {
        return Err(Error::UnsupportedSystem("at least one spin is required".into()));
    }
    let imp = spin_matrices(i_spin)?;
    let d_i = imp.dim;

    let (s_ops, spin_projections): (VectorOperator, Vec<HalfInt>) = match mode {
        Mode::FullTensor => {
            let d_s = s_each.multiplicity();
            let dim = (d_s as u128)
                .checked_pow(n_spins as u32)
                .and_then(|d| d.checked_mul(d_i as u128))
                .unwrap_or(u128::MAX);
            if dim > cap as u128 {
                return Err(Error::DimensionCap {
                    dim: usize::try_from(dim).unwrap_or(usize::MAX),
                    cap,
                });
            }
            let one = spin_matrices(s_each)?;
            let single = one.cartesian();
            let d_all = d_s.pow(n_spins as u32);
            let mut total = [zeros(d_all), zeros(d_all), zeros(d_all)];
            for site in 0..n_spins {
                let left = identity(d_s.pow(site as u32));
                let right = identity(d_s.pow((n_spins - site - 1) as u32));
                for (acc, op) in total.iter_mut().zip(single.iter()) {
                    *acc += left.kronecker(op).kronecker(&right);
                }
            }
            let projections = (0..d_all)
                .map(|mut idx| {
                    let mut twice = 0;
                    for _ in 0..n_spins {
                        twice += s_each.twice() - 2 * (idx % d_s) as i32;
                        idx /= d_s;
                    }
                    HalfInt::from_twice(twice)
                })
                .collect();
            (total, projections)
        }
        Mode::Collective { s_total } => {
            let s_max = s_each.mul_count(n_spins);
            let gap = s_max.twice() - s_total.twice();
            if s_total.twice() < 0 || gap < 0 || gap % 2 != 0 {
                return Err(Error::InvalidCollectiveSpin {
                    n_spins,
                    s_each,
                    s_total,
                });
            }
            let dim = s_total.multiplicity() * d_i;
            if dim > cap {
                return Err(Error::DimensionCap { dim, cap });
            }
            let ops = spin_matrices(s_total)?;
            (ops.cartesian(), s_total.projections().collect())
        }
    };

    let d_s = s_ops[0].nrows();
    let dim = d_s * d_i;
    let id_s = identity(d_s);
    let id_i = identity(d_i);
    let s: VectorOperator = [0, 1, 2].map(|u| s_ops[u].kronecker(&id_i));
    let imp_ops = imp.cartesian();
    let i: VectorOperator = [0, 1, 2].map(|u| id_s.kronecker(&imp_ops[u]));
    let j: VectorOperator = [0, 1, 2].map(|u| &s[u] + &i[u]);
    let k = dot(&s, &i)?;

    let imp_projections: Vec<HalfInt> = i_spin.projections().collect();
    let projections = spin_projections
        .iter()
        .flat_map(|&ms| imp_projections.iter().map(move |&mi| ms + mi))
        .collect();

    Ok(CompositeSystem {
        n_spins,
        s_each,
        i_spin,
        mode,
        dim,
        s,
        i,
        j,
        k,
        projections,
    })
}

impl CompositeSystem {
    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn s_each(&self) -> HalfInt {
        self.s_each
    }

    pub fn i_spin(&self) -> HalfInt {
        self.i_spin
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total spin `S = Σ S_i`.
    pub fn spin(&self) -> &VectorOperator {
        &self.s
    }

    pub fn impurity(&self) -> &VectorOperator {
        &self.i
    }

    /// `J = S + I`.
    pub fn total(&self) -> &VectorOperator {
        &self.j
    }

    /// `K = S·I`, so that `H(t) = ω(t) K`.
    pub fn coupling(&self) -> &OperatorMatrix {
        &self.k
    }

    /// Exact `J_z` eigenvalue of every product basis state.
    pub fn projections(&self) -> &[HalfInt] {
        &self.projections
    }

    pub fn j_squared(&self) -> OperatorMatrix {
        dot(&self.j, &self.j).expect("square components")
    }

    pub fn s_squared(&self) -> OperatorMatrix {
        dot(&self.s, &self.s).expect("square components")
    }

    pub fn j_dot_s(&self) -> OperatorMatrix {
        dot(&self.j, &self.s).expect("square components")
    }

    /// Indices of product states with `J_z = m_j`.
    pub fn sector_indices(&self, m_j: HalfInt) -> Vec<usize> {
        self.projections
            .iter()
            .enumerate()
            .filter(|(_, &m)| m == m_j)
            .map(|(idx, _)| idx)
            .collect()
    }

    /// Product-basis index of the state with every spin at `+s` (or the
    /// collective spin at `+S`) and impurity projection `m_i`.
    pub(crate) fn top_state_index(&self, m_i: HalfInt) -> usize {
        ((self.i_spin.twice() - m_i.twice()) / 2) as usize
    }

    /// Copy with `I_x` scaled by `1 + eps`, which breaks the su(2) algebra.
    /// Only meant for negative controls of the verification suite.
    #[doc(hidden)]
    pub fn corrupted(&self, eps: f64) -> CompositeSystem {
        let mut out = self.clone();
        out.i[0] = scale(&self.i[0], Complex64::new(1.0 + eps, 0.0));
        out.j = [0, 1, 2].map(|u| &out.s[u] + &out.i[u]);
        out.k = dot(&out.s, &out.i).expect("square components");
        out
    }
}
