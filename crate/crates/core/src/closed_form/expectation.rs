//! Resummed expectation value of the collective spin.
//!
//! For a start `|Ψ⟩` with `J_z|Ψ⟩ = M_J|Ψ⟩`,
//!
//! ```text
//! ⟨S⟩(φ) = Σ_{J,i} c*_{J,i}/(2J+1) ⟨ψ_{J,i}| s₀ (J·S)J + s∥ S + i s⊥ J×S |Ψ⟩
//! ```
//!
//! with the s-functions of [`super::s_functions`]. The sum over the
//! multiplicity label `i` only needs the projector onto each `J` sector, so
//! any orthonormal choice inside a degenerate subspace gives the same value.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::s_functions::s_functions;
use crate::angular_momentum::{expand_initial, CompositeSystem, CoupledBasis, InitialState};
use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::operator::{cross_apply, dot_apply, I};

/// Largest imaginary part tolerated in `⟨S_u⟩` before it is discarded.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-9;
/// Residual allowed between the cosine series and the direct evaluation.
pub const EXPANSION_TOL: f64 = 1e-10;
/// Number of `φ` samples in `[0, 4π]` used to verify a cosine series.
pub const EXPANSION_SAMPLES: usize = 64;
/// Cosine amplitudes below this are dropped from the series.
const AMPLITUDE_FLOOR: f64 = 1e-12;

/// Matrix elements of one `J` sector, already contracted with `c*_{J,i}`
/// and summed over the multiplicity label.
#[derive(Clone, Debug)]
struct Channel {
    j: HalfInt,
    /// `⟨Ψ|Π_J (J·S) J_u|Ψ⟩`
    m_long: [Complex64; 3],
    /// `⟨Ψ|Π_J S_u|Ψ⟩`
    m_par: [Complex64; 3],
    /// `⟨Ψ|Π_J (J×S)_u|Ψ⟩`
    m_cross: [Complex64; 3],
}

/// Precomputed channels for a fixed system and start; evaluates `⟨S⟩(φ)`
/// at any phase in `O(#J)`.
#[derive(Clone, Debug)]
pub struct ClosedFormSolver {
    m_j: HalfInt,
    channels: Vec<Channel>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosineTerm {
    /// Multiplies `φ`; always a positive half-integer.
    pub freq: HalfInt,
    pub amplitude: f64,
}

/// `⟨S_z⟩(φ) = constant + Σ amplitude · cos(freq · φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormExpansion {
    pub constant: f64,
    pub terms: Vec<CosineTerm>,
}

impl ClosedFormExpansion {
    pub fn evaluate(&self, phi: f64) -> f64 {
        self.terms
            .iter()
            .fold(self.constant, |acc, t| acc + t.amplitude * (t.freq.value() * phi).cos())
    }

    pub fn frequencies(&self) -> Vec<HalfInt> {
        self.terms.iter().map(|t| t.freq).collect()
    }
}

impl ClosedFormSolver {
    pub fn new(
        system: &CompositeSystem,
        basis: &CoupledBasis,
        initial: &InitialState,
    ) -> Result<Self> {
        if initial.vector().len() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: initial.vector().len(),
            });
        }
        let amplitudes = expand_initial(initial, basis)?;
        let s = system.spin();
        let j = system.total();
        let psi = initial.vector();

        // matrix-vector chains only; the collective spaces get large
        let par_psi = [0, 1, 2].map(|u| &s[u] * psi);
        let cross_psi = cross_apply(j, &par_psi);
        let long_psi = [0, 1, 2].map(|u| {
            let ju = &j[u] * psi;
            dot_apply(j, &[0, 1, 2].map(|v| &s[v] * &ju))
        });

        let mut channels: Vec<Channel> = Vec::new();
        for (amp, state) in amplitudes.iter().zip(basis.states.iter()) {
            let bra = |v: &crate::operator::StateVector| amp.c.conj() * state.vector.dotc(v);
            let m_long = [0, 1, 2].map(|u| bra(&long_psi[u]));
            let m_par = [0, 1, 2].map(|u| bra(&par_psi[u]));
            let m_cross = [0, 1, 2].map(|u| bra(&cross_psi[u]));
            match channels.last_mut() {
                Some(ch) if ch.j == amp.j => {
                    for u in 0..3 {
                        ch.m_long[u] += m_long[u];
                        ch.m_par[u] += m_par[u];
                        ch.m_cross[u] += m_cross[u];
                    }
                }
                _ => channels.push(Channel {
                    j: amp.j,
                    m_long,
                    m_par,
                    m_cross,
                }),
            }
        }
        Ok(Self {
            m_j: initial.m_j(),
            channels,
        })
    }

    pub fn m_j(&self) -> HalfInt {
        self.m_j
    }

    /// `J` values present in the coupled basis, ascending.
    pub fn j_values(&self) -> Vec<HalfInt> {
        self.channels.iter().map(|c| c.j).collect()
    }

    /// `⟨S_u⟩(φ)` before the imaginary residue is discarded.
    pub fn evaluate_complex(&self, phi: f64) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for ch in &self.channels {
            let sf = s_functions(ch.j, phi);
            let weight = 1.0 / (2.0 * ch.j.value() + 1.0);
            for u in 0..3 {
                out[u] += (sf.s0 * ch.m_long[u] + sf.s_par * ch.m_par[u]
                    + I * sf.s_perp * ch.m_cross[u])
                    * weight;
            }
        }
        out
    }

    /// Real `(⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩)`; fails if an imaginary residue above
    /// [`IMAGINARY_RESIDUE_TOL`] survives.
    pub fn expectation(&self, phi: f64) -> Result<[f64; 3]> {
        let z = self.evaluate_complex(phi);
        let residue = z.iter().fold(0.0f64, |acc, c| acc.max(c.im.abs()));
        if residue > IMAGINARY_RESIDUE_TOL {
            return Err(Error::ImaginaryResidue(residue));
        }
        Ok(z.map(|c| c.re))
    }

    /// Collects `⟨S_z⟩(φ)` into a constant plus cosines of `Jφ` and
    /// `(J+1)φ`, directly from the channel matrix elements.
    pub fn expansion(&self) -> Result<ClosedFormExpansion> {
        const Z: usize = 2;
        // signed doubled frequency → coefficient of exp(i f φ)
        let mut coeff: BTreeMap<i32, Complex64> = BTreeMap::new();
        for ch in &self.channels {
            let (l, p, x) = (ch.m_long[Z], ch.m_par[Z], ch.m_cross[Z]);
            let jv = ch.j.value();
            let weight = 1.0 / (2.0 * jv + 1.0);
            let back = -(ch.j + HalfInt::ONE).twice();
            let fwd = ch.j.twice();
            // exp(−i(J+1)φ): −J/(J(J+1)) l + (J+1) p + i x
            let e_back = (-l / (jv + 1.0) + p * (jv + 1.0) + I * x) * weight;
            *coeff.entry(back).or_default() += e_back;
            if ch.j == HalfInt::ZERO {
                // s₀ limit carries a term linear in φ
                if l.norm() > EXPANSION_TOL {
                    return Err(Error::SecularTerm(l.norm()));
                }
                *coeff.entry(0).or_default() += (l - I * x) * weight;
            } else {
                // constant (2J+1)/(J(J+1)) l and exp(iJφ): −(J+1)/(J(J+1)) l + J p − i x
                *coeff.entry(0).or_default() += l * (2.0 * jv + 1.0) / (jv * (jv + 1.0)) * weight;
                *coeff.entry(fwd).or_default() += (-l / jv + p * jv - I * x) * weight;
            }
        }

        let c0 = coeff.get(&0).copied().unwrap_or_default();
        let mut residue = c0.im.abs();
        let mut sine = 0.0f64;
        let mut freqs: Vec<i32> = coeff.keys().filter(|&&f| f > 0).copied().collect();
        for &f in coeff.keys() {
            if f < 0 && !coeff.contains_key(&-f) {
                freqs.push(-f);
            }
        }
        freqs.sort_unstable();

        let mut terms = Vec::new();
        for f in freqs {
            let plus = coeff.get(&f).copied().unwrap_or_default();
            let minus = coeff.get(&-f).copied().unwrap_or_default();
            let cos_amp = plus + minus;
            // b·e^{ifφ} + a·e^{−ifφ} = (a+b) cos fφ + i(b−a) sin fφ, real only if b = conj(a)
            residue = residue.max((plus - minus.conj()).norm());
            sine = sine.max((plus - minus).norm());
            if cos_amp.re.abs() > AMPLITUDE_FLOOR {
                terms.push(CosineTerm {
                    freq: HalfInt::from_twice(f),
                    amplitude: cos_amp.re,
                });
            }
        }
        if residue > EXPANSION_TOL {
            return Err(Error::ImaginaryResidue(residue));
        }
        if sine > EXPANSION_TOL {
            return Err(Error::SineContent(sine));
        }
        let expansion = ClosedFormExpansion {
            constant: c0.re,
            terms,
        };

        let mut worst = 0.0f64;
        for k in 0..EXPANSION_SAMPLES {
            let phi = 4.0 * std::f64::consts::PI * k as f64 / (EXPANSION_SAMPLES - 1) as f64;
            let direct = self.expectation(phi)?[Z];
            worst = worst.max((direct - expansion.evaluate(phi)).abs());
        }
        if worst > EXPANSION_TOL {
            return Err(Error::ExpansionResidual(worst));
        }
        Ok(expansion)
    }
}

pub fn expectation_s(
    system: &CompositeSystem,
    basis: &CoupledBasis,
    initial: &InitialState,
    phi: f64,
) -> Result<[f64; 3]> {
    ClosedFormSolver::new(system, basis, initial)?.expectation(phi)
}

pub fn closed_form_expansion(
    system: &CompositeSystem,
    basis: &CoupledBasis,
    initial: &InitialState,
) -> Result<ClosedFormExpansion> {
    ClosedFormSolver::new(system, basis, initial)?.expansion()
}
