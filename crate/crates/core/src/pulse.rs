//! Coupling profiles `ω(t)` and the accumulated phase `φ(t) = ∫_{−∞}^t ω`.
//!
//! Every observable depends on time only through `φ(t)`.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum PulseProfile<T> {
    /// `ω(t) = ω₀ exp(−(t/τ)²)`.
    Gaussian { omega0: T, tau: T },
    /// `ω(t) = ω₀` on `[t_on, t_off]`, zero elsewhere.
    Rectangular { omega0: T, t_on: T, t_off: T },
    /// Linear interpolation between samples, zero outside their span.
    Tabulated { samples: Vec<(T, T)> },
}

fn erf<T: Real>(x: T) -> T {
    T::lit(libm::erf(x.to_f64().expect("finite argument")))
}

impl<T: Real> PulseProfile<T> {
    pub fn gaussian(omega0: T, tau: T) -> Result<Self> {
        if !(tau > T::zero()) || !omega0.is_finite() {
            return Err(Error::InvalidPulse("gaussian needs tau > 0 and finite omega0".into()));
        }
        Ok(Self::Gaussian { omega0, tau })
    }

    /// Gaussian with `τ = 1`, parametrised by the dimensionless `ω₀τ`.
    pub fn gaussian_dimensionless(omega0_tau: T) -> Result<Self> {
        Self::gaussian(omega0_tau, T::one())
    }

    pub fn rectangular(omega0: T, t_on: T, t_off: T) -> Result<Self> {
        if !(t_off >= t_on) || !omega0.is_finite() {
            return Err(Error::InvalidPulse("rectangular needs t_on <= t_off".into()));
        }
        Ok(Self::Rectangular {
            omega0,
            t_on,
            t_off,
        })
    }

    pub fn tabulated(samples: Vec<(T, T)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidPulse("tabulated pulse needs at least two samples".into()));
        }
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidPulse("sample times must be strictly increasing".into()));
        }
        if samples.iter().any(|(t, w)| !t.is_finite() || !w.is_finite()) {
            return Err(Error::InvalidPulse("samples must be finite".into()));
        }
        Ok(Self::Tabulated { samples })
    }

    pub fn omega(&self, t: T) -> T {
        match self {
            Self::Gaussian { omega0, tau } => {
                let x = t / *tau;
                *omega0 * (-x * x).exp()
            }
            Self::Rectangular {
                omega0,
                t_on,
                t_off,
            } => {
                if t >= *t_on && t <= *t_off {
                    *omega0
                } else {
                    T::zero()
                }
            }
            Self::Tabulated { samples } => {
                let (first, last) = (samples[0].0, samples[samples.len() - 1].0);
                if t < first || t > last {
                    return T::zero();
                }
                let k = segment(samples, t);
                let (t0, w0) = samples[k];
                let (t1, w1) = samples[k + 1];
                w0 + (w1 - w0) * (t - t0) / (t1 - t0)
            }
        }
    }

    pub fn phi(&self, t: T) -> T {
        match self {
            Self::Gaussian { omega0, tau } => {
                let half = T::lit(0.5);
                // erfc form keeps relative accuracy in the far left tail
                let tail = if t < T::zero() {
                    T::lit(libm::erfc(-(t / *tau).to_f64().expect("finite")))
                } else {
                    T::one() + erf(t / *tau)
                };
                half * T::PI().sqrt() * *omega0 * *tau * tail
            }
            Self::Rectangular {
                omega0,
                t_on,
                t_off,
            } => {
                if t <= *t_on {
                    T::zero()
                } else if t >= *t_off {
                    *omega0 * (*t_off - *t_on)
                } else {
                    *omega0 * (t - *t_on)
                }
            }
            Self::Tabulated { samples } => {
                let first = samples[0].0;
                if t <= first {
                    return T::zero();
                }
                let half = T::lit(0.5);
                let mut acc = T::zero();
                for w in samples.windows(2) {
                    let (t0, w0) = w[0];
                    let (t1, w1) = w[1];
                    if t >= t1 {
                        acc = acc + half * (w0 + w1) * (t1 - t0);
                    } else {
                        let wt = w0 + (w1 - w0) * (t - t0) / (t1 - t0);
                        return acc + half * (w0 + wt) * (t - t0);
                    }
                }
                acc
            }
        }
    }

    /// Total accumulated phase `φ(+∞)`.
    pub fn phi_infinity(&self) -> T {
        match self {
            Self::Gaussian { omega0, tau } => T::PI().sqrt() * *omega0 * *tau,
            Self::Rectangular {
                omega0,
                t_on,
                t_off,
            } => *omega0 * (*t_off - *t_on),
            Self::Tabulated { samples } => self.phi(samples[samples.len() - 1].0),
        }
    }

    /// Time window covering the pulse: `[−5τ, 5τ]` for a gaussian, the
    /// support padded by a quarter of its width for a rectangle, the sample
    /// span for a table.
    pub fn default_window(&self) -> (T, T) {
        match self {
            Self::Gaussian { tau, .. } => {
                let five = T::lit(5.0);
                (-five * *tau, five * *tau)
            }
            Self::Rectangular { t_on, t_off, .. } => {
                let pad = (*t_off - *t_on) * T::lit(0.25);
                let pad = if pad > T::zero() { pad } else { T::one() };
                (*t_on - pad, *t_off + pad)
            }
            Self::Tabulated { samples } => (samples[0].0, samples[samples.len() - 1].0),
        }
    }
}

fn segment<T: Real>(samples: &[(T, T)], t: T) -> usize {
    let k = samples.partition_point(|(ts, _)| *ts <= t);
    k.saturating_sub(1).min(samples.len() - 2)
}
