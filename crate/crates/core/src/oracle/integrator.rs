use num_complex::Complex64;

use crate::angular_momentum::{CompositeSystem, InitialState};
use crate::error::{Error, Result};
use crate::operator::{expectation, OperatorMatrix, StateVector};
use crate::pulse::PulseProfile;

/// Largest norm change tolerated in a single step before renormalising.
pub const MAX_STEP_DRIFT: f64 = 1e-4;
/// Steps across `[−5τ, 5τ]` for gaussian pulses.
pub const DEFAULT_GAUSSIAN_STEPS: usize = 4000;

/// Observables recorded along a stepped trajectory.
#[derive(Clone, Debug, Default)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub phi: Vec<f64>,
    pub sz: Vec<f64>,
    pub sx: Vec<f64>,
    pub sy: Vec<f64>,
    pub iz: Vec<f64>,
    pub jz: Vec<f64>,
    pub j_dot_s: Vec<f64>,
    /// Largest single-step norm drift before renormalisation.
    pub max_norm_drift: f64,
    pub final_state: StateVector,
}

impl TimeSeries {
    pub fn columns(&self) -> [(&'static str, &[f64]); 6] {
        [
            ("Sz", &self.sz),
            ("Sx", &self.sx),
            ("Sy", &self.sy),
            ("Iz", &self.iz),
            ("Jz", &self.jz),
            ("JdotS", &self.j_dot_s),
        ]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// `n_steps + 1` equally spaced points over `[t_min, t_max]`.
pub fn uniform_grid(t_min: f64, t_max: f64, n_steps: usize) -> Vec<f64> {
    (0..=n_steps)
        .map(|k| t_min + (t_max - t_min) * k as f64 / n_steps as f64)
        .collect()
}

/// Fixed-step classical RK4 for `dψ/dt = −i ω(t) K ψ` on the given grid.
///
/// Shares nothing with the exact propagator beyond the operator `K`.
pub fn step_integrator(
    system: &CompositeSystem,
    initial: &InitialState,
    profile: &PulseProfile<f64>,
    t_grid: &[f64],
) -> Result<TimeSeries> {
    if t_grid.len() < 2 {
        return Err(Error::InvalidGrid("need at least two time points".into()));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("times must be strictly increasing".into()));
    }
    let k = system.coupling();
    let minus_i = Complex64::new(0.0, -1.0);
    let rhs = |t: f64, psi: &StateVector| -> StateVector { (k * psi) * (minus_i * profile.omega(t)) };

    let s = system.spin();
    let imp = system.impurity();
    let jz = &system.total()[2];
    let jds: OperatorMatrix = system.j_dot_s();
    let mut series = TimeSeries {
        final_state: initial.vector().clone(),
        ..Default::default()
    };
    let record = |series: &mut TimeSeries, t: f64, psi: &StateVector| {
        series.times.push(t);
        series.phi.push(profile.phi(t));
        series.sx.push(expectation(&s[0], psi).re);
        series.sy.push(expectation(&s[1], psi).re);
        series.sz.push(expectation(&s[2], psi).re);
        series.iz.push(expectation(&imp[2], psi).re);
        series.jz.push(expectation(jz, psi).re);
        series.j_dot_s.push(expectation(&jds, psi).re);
    };

    let mut psi = initial.vector().clone();
    record(&mut series, t_grid[0], &psi);
    for w in t_grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let h = t1 - t0;
        let half = 0.5 * h;
        let k1 = rhs(t0, &psi);
        let k2 = rhs(t0 + half, &(&psi + &k1 * Complex64::from(half)));
        let k3 = rhs(t0 + half, &(&psi + &k2 * Complex64::from(half)));
        let k4 = rhs(t1, &(&psi + &k3 * Complex64::from(h)));
        psi += (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4)
            * Complex64::from(h / 6.0);
        let norm = psi.norm();
        let drift = (norm - 1.0).abs();
        if drift > MAX_STEP_DRIFT {
            return Err(Error::StepTooCoarse(drift));
        }
        series.max_norm_drift = series.max_norm_drift.max(drift);
        psi.unscale_mut(norm);
        record(&mut series, t1, &psi);
    }
    series.final_state = psi;
    Ok(series)
}
