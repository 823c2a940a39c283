//! `RunConfig`: the merged view of `--config` JSON and command-line flags.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use opgyro::{
    build_composite_with_cap, ferromagnetic_state, CompositeSystem, HalfInt, InitialState, Mode,
    PulseProfile64, StateVector, DEFAULT_DIM_CAP,
};
use serde::{Deserialize, Deserializer};
use serde_json::Value;

use crate::args::{Format, ModeArg, PulseArgs, SystemArgs, Toggle};
use crate::error::{config, CliError, CliResult};

/// Default number of time points across the pulse window.
pub const DEFAULT_STEPS: usize = 201;

#[derive(Deserialize, Debug, Clone, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n_spins: Option<usize>,
    #[serde(default, deserialize_with = "textual")]
    pub s_each: Option<String>,
    #[serde(default, deserialize_with = "textual")]
    pub i_spin: Option<String>,
    pub mode: Option<ModeArg>,
    #[serde(default, deserialize_with = "textual")]
    pub s_total: Option<String>,
    #[serde(default, deserialize_with = "textual")]
    pub m_i: Option<String>,
    /// Path to a vector file, or the amplitudes inline.
    pub initial_vector: Option<Value>,
    pub dim_cap: Option<usize>,
    pub oracle: Option<Toggle>,
    pub format: Option<Format>,
    pub pulse: Option<Value>,
    pub omega0_tau: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub phi_grid: Option<String>,
    pub outputs: Option<Vec<String>>,
}

/// Half-integers may be written as `"3/2"`, `1.5` or `1`.
fn textual<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    Ok(match Option::<Value>::deserialize(d)? {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s),
        Some(Value::Number(n)) => Some(n.to_string()),
        Some(other) => {
            return Err(serde::de::Error::custom(format!("expected a half-integer, got {other}")))
        }
    })
}

#[derive(Deserialize, Debug)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum PulseSpec {
    Gaussian {
        omega0: Option<f64>,
        tau: Option<f64>,
        omega0_tau: Option<f64>,
    },
    Rectangular {
        omega0: f64,
        t_on: f64,
        t_off: f64,
    },
    Tabulated {
        samples: Vec<(f64, f64)>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    Time(Vec<f64>),
    Phi(Vec<f64>),
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{} is not valid JSON: {e}", path.display())))
}

fn parse_half(what: &str, text: &str) -> CliResult<HalfInt> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{what}: `{text}` is not a half-integer")))
}

/// `from:to:points`
pub fn parse_range(text: &str) -> CliResult<(f64, f64, usize)> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || CliError::Config(format!("expected from:to:points, got `{text}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let from: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let to: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let points: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((from, to, points))
}

pub fn linspace(from: f64, to: f64, points: usize) -> CliResult<Vec<f64>> {
    if points < 2 {
        return config("a grid needs at least two points");
    }
    if !(from.is_finite() && to.is_finite()) || from > to {
        return config(format!("invalid range {from} .. {to}"));
    }
    let step = (to - from) / (points - 1) as f64;
    Ok((0..points).map(|k| from + step * k as f64).collect())
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        serde_json::from_value(read_json(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Config file (if any) overlaid with the flags.
    pub fn from_args(system: &SystemArgs, pulse: Option<&PulseArgs>) -> CliResult<Self> {
        let mut cfg = match &system.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        macro_rules! take {
            ($src:expr; $($field:ident),*) => {
                $( if let Some(v) = $src.$field.clone() { cfg.$field = Some(v.into()); } )*
            };
        }
        take!(system; n_spins, s_each, i_spin, mode, s_total, m_i, dim_cap, oracle, format);
        if let Some(p) = &system.initial_vector {
            cfg.initial_vector = Some(Value::String(p.display().to_string()));
        }
        if let Some(p) = pulse {
            take!(p; omega0_tau, t_min, t_max, steps, phi_grid);
            if let Some(text) = &p.pulse {
                cfg.pulse = Some(Value::String(text.clone()));
            }
            if let Some(cols) = &p.columns {
                cfg.outputs = Some(cols.clone());
            }
        }
        Ok(cfg)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn oracle_on(&self) -> bool {
        self.oracle != Some(Toggle::Off)
    }

    pub fn build_system(&self) -> CliResult<CompositeSystem> {
        let n = match self.n_spins {
            Some(n) => n,
            None => return config("the number of spins (--n) is required"),
        };
        let s = parse_half("--s", self.s_each.as_deref().unwrap_or("1/2"))?;
        let i = match &self.i_spin {
            Some(t) => parse_half("--i", t)?,
            None => return config("the extra spin (--i) is required"),
        };
        let mode = match self.mode.unwrap_or(ModeArg::Collective) {
            ModeArg::Full => Mode::FullTensor,
            ModeArg::Collective => {
                let s_total = match &self.s_total {
                    Some(t) => parse_half("--s-total", t)?,
                    None => HalfInt::from_twice(s.twice() * n as i32),
                };
                Mode::Collective { s_total }
            }
        };
        Ok(build_composite_with_cap(
            n,
            s,
            i,
            mode,
            self.dim_cap.unwrap_or(DEFAULT_DIM_CAP),
        )?)
    }

    pub fn initial_state(&self, system: &CompositeSystem) -> CliResult<InitialState> {
        let Some(spec) = &self.initial_vector else {
            let m_i = match &self.m_i {
                Some(t) => parse_half("--m-i", t)?,
                None => -system.i_spin(),
            };
            return Ok(ferromagnetic_state(system, m_i)?);
        };
        if self.m_i.is_some() {
            return config("--m-i and --initial-vector are mutually exclusive");
        }
        let entries = match spec {
            Value::String(path) => read_json(&PathBuf::from(path))?,
            inline => inline.clone(),
        };
        let Value::Array(items) = entries else {
            return config("the initial vector must be a JSON array");
        };
        let amp = |v: &Value| -> Option<Complex64> {
            match v {
                Value::Number(x) => Some(Complex64::new(x.as_f64()?, 0.0)),
                Value::Array(p) if p.len() == 2 => {
                    Some(Complex64::new(p[0].as_f64()?, p[1].as_f64()?))
                }
                _ => None,
            }
        };
        let values: Option<Vec<Complex64>> = items.iter().map(amp).collect();
        let Some(values) = values else {
            return config("initial vector entries must be numbers or [re, im] pairs");
        };
        Ok(InitialState::new(system, StateVector::from_vec(values))?)
    }

    pub fn pulse_profile(&self) -> CliResult<PulseProfile64> {
        let spec = match (&self.pulse, self.omega0_tau) {
            (Some(_), Some(_)) => return config("give either --pulse or --omega0-tau, not both"),
            (None, Some(x)) => return Ok(PulseProfile64::gaussian_dimensionless(x)?),
            (None, None) => return config("a pulse is required (--pulse or --omega0-tau)"),
            (Some(Value::String(text)), None) if text.trim_start().starts_with('{') => {
                serde_json::from_str(text).map_err(|e| CliError::Config(format!("pulse: {e}")))?
            }
            (Some(Value::String(path)), None) => read_json(Path::new(path))?,
            (Some(v), None) => v.clone(),
        };
        let spec: PulseSpec =
            serde_json::from_value(spec).map_err(|e| CliError::Config(format!("pulse: {e}")))?;
        Ok(match spec {
            PulseSpec::Gaussian {
                omega0,
                tau,
                omega0_tau,
            } => {
                let tau = tau.unwrap_or(1.0);
                let omega0 = match (omega0, omega0_tau) {
                    (Some(w), None) => w,
                    (None, Some(x)) => x / tau,
                    _ => return config("gaussian pulse needs exactly one of omega0, omega0_tau"),
                };
                PulseProfile64::gaussian(omega0, tau)?
            }
            PulseSpec::Rectangular {
                omega0,
                t_on,
                t_off,
            } => PulseProfile64::rectangular(omega0, t_on, t_off)?,
            PulseSpec::Tabulated { samples } => PulseProfile64::tabulated(samples)?,
        })
    }

    pub fn grid(&self, profile: &PulseProfile64) -> CliResult<Grid> {
        if let Some(text) = &self.phi_grid {
            if self.t_min.is_some() || self.t_max.is_some() || self.steps.is_some() {
                return config("--phi-grid excludes --t-min, --t-max and --steps");
            }
            let (from, to, points) = parse_range(text)?;
            return Ok(Grid::Phi(linspace(from, to, points)?));
        }
        let (lo, hi) = profile.default_window();
        let steps = self.steps.unwrap_or(DEFAULT_STEPS);
        if steps < 2 {
            return config("--steps must be at least 2");
        }
        Ok(Grid::Time(linspace(
            self.t_min.unwrap_or(lo),
            self.t_max.unwrap_or(hi),
            steps,
        )?))
    }
}
