use opgyro::operator::expectation;
use opgyro::{OperatorMatrix, PropagatorCache};
use rayon::prelude::*;

use super::Setup;
use crate::config::{Grid, RunConfig};
use crate::error::{config, CliResult};
use crate::format::Table;

/// Fixed column order; unused columns drop off the right.
pub const SIMULATE_COLUMNS: [&str; 9] =
    ["t", "phi", "Sz_closed", "Sz_oracle", "Sx", "Sy", "Iz", "Jz", "JdotS"];
/// Columns available without the oracle.
const CLOSED_ONLY: usize = 3;

/// Allowed `|Sz_closed − Sz_oracle|`.
pub const EQUIVALENCE_TOL: f64 = 1e-8;
/// Allowed drift of `⟨J_z⟩` and `⟨J·S⟩`.
pub const CONSERVATION_TOL: f64 = 1e-10;
/// Allowed `|⟨S_x⟩|`, `|⟨S_y⟩|`.
pub const SELECTION_TOL: f64 = 1e-9;

struct Oracle {
    cache: PropagatorCache,
    sz: OperatorMatrix,
    jz: OperatorMatrix,
    jds: OperatorMatrix,
}

fn selected_columns(cfg: &RunConfig) -> CliResult<Vec<usize>> {
    let available = if cfg.oracle_on() {
        SIMULATE_COLUMNS.len()
    } else {
        CLOSED_ONLY
    };
    let Some(wanted) = &cfg.outputs else {
        return Ok((0..available).collect());
    };
    let mut idx = Vec::new();
    for name in wanted {
        match SIMULATE_COLUMNS.iter().position(|c| c == name) {
            Some(k) if k < available => idx.push(k),
            Some(_) => return config(format!("column {name} needs --oracle on")),
            None => return config(format!("unknown column {name}")),
        }
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// Rows of `(t, φ, ⟨S_z⟩ …)` and the first breach found, if any.
pub fn simulate(cfg: &RunConfig) -> CliResult<(Table, Option<String>)> {
    let setup = Setup::new(cfg)?;
    let profile = cfg.pulse_profile()?;
    let columns = selected_columns(cfg)?;
    let points: Vec<(Option<f64>, f64)> = match cfg.grid(&profile)? {
        Grid::Time(ts) => ts.into_iter().map(|t| (Some(t), profile.phi(t))).collect(),
        Grid::Phi(ps) => ps.into_iter().map(|p| (None, p)).collect(),
    };

    let sys = &setup.system;
    let oracle = cfg.oracle_on().then(|| Oracle {
        cache: PropagatorCache::new(sys),
        sz: sys.spin()[2].clone(),
        jz: sys.total()[2].clone(),
        jds: sys.j_dot_s(),
    });
    let m_j = setup.initial.m_j().value();
    let jds0 = oracle
        .as_ref()
        .map(|o| expectation(&o.jds, setup.initial.vector()).re);

    let full_rows: Vec<[Option<f64>; 9]> = points
        .par_iter()
        .map(|&(t, phi)| -> CliResult<[Option<f64>; 9]> {
            let [sx, sy, sz] = setup.solver.expectation(phi)?;
            let mut row = [t, Some(phi), Some(sz), None, None, None, None, None, None];
            if let Some(o) = &oracle {
                let psi = o.cache.apply(setup.initial.vector(), phi)?;
                row[3] = Some(expectation(&o.sz, &psi).re);
                row[4] = Some(sx);
                row[5] = Some(sy);
                row[6] = Some(m_j - sz);
                row[7] = Some(expectation(&o.jz, &psi).re);
                row[8] = Some(expectation(&o.jds, &psi).re);
            }
            Ok(row)
        })
        .collect::<CliResult<_>>()?;

    let mut breach = None;
    if let Some(jds0) = jds0 {
        for r in &full_rows {
            let v = |k: usize| r[k].unwrap_or(0.0);
            let checks = [
                ("Sz_closed vs Sz_oracle", (v(2) - v(3)).abs(), EQUIVALENCE_TOL),
                ("Sx", v(4).abs(), SELECTION_TOL),
                ("Sy", v(5).abs(), SELECTION_TOL),
                ("Jz drift", (v(7) - m_j).abs(), CONSERVATION_TOL),
                ("JdotS drift", (v(8) - jds0).abs(), CONSERVATION_TOL),
            ];
            if let Some((what, dev, tol)) = checks.into_iter().find(|c| !(c.1 <= c.2)) {
                breach = Some(format!("{what} = {dev:.3e} exceeds {tol:.0e} at phi = {}", v(1)));
                break;
            }
        }
    }

    let mut table = Table::new(columns.iter().map(|&k| SIMULATE_COLUMNS[k]));
    for r in full_rows {
        table.push(columns.iter().map(|&k| r[k]).collect());
    }
    Ok((table, breach))
}

