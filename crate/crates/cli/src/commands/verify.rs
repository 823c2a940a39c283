use std::f64::consts::PI;

use opgyro::operator::{commutator, expectation, max_abs};
use opgyro::oracle::{step_integrator, uniform_grid, DEFAULT_GAUSSIAN_STEPS};
use opgyro::closed_form::{exact_to_f64, relative_distance};
use opgyro::{
    build_composite, coefficients_explicit, coefficients_recursive_exact, ferromagnetic_state,
    verify_pn_identities, CompositeSystem, HalfInt, InitialState, Mode, PropagatorCache,
    PulseProfile64,
};

use super::Setup;
use crate::config::{linspace, RunConfig};
use crate::error::CliResult;

const IDENTITY_TOL: f64 = 1e-12;
const COMMUTATOR_TOL: f64 = 1e-12;
const EQUIVALENCE_TOL: f64 = 1e-10;
const SELECTION_TOL: f64 = 1e-11;
const CONSERVATION_TOL: f64 = 1e-11;
const INTEGRATOR_TOL: f64 = 1e-6;
const COEFFICIENT_TOL: f64 = 1e-9;
const PHI_POINTS: usize = 101;
const COEFFICIENT_J_MAX: i32 = 6;
const COEFFICIENT_N_MAX: usize = 30;

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub group: String,
    pub name: &'static str,
    /// `Err` carries the message of a computation that could not complete.
    pub deviation: Result<f64, String>,
    pub tol: f64,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        matches!(self.deviation, Ok(d) if d <= self.tol)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    fn add(&mut self, group: &str, name: &'static str, dev: Result<f64, String>, tol: f64) {
        self.lines.push(CheckLine {
            group: group.to_string(),
            name,
            deviation: dev,
            tol,
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    /// Largest deviation of a named check over all systems.
    pub fn max_deviation(&self, name: &str) -> Option<f64> {
        self.lines
            .iter()
            .filter(|l| l.name == name)
            .filter_map(|l| l.deviation.as_ref().ok().copied())
            .reduce(f64::max)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut group = "";
        for l in &self.lines {
            if l.group != group {
                group = &l.group;
                out.push_str(group);
                out.push('\n');
            }
            let verdict = if l.passed() { "ok" } else { "BREACH" };
            let value = match &l.deviation {
                Ok(d) => format!("{d:.3e}"),
                Err(e) => format!("error: {e}"),
            };
            out.push_str(&format!("  {:<22} {:>10}  tol {:.0e}  {verdict}\n", l.name, value, l.tol));
        }
        let bad = self.lines.iter().filter(|l| !l.passed()).count();
        if bad == 0 {
            out.push_str(&format!("PASS ({} checks)\n", self.lines.len()));
        } else {
            out.push_str(&format!("FAIL ({bad} of {} checks breached)\n", self.lines.len()));
        }
        out
    }
}

fn msg(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn label(sys: &CompositeSystem) -> String {
    let mode = match sys.mode() {
        Mode::FullTensor => "full".to_string(),
        Mode::Collective { s_total } => format!("collective S={s_total}"),
    };
    format!(
        "N={} s={} I={} {mode} dim={}",
        sys.n_spins(),
        sys.s_each(),
        sys.i_spin(),
        sys.dim()
    )
}

fn default_matrix() -> CliResult<Vec<(CompositeSystem, InitialState)>> {
    let mut out = Vec::new();
    for i in [HalfInt::HALF, HalfInt::ONE] {
        for n in 1..=4 {
            let sys = build_composite(n, HalfInt::HALF, i, Mode::FullTensor)?;
            let psi = ferromagnetic_state(&sys, -i)?;
            out.push((sys, psi));
        }
    }
    Ok(out)
}

fn check_system(report: &mut VerifyReport, system: &CompositeSystem, initial: &InitialState) {
    let group = label(system);
    let g = group.as_str();
    report.add(g, "pn_identities", verify_pn_identities(system).map(|r| r.max()).map_err(msg), IDENTITY_TOL);
    let comm = (0..3)
        .map(|u| max_abs(&commutator(&system.total()[u], system.coupling())))
        .fold(0.0, f64::max);
    report.add(g, "[J,K]", Ok(comm), COMMUTATOR_TOL);

    let cache = PropagatorCache::new(system);
    let phis = linspace(0.0, 4.0 * PI, PHI_POINTS).expect("fixed grid");
    let s = system.spin();
    let j2 = system.j_squared();
    let jds = system.j_dot_s();
    let observables = [&s[0], &s[1], &s[2], &system.total()[2], &j2, &jds];
    let oracle: Result<Vec<[f64; 6]>, String> = phis
        .iter()
        .map(|&phi| {
            let psi = cache.apply(initial.vector(), phi).map_err(msg)?;
            Ok(observables.map(|op| expectation(op, &psi).re))
        })
        .collect();
    let drift = |k: usize| {
        oracle.as_ref().map_err(Clone::clone).map(|rows| {
            rows.iter().map(|r| (r[k] - rows[0][k]).abs()).fold(0.0, f64::max)
        })
    };
    report.add(g, "Jz drift", drift(3), CONSERVATION_TOL);
    report.add(g, "J^2 drift", drift(4), CONSERVATION_TOL);
    report.add(g, "JdotS drift", drift(5), CONSERVATION_TOL);
    let oracle_transverse = oracle
        .as_ref()
        .map_err(Clone::clone)
        .map(|rows| rows.iter().map(|r| r[0].abs().max(r[1].abs())).fold(0.0, f64::max));
    report.add(g, "oracle Sx,Sy", oracle_transverse, SELECTION_TOL);

    let closed = Setup::from_parts(system.clone(), initial.clone())
        .map_err(msg)
        .and_then(|setup| {
            let values: Vec<[f64; 3]> = phis
                .iter()
                .map(|&phi| setup.solver.expectation(phi))
                .collect::<opgyro::Result<_>>()
                .map_err(msg)?;
            Ok((setup, values))
        });
    let equivalence = match (&closed, &oracle) {
        (Ok((_, c)), Ok(o)) => Ok(c
            .iter()
            .zip(o)
            .map(|(c, o)| (0..3).map(|u| (c[u] - o[u]).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    report.add(g, "closed vs oracle", equivalence, EQUIVALENCE_TOL);
    let closed_transverse = closed.as_ref().map_err(Clone::clone).map(|(_, c)| {
        c.iter().map(|r| r[0].abs().max(r[1].abs())).fold(0.0, f64::max)
    });
    report.add(g, "closed Sx,Sy", closed_transverse, SELECTION_TOL);
    let expansion = closed.as_ref().map_err(Clone::clone).and_then(|(setup, c)| {
        let e = setup.solver.expansion().map_err(msg)?;
        Ok(phis
            .iter()
            .zip(c)
            .map(|(&phi, r)| (e.evaluate(phi) - r[2]).abs())
            .fold(0.0, f64::max))
    });
    report.add(g, "cosine expansion", expansion, EQUIVALENCE_TOL);

    let pulse = PulseProfile64::gaussian(1.0, 1.0).expect("valid pulse");
    let rk4 = step_integrator(system, initial, &pulse, &uniform_grid(-5.0, 5.0, DEFAULT_GAUSSIAN_STEPS))
        .and_then(|ts| {
            let exact = cache.apply(initial.vector(), pulse.phi(5.0))?;
            Ok((ts.final_state - exact).norm())
        })
        .map_err(msg);
    report.add(g, "rk4 vs propagator", rk4, INTEGRATOR_TOL);
}

fn check_coefficients(report: &mut VerifyReport) {
    let group = format!("coefficients J<={COEFFICIENT_J_MAX} n<={COEFFICIENT_N_MAX}");
    let mut worst = 0.0f64;
    for twice in 0..=2 * COEFFICIENT_J_MAX {
        let j = HalfInt::from_twice(twice);
        for (n, ex) in coefficients_recursive_exact(j, COEFFICIENT_N_MAX).iter().enumerate() {
            let d = relative_distance(&coefficients_explicit::<f64>(j, n), &exact_to_f64(ex));
            worst = worst.max(d);
        }
    }
    report.add(&group, "explicit vs recursion", Ok(worst), COEFFICIENT_TOL);
}

/// Runs every check on the configured system, or on `N = 1..4` with
/// `I ∈ {1/2, 1}` when no `--n` is given.
pub fn verify(cfg: &RunConfig, inject_fault: bool) -> CliResult<VerifyReport> {
    let systems = if cfg.n_spins.is_some() {
        let sys = cfg.build_system()?;
        let psi = cfg.initial_state(&sys)?;
        vec![(sys, psi)]
    } else {
        default_matrix()?
    };
    let mut report = VerifyReport::default();
    for (sys, psi) in &systems {
        if inject_fault {
            check_system(&mut report, &sys.corrupted(1e-3), psi);
        } else {
            check_system(&mut report, sys, psi);
        }
    }
    check_coefficients(&mut report);
    Ok(report)
}
