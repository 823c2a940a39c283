mod coefficients;
pub(crate) mod expansion;
mod simulate;
mod sweep;
mod verify;

pub use coefficients::{coefficients, COEFFICIENT_COLUMNS, RECURSION_TOL};
pub use expansion::{expansion, expansion_json};
pub use simulate::{simulate, CONSERVATION_TOL, EQUIVALENCE_TOL, SELECTION_TOL, SIMULATE_COLUMNS};
pub use sweep::{sweep, SWEEP_COLUMNS};
pub use verify::{verify, VerifyReport};

use opgyro::{couple_basis, ClosedFormSolver, CompositeSystem, InitialState};

use crate::config::RunConfig;
use crate::error::CliResult;

/// A system, its start and the closed-form solver built from them.
pub struct Setup {
    pub system: CompositeSystem,
    pub initial: InitialState,
    pub solver: ClosedFormSolver,
}

impl Setup {
    pub fn new(cfg: &RunConfig) -> CliResult<Self> {
        let system = cfg.build_system()?;
        let initial = cfg.initial_state(&system)?;
        Self::from_parts(system, initial)
    }

    pub fn from_parts(system: CompositeSystem, initial: InitialState) -> CliResult<Self> {
        let basis = couple_basis(&system, initial.m_j())?;
        let solver = ClosedFormSolver::new(&system, &basis, &initial)?;
        Ok(Self {
            system,
            initial,
            solver,
        })
    }
}
