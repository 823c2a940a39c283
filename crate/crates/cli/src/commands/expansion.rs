use opgyro::ClosedFormExpansion;
use serde_json::{json, Value};

use super::Setup;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::format::{json_number, Table};

pub fn expansion(cfg: &RunConfig) -> CliResult<ClosedFormExpansion> {
    Ok(Setup::new(cfg)?.solver.expansion()?)
}

/// `{constant, terms: [{freq_twice, amplitude}]}`, frequencies doubled so
/// they stay integers.
pub fn expansion_json(e: &ClosedFormExpansion) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|t| json!({ "freq_twice": t.freq.twice(), "amplitude": json_number(t.amplitude) }))
        .collect();
    json!({ "constant": json_number(e.constant), "terms": terms })
}

/// CSV form: the constant is the `freq_twice = 0` row.
pub(crate) fn expansion_table(e: &ClosedFormExpansion) -> Table {
    let mut t = Table::new(["freq_twice", "amplitude"]);
    t.push(vec![Some(0.0), Some(e.constant)]);
    for term in &e.terms {
        t.push(vec![Some(f64::from(term.freq.twice())), Some(term.amplitude)]);
    }
    t
}
