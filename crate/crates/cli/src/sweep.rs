//! Cartesian parameter sweeps.
//!
//! Cells run in parallel on the current rayon pool, each with its own seed
//! `seed ^ cell_index`, and are gathered back in cell order so that the
//! aggregate table does not depend on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::config::ScenarioConfig;
use crate::run::{execute, fmt17, CellError, RunError};

/// Seed of sweep cell `index`: the scenario seed XOR the cell index.
pub fn cell_seed(seed: Option<u64>, index: usize) -> Option<u64> {
    seed.map(|s| s ^ index as u64)
}

/// Aggregate result of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub cells: usize,
    /// `sweep.<key>` columns followed by the command's own columns.
    pub header: Vec<String>,
    pub table: Vec<Vec<String>>,
    /// Conjunction of every cell's flags.
    pub flags: BTreeMap<String, bool>,
    pub summaries: Vec<Json>,
    pub errors: Vec<CellError>,
}

/// Runs every cell of `cfg`. An empty grid gives an empty table.
pub fn run_cells(cfg: &ScenarioConfig, seed: Option<u64>) -> SweepOutcome {
    let cells = cfg.cell_count();
    let keys: Vec<String> = cfg.swept_keys().iter().map(|k| format!("sweep.{k}")).collect();
    let outcomes: Vec<(Vec<f64>, Result<_, RunError>)> = (0..cells)
        .into_par_iter()
        .map(|i| {
            let values = cfg.cell_values(i).into_iter().map(|(_, v)| v).collect();
            let result =
                cfg.job_for_cell(i).map_err(|e| RunError::new(e.code, e.to_string())).and_then(|job| execute(&job, cell_seed(seed, i)));
            (values, result)
        })
        .collect();
    let mut out =
        SweepOutcome { cells, header: Vec::new(), table: Vec::new(), flags: BTreeMap::new(), summaries: Vec::new(), errors: Vec::new() };
    for (i, (values, result)) in outcomes.into_iter().enumerate() {
        match result {
            Ok(t) => {
                if out.header.is_empty() {
                    out.header = keys.iter().cloned().chain(t.header.iter().cloned()).collect();
                }
                for row in t.rows {
                    out.table.push(values.iter().map(|v| fmt17(*v)).chain(row).collect());
                }
                for (k, v) in t.flags {
                    let e = out.flags.entry(k).or_insert(true);
                    *e = *e && v;
                }
                if !t.summary.is_empty() {
                    out.summaries.push(json!({ "cell": i, "values": values, "summary": t.summary }));
                }
            }
            Err(e) => out.errors.push(CellError { cell: i, code: e.code, message: e.message }),
        }
    }
    if out.header.is_empty() {
        out.header = keys;
    }
    out
}
