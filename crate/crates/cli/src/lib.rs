//! Scenario files, deterministic execution and CSV/JSON reports for the
//! `horo` command-line tool. The grammar is described in `CONFIG.md`.

// `!(x > y)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod grammar;
pub mod run;
pub mod sweep;

pub use config::{parse_config, serialize_config, Job, ScenarioConfig};
pub use run::{exit_code, run_all, run_scenario, RunReport, Status};
