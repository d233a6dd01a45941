//! Script runner, JSON reports and the built-in acceptance suite for
//! `grasper-core`.

pub mod report;
pub mod run;
pub mod script;
pub mod suite;

pub use report::{emit_json, Record, Report, Status};
pub use run::{run, run_script};
pub use script::{parse_manifold, parse_script, Script};
pub use suite::{paper_suite, paper_suite_with, seed_from_env};
