//! Run configuration, deterministic ensemble orchestration, radial
//! statistics, CSV/PGM export and the task runners behind the CLI.

pub mod config;
pub mod ensemble;
pub mod export;
pub mod stats;
pub mod tasks;

pub use config::{parse_complex, RunConfig, Task};
pub use ensemble::{ensemble_mean, run_ensemble, tree_sum, tree_sum_vec};
pub use export::{fmt_num, render_pgm, write_text, CsvTable};
pub use stats::{quantile, radial_bin, EnsembleStats};
pub use tasks::{parse_source, radial_profile, run_task, Quantity, RadialProfile, TaskOutput};
