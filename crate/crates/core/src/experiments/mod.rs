//! Seeded Monte Carlo experiments and their CSV tables.
//!
//! Every trial derives its randomness from `(master_seed, n, p_re index,
//! trial)` alone, so tables do not depend on the worker count.

mod config;
mod runner;
mod table;

pub use config::{
    ExperimentConfig, GsoSelection, Mode, PpmScale, DEFAULT_TRIALS, QUICK_MAX_N, QUICK_TRIALS,
};
pub use runner::{
    load_real, rewire_seed, run_consistency, run_real, run_synthetic, trial_seed, with_workers,
};
pub use table::{
    detect_table, format_f64, read_consistency_csv, read_csv, summarize, summarize_consistency,
    write_consistency_csv, write_consistency_summary_csv, write_csv, write_summary_csv,
    ConsistencyRow, ConsistencySummary, ConsistencyTable, ResultRow, ResultTable, Stats,
    SummaryRow, TableKind, CONSISTENCY_COLUMNS, RESULT_COLUMNS, WALL_TIME_COLUMN, Z95,
};
