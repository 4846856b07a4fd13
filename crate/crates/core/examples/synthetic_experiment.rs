//! A reduced planted-partition Monte Carlo, summarized per grid point.
//!
//! `cargo run --example synthetic_experiment [out.csv]`

use gfstab::experiments::{
    run_synthetic, summarize, write_csv, ExperimentConfig, GsoSelection, Mode,
};
use gfstab::graph::Gso;

fn main() -> gfstab::Result<()> {
    let mut cfg = ExperimentConfig::new(Mode::Synthetic);
    cfg.gso = GsoSelection::Many(vec![Gso::Unnormalized, Gso::Normalized]);
    cfg.n_grid = Some(vec![200, 400]);
    cfg.p_re_grid = Some(vec![0.1, 0.9]);
    cfg.trials = 5;
    cfg.master_seed = 2024;
    println!("{}", cfg.to_json());

    let table = run_synthetic(&cfg)?;
    if let Some(path) = std::env::args().nth(1) {
        write_csv(&table, &path, false)?;
        println!("wrote {} rows to {path}", table.len());
    }
    println!(
        "{:<13} {:<16} {:>5} {:>5} {:>11} {:>23}",
        "gso", "filter", "n", "p_re", "mean", "95% CI"
    );
    for s in summarize(&table) {
        println!(
            "{:<13} {:<16} {:>5} {:>5} {:>11.4e} [{:.4e}, {:.4e}]",
            s.gso.to_string(),
            s.filter,
            s.n,
            s.p_re,
            s.distance.mean,
            s.distance.ci_low,
            s.distance.ci_high
        );
    }
    Ok(())
}
