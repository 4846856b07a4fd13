//! Drift of the bottom-2 eigenpairs and of the normalized Laplacian between
//! independent planted partitions as n grows.

use gfstab::experiments::{run_consistency, summarize_consistency, ExperimentConfig, Mode};

fn main() -> gfstab::Result<()> {
    let mut cfg = ExperimentConfig::new(Mode::Consistency);
    cfg.n_grid = Some(vec![200, 400, 800]);
    cfg.trials = 5;
    let table = run_consistency(&cfg)?;
    println!(
        "{:>5} {:>12} {:>18} {:>22}",
        "n", "|V2 - V2^|", "|L2 - L2^| n/log n", "|Ln - Ln^| sqrt(log n)"
    );
    for s in summarize_consistency(&table) {
        let n = s.n as f64;
        println!(
            "{:>5} {:>12.4} {:>18.4} {:>22.4}",
            s.n,
            s.vec_drift.median,
            s.eig_drift.median * n / n.ln(),
            s.lnorm_diff.median * n.ln().sqrt()
        );
    }
    Ok(())
}
